"""Genus statistics of oriented chord diagrams.

An oriented chord diagram of order n pairs the dots 1..2n into n ordered
chords.  Thickening the circle and gluing a band per chord produces an
oriented surface; the number d of boundary loops determines the genus via
g = (n + 2 - d)/2.  This package computes d and g by walking the boundary,
cross-checks them against an independent surface-gluing construction,
generates diagrams uniformly at random with a seeded incremental procedure,
and aggregates exact and Monte-Carlo statistics into bound reports.
"""

from ._version import __version__
from .bounds import SE_FACTOR, BoundReport, BoundRow, bound_report
from .diagrams import (
    Diagram,
    EdgeRef,
    OrientedChord,
    PartialDiagram,
    Role,
    diagram_count,
    edge_at,
    edge_index,
    edge_order,
    format_diagram,
    make_diagram,
    make_partial,
    next_dot,
    parse_diagram,
    prev_dot,
)
from .errors import (
    DiagramError,
    DiagramSyntaxError,
    DotOutOfRange,
    DuplicateDot,
    EdgeNotOfThisDiagram,
    IncompleteDiagram,
    InsufficientSamples,
    InvalidOrder,
    IoError,
    NotVacant,
    PointerInLoop,
    PreconditionViolated,
    ProcedureComplete,
    ProcedureError,
    TooLarge,
    TooManyChords,
)
from .plugs import ClosureCheck, Plug, closure_check, find_plugs, neighbors
from .procedure import (
    ClosureRecord,
    ProcedureState,
    StepEvent,
    choice_tree,
    init_procedure,
    pointer_segment,
    run_procedure,
    step,
)
from .reporting import (
    ReportDocument,
    build_document,
    render_csv,
    render_json,
    write_csv,
    write_json,
)
from .rng import GENERATOR_NAME, Xoshiro256PP, derive_seed
from .stats import (
    Estimate,
    ExactStats,
    McStats,
    PlugRow,
    PlugStats,
    enumerate_diagrams,
    exact_stats,
    mc_stats,
    plug_mc_stats,
)
from .walk import (
    Loop,
    Next,
    Segment,
    SegmentEnd,
    WalkDecomposition,
    boundary_count,
    decompose,
    genus,
    gluing_boundary_count,
    successor,
)
from . import kernels


def kernel_backend() -> str:
    """Which engine the statistics layer is using: "compiled" or "pure"."""
    return kernels.backend_name()


__all__ = [
    "__version__",
    "kernel_backend",
    "kernels",
    # diagrams
    "Diagram",
    "EdgeRef",
    "OrientedChord",
    "PartialDiagram",
    "Role",
    "diagram_count",
    "edge_at",
    "edge_index",
    "edge_order",
    "format_diagram",
    "make_diagram",
    "make_partial",
    "next_dot",
    "parse_diagram",
    "prev_dot",
    # walks
    "Loop",
    "Next",
    "Segment",
    "SegmentEnd",
    "WalkDecomposition",
    "boundary_count",
    "decompose",
    "genus",
    "gluing_boundary_count",
    "successor",
    # procedure
    "ClosureRecord",
    "ProcedureState",
    "StepEvent",
    "choice_tree",
    "init_procedure",
    "pointer_segment",
    "run_procedure",
    "step",
    # plugs
    "ClosureCheck",
    "Plug",
    "closure_check",
    "find_plugs",
    "neighbors",
    # rng
    "GENERATOR_NAME",
    "Xoshiro256PP",
    "derive_seed",
    # stats
    "Estimate",
    "ExactStats",
    "McStats",
    "PlugRow",
    "PlugStats",
    "enumerate_diagrams",
    "exact_stats",
    "mc_stats",
    "plug_mc_stats",
    # bounds
    "SE_FACTOR",
    "BoundReport",
    "BoundRow",
    "bound_report",
    # reporting
    "ReportDocument",
    "build_document",
    "render_csv",
    "render_json",
    "write_csv",
    "write_json",
    # errors
    "DiagramError",
    "DiagramSyntaxError",
    "DotOutOfRange",
    "DuplicateDot",
    "EdgeNotOfThisDiagram",
    "IncompleteDiagram",
    "InsufficientSamples",
    "InvalidOrder",
    "IoError",
    "NotVacant",
    "PointerInLoop",
    "PreconditionViolated",
    "ProcedureComplete",
    "ProcedureError",
    "TooLarge",
    "TooManyChords",
]
