"""Exception hierarchy.

Domain errors (bad diagrams, bad arguments) derive from :class:`DiagramError`,
which is a ``ValueError`` so that careless callers still get something sensible.
Procedure-state errors derive from :class:`ProcedureError`.
"""

from __future__ import annotations

__all__ = [
    "DiagramError",
    "InvalidOrder",
    "DotOutOfRange",
    "DuplicateDot",
    "TooManyChords",
    "IncompleteDiagram",
    "DiagramSyntaxError",
    "EdgeNotOfThisDiagram",
    "NotVacant",
    "TooLarge",
    "PreconditionViolated",
    "ProcedureError",
    "ProcedureComplete",
    "PointerInLoop",
    "InsufficientSamples",
    "IoError",
]


class DiagramError(ValueError):
    """Base class for all diagram-domain errors."""


class InvalidOrder(DiagramError):
    """The diagram order n is not a positive integer."""


class DotOutOfRange(DiagramError):
    """A dot label lies outside 1..2n."""


class DuplicateDot(DiagramError):
    """A dot is used by two chord endpoints (or twice in one chord)."""


class TooManyChords(DiagramError):
    """More than n chords were supplied for order n."""


class IncompleteDiagram(DiagramError):
    """A full diagram was required but vacant dots remain."""


class DiagramSyntaxError(DiagramError):
    """The textual form of a diagram does not match the grammar."""


class EdgeNotOfThisDiagram(DiagramError):
    """An edge reference does not denote an edge of the given diagram."""


class NotVacant(DiagramError):
    """The named dot is occupied but a vacant dot was required."""


class TooLarge(DiagramError):
    """The requested exhaustive computation exceeds the supported size."""


class PreconditionViolated(DiagramError):
    """An argument combination violates a documented precondition."""


class ProcedureError(RuntimeError):
    """Base class for random-procedure state errors."""


class ProcedureComplete(ProcedureError):
    """step() was called on a finished procedure (all n chords placed)."""


class PointerInLoop(ProcedureError):
    """Internal invariant violation: the pointer edge sits in a closed loop."""


class InsufficientSamples(ValueError):
    """A statistic is undefined for the given sample count (e.g. stddev of 1)."""


class IoError(OSError):
    """Reading or writing a report/batch file failed."""
