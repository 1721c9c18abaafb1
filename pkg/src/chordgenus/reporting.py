"""Report documents and their CSV/JSON serializations.

A :class:`ReportDocument` is metadata plus an ordered list of tables.  Both
renderers are deterministic: no timestamps, fixed key order, reals printed
with 17 significant digits (enough to round-trip IEEE doubles).  Re-running
with the same inputs therefore reproduces the same bytes.

CSV layout: ``# key=value`` metadata lines, then each table as a header row
followed by data rows, tables separated by one blank line.  JSON mirrors the
same fields as ``{"metadata": {...}, "rows": {table: [row objects]}}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Union

from ._version import __version__
from .bounds import BoundReport
from .errors import IoError
from .rng import GENERATOR_NAME
from .stats import ExactStats, McStats, PlugStats

__all__ = [
    "Table",
    "ReportDocument",
    "build_document",
    "render_csv",
    "render_json",
    "write_csv",
    "write_json",
    "save_bytes",
]

Stats = Union[ExactStats, McStats, PlugStats]

BOUNDS_HEADER = ("check", "k", "measured", "bound", "cmp", "se", "slack", "status")


@dataclass(frozen=True)
class Table:
    name: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True)
class ReportDocument:
    metadata: Mapping[str, Any]
    tables: tuple[Table, ...]


def _bounds_table(report: BoundReport) -> Table:
    rows = tuple(
        (row.check, row.k, row.measured, row.bound, row.cmp, row.se, row.slack,
         row.status)
        for row in report.rows
    )
    return Table("bounds", BOUNDS_HEADER, rows)


def build_document(
    stats: Stats, report: Optional[BoundReport] = None
) -> ReportDocument:
    """Assemble the serializable document for one statistics object."""
    metadata: dict[str, Any] = {"tool": "chordgenus", "version": __version__}
    tables: list[Table] = []
    if isinstance(stats, ExactStats):
        metadata.update(mode="exact", n=stats.n, count=stats.count)
        num = stats.d_mean.numerator
        den = stats.d_mean.denominator
        tables.append(
            Table(
                "exact",
                ("n", "count", "d_mean_num", "d_mean_den", "genus", "genus_count"),
                tuple(
                    (stats.n, stats.count, num, den, g, c)
                    for g, c in sorted(stats.genus_histogram.items())
                ),
            )
        )
    elif isinstance(stats, McStats):
        metadata.update(
            mode="sample",
            n=stats.n,
            samples=stats.samples,
            seed=stats.seed,
            generator=GENERATOR_NAME,
        )
        tables.append(
            Table(
                "sample",
                ("n", "samples", "seed", "d_mean", "d_stddev", "ci99_lo", "ci99_hi"),
                (
                    (
                        stats.n,
                        stats.samples,
                        stats.seed,
                        stats.d_mean,
                        stats.d_stddev,
                        stats.ci99[0],
                        stats.ci99[1],
                    ),
                ),
            )
        )
        loop_rows = tuple(
            (
                stats.n,
                k,
                stats.L_hat[k].value,
                stats.L_hat[k].se,
                3.0 / k,
                1.0 / (9.0 * k),
                stats.P_hat[k].value,
                stats.P_hat[k].se,
            )
            for k in sorted(stats.L_hat)
        )
        tables.append(
            Table(
                "loops",
                ("n", "k", "Lk_hat", "Lk_se", "bound_3_over_k",
                 "lower_1_over_9k", "Pk_hat", "Pk_se"),
                loop_rows,
            )
        )
    elif isinstance(stats, PlugStats):
        metadata.update(
            mode="plugs",
            n=stats.n,
            k_max=stats.k_max,
            runs=stats.runs,
            seed=stats.seed,
            generator=GENERATOR_NAME,
        )
        tables.append(
            Table(
                "plugs",
                ("n", "runs", "k", "mean_plugs", "Gp", "Gp_se", "Gm", "Gm_se",
                 "Hp", "Hp_se", "Hm", "Hm_se"),
                tuple(
                    (
                        stats.n,
                        stats.runs,
                        row.k,
                        row.plugs.value,
                        row.gp.value,
                        row.gp.se,
                        row.gm.value,
                        row.gm.se,
                        row.hp.value,
                        row.hp.se,
                        row.hm.value,
                        row.hm.se,
                    )
                    for row in stats.rows
                ),
            )
        )
    else:
        raise TypeError(f"cannot serialize {type(stats).__name__}")
    if report is not None:
        tables.append(_bounds_table(report))
    return ReportDocument(metadata=metadata, tables=tuple(tables))


# ---------------------------------------------------------------------------
# Rendering


def _float_repr(x: float) -> str:
    return format(x, ".17g")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _float_repr(value)
    return str(value)


def render_csv(doc: ReportDocument) -> str:
    lines = [f"# {key}={_csv_cell(value)}" for key, value in doc.metadata.items()]
    for table in doc.tables:
        if lines:
            lines.append("")
        lines.append(",".join(table.header))
        for row in table.rows:
            lines.append(",".join(_csv_cell(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _json_scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return _float_repr(value)
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot render {type(value).__name__} in a report")


def render_json(doc: ReportDocument) -> str:
    out = ["{\n  \"metadata\": {\n"]
    meta_items = list(doc.metadata.items())
    for i, (key, value) in enumerate(meta_items):
        sep = "," if i + 1 < len(meta_items) else ""
        out.append(f"    {json.dumps(key)}: {_json_scalar(value)}{sep}\n")
    out.append("  },\n  \"rows\": {\n")
    for t, table in enumerate(doc.tables):
        out.append(f"    {json.dumps(table.name)}: [\n")
        for r, row in enumerate(table.rows):
            cells = ", ".join(
                f"{json.dumps(name)}: {_json_scalar(cell)}"
                for name, cell in zip(table.header, row)
            )
            row_sep = "," if r + 1 < len(table.rows) else ""
            out.append(f"      {{{cells}}}{row_sep}\n")
        table_sep = "," if t + 1 < len(doc.tables) else ""
        out.append(f"    ]{table_sep}\n")
    out.append("  }\n}\n")
    return "".join(out)


def write_csv(
    stats: Union[Stats, ReportDocument], report: Optional[BoundReport] = None
) -> bytes:
    """Serialize statistics (plus an optional bound report) as CSV bytes."""
    doc = stats if isinstance(stats, ReportDocument) else build_document(stats, report)
    return render_csv(doc).encode("utf-8")


def write_json(
    stats: Union[Stats, ReportDocument], report: Optional[BoundReport] = None
) -> bytes:
    """Serialize statistics (plus an optional bound report) as JSON bytes."""
    doc = stats if isinstance(stats, ReportDocument) else build_document(stats, report)
    return render_json(doc).encode("utf-8")


def save_bytes(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as handle:
            handle.write(data)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
