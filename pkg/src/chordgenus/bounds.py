"""Bound reports: check measured statistics against the proven envelopes.

Each report is a flat table of rows; a row compares one measured quantity
against one bound.  Statistical rows carry a standard error and are judged
with a fixed ``estimate within 3 SE`` tolerance; exact rows (identities,
enumeration results) carry no SE and must hold outright.

Row status:

* ``pass``  — the comparison holds (raw, or within the 3-SE allowance while
  the allowance is no larger than the bound itself);
* ``fail``  — violated even after widening by 3 SE;
* ``insufficient`` — holds only thanks to an allowance larger than the bound,
  i.e. the sample is too small to certify anything at this scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import InsufficientSamples
from .stats import ExactStats, McStats, PlugStats

__all__ = ["SE_FACTOR", "BoundRow", "BoundReport", "bound_report"]

SE_FACTOR = 3.0


@dataclass(frozen=True)
class BoundRow:
    """One checked comparison.

    ``cmp`` is the direction ("<=", ">=", or "==") in which ``measured`` is
    compared to ``bound``; ``slack`` is the satisfied margin (bound − measured
    for upper bounds, measured − bound otherwise), before any SE allowance.
    """

    check: str
    k: Optional[int]
    measured: float
    bound: float
    cmp: str
    se: Optional[float]
    slack: float
    status: str


@dataclass(frozen=True)
class BoundReport:
    rows: tuple[BoundRow, ...]

    @property
    def status(self) -> str:
        statuses = {row.status for row in self.rows}
        if "fail" in statuses:
            return "fail"
        if "insufficient" in statuses:
            return "insufficient"
        return "pass"

    @property
    def failures(self) -> tuple[BoundRow, ...]:
        return tuple(row for row in self.rows if row.status == "fail")


def _row(
    check: str,
    k: Optional[int],
    measured: float,
    bound: float,
    cmp: str,
    se: Optional[float] = None,
    exact_ok: Optional[bool] = None,
) -> BoundRow:
    allowance = SE_FACTOR * se if se is not None else 0.0
    if se is not None and math.isnan(se):
        status = "insufficient"
        slack = bound - measured if cmp == "<=" else measured - bound
        return BoundRow(check, k, measured, bound, cmp, se, slack, status)
    if cmp == "<=":
        ok_raw = (measured <= bound) if exact_ok is None else exact_ok
        ok_allowed = (measured <= bound + allowance) if exact_ok is None else exact_ok
        slack = bound - measured
    elif cmp == ">=":
        ok_raw = (measured >= bound) if exact_ok is None else exact_ok
        ok_allowed = (measured >= bound - allowance) if exact_ok is None else exact_ok
        slack = measured - bound
    elif cmp == "==":
        ok_raw = (measured == bound) if exact_ok is None else exact_ok
        ok_allowed = ok_raw
        slack = measured - bound
    else:  # pragma: no cover - internal misuse
        raise ValueError(f"unknown comparison {cmp!r}")
    if not ok_allowed:
        status = "fail"
    elif ok_raw:
        status = "pass"
    elif allowance > abs(bound):
        status = "insufficient"
    else:
        status = "pass"
    return BoundRow(check, k, measured, bound, cmp, se, slack, status)


def _exact_rows(stats: ExactStats) -> list[BoundRow]:
    n = stats.n
    d_mean = float(stats.d_mean)
    rows = [
        _row("d_mean_lower", None, d_mean, math.log(n) / 18.0, ">="),
        _row("d_mean_upper", None, d_mean, 3.0 * math.log(n) + 400.0, "<="),
    ]
    loop_total = sum(stats.L.values())
    rows.append(
        _row(
            "loop_total_identity",
            None,
            float(loop_total),
            d_mean,
            "==",
            exact_ok=(loop_total == stats.d_mean),
        )
    )
    lhs = stats.g_mean + stats.d_mean / 2
    rows.append(
        _row(
            "genus_identity",
            None,
            float(lhs),
            (n + 2) / 2.0,
            "==",
            exact_ok=(2 * lhs == n + 2),
        )
    )
    rows.append(
        _row(
            "genus_max",
            None,
            float(max(stats.genus_histogram)),
            (n + 1) // 2,
            "<=",
        )
    )
    for k in range(1, min(100, n // 100) + 1):
        rows.append(
            _row("L_upper", k, float(stats.L.get(k, 0)), 3.0 / k, "<=")
        )
    return rows


def _mc_rows(stats: McStats) -> list[BoundRow]:
    n = stats.n
    N = stats.samples
    if N < 2:
        raise InsufficientSamples(
            "bound checks need at least 2 samples to form standard errors"
        )
    rows = []
    d_se = stats.d_stddev / math.sqrt(N)
    rows.append(
        _row("d_mean_lower", None, stats.d_mean, math.log(n) / 18.0, ">=", d_se)
    )
    rows.append(
        _row(
            "d_mean_upper",
            None,
            stats.d_mean,
            3.0 * math.log(n) + 400.0,
            "<=",
            d_se,
        )
    )

    def l_hat(k: int):
        return stats.L_hat.get(k, (0.0, 0.0))

    def p_hat(k: int):
        return stats.P_hat.get(k, (0.0, 0.0))

    for k in range(1, min(100, n // 100) + 1):
        value, se = l_hat(k)
        rows.append(_row("L_upper", k, value, 3.0 / k, "<=", se))
    if n >= 50:
        for k in range(1, math.isqrt(n) + 1):
            value, se = l_hat(k)
            rows.append(_row("L_lower", k, value, 1.0 / (9.0 * k), ">=", se))
            value, se = p_hat(k)
            rows.append(_row("P_lower", k, value, 1.0 / (9.0 * n), ">=", se))

    totals = stats.totals
    if totals is not None:
        four_n = 4 * n
        # Per-sample partitions make these identities exact in the integer
        # sums, however flat the float projections end up.
        for k in sorted(stats.L_hat):
            if k > 100:
                break
            ls = int(totals.loop_sums[k])
            es = int(totals.edge_sums[k])
            pk = stats.P_hat[k].value
            lk = stats.L_hat[k].value
            rows.append(
                _row(
                    "sandwich_lower",
                    k,
                    pk,
                    k * lk / four_n,
                    ">=",
                    exact_ok=(es >= k * ls),
                )
            )
            rows.append(
                _row(
                    "sandwich_upper",
                    k,
                    pk,
                    4 * k * lk / four_n,
                    "<=",
                    exact_ok=(es <= 4 * k * ls),
                )
            )
        edge_total = int(totals.edge_sums.sum())
        rows.append(
            _row(
                "edge_fraction_total",
                None,
                edge_total / (N * four_n),
                1.0,
                "==",
                exact_ok=(edge_total == N * four_n),
            )
        )
        loop_total = int(totals.loop_sums.sum())
        rows.append(
            _row(
                "loop_total_identity",
                None,
                loop_total / N,
                stats.d_mean,
                "==",
                exact_ok=(loop_total == totals.d_sum),
            )
        )
    return rows


def _plug_rows(stats: PlugStats) -> list[BoundRow]:
    n = stats.n
    if stats.runs < 2:
        raise InsufficientSamples(
            "bound checks need at least 2 runs to form standard errors"
        )
    rows = []
    k_cap = min(stats.k_max, n // 100)
    for row in stats.rows:
        if row.k > k_cap:
            break
        rows.append(
            _row("plug_count", row.k, row.plugs.value, 0.25, "<=", row.plugs.se)
        )
        rows.append(_row("G_plus", row.k, row.gp.value, 5.0 / n, "<=", row.gp.se))
        rows.append(_row("G_minus", row.k, row.gm.value, 20.0 / n, "<=", row.gm.se))
        rows.append(_row("H_plus", row.k, row.hp.value, 6.0 / n, "<=", row.hp.se))
        rows.append(_row("H_minus", row.k, row.hm.value, 21.0 / n, "<=", row.hm.se))
    return rows


def bound_report(stats: Union[ExactStats, McStats, PlugStats]) -> BoundReport:
    """Check every applicable bound against the given statistics."""
    if isinstance(stats, ExactStats):
        rows = _exact_rows(stats)
    elif isinstance(stats, McStats):
        rows = _mc_rows(stats)
    elif isinstance(stats, PlugStats):
        rows = _plug_rows(stats)
    else:
        raise TypeError(
            "bound_report expects ExactStats, McStats, or PlugStats, "
            f"got {type(stats).__name__}"
        )
    return BoundReport(rows=tuple(rows))
