"""Exact and Monte-Carlo statistics for boundary-loop structure.

Two regimes:

* exhaustive enumeration for small orders (``enumerate_diagrams``,
  ``exact_stats``) with exact rational results, and
* seeded Monte-Carlo estimation (``mc_stats``, ``plug_mc_stats``) whose
  per-sample seeds are derived from (master seed, sample index), so results
  are bit-identical no matter how the work is split across threads.

Heavy per-sample work is delegated to :mod:`chordgenus.kernels`; this module
only orchestrates blocks and folds integer accumulators.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, NamedTuple, Optional

import numpy as np

from . import kernels
from .diagrams import Diagram, diagram_count
from .errors import InsufficientSamples, TooLarge

__all__ = [
    "ENUM_MAX_N",
    "BLOCK_SIZE",
    "Z99",
    "Estimate",
    "ExactStats",
    "McStats",
    "PlugRow",
    "PlugStats",
    "SampleAccumulator",
    "PlugAccumulator",
    "enumerate_diagrams",
    "exact_stats",
    "mc_stats",
    "plug_mc_stats",
    "resolve_threads",
]

ENUM_MAX_N = 7
BLOCK_SIZE = 256
#: two-sided 99% normal quantile, used for the ci99 interval.
Z99 = 2.5758293035489004

_U64_MAX = (1 << 64) - 1


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")


def _check_seed(seed: int) -> None:
    if not 0 <= seed <= _U64_MAX:
        raise ValueError("seed must fit in an unsigned 64-bit integer")


def resolve_threads(threads: Optional[int]) -> int:
    """Worker count: explicit argument, else CHORD_THREADS, else cpu count."""
    if threads is None:
        env = os.environ.get("CHORD_THREADS", "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ValueError(
                    f"CHORD_THREADS must be an integer, got {env!r}"
                ) from None
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return threads


# ---------------------------------------------------------------------------
# Exhaustive enumeration


def enumerate_diagrams(
    n: int, visitor: Optional[Callable[[Diagram], None]] = None
) -> int:
    """Visit every diagram of order n exactly once; return the visit count.

    Order is deterministic: the smallest vacant dot is paired with each larger
    vacant dot in increasing order, recursively; once the pairing is fixed,
    the 2^n orientation choices are visited last, earliest chord most
    significant (both orientations of the first chord are exhausted only
    after all orientation patterns of the later chords).
    """
    _check_n(n)
    if n > ENUM_MAX_N:
        raise TooLarge(f"enumeration is capped at n <= {ENUM_MAX_N}, got {n}")
    m = 2 * n
    used = bytearray(m + 1)
    pairs: list[tuple[int, int]] = []
    count = 0

    def rec() -> None:
        nonlocal count
        a = 1
        while a <= m and used[a]:
            a += 1
        if a > m:
            for orient in range(1 << n):
                chords = tuple(
                    (y, x) if (orient >> (n - 1 - i)) & 1 else (x, y)
                    for i, (x, y) in enumerate(pairs)
                )
                count += 1
                if visitor is not None:
                    visitor(Diagram(n, chords))
            return
        used[a] = 1
        for b in range(a + 1, m + 1):
            if not used[b]:
                used[b] = 1
                pairs.append((a, b))
                rec()
                pairs.pop()
                used[b] = 0
        used[a] = 0

    rec()
    return count


@dataclass(frozen=True)
class ExactStats:
    """Exact enumeration summary for order n."""

    n: int
    count: int
    d_mean: Fraction
    genus_histogram: Mapping[int, int]
    L: Mapping[int, Fraction]

    @property
    def g_mean(self) -> Fraction:
        return Fraction(self.n + 2, 2) - self.d_mean / 2


def exact_stats(n: int) -> ExactStats:
    """Exact loop statistics over all (2n)!/n! diagrams (n <= 7)."""
    _check_n(n)
    if n > ENUM_MAX_N:
        raise TooLarge(f"exact statistics are capped at n <= {ENUM_MAX_N}, got {n}")
    count, d_sum, genus_counts, loop_counts = kernels.active().exact_sweep(n)
    expected = diagram_count(n)
    if count != expected:
        raise RuntimeError(
            f"enumeration produced {count} diagrams, expected {expected}"
        )
    histogram = {g: int(c) for g, c in enumerate(genus_counts) if c}
    L = {
        k: Fraction(int(c), count)
        for k, c in enumerate(loop_counts)
        if k >= 1 and c
    }
    return ExactStats(
        n=n,
        count=count,
        d_mean=Fraction(d_sum, count),
        genus_histogram=histogram,
        L=L,
    )


# ---------------------------------------------------------------------------
# Monte-Carlo estimation


class Estimate(NamedTuple):
    value: float
    se: float


@dataclass(frozen=True)
class McStats:
    """Monte-Carlo summary over independent uniform diagrams."""

    n: int
    samples: int
    seed: int
    d_mean: float
    d_stddev: float
    ci99: tuple[float, float]
    L_hat: Mapping[int, Estimate]
    P_hat: Mapping[int, Estimate]
    #: integer accumulator behind the floats; lets reports check exact
    #: per-sample identities without re-running.
    totals: Optional["SampleAccumulator"] = field(
        default=None, compare=False, repr=False
    )


def _sample_sd(count: int, total: int, sq_total: int) -> float:
    """Unbiased sample standard deviation from integer power sums."""
    if count < 2:
        return math.nan
    var_num = count * sq_total - total * total
    return math.sqrt(max(var_num, 0) / (count * (count - 1)))


def _se(count: int, total: int, sq_total: int) -> float:
    return _sample_sd(count, total, sq_total) / math.sqrt(count)


@dataclass
class SampleAccumulator:
    """Mergeable integer sums of per-diagram observables.

    ``loop_sums[k]`` totals the number of size-k loops per diagram;
    ``edge_sums[k]`` totals the number of edges lying in size-k loops.
    The *_sq_sums arrays hold per-sample squares, enough to recover unbiased
    variances exactly.  Addition is associative and commutative, so any block
    split yields the same result.
    """

    n: int
    count: int
    d_sum: int
    d_sq_sum: int
    loop_sums: np.ndarray
    loop_sq_sums: np.ndarray
    edge_sums: np.ndarray
    edge_sq_sums: np.ndarray

    @classmethod
    def zero(cls, n: int) -> "SampleAccumulator":
        z = lambda: np.zeros(n + 1, dtype=np.int64)  # noqa: E731
        return cls(n, 0, 0, 0, z(), z(), z(), z())

    @classmethod
    def from_block(cls, n: int, block: Mapping) -> "SampleAccumulator":
        return cls(
            n=n,
            count=int(block["count"]),
            d_sum=int(block["d_sum"]),
            d_sq_sum=int(block["d_sq_sum"]),
            loop_sums=np.asarray(block["loop_sums"], dtype=np.int64),
            loop_sq_sums=np.asarray(block["loop_sq_sums"], dtype=np.int64),
            edge_sums=np.asarray(block["edge_sums"], dtype=np.int64),
            edge_sq_sums=np.asarray(block["edge_sq_sums"], dtype=np.int64),
        )

    def __add__(self, other: "SampleAccumulator") -> "SampleAccumulator":
        if self.n != other.n:
            raise ValueError("cannot merge accumulators of different orders")
        return SampleAccumulator(
            n=self.n,
            count=self.count + other.count,
            d_sum=self.d_sum + other.d_sum,
            d_sq_sum=self.d_sq_sum + other.d_sq_sum,
            loop_sums=self.loop_sums + other.loop_sums,
            loop_sq_sums=self.loop_sq_sums + other.loop_sq_sums,
            edge_sums=self.edge_sums + other.edge_sums,
            edge_sq_sums=self.edge_sq_sums + other.edge_sq_sums,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SampleAccumulator):
            return NotImplemented
        return (
            self.n == other.n
            and self.count == other.count
            and self.d_sum == other.d_sum
            and self.d_sq_sum == other.d_sq_sum
            and bool(np.array_equal(self.loop_sums, other.loop_sums))
            and bool(np.array_equal(self.loop_sq_sums, other.loop_sq_sums))
            and bool(np.array_equal(self.edge_sums, other.edge_sums))
            and bool(np.array_equal(self.edge_sq_sums, other.edge_sq_sums))
        )

    def finalize(self, seed: int) -> McStats:
        N = self.count
        if N < 1:
            raise InsufficientSamples("no samples accumulated")
        four_n = 4 * self.n
        d_mean = self.d_sum / N
        d_sd = _sample_sd(N, self.d_sum, self.d_sq_sum)
        half = Z99 * d_sd / math.sqrt(N)
        L_hat: dict[int, Estimate] = {}
        P_hat: dict[int, Estimate] = {}
        for k in range(1, self.n + 1):
            ls = int(self.loop_sums[k])
            es = int(self.edge_sums[k])
            if ls == 0 and es == 0:
                continue
            L_hat[k] = Estimate(ls / N, _se(N, ls, int(self.loop_sq_sums[k])))
            P_hat[k] = Estimate(
                es / (N * four_n),
                _se(N, es, int(self.edge_sq_sums[k])) / four_n,
            )
        return McStats(
            n=self.n,
            samples=N,
            seed=seed,
            d_mean=d_mean,
            d_stddev=d_sd,
            ci99=(d_mean - half, d_mean + half),
            L_hat=L_hat,
            P_hat=P_hat,
            totals=self,
        )


def _blocks(total: int) -> Iterator[tuple[int, int]]:
    start = 0
    while start < total:
        size = min(BLOCK_SIZE, total - start)
        yield start, size
        start += size


def _run_blocks(jobs, worker, threads: int) -> Iterator:
    if threads == 1 or len(jobs) <= 1:
        return map(worker, jobs)
    pool = ThreadPoolExecutor(max_workers=threads)
    try:
        # map() yields results in job order, so the fold below is independent
        # of scheduling; the kernels release the GIL while sampling.
        return iter(list(pool.map(worker, jobs)))
    finally:
        pool.shutdown(wait=True)


def mc_stats(
    n: int, samples: int, seed: int, threads: Optional[int] = None
) -> McStats:
    """Estimate d, L_k, and P_k from ``samples`` uniform diagrams of order n.

    Deterministic given (n, samples, seed): sample i is generated from the
    derived seed for index i, whatever the thread count.
    """
    _check_n(n)
    _check_seed(seed)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    nthreads = resolve_threads(threads)
    engine = kernels.active()
    jobs = list(_blocks(samples))
    acc = SampleAccumulator.zero(n)
    worker = lambda job: engine.sample_block(n, seed, job[0], job[1])  # noqa: E731
    for block in _run_blocks(jobs, worker, nthreads):
        acc = acc + SampleAccumulator.from_block(n, block)
    return acc.finalize(seed)


# ---------------------------------------------------------------------------
# Plug statistics over procedure prefixes


class PlugRow(NamedTuple):
    k: int
    plugs: Estimate
    gp: Estimate
    gm: Estimate
    hp: Estimate
    hm: Estimate


@dataclass(frozen=True)
class PlugStats:
    """Per-step plug observations over independent procedure prefixes.

    Row k reports, across all runs: the mean number of plugs present after
    step k; the mean number of positive/negative plugs completed at step k
    (gp/gm); and the empirical probability that the concluding dot of the
    pointer's segment is the entrance of a positive/negative plug (hp/hm).
    """

    n: int
    k_max: int
    runs: int
    seed: int
    rows: tuple[PlugRow, ...]


@dataclass
class PlugAccumulator:
    """Mergeable integer sums of per-step plug observables."""

    n: int
    k_max: int
    count: int
    plug_sums: np.ndarray
    plug_sq_sums: np.ndarray
    gp_sums: np.ndarray
    gp_sq_sums: np.ndarray
    gm_sums: np.ndarray
    gm_sq_sums: np.ndarray
    hp_sums: np.ndarray
    hm_sums: np.ndarray

    @classmethod
    def zero(cls, n: int, k_max: int) -> "PlugAccumulator":
        z = lambda: np.zeros(k_max + 1, dtype=np.int64)  # noqa: E731
        return cls(n, k_max, 0, z(), z(), z(), z(), z(), z(), z(), z())

    @classmethod
    def from_block(cls, n: int, k_max: int, block: Mapping) -> "PlugAccumulator":
        g = lambda key: np.asarray(block[key], dtype=np.int64)  # noqa: E731
        return cls(
            n=n,
            k_max=k_max,
            count=int(block["count"]),
            plug_sums=g("plug_sums"),
            plug_sq_sums=g("plug_sq_sums"),
            gp_sums=g("gp_sums"),
            gp_sq_sums=g("gp_sq_sums"),
            gm_sums=g("gm_sums"),
            gm_sq_sums=g("gm_sq_sums"),
            hp_sums=g("hp_sums"),
            hm_sums=g("hm_sums"),
        )

    def __add__(self, other: "PlugAccumulator") -> "PlugAccumulator":
        if self.n != other.n or self.k_max != other.k_max:
            raise ValueError("cannot merge accumulators of different shapes")
        return PlugAccumulator(
            n=self.n,
            k_max=self.k_max,
            count=self.count + other.count,
            plug_sums=self.plug_sums + other.plug_sums,
            plug_sq_sums=self.plug_sq_sums + other.plug_sq_sums,
            gp_sums=self.gp_sums + other.gp_sums,
            gp_sq_sums=self.gp_sq_sums + other.gp_sq_sums,
            gm_sums=self.gm_sums + other.gm_sums,
            gm_sq_sums=self.gm_sq_sums + other.gm_sq_sums,
            hp_sums=self.hp_sums + other.hp_sums,
            hm_sums=self.hm_sums + other.hm_sums,
        )

    def finalize(self, seed: int) -> PlugStats:
        R = self.count
        if R < 1:
            raise InsufficientSamples("no runs accumulated")
        rows = []
        for k in range(1, self.k_max + 1):
            ps, pq = int(self.plug_sums[k]), int(self.plug_sq_sums[k])
            gps, gpq = int(self.gp_sums[k]), int(self.gp_sq_sums[k])
            gms, gmq = int(self.gm_sums[k]), int(self.gm_sq_sums[k])
            hps = int(self.hp_sums[k])
            hms = int(self.hm_sums[k])
            rows.append(
                PlugRow(
                    k=k,
                    plugs=Estimate(ps / R, _se(R, ps, pq)),
                    gp=Estimate(gps / R, _se(R, gps, gpq)),
                    gm=Estimate(gms / R, _se(R, gms, gmq)),
                    # 0/1 indicators: the square sum equals the sum.
                    hp=Estimate(hps / R, _se(R, hps, hps)),
                    hm=Estimate(hms / R, _se(R, hms, hms)),
                )
            )
        return PlugStats(
            n=self.n, k_max=self.k_max, runs=R, seed=seed, rows=tuple(rows)
        )


def plug_mc_stats(
    n: int,
    k_max: int,
    runs: int,
    seed: int,
    threads: Optional[int] = None,
) -> PlugStats:
    """Observe plugs along ``runs`` independent k_max-step procedure prefixes."""
    _check_n(n)
    _check_seed(seed)
    if not 0 <= k_max <= n:
        raise ValueError("k_max must lie in 0..n")
    if runs < 1:
        raise ValueError("runs must be >= 1")
    nthreads = resolve_threads(threads)
    engine = kernels.active()
    jobs = list(_blocks(runs))
    acc = PlugAccumulator.zero(n, k_max)
    worker = lambda job: engine.plug_block(n, k_max, seed, job[0], job[1])  # noqa: E731
    for block in _run_blocks(jobs, worker, nthreads):
        acc = acc + PlugAccumulator.from_block(n, k_max, block)
    return acc.finalize(seed)
