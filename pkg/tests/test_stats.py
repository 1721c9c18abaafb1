"""Exact enumeration statistics and seeded Monte-Carlo estimation."""

import math
from collections import Counter
from fractions import Fraction

import pytest

import chordgenus as cg
from chordgenus import Estimate, InsufficientSamples, TooLarge
from chordgenus.kernels import pure
from chordgenus.stats import (
    BLOCK_SIZE,
    ENUM_MAX_N,
    Z99,
    PlugAccumulator,
    SampleAccumulator,
    resolve_threads,
)


class TestEnumerate:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_counts(self, n):
        assert cg.enumerate_diagrams(n) == cg.diagram_count(n)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_visits_each_diagram_once(self, n):
        seen = []
        count = cg.enumerate_diagrams(n, seen.append)
        assert count == len(seen) == cg.diagram_count(n)
        assert len(set(seen)) == count

    def test_visit_order_n2(self):
        seen = []
        cg.enumerate_diagrams(2, lambda d: seen.append(d.chords))
        assert seen == [
            ((1, 2), (3, 4)), ((1, 2), (4, 3)), ((2, 1), (3, 4)), ((2, 1), (4, 3)),
            ((1, 3), (2, 4)), ((1, 3), (4, 2)), ((3, 1), (2, 4)), ((3, 1), (4, 2)),
            ((1, 4), (2, 3)), ((1, 4), (3, 2)), ((4, 1), (2, 3)), ((4, 1), (3, 2)),
        ]

    def test_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            cg.enumerate_diagrams(0)
        with pytest.raises(TooLarge):
            cg.enumerate_diagrams(ENUM_MAX_N + 1)


class TestExactStats:
    def test_order_one(self):
        s = cg.exact_stats(1)
        assert s.count == 2
        assert s.d_mean == Fraction(3)
        assert s.genus_histogram == {0: 2}
        assert s.L == {1: Fraction(3)}
        assert s.g_mean == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_direct_enumeration(self, n):
        count = 0
        d_sum = 0
        genus = Counter()
        loop_sizes = Counter()

        def visit(d):
            nonlocal count, d_sum
            dec = cg.decompose(d)
            count += 1
            d_sum += len(dec.loops)
            genus[cg.genus(d)] += 1
            for loop in dec.loops:
                loop_sizes[loop.size] += 1

        cg.enumerate_diagrams(n, visit)
        s = cg.exact_stats(n)
        assert s.count == count
        assert s.d_mean == Fraction(d_sum, count)
        assert dict(s.genus_histogram) == dict(genus)
        assert dict(s.L) == {k: Fraction(c, count) for k, c in loop_sizes.items()}

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_internal_identities(self, n):
        s = cg.exact_stats(n)
        assert sum(s.genus_histogram.values()) == s.count
        assert sum(s.L.values()) == s.d_mean
        assert s.g_mean + s.d_mean / 2 == Fraction(n + 2, 2)
        assert all(1 <= k <= n for k in s.L)
        assert all(0 <= g <= (n + 1) // 2 for g in s.genus_histogram)

    def test_rejects_large_order(self):
        with pytest.raises(TooLarge):
            cg.exact_stats(ENUM_MAX_N + 1)


class TestMcStats:
    def test_deterministic_across_threads(self):
        a = cg.mc_stats(6, 3 * BLOCK_SIZE + 17, 9, threads=1)
        b = cg.mc_stats(6, 3 * BLOCK_SIZE + 17, 9, threads=4)
        assert a == b
        assert a.totals == b.totals

    def test_matches_single_kernel_block(self):
        samples, seed = 120, 31
        direct = SampleAccumulator.from_block(
            5, pure.sample_block(5, seed, 0, samples)
        ).finalize(seed)
        assert cg.mc_stats(5, samples, seed) == direct

    def test_matches_split_kernel_blocks(self):
        samples, seed = BLOCK_SIZE + 40, 31
        acc = SampleAccumulator.from_block(
            4, pure.sample_block(4, seed, 0, BLOCK_SIZE)
        ) + SampleAccumulator.from_block(
            4, pure.sample_block(4, seed, BLOCK_SIZE, 40)
        )
        assert cg.mc_stats(4, samples, seed) == acc.finalize(seed)

    def test_totals_identities(self):
        n, samples = 7, 500
        s = cg.mc_stats(n, samples, 12345)
        t = s.totals
        assert t.count == samples
        assert s.d_mean == t.d_sum / samples
        assert int(t.loop_sums.sum()) == t.d_sum
        assert int(t.edge_sums.sum()) == samples * 4 * n
        for k, est in s.L_hat.items():
            assert est.value == int(t.loop_sums[k]) / samples
        for k, est in s.P_hat.items():
            assert est.value == int(t.edge_sums[k]) / (samples * 4 * n)
        # every loop of size k carries between k and 4k edges
        for k in range(1, n + 1):
            ls, es = int(t.loop_sums[k]), int(t.edge_sums[k])
            assert k * ls <= es <= 4 * k * ls

    def test_ci99_shape(self):
        s = cg.mc_stats(4, 400, 77)
        half = Z99 * s.d_stddev / math.sqrt(s.samples)
        assert s.ci99 == (s.d_mean - half, s.d_mean + half)
        assert s.ci99[0] <= s.d_mean <= s.ci99[1]

    def test_close_to_exact_small_order(self):
        exact = cg.exact_stats(2)
        s = cg.mc_stats(2, 4000, 424242)
        se = s.d_stddev / math.sqrt(s.samples)
        assert abs(s.d_mean - float(exact.d_mean)) <= 4 * se
        l2 = s.L_hat[2]
        assert abs(l2.value - float(exact.L[2])) <= 5 * max(l2.se, 1e-9)

    def test_single_sample_has_nan_spread(self):
        s = cg.mc_stats(3, 1, 5)
        assert s.samples == 1
        assert math.isnan(s.d_stddev)
        assert all(math.isnan(e.se) for e in s.L_hat.values())

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=0, samples=10, seed=0),
            dict(n=3, samples=0, seed=0),
            dict(n=3, samples=10, seed=-1),
            dict(n=3, samples=10, seed=2**64),
            dict(n=3, samples=10, seed=0, threads=0),
        ],
    )
    def test_rejects_bad_arguments(self, kwargs):
        with pytest.raises(ValueError):
            cg.mc_stats(**kwargs)


class TestSampleAccumulator:
    def blocks(self):
        return [
            SampleAccumulator.from_block(5, pure.sample_block(5, 7, s, c))
            for s, c in [(0, 10), (10, 5), (15, 25)]
        ]

    def test_merge_associative_with_zero(self):
        a, b, c = self.blocks()
        zero = SampleAccumulator.zero(5)
        assert (a + b) + c == a + (b + c)
        assert zero + a == a
        whole = SampleAccumulator.from_block(5, pure.sample_block(5, 7, 0, 40))
        assert a + b + c == whole

    def test_rejects_mixed_orders(self):
        with pytest.raises(ValueError):
            SampleAccumulator.zero(3) + SampleAccumulator.zero(4)

    def test_empty_finalize_raises(self):
        with pytest.raises(InsufficientSamples):
            SampleAccumulator.zero(3).finalize(0)


class TestPlugStats:
    def test_deterministic_across_threads(self):
        a = cg.plug_mc_stats(12, 8, BLOCK_SIZE + 50, 3, threads=1)
        b = cg.plug_mc_stats(12, 8, BLOCK_SIZE + 50, 3, threads=5)
        assert a == b

    def test_matches_single_kernel_block(self):
        direct = PlugAccumulator.from_block(
            6, 6, pure.plug_block(6, 6, 5, 0, 50)
        ).finalize(5)
        assert cg.plug_mc_stats(6, 6, 50, 5) == direct

    def test_row_shape(self):
        s = cg.plug_mc_stats(10, 7, 60, 21)
        assert s.n == 10 and s.k_max == 7 and s.runs == 60
        assert [r.k for r in s.rows] == list(range(1, 8))
        for r in s.rows:
            for est in (r.plugs, r.gp, r.gm):
                assert est.value >= 0
            for est in (r.hp, r.hm):
                assert 0.0 <= est.value <= 1.0

    def test_final_step_has_no_pointer(self):
        s = cg.plug_mc_stats(5, 5, 40, 2)
        assert s.rows[-1].hp == Estimate(0.0, 0.0)
        assert s.rows[-1].hm == Estimate(0.0, 0.0)

    def test_zero_steps(self):
        s = cg.plug_mc_stats(4, 0, 10, 1)
        assert s.rows == ()

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=3, k_max=4, runs=5, seed=0),
            dict(n=3, k_max=-1, runs=5, seed=0),
            dict(n=3, k_max=2, runs=0, seed=0),
        ],
    )
    def test_rejects_bad_arguments(self, kwargs):
        with pytest.raises(ValueError):
            cg.plug_mc_stats(**kwargs)


class TestResolveThreads:
    def test_explicit_wins(self, monkeypatch):
        monkeypatch.setenv("CHORD_THREADS", "3")
        assert resolve_threads(2) == 2

    def test_env_fallback(self, monkeypatch):
        monkeypatch.setenv("CHORD_THREADS", "3")
        assert resolve_threads(None) == 3

    def test_bad_env_value(self, monkeypatch):
        monkeypatch.setenv("CHORD_THREADS", "many")
        with pytest.raises(ValueError):
            resolve_threads(None)

    def test_default_positive(self, monkeypatch):
        monkeypatch.delenv("CHORD_THREADS", raising=False)
        assert resolve_threads(None) >= 1
