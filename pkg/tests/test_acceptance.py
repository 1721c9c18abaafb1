"""Acceptance suite: one test per advertised guarantee.

Each test prints a single ``[PASS]``/``[FAIL]`` line naming the guarantee and
the measured evidence, then asserts.  Run with ``pytest -s`` to see the lines
as they happen.
"""

import math
import time
from collections import Counter

import numpy as np
from scipy.stats import chi2

import chordgenus as cg
from chordgenus import kernels
from chordgenus.cli import main
from chordgenus.rng import derive_seed

from conftest import permutation_chords, random_partial
from test_plugs import edges_into


def _report(name, ok, detail):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_01_enumeration_counts():
    expected = {1: 2, 2: 12, 3: 120, 4: 1680, 5: 30240, 6: 665280}
    t0 = time.perf_counter()
    got = {n: cg.enumerate_diagrams(n) for n in range(1, 7)}
    elapsed = time.perf_counter() - t0
    ok = got == expected and elapsed < 120.0
    _report(
        "enumeration counts n=1..6",
        ok,
        f"visited {got}, {elapsed:.1f}s (limit 120s)",
    )


def test_02_oracle_equivalence():
    mismatches = 0
    checked = 0

    def check(diagram):
        nonlocal mismatches, checked
        checked += 1
        if cg.boundary_count(diagram) != cg.gluing_boundary_count(diagram):
            mismatches += 1

    for n in range(1, 5):
        cg.enumerate_diagrams(n, check)
    exhaustive = checked
    for n in (8, 16, 32, 64):
        rng = np.random.default_rng(n)
        for _ in range(10_000):
            check(cg.make_diagram(n, permutation_chords(n, rng)))
    ok = mismatches == 0 and exhaustive == 1814 and checked == exhaustive + 40_000
    _report(
        "walk count equals gluing oracle",
        ok,
        f"{exhaustive} exhaustive (n<=4) + 40000 random (n=8,16,32,64), "
        f"{mismatches} mismatches",
    )


def test_03_structural_invariants():
    failures = 0
    checked = 0

    def check(diagram):
        nonlocal failures, checked
        checked += 1
        n = diagram.n
        dec = cg.decompose(diagram)
        d = len(dec.loops)
        edge_ids = [cg.edge_index(e, n) for loop in dec.loops for e in loop.edges]
        visits = Counter()
        for loop in dec.loops:
            for e in loop.edges:
                visits[diagram.occupancy[e.end(n)][0]] += 1
        g2 = n + 2 - d
        good = (
            sorted(edge_ids) == list(range(4 * n))
            and all(v == 4 for v in visits.values())
            and len(visits) == n
            and 1 <= d <= n + 2
            and d % 2 == n % 2
            and g2 % 2 == 0
            and 0 <= g2 // 2 <= (n + 1) // 2
            and g2 // 2 == cg.genus(diagram)
            and all(
                loop.size <= loop.edge_count <= 4 * loop.size
                for loop in dec.loops
            )
        )
        if not good:
            failures += 1

    for n in range(1, 6):
        cg.enumerate_diagrams(n, check)
    ok = failures == 0 and checked == 2 + 12 + 120 + 1680 + 30240
    _report(
        "structural invariants n<=5",
        ok,
        f"{checked} diagrams: edge partition, 4 visits/chord, d range+parity, "
        f"Euler genus, loop size bounds; {failures} violations",
    )


def test_04_known_small_cases():
    cases = [
        ([(1, 2)], 3, 0),
        ([(2, 1)], 3, 0),
        ([(1, 3), (2, 4)], 2, 1),
        ([(1, 2), (3, 4)], 4, 0),
    ]
    bad = []
    for chords, d, g in cases:
        diagram = cg.make_diagram(max(max(c) for c in chords) // 2, chords)
        got = (
            cg.boundary_count(diagram),
            cg.gluing_boundary_count(diagram),
            cg.genus(diagram),
        )
        if got != (d, d, g):
            bad.append((chords, got))
    _report(
        "known small cases",
        not bad,
        "n=1 both orientations d=3 g=0; (1,3),(2,4) d=2 g=1; "
        f"(1,2),(3,4) d=4 g=0; confirmed by both oracles; mismatches: {bad}",
    )


def test_05_choice_tree_exact_uniformity():
    t0 = time.perf_counter()
    results = {}
    for n in (1, 2, 3):
        leaves = [leaf for _, leaf in cg.choice_tree(n)]
        results[n] = (len(leaves), len(set(leaves)))
    elapsed = time.perf_counter() - t0
    ok = (
        all(results[n] == (cg.diagram_count(n),) * 2 for n in (1, 2, 3))
        and elapsed < 1.0
    )
    _report(
        "choice tree hits every diagram once (n=1,2,3)",
        ok,
        f"leaf counts {dict((n, v[0]) for n, v in results.items())} "
        f"all distinct, {elapsed:.2f}s (limit 1s)",
    )


def test_06_chi_square_uniformity():
    runs = 100_000
    master = 12345
    engine = kernels.active()
    counts = Counter()
    for i in range(runs):
        chords, _ = engine.run_chords(2, derive_seed(master, i))
        counts[frozenset((t + 1, h + 1) for t, h in chords)] += 1
    expected = runs / 12
    statistic = sum((c - expected) ** 2 / expected for c in counts.values())
    critical = chi2.isf(1e-3, 11)
    ok = len(counts) == 12 and statistic < critical
    _report(
        "chi-square uniformity at n=2",
        ok,
        f"{runs} runs over 12 diagrams: chi2={statistic:.2f} < "
        f"critical({critical:.2f}) at significance 1e-3",
    )


def test_07_loop_frequency_bounds():
    stats = cg.mc_stats(10_000, 10_000, seed=7)
    report = cg.bound_report(stats)
    upper = [r for r in report.rows if r.check == "L_upper"]
    lower = [r for r in report.rows if r.check == "L_lower"]
    ok = (
        [r.k for r in upper] == list(range(1, 101))
        and [r.k for r in lower] == list(range(1, 101))
        and all(r.status == "pass" for r in report.rows)
    )
    _report(
        "loop frequency bounds at n=10^4",
        ok,
        f"L_k <= 3/k and L_k >= 1/(9k) for k=1..100 within 3 SE; "
        f"all {len(report.rows)} report rows pass",
    )


def test_08_mean_loop_count_envelope_and_growth():
    seeds_n = (100, 1_000, 10_000, 100_000)
    means = []
    in_envelope = True
    for n in seeds_n:
        est = cg.mc_stats(n, 1_000, seed=77)
        means.append(est.d_mean)
        lo = math.log(n) / 18.0
        hi = 3.0 * math.log(n) + 400.0
        if not lo <= est.d_mean <= hi:
            in_envelope = False
    growing = all(a < b for a, b in zip(means, means[1:]))
    ok = in_envelope and growing
    shown = ", ".join(f"{m:.3f}" for m in means)
    _report(
        "mean loop count envelope and growth",
        ok,
        f"d_mean at n=10^2..10^5 = [{shown}] inside [ln(n)/18, 3 ln(n)+400], "
        f"strictly increasing",
    )


def test_09_plug_bounds():
    stats = cg.plug_mc_stats(10_000, 100, 10_000, seed=11)
    report = cg.bound_report(stats)
    by_check = Counter(r.check for r in report.rows)
    ok = (
        by_check
        == {
            "plug_count": 100,
            "G_plus": 100,
            "G_minus": 100,
            "H_plus": 100,
            "H_minus": 100,
        }
        and all(r.status == "pass" for r in report.rows)
    )
    _report(
        "plug bounds at n=10^4, k<=100",
        ok,
        f"plugs<=1/4, G+<=5/n, G-<=20/n, H+<=6/n, H-<=21/n within 3 SE; "
        f"all {len(report.rows)} rows pass over 10^4 runs",
    )


def _closure_cases(partial):
    for a in partial.vacant_dots:
        for entering in edges_into(a, partial.n):
            for b in partial.vacant_dots:
                if b == a:
                    continue
                for chord in ((a, b), (b, a)):
                    yield a, entering, b, chord


def test_10_closure_implication_sweeps():
    n, m = 3, 6
    all_chords = [(a, b) for a in range(1, m + 1) for b in range(1, m + 1) if a != b]
    partial_sets = [[]]
    partial_sets += [[c] for c in all_chords]
    for i, c1 in enumerate(all_chords):
        for c2 in all_chords[i + 1:]:
            if not set(c1) & set(c2):
                partial_sets.append([c1, c2])
    exhaustive = 0
    violations = 0
    for chords in partial_sets:
        partial = cg.make_partial(n, chords)
        for a, entering, b, chord in _closure_cases(partial):
            verdict = cg.closure_check(partial, a, entering, b, chord)
            exhaustive += 1
            if not (verdict.entrance_implication and verdict.refined_implication):
                violations += 1

    rng = np.random.default_rng(20260824)
    randomized = 100_000
    for _ in range(randomized):
        rn = int(rng.integers(4, 21))
        rk = int(rng.integers(0, rn))
        partial = random_partial(rn, rk, rng)
        vacant = partial.vacant_dots
        a = vacant[int(rng.integers(len(vacant)))]
        b = a
        while b == a:
            b = vacant[int(rng.integers(len(vacant)))]
        entering = edges_into(a, rn)[int(rng.integers(2))]
        chord = (a, b) if rng.integers(2) else (b, a)
        verdict = cg.closure_check(partial, a, entering, b, chord)
        if not (verdict.entrance_implication and verdict.refined_implication):
            violations += 1
    ok = violations == 0 and exhaustive == 3000 and len(partial_sets) == 211
    _report(
        "closure implications hold everywhere",
        ok,
        f"{exhaustive} exhaustive cases (all n=3, k<=2 partials, all a/e/b/Q) "
        f"+ {randomized} randomized (n=4..20): {violations} counterexamples",
    )


def test_11_sample_cli_byte_determinism(tmp_path, monkeypatch):
    blobs = {}
    for fmt in ("csv", "json"):
        for tag, threads in (("a", "1"), ("b", "7"), ("c", "7")):
            monkeypatch.setenv("CHORD_THREADS", threads)
            out = tmp_path / f"{fmt}-{tag}.{fmt}"
            rc = main(
                [
                    "sample", "--n", "50", "--samples", "600", "--seed", "123",
                    "--format", fmt, "--out", str(out),
                ]
            )
            assert rc == 0
            blobs.setdefault(fmt, []).append(out.read_bytes())
    ok = all(len(set(v)) == 1 for v in blobs.values())
    _report(
        "sample output bytes independent of thread count",
        ok,
        "csv and json reruns with threads 1 vs 7 vs 7 all byte-identical",
    )
