"""Pure-Python engine.

Batch kernels used by the statistics layer.  Each function mirrors one in the
compiled engine and must return exactly the same numbers; everything is built
from integer accumulators so merging blocks is exact and order-independent.

Sample i of a run always uses the generator seeded with
``derive_seed(master_seed, i)`` — block boundaries and thread schedules cannot
change any result.
"""

from __future__ import annotations

import numpy as np

from ..diagrams import _e_end0
from ..procedure import _Machine
from ..rng import Xoshiro256PP, derive_seed

__all__ = ["run_chords", "sample_block", "plug_block", "exact_sweep"]


def run_chords(n, seed):
    """One full procedure run: ((tail0, head0) per chord, closure tuples)."""
    mach = _Machine(n, Xoshiro256PP(seed))
    for _ in range(n):
        mach.random_step()
    chords = list(zip(mach.ch_t, mach.ch_h))
    return chords, [tuple(c) for c in mach.closures]


def _loop_profile(mach):
    """{size: (loop count, edge count)} of the machine's finished diagram."""
    m = mach.m
    occ_chord = mach.occ_chord
    occ_role = mach.occ_role
    ch_t = mach.ch_t
    ch_h = mach.ch_h
    total = 2 * m
    succ = [0] * total
    for e in range(total):
        y = _e_end0(e, m)
        c = occ_chord[y]
        if occ_role[y] == 0:
            z = ch_h[c]
            positive = e < m
        else:
            z = ch_t[c]
            positive = e >= m
        succ[e] = z if positive else m + (z - 1) % m
    visited = bytearray(total)
    seen = [-1] * mach.n
    profile: dict[int, tuple[int, int]] = {}
    for e0 in range(total):
        if visited[e0]:
            continue
        size = 0
        count = 0
        e = e0
        while not visited[e]:
            visited[e] = 1
            count += 1
            c = occ_chord[_e_end0(e, m)]
            if seen[c] != e0:
                seen[c] = e0
                size += 1
            e = succ[e]
        loops, edges = profile.get(size, (0, 0))
        profile[size] = (loops + 1, edges + count)
    return profile


def sample_block(n, master_seed, start, count):
    """Aggregate observables of samples [start, start+count)."""
    d_sum = 0
    d_sq_sum = 0
    loop_sums = np.zeros(n + 1, dtype=np.int64)
    loop_sq_sums = np.zeros(n + 1, dtype=np.int64)
    edge_sums = np.zeros(n + 1, dtype=np.int64)
    edge_sq_sums = np.zeros(n + 1, dtype=np.int64)
    for i in range(start, start + count):
        mach = _Machine(n, Xoshiro256PP(derive_seed(master_seed, i)))
        for _ in range(n):
            mach.random_step()
        profile = _loop_profile(mach)
        d = 0
        for size, (loops, edges) in profile.items():
            d += loops
            loop_sums[size] += loops
            loop_sq_sums[size] += loops * loops
            edge_sums[size] += edges
            edge_sq_sums[size] += edges * edges
        d_sum += d
        d_sq_sum += d * d
    return {
        "count": count,
        "d_sum": d_sum,
        "d_sq_sum": d_sq_sum,
        "loop_sums": loop_sums,
        "loop_sq_sums": loop_sq_sums,
        "edge_sums": edge_sums,
        "edge_sq_sums": edge_sq_sums,
    }


def plug_block(n, k_max, master_seed, start, count):
    """Aggregate plug observables over procedure prefixes of k_max steps."""
    plug_sums = np.zeros(k_max + 1, dtype=np.int64)
    plug_sq_sums = np.zeros(k_max + 1, dtype=np.int64)
    gp_sums = np.zeros(k_max + 1, dtype=np.int64)
    gp_sq_sums = np.zeros(k_max + 1, dtype=np.int64)
    gm_sums = np.zeros(k_max + 1, dtype=np.int64)
    gm_sq_sums = np.zeros(k_max + 1, dtype=np.int64)
    hp_sums = np.zeros(k_max + 1, dtype=np.int64)
    hm_sums = np.zeros(k_max + 1, dtype=np.int64)
    for i in range(start, start + count):
        mach = _Machine(n, Xoshiro256PP(derive_seed(master_seed, i)))
        for k in range(1, k_max + 1):
            mach.random_step()
            p = mach.plug_total
            plug_sums[k] += p
            plug_sq_sums[k] += p * p
            gp_sums[k] += mach.new_pos
            gp_sq_sums[k] += mach.new_pos * mach.new_pos
            gm_sums[k] += mach.new_neg
            gm_sq_sums[k] += mach.new_neg * mach.new_neg
            if mach.pointer is not None:
                pe = mach.conclusion()
                if mach.pos_at[pe]:
                    hp_sums[k] += 1
                if mach.neg_at[pe]:
                    hm_sums[k] += 1
    return {
        "count": count,
        "plug_sums": plug_sums,
        "plug_sq_sums": plug_sq_sums,
        "gp_sums": gp_sums,
        "gp_sq_sums": gp_sq_sums,
        "gm_sums": gm_sums,
        "gm_sq_sums": gm_sq_sums,
        "hp_sums": hp_sums,
        "hm_sums": hm_sums,
    }


def exact_sweep(n):
    """Full enumeration: (count, d_sum, genus counts, loop-size counts).

    Matchings are generated by pairing the smallest free dot with every larger
    free dot; each matching is then swept through all 2^n orientations.
    """
    m = 2 * n
    total = 2 * m
    genus_counts = np.zeros((n + 1) // 2 + 1, dtype=np.int64)
    loop_counts = np.zeros(n + 1, dtype=np.int64)
    d_sum = 0
    count = 0

    used = bytearray(m)
    pair_a = [0] * n
    pair_b = [0] * n
    occ_chord = [-1] * m
    occ_role = [0] * m
    ch_t = [0] * n
    ch_h = [0] * n
    seen = [-1] * n

    def leaf():
        nonlocal d_sum, count
        for i in range(n):
            occ_chord[pair_a[i]] = i
            occ_chord[pair_b[i]] = i
        for mask in range(1 << n):
            for i in range(n):
                if (mask >> i) & 1:
                    t, h = pair_b[i], pair_a[i]
                else:
                    t, h = pair_a[i], pair_b[i]
                ch_t[i] = t
                ch_h[i] = h
                occ_role[t] = 0
                occ_role[h] = 1
            visited = bytearray(total)
            d = 0
            for e0 in range(total):
                if visited[e0]:
                    continue
                d += 1
                size = 0
                e = e0
                while not visited[e]:
                    visited[e] = 1
                    y = _e_end0(e, m)
                    c = occ_chord[y]
                    if seen[c] != e0:
                        seen[c] = e0
                        size += 1
                    if occ_role[y] == 0:
                        z = ch_h[c]
                        positive = e < m
                    else:
                        z = ch_t[c]
                        positive = e >= m
                    e = z if positive else m + (z - 1) % m
                loop_counts[size] += 1
            # seen[] marks are keyed by e0 and loops never repeat a start edge
            # within one diagram, but masks reuse e0 = 0: reset lazily.
            for i in range(n):
                seen[i] = -1
            d_sum += d
            genus_counts[(n + 2 - d) // 2] += 1
            count += 1

    def rec(depth):
        s = 0
        while s < m and used[s]:
            s += 1
        if s == m:
            leaf()
            return
        used[s] = 1
        for c in range(s + 1, m):
            if not used[c]:
                used[c] = 1
                pair_a[depth] = s
                pair_b[depth] = c
                rec(depth + 1)
                used[c] = 0
        used[s] = 0

    rec(0)
    return count, d_sum, genus_counts, loop_counts
