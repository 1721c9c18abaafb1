# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled engine.

Independent C implementation of the sampling pipeline: xoshiro256++ seeded via
SplitMix64, Fenwick-tree order statistics over vacant dots, the union-find
path structure with incremental plug accounting, loop profiling of finished
diagrams, and the exhaustive enumeration sweep.  Mirrors ``pure`` exactly —
same draw order, same derived per-sample seeds, same integer accumulators —
so both engines return identical numbers and the test suite can compare them
wholesale.

State is reset between samples by undoing the journal of touched entries
rather than clearing whole arrays, which keeps short procedure prefixes
(plug statistics) at O(k log n) per run instead of O(n).
"""

from libc.stddef cimport size_t
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

__all__ = ["run_chords", "sample_block", "plug_block", "exact_sweep"]

cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t MIX_A = <uint64_t>0xBF58476D1CE4E5B9
cdef uint64_t MIX_B = <uint64_t>0x94D049BB133111EB


# ---------------------------------------------------------------------------
# RNG (must match chordgenus.rng bit for bit)

cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * MIX_A
    z = (z ^ (z >> 27)) * MIX_B
    return z ^ (z >> 31)


cdef inline uint64_t rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef struct Rng:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline void rng_init(Rng* r, uint64_t seed) noexcept nogil:
    cdef uint64_t sm = seed
    sm += GOLDEN
    r.s0 = mix64(sm)
    sm += GOLDEN
    r.s1 = mix64(sm)
    sm += GOLDEN
    r.s2 = mix64(sm)
    sm += GOLDEN
    r.s3 = mix64(sm)


cdef inline uint64_t rng_next(Rng* r) noexcept nogil:
    cdef uint64_t s0 = r.s0
    cdef uint64_t s1 = r.s1
    cdef uint64_t s2 = r.s2
    cdef uint64_t s3 = r.s3
    cdef uint64_t result = rotl(s0 + s3, 23) + s0
    cdef uint64_t t = s1 << 17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = rotl(s3, 45)
    r.s0 = s0
    r.s1 = s1
    r.s2 = s2
    r.s3 = s3
    return result


cdef inline uint64_t rng_bounded(Rng* r, uint64_t bound) noexcept nogil:
    cdef uint64_t threshold = (0 - bound) % bound
    cdef uint64_t x = rng_next(r)
    while x < threshold:
        x = rng_next(r)
    return x % bound


cdef inline uint64_t derive(uint64_t master, uint64_t index) noexcept nogil:
    return mix64(master + (index + 1) * GOLDEN)


# ---------------------------------------------------------------------------
# Fenwick tree over m dots (1 = vacant)

cdef void fen_build(int32_t* tree, int m) noexcept nogil:
    cdef int i, j
    for i in range(m + 1):
        tree[i] = 0
    for i in range(1, m + 1):
        tree[i] += 1
        j = i + (i & (-i))
        if j <= m:
            tree[j] += tree[i]


cdef inline void fen_add(int32_t* tree, int m, int dot0, int delta) noexcept nogil:
    cdef int i = dot0 + 1
    while i <= m:
        tree[i] += delta
        i += i & (-i)


cdef inline int fen_prefix(int32_t* tree, int dot0) noexcept nogil:
    cdef int s = 0
    cdef int i = dot0
    while i > 0:
        s += tree[i]
        i -= i & (-i)
    return s


cdef inline int fen_select(int32_t* tree, int m, int top, int j) noexcept nogil:
    cdef int pos = 0
    cdef int rem = j + 1
    cdef int bit = top
    cdef int nxt
    while bit:
        nxt = pos + bit
        if nxt <= m and tree[nxt] < rem:
            pos = nxt
            rem -= tree[pos]
        bit >>= 1
    return pos


# ---------------------------------------------------------------------------
# Procedure machine

cdef struct Mach:
    int n
    int m
    int total
    int steps
    int vacant
    int pointer          # -1 once all chords are placed
    int cursor
    int plug_total
    int new_pos
    int new_neg
    int fen_top
    int mark
    int ju_len
    int jd_len
    int cl_len
    int32_t* ch_t
    int32_t* ch_h
    int32_t* occ_chord
    uint8_t* occ_role
    int32_t* fen
    int32_t* parent
    int32_t* size
    int32_t* first
    int32_t* last
    uint8_t* loopf
    int32_t* nxt
    uint8_t* pos_at
    uint8_t* neg_at
    int32_t* chord_mark
    int32_t* ju          # journal: edges whose path-structure entries changed
    int32_t* jd          # journal: dots whose plug counters were incremented
    int32_t* cl_step
    int32_t* cl_size
    int32_t* cl_count
    int32_t* succ        # scratch for loop profiling
    uint8_t* visited
    int32_t* cnt_loops   # per-sample loop counts by size
    int32_t* cnt_edges
    int32_t* touched
    Rng rng


cdef inline int e_end0(int e, int m) noexcept nogil:
    if e < m:
        return (e + 1) % m
    return e - m


cdef bint mach_alloc(Mach* M, int n) noexcept nogil:
    cdef int m = 2 * n
    cdef int total = 2 * m
    memset(M, 0, sizeof(Mach))
    M.n = n
    M.m = m
    M.total = total
    M.ch_t = <int32_t*>malloc(n * sizeof(int32_t))
    M.ch_h = <int32_t*>malloc(n * sizeof(int32_t))
    M.occ_chord = <int32_t*>malloc(m * sizeof(int32_t))
    M.occ_role = <uint8_t*>malloc(m)
    M.fen = <int32_t*>malloc((m + 1) * sizeof(int32_t))
    M.parent = <int32_t*>malloc(total * sizeof(int32_t))
    M.size = <int32_t*>malloc(total * sizeof(int32_t))
    M.first = <int32_t*>malloc(total * sizeof(int32_t))
    M.last = <int32_t*>malloc(total * sizeof(int32_t))
    M.loopf = <uint8_t*>malloc(total)
    M.nxt = <int32_t*>malloc(total * sizeof(int32_t))
    M.pos_at = <uint8_t*>malloc(m)
    M.neg_at = <uint8_t*>malloc(m)
    M.chord_mark = <int32_t*>malloc(n * sizeof(int32_t))
    M.ju = <int32_t*>malloc(14 * (n + 1) * sizeof(int32_t))
    M.jd = <int32_t*>malloc(9 * (n + 1) * sizeof(int32_t))
    M.cl_step = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    M.cl_size = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    M.cl_count = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    M.succ = <int32_t*>malloc(total * sizeof(int32_t))
    M.visited = <uint8_t*>malloc(total)
    M.cnt_loops = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    M.cnt_edges = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    M.touched = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    if (M.ch_t == NULL or M.ch_h == NULL or M.occ_chord == NULL
            or M.occ_role == NULL or M.fen == NULL or M.parent == NULL
            or M.size == NULL or M.first == NULL or M.last == NULL
            or M.loopf == NULL or M.nxt == NULL or M.pos_at == NULL
            or M.neg_at == NULL or M.chord_mark == NULL or M.ju == NULL
            or M.jd == NULL or M.cl_step == NULL or M.cl_size == NULL
            or M.cl_count == NULL or M.succ == NULL or M.visited == NULL
            or M.cnt_loops == NULL or M.cnt_edges == NULL
            or M.touched == NULL):
        return False
    return True


cdef void mach_free(Mach* M) noexcept nogil:
    free(M.ch_t)
    free(M.ch_h)
    free(M.occ_chord)
    free(M.occ_role)
    free(M.fen)
    free(M.parent)
    free(M.size)
    free(M.first)
    free(M.last)
    free(M.loopf)
    free(M.nxt)
    free(M.pos_at)
    free(M.neg_at)
    free(M.chord_mark)
    free(M.ju)
    free(M.jd)
    free(M.cl_step)
    free(M.cl_size)
    free(M.cl_count)
    free(M.succ)
    free(M.visited)
    free(M.cnt_loops)
    free(M.cnt_edges)
    free(M.touched)


cdef void mach_init(Mach* M) noexcept nogil:
    """Fresh state; call once after alloc, then use mach_undo between runs."""
    cdef int i
    cdef int m = M.m
    for i in range(m):
        M.occ_chord[i] = -1
        M.occ_role[i] = 0
        M.pos_at[i] = 0
        M.neg_at[i] = 0
    fen_build(M.fen, m)
    M.fen_top = 1
    while (M.fen_top << 1) <= m:
        M.fen_top <<= 1
    for i in range(M.total):
        M.parent[i] = i
        M.size[i] = 1
        M.first[i] = i
        M.last[i] = i
        M.loopf[i] = 0
        M.nxt[i] = -1
    for i in range(M.n):
        M.chord_mark[i] = -1
        M.cnt_loops[i + 1] = 0
        M.cnt_edges[i + 1] = 0
    M.mark = -1
    M.steps = 0
    M.vacant = m
    M.pointer = 0
    M.cursor = 0
    M.plug_total = 0
    M.new_pos = 0
    M.new_neg = 0
    M.ju_len = 0
    M.jd_len = 0
    M.cl_len = 0


cdef void mach_undo(Mach* M) noexcept nogil:
    """Restore the fresh state by undoing everything the last run touched."""
    cdef int i, x, t, h
    for i in range(M.ju_len):
        x = M.ju[i]
        M.parent[x] = x
        M.size[x] = 1
        M.first[x] = x
        M.last[x] = x
        M.loopf[x] = 0
        M.nxt[x] = -1
    M.ju_len = 0
    for i in range(M.jd_len):
        x = M.jd[i]
        M.pos_at[x] = 0
        M.neg_at[x] = 0
    M.jd_len = 0
    for i in range(M.steps):
        t = M.ch_t[i]
        h = M.ch_h[i]
        M.occ_chord[t] = -1
        M.occ_chord[h] = -1
        fen_add(M.fen, M.m, t, 1)
        fen_add(M.fen, M.m, h, 1)
    M.steps = 0
    M.vacant = M.m
    M.pointer = 0
    M.cursor = 0
    M.plug_total = 0
    M.new_pos = 0
    M.new_neg = 0
    M.cl_len = 0


cdef inline int m_find(Mach* M, int x) noexcept nogil:
    cdef int32_t* parent = M.parent
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline void m_attach(Mach* M, int u, int v) noexcept nogil:
    M.nxt[u] = v
    M.ju[M.ju_len] = u
    M.ju_len += 1
    cdef int ru = m_find(M, u)
    cdef int rv = m_find(M, v)
    cdef int f, l, tmp
    if ru == rv:
        M.loopf[ru] = 1
        M.ju[M.ju_len] = ru
        M.ju_len += 1
        return
    M.ju[M.ju_len] = ru
    M.ju[M.ju_len + 1] = rv
    M.ju_len += 2
    f = M.first[ru]
    l = M.last[rv]
    if M.size[ru] < M.size[rv]:
        tmp = ru
        ru = rv
        rv = tmp
    M.parent[rv] = ru
    M.size[ru] += M.size[rv]
    M.first[ru] = f
    M.last[ru] = l


cdef inline int m_succ(Mach* M, int e) noexcept nogil:
    cdef int m = M.m
    cdef int y = e_end0(e, m)
    cdef int c = M.occ_chord[y]
    cdef int z
    cdef bint positive
    if M.occ_role[y] == 0:
        z = M.ch_h[c]
        positive = e < m
    else:
        z = M.ch_t[c]
        positive = e >= m
    if positive:
        return z
    return m + (z + m - 1) % m


cdef void m_walk_loop(Mach* M, int e0, int* out_size, int* out_count) noexcept nogil:
    M.mark += 1
    cdef int mark = M.mark
    cdef int size = 0
    cdef int count = 0
    cdef int e = e0
    cdef int c
    while True:
        count += 1
        c = M.occ_chord[e_end0(e, M.m)]
        if M.chord_mark[c] != mark:
            M.chord_mark[c] = mark
            size += 1
        e = M.nxt[e]
        if e == e0:
            break
    out_size[0] = size
    out_count[0] = count


cdef void mach_step(Mach* M) noexcept nogil:
    cdef int n = M.n
    cdef int m = M.m
    cdef int k = M.steps
    cdef int root = m_find(M, M.pointer)
    cdef int p = e_end0(M.last[root], m)
    cdef int pick = <int>rng_bounded(&M.rng, <uint64_t>(M.vacant - 1))
    cdef int below = fen_prefix(M.fen, p)
    cdef int j = pick
    if pick >= below:
        j = pick + 1
    cdef int u = fen_select(M.fen, m, M.fen_top, j)
    cdef int orient = <int>rng_bounded(&M.rng, 2)
    cdef int t, h
    if orient == 0:
        t = p
        h = u
    else:
        t = u
        h = p

    M.ch_t[k] = t
    M.ch_h[k] = h
    M.occ_chord[t] = k
    M.occ_role[t] = 0
    M.occ_chord[h] = k
    M.occ_role[h] = 1
    fen_add(M.fen, m, t, -1)
    fen_add(M.fen, m, h, -1)
    M.vacant -= 2

    M.plug_total -= M.pos_at[t] + M.neg_at[t] + M.pos_at[h] + M.neg_at[h]
    M.pos_at[t] = 0
    M.neg_at[t] = 0
    M.pos_at[h] = 0
    M.neg_at[h] = 0

    cdef int ent0 = (t + m - 1) % m
    cdef int ent1 = m + t
    cdef int ent2 = (h + m - 1) % m
    cdef int ent3 = m + h
    m_attach(M, ent0, m_succ(M, ent0))
    m_attach(M, ent1, m_succ(M, ent1))
    m_attach(M, ent2, m_succ(M, ent2))
    m_attach(M, ent3, m_succ(M, ent3))

    cdef int eight[8]
    eight[0] = ent0
    eight[1] = ent1
    eight[2] = ent2
    eight[3] = ent3
    eight[4] = t
    eight[5] = m + (t + m - 1) % m
    eight[6] = h
    eight[7] = m + (h + m - 1) % m
    cdef int roots[8]
    cdef int nroots = 0
    cdef int new_pos = 0
    cdef int new_neg = 0
    cdef int i, r, q, f, l, sd
    cdef bint dup
    for i in range(8):
        r = m_find(M, eight[i])
        dup = False
        for q in range(nroots):
            if roots[q] == r:
                dup = True
                break
        if dup:
            continue
        roots[nroots] = r
        nroots += 1
        if M.loopf[r]:
            continue
        f = M.first[r]
        l = M.last[r]
        if f < m:
            sd = f
        else:
            sd = (f - m + 1) % m
        if sd == e_end0(l, m):
            if (f < m) == (l < m):
                M.pos_at[sd] += 1
                new_pos += 1
            else:
                M.neg_at[sd] += 1
                new_neg += 1
            M.jd[M.jd_len] = sd
            M.jd_len += 1
            M.plug_total += 1
    M.new_pos = new_pos
    M.new_neg = new_neg

    M.steps = k + 1
    cdef int csize, ccount, cursor
    root = m_find(M, M.pointer)
    if M.loopf[root]:
        m_walk_loop(M, M.pointer, &csize, &ccount)
        M.cl_step[M.cl_len] = k + 1
        M.cl_size[M.cl_len] = csize
        M.cl_count[M.cl_len] = ccount
        M.cl_len += 1
        if k + 1 < n:
            cursor = M.cursor
            while M.loopf[m_find(M, cursor)]:
                cursor += 1
            M.cursor = cursor
            M.pointer = cursor
        else:
            M.pointer = -1


# ---------------------------------------------------------------------------
# Public kernels


def run_chords(int n, seed):
    """One full procedure run: ((tail0, head0) per chord, closure tuples)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cdef uint64_t seed64 = <uint64_t>(int(seed) & ((1 << 64) - 1))
    cdef Mach M
    cdef int i
    if not mach_alloc(&M, n):
        mach_free(&M)
        raise MemoryError
    try:
        with nogil:
            mach_init(&M)
            rng_init(&M.rng, seed64)
            for i in range(n):
                mach_step(&M)
        chords = [(int(M.ch_t[i]), int(M.ch_h[i])) for i in range(n)]
        closures = [
            (int(M.cl_step[i]), int(M.cl_size[i]), int(M.cl_count[i]))
            for i in range(M.cl_len)
        ]
        return chords, closures
    finally:
        mach_free(&M)


cdef void profile_and_accumulate(
    Mach* M,
    int64_t* d_sum,
    int64_t* d_sq_sum,
    int64_t* loop_sums,
    int64_t* loop_sq_sums,
    int64_t* edge_sums,
    int64_t* edge_sq_sums,
) noexcept nogil:
    cdef int m = M.m
    cdef int total = M.total
    cdef int e, e0, d, size, count, i, k
    cdef int ntouched = 0
    cdef int64_t c64
    for e in range(total):
        M.succ[e] = m_succ(M, e)
    memset(M.visited, 0, <size_t>total)
    d = 0
    for e0 in range(total):
        if M.visited[e0]:
            continue
        d += 1
        M.mark += 1
        size = 0
        count = 0
        e = e0
        while not M.visited[e]:
            M.visited[e] = 1
            count += 1
            i = M.occ_chord[e_end0(e, m)]
            if M.chord_mark[i] != M.mark:
                M.chord_mark[i] = M.mark
                size += 1
            e = M.succ[e]
        if M.cnt_loops[size] == 0:
            M.touched[ntouched] = size
            ntouched += 1
        M.cnt_loops[size] += 1
        M.cnt_edges[size] += count
    d_sum[0] += d
    d_sq_sum[0] += <int64_t>d * d
    for i in range(ntouched):
        k = M.touched[i]
        c64 = M.cnt_loops[k]
        loop_sums[k] += c64
        loop_sq_sums[k] += c64 * c64
        c64 = M.cnt_edges[k]
        edge_sums[k] += c64
        edge_sq_sums[k] += c64 * c64
        M.cnt_loops[k] = 0
        M.cnt_edges[k] = 0


def sample_block(int n, master_seed, start, count):
    """Aggregate observables of samples [start, start+count)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cdef uint64_t master = <uint64_t>(int(master_seed) & ((1 << 64) - 1))
    cdef uint64_t lo = <uint64_t>int(start)
    cdef int nsamples = int(count)
    loop_sums = np.zeros(n + 1, dtype=np.int64)
    loop_sq_sums = np.zeros(n + 1, dtype=np.int64)
    edge_sums = np.zeros(n + 1, dtype=np.int64)
    edge_sq_sums = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] ls = loop_sums
    cdef int64_t[::1] lq = loop_sq_sums
    cdef int64_t[::1] es = edge_sums
    cdef int64_t[::1] eq = edge_sq_sums
    cdef int64_t d_sum = 0
    cdef int64_t d_sq_sum = 0
    cdef uint64_t i
    cdef int s
    cdef Mach M
    if not mach_alloc(&M, n):
        mach_free(&M)
        raise MemoryError
    try:
        with nogil:
            mach_init(&M)
            for i in range(lo, lo + <uint64_t>nsamples):
                rng_init(&M.rng, derive(master, i))
                for s in range(n):
                    mach_step(&M)
                profile_and_accumulate(
                    &M, &d_sum, &d_sq_sum, &ls[0], &lq[0], &es[0], &eq[0]
                )
                mach_undo(&M)
    finally:
        mach_free(&M)
    return {
        "count": nsamples,
        "d_sum": int(d_sum),
        "d_sq_sum": int(d_sq_sum),
        "loop_sums": loop_sums,
        "loop_sq_sums": loop_sq_sums,
        "edge_sums": edge_sums,
        "edge_sq_sums": edge_sq_sums,
    }


def plug_block(int n, int k_max, master_seed, start, count):
    """Aggregate plug observables over procedure prefixes of k_max steps."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= k_max <= n:
        raise ValueError("k_max must lie in 0..n")
    cdef uint64_t master = <uint64_t>(int(master_seed) & ((1 << 64) - 1))
    cdef uint64_t lo = <uint64_t>int(start)
    cdef int nruns = int(count)
    plug_sums = np.zeros(k_max + 1, dtype=np.int64)
    plug_sq_sums = np.zeros(k_max + 1, dtype=np.int64)
    gp_sums = np.zeros(k_max + 1, dtype=np.int64)
    gp_sq_sums = np.zeros(k_max + 1, dtype=np.int64)
    gm_sums = np.zeros(k_max + 1, dtype=np.int64)
    gm_sq_sums = np.zeros(k_max + 1, dtype=np.int64)
    hp_sums = np.zeros(k_max + 1, dtype=np.int64)
    hm_sums = np.zeros(k_max + 1, dtype=np.int64)
    cdef int64_t[::1] ps = plug_sums
    cdef int64_t[::1] pq = plug_sq_sums
    cdef int64_t[::1] gps = gp_sums
    cdef int64_t[::1] gpq = gp_sq_sums
    cdef int64_t[::1] gms = gm_sums
    cdef int64_t[::1] gmq = gm_sq_sums
    cdef int64_t[::1] hps = hp_sums
    cdef int64_t[::1] hms = hm_sums
    cdef uint64_t i
    cdef int k, root, pe
    cdef int64_t pt
    cdef Mach M
    if not mach_alloc(&M, n):
        mach_free(&M)
        raise MemoryError
    try:
        with nogil:
            mach_init(&M)
            for i in range(lo, lo + <uint64_t>nruns):
                rng_init(&M.rng, derive(master, i))
                for k in range(1, k_max + 1):
                    mach_step(&M)
                    pt = M.plug_total
                    ps[k] += pt
                    pq[k] += pt * pt
                    gps[k] += M.new_pos
                    gpq[k] += <int64_t>M.new_pos * M.new_pos
                    gms[k] += M.new_neg
                    gmq[k] += <int64_t>M.new_neg * M.new_neg
                    if M.pointer >= 0:
                        root = m_find(&M, M.pointer)
                        pe = e_end0(M.last[root], M.m)
                        if M.pos_at[pe]:
                            hps[k] += 1
                        if M.neg_at[pe]:
                            hms[k] += 1
                mach_undo(&M)
    finally:
        mach_free(&M)
    return {
        "count": nruns,
        "plug_sums": plug_sums,
        "plug_sq_sums": plug_sq_sums,
        "gp_sums": gp_sums,
        "gp_sq_sums": gp_sq_sums,
        "gm_sums": gm_sums,
        "gm_sq_sums": gm_sq_sums,
        "hp_sums": hp_sums,
        "hm_sums": hm_sums,
    }


# ---------------------------------------------------------------------------
# Exhaustive sweep

cdef struct Sweep:
    int n
    int m
    int total
    uint8_t* used
    int32_t* pair_a
    int32_t* pair_b
    int32_t* occ_chord
    uint8_t* occ_role
    int32_t* ch_t
    int32_t* ch_h
    int32_t* seen
    uint8_t* visited
    int64_t* genus_counts
    int64_t* loop_counts
    int64_t d_sum
    int64_t count


cdef void sweep_leaf(Sweep* S) noexcept nogil:
    cdef int n = S.n
    cdef int m = S.m
    cdef int total = S.total
    cdef int mask, i, t, h, d, size, e, e0, y, c, z
    cdef bint positive
    for i in range(n):
        S.occ_chord[S.pair_a[i]] = i
        S.occ_chord[S.pair_b[i]] = i
    for mask in range(1 << n):
        for i in range(n):
            if (mask >> i) & 1:
                t = S.pair_b[i]
                h = S.pair_a[i]
            else:
                t = S.pair_a[i]
                h = S.pair_b[i]
            S.ch_t[i] = t
            S.ch_h[i] = h
            S.occ_role[t] = 0
            S.occ_role[h] = 1
        memset(S.visited, 0, <size_t>total)
        d = 0
        for e0 in range(total):
            if S.visited[e0]:
                continue
            d += 1
            size = 0
            e = e0
            while not S.visited[e]:
                S.visited[e] = 1
                y = e_end0(e, m)
                c = S.occ_chord[y]
                if S.seen[c] != e0:
                    S.seen[c] = e0
                    size += 1
                if S.occ_role[y] == 0:
                    z = S.ch_h[c]
                    positive = e < m
                else:
                    z = S.ch_t[c]
                    positive = e >= m
                if positive:
                    e = z
                else:
                    e = m + (z + m - 1) % m
            S.loop_counts[size] += 1
        for i in range(n):
            S.seen[i] = -1
        S.d_sum += d
        S.genus_counts[(n + 2 - d) >> 1] += 1
        S.count += 1


cdef void sweep_rec(Sweep* S, int depth) noexcept nogil:
    cdef int s = 0
    cdef int c
    while s < S.m and S.used[s]:
        s += 1
    if s == S.m:
        sweep_leaf(S)
        return
    S.used[s] = 1
    for c in range(s + 1, S.m):
        if not S.used[c]:
            S.used[c] = 1
            S.pair_a[depth] = s
            S.pair_b[depth] = c
            sweep_rec(S, depth + 1)
            S.used[c] = 0
    S.used[s] = 0


def exact_sweep(int n):
    """Full enumeration: (count, d_sum, genus counts, loop-size counts)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cdef int m = 2 * n
    genus_counts = np.zeros((n + 1) // 2 + 1, dtype=np.int64)
    loop_counts = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] gc = genus_counts
    cdef int64_t[::1] lc = loop_counts
    cdef Sweep S
    cdef int i
    memset(&S, 0, sizeof(Sweep))
    S.n = n
    S.m = m
    S.total = 2 * m
    S.used = <uint8_t*>malloc(m)
    S.pair_a = <int32_t*>malloc(n * sizeof(int32_t))
    S.pair_b = <int32_t*>malloc(n * sizeof(int32_t))
    S.occ_chord = <int32_t*>malloc(m * sizeof(int32_t))
    S.occ_role = <uint8_t*>malloc(m)
    S.ch_t = <int32_t*>malloc(n * sizeof(int32_t))
    S.ch_h = <int32_t*>malloc(n * sizeof(int32_t))
    S.seen = <int32_t*>malloc(n * sizeof(int32_t))
    S.visited = <uint8_t*>malloc(S.total)
    if (S.used == NULL or S.pair_a == NULL or S.pair_b == NULL
            or S.occ_chord == NULL or S.occ_role == NULL or S.ch_t == NULL
            or S.ch_h == NULL or S.seen == NULL or S.visited == NULL):
        free(S.used)
        free(S.pair_a)
        free(S.pair_b)
        free(S.occ_chord)
        free(S.occ_role)
        free(S.ch_t)
        free(S.ch_h)
        free(S.seen)
        free(S.visited)
        raise MemoryError
    try:
        with nogil:
            S.genus_counts = &gc[0]
            S.loop_counts = &lc[0]
            for i in range(m):
                S.used[i] = 0
            for i in range(n):
                S.seen[i] = -1
            sweep_rec(&S, 0)
    finally:
        free(S.used)
        free(S.pair_a)
        free(S.pair_b)
        free(S.occ_chord)
        free(S.occ_role)
        free(S.ch_t)
        free(S.ch_h)
        free(S.seen)
        free(S.visited)
    return int(S.count), int(S.d_sum), genus_counts, loop_counts
