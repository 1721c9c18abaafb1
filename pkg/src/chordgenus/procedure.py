"""Incremental uniform generation of diagrams.

A diagram of order n is grown one chord at a time.  A *pointer* edge marks one
open segment of the partial walk; before step j there are 2n - 2(j-1) vacant
dots and the segment's concluding dot p is one of them.  The step places a
chord joining p to a uniformly chosen other vacant dot, oriented by a fair
coin — 2(2n - 2j + 1) equally likely choices at step j, which telescopes to
(2n)!/n! equally likely runs, one per diagram, so the final diagram is exactly
uniform.

When the pointer's segment closes into a loop the closure is recorded as
(step, size, edge_count) and the pointer moves to the smallest-index edge that
still lies on an open segment.  Loops are final: once closed they never change.
The first recorded closure at step k always has size exactly k (the pointer's
segment has visited every chord placed so far).

After step n no open segments remain, the pointer is gone (None), and the
closure that ended step n is the last record.

The same step logic runs in three places: here (readable, object API), in
``kernels.pure`` (batch statistics, same code path), and in the compiled
kernel (independent C implementation).  Tests pin all three to identical
transcripts.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .diagrams import (
    Diagram,
    EdgeRef,
    OrientedChord,
    PartialDiagram,
    _check_order,
    _e_end0,
    _e_start0,
    _edge_ref,
    make_diagram,
    make_partial,
)
from .errors import PointerInLoop, ProcedureComplete, TooLarge
from .rng import Xoshiro256PP
from .walk import Loop, Segment

__all__ = [
    "ClosureRecord",
    "StepEvent",
    "ProcedureState",
    "init_procedure",
    "step",
    "run_procedure",
    "pointer_segment",
    "choice_tree",
]

_TREE_MAX_N = 4


class ClosureRecord(NamedTuple):
    """A pointer-segment closure: at which step, how many chords, how many edges."""

    step: int
    size: int
    edge_count: int


class StepEvent(NamedTuple):
    """What one step did.

    ``closed_loop`` is set iff the pointer's segment closed at this step;
    ``new_pointer`` is set iff a closure happened before the final step (the
    pointer was reassigned).
    """

    step: int
    chord: OrientedChord
    closed_loop: Loop | None
    new_pointer: EdgeRef | None


class _Fenwick:
    """Binary indexed tree over m dots tracking which are vacant.

    Supports prefix counts and order-statistic selection, both O(log m); the
    procedure uses it to find the j-th smallest vacant dot.
    """

    __slots__ = ("m", "tree", "top")

    def __init__(self, m: int) -> None:
        self.m = m
        tree = [0] * (m + 1)
        for i in range(1, m + 1):  # build with every dot vacant
            tree[i] += 1
            j = i + (i & -i)
            if j <= m:
                tree[j] += tree[i]
        self.tree = tree
        self.top = 1 << (m.bit_length() - 1)

    def add(self, dot0: int, delta: int) -> None:
        i = dot0 + 1
        tree = self.tree
        while i <= self.m:
            tree[i] += delta
            i += i & -i

    def prefix(self, dot0: int) -> int:
        """Number of vacant dots with index < dot0."""
        s = 0
        i = dot0
        tree = self.tree
        while i > 0:
            s += tree[i]
            i -= i & -i
        return s

    def select(self, j: int) -> int:
        """0-based index of the (j+1)-th vacant dot."""
        pos = 0
        rem = j + 1
        bit = self.top
        tree = self.tree
        while bit:
            nxt = pos + bit
            if nxt <= self.m and tree[nxt] < rem:
                pos = nxt
                rem -= tree[pos]
            bit >>= 1
        return pos

    def clone(self) -> "_Fenwick":
        other = object.__new__(_Fenwick)
        other.m = self.m
        other.tree = self.tree[:]
        other.top = self.top
        return other


class _Machine:
    """Mutable procedure state over 0-based dots and edge ids.

    The open/closed walk structure is a union-find over the 4n edges with per
    root bookkeeping: first and last edge of the path, loop flag, plus the
    glued successor array.  Each step does O(1) amortized work apart from two
    Fenwick operations and the (amortized-bounded) closure walks.

    Plug accounting is maintained incrementally: ``pos_at[d]`` / ``neg_at[d]``
    count the plugs (segments that start and end at the same vacant dot d) by
    sign, ``new_pos`` / ``new_neg`` are the plugs completed by the latest step.
    """

    __slots__ = (
        "n", "m", "rng", "steps", "vacant",
        "ch_t", "ch_h", "occ_chord", "occ_role", "fen",
        "parent", "size", "first", "last", "loopf", "nxt",
        "pointer", "cursor", "closures",
        "pos_at", "neg_at", "plug_total", "new_pos", "new_neg",
        "chord_mark", "mark",
    )

    def __init__(self, n: int, rng: Xoshiro256PP | None) -> None:
        m = 2 * n
        total = 2 * m
        self.n = n
        self.m = m
        self.rng = rng
        self.steps = 0
        self.vacant = m
        self.ch_t: list[int] = []
        self.ch_h: list[int] = []
        self.occ_chord = [-1] * m
        self.occ_role = [0] * m
        self.fen = _Fenwick(m)
        self.parent = list(range(total))
        self.size = [1] * total
        self.first = list(range(total))
        self.last = list(range(total))
        self.loopf = bytearray(total)
        self.nxt = [-1] * total
        self.pointer: int | None = 0
        self.cursor = 0
        self.closures: list[ClosureRecord] = []
        self.pos_at = bytearray(m)
        self.neg_at = bytearray(m)
        self.plug_total = 0
        self.new_pos = 0
        self.new_neg = 0
        self.chord_mark = [-1] * n
        self.mark = -1

    def clone(self) -> "_Machine":
        other = object.__new__(_Machine)
        other.n = self.n
        other.m = self.m
        other.rng = self.rng
        other.steps = self.steps
        other.vacant = self.vacant
        other.ch_t = self.ch_t[:]
        other.ch_h = self.ch_h[:]
        other.occ_chord = self.occ_chord[:]
        other.occ_role = self.occ_role[:]
        other.fen = self.fen.clone()
        other.parent = self.parent[:]
        other.size = self.size[:]
        other.first = self.first[:]
        other.last = self.last[:]
        other.loopf = bytearray(self.loopf)
        other.nxt = self.nxt[:]
        other.pointer = self.pointer
        other.cursor = self.cursor
        other.closures = self.closures[:]
        other.pos_at = bytearray(self.pos_at)
        other.neg_at = bytearray(self.neg_at)
        other.plug_total = self.plug_total
        other.new_pos = self.new_pos
        other.new_neg = self.new_neg
        other.chord_mark = self.chord_mark[:]
        other.mark = self.mark
        return other

    # -- structure queries --

    def _find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def conclusion(self) -> int:
        """0-based concluding dot of the pointer's segment."""
        if self.pointer is None:
            raise ProcedureComplete("all chords placed, no pointer")
        root = self._find(self.pointer)
        if self.loopf[root]:
            raise PointerInLoop("pointer sits in a closed loop")
        return _e_end0(self.last[root], self.m)

    def segment_edge_ids(self) -> list[int]:
        """Edge ids of the pointer's segment, in walk order."""
        if self.pointer is None:
            raise ProcedureComplete("all chords placed, no pointer")
        root = self._find(self.pointer)
        if self.loopf[root]:
            raise PointerInLoop("pointer sits in a closed loop")
        out = []
        e = self.first[root]
        while e >= 0:
            out.append(e)
            e = self.nxt[e]
        return out

    # -- stepping --

    def _succ_of(self, e: int) -> int:
        y = _e_end0(e, self.m)
        c = self.occ_chord[y]
        if self.occ_role[y] == 0:
            z = self.ch_h[c]
            positive = e < self.m
        else:
            z = self.ch_t[c]
            positive = e >= self.m
        return z if positive else self.m + (z - 1) % self.m

    def _attach(self, u: int, v: int) -> None:
        self.nxt[u] = v
        ru = self._find(u)
        rv = self._find(v)
        if ru == rv:
            self.loopf[ru] = 1
            return
        f = self.first[ru]
        l = self.last[rv]
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        self.first[ru] = f
        self.last[ru] = l

    def _walk_loop(self, e0: int) -> tuple[int, int, list[int]]:
        """(size, edge_count, edge ids) of the loop through e0."""
        self.mark += 1
        mark = self.mark
        chord_mark = self.chord_mark
        occ_chord = self.occ_chord
        nxt = self.nxt
        m = self.m
        size = 0
        edges = []
        e = e0
        while True:
            edges.append(e)
            c = occ_chord[_e_end0(e, m)]
            if chord_mark[c] != mark:
                chord_mark[c] = mark
                size += 1
            e = nxt[e]
            if e == e0:
                break
        return size, len(edges), edges

    def apply_choice(
        self, pick: int, orient: int
    ) -> tuple[int, int, list[int] | None]:
        """Place the chord selected by (pick, orient).

        ``pick`` indexes the eligible vacant dots (all vacant dots except the
        concluding dot p, in increasing order); ``orient`` 0 means the chord
        runs p -> u, 1 means u -> p.  Returns (tail0, head0, closed loop edge
        ids or None).
        """
        n = self.n
        m = self.m
        k = self.steps
        if k >= n:
            raise ProcedureComplete(f"all {n} chords already placed")
        p = self.conclusion()
        below = self.fen.prefix(p)
        j = pick + 1 if pick >= below else pick
        u = self.fen.select(j)
        t, h = (p, u) if orient == 0 else (u, p)

        ci = k
        self.ch_t.append(t)
        self.ch_h.append(h)
        self.occ_chord[t] = ci
        self.occ_role[t] = 0
        self.occ_chord[h] = ci
        self.occ_role[h] = 1
        self.fen.add(t, -1)
        self.fen.add(h, -1)
        self.vacant -= 2

        # Plugs whose entrance just got occupied are gone.
        pos_at = self.pos_at
        neg_at = self.neg_at
        self.plug_total -= pos_at[t] + neg_at[t] + pos_at[h] + neg_at[h]
        pos_at[t] = neg_at[t] = pos_at[h] = neg_at[h] = 0

        # Glue the four edges that run into the two newly occupied dots.
        entering = ((t - 1) % m, m + t, (h - 1) % m, m + h)
        for e in entering:
            self._attach(e, self._succ_of(e))

        # Fresh plugs: scan the (merged) components of the eight edges at t, h.
        touched = entering + (t, m + (t - 1) % m, h, m + (h - 1) % m)
        roots: list[int] = []
        new_pos = new_neg = 0
        for e in touched:
            r = self._find(e)
            if r in roots:
                continue
            roots.append(r)
            if self.loopf[r]:
                continue
            f = self.first[r]
            l = self.last[r]
            sd = _e_start0(f, m)
            if sd == _e_end0(l, m):
                if (f < m) == (l < m):
                    pos_at[sd] += 1
                    new_pos += 1
                else:
                    neg_at[sd] += 1
                    new_neg += 1
                self.plug_total += 1
        self.new_pos = new_pos
        self.new_neg = new_neg

        self.steps = k + 1
        loop_edges: list[int] | None = None
        root = self._find(self.pointer)
        if self.loopf[root]:
            size, count, loop_edges = self._walk_loop(self.pointer)
            self.closures.append(ClosureRecord(k + 1, size, count))
            if k + 1 < n:
                cursor = self.cursor
                while self.loopf[self._find(cursor)]:
                    cursor += 1
                self.cursor = cursor
                self.pointer = cursor
            else:
                self.pointer = None
        return t, h, loop_edges

    def random_step(self) -> tuple[int, int, list[int] | None]:
        rng = self.rng
        pick = rng.bounded(self.vacant - 1)
        orient = rng.bounded(2)
        return self.apply_choice(pick, orient)


class ProcedureState:
    """Public wrapper around a running procedure.

    Attributes:
        n: order of the diagram being built.
        seed: the RNG seed this state was initialized with.
    """

    __slots__ = ("n", "seed", "_machine")

    def __init__(self, n: int, seed: int, machine: _Machine) -> None:
        self.n = n
        self.seed = seed
        self._machine = machine

    @property
    def step_count(self) -> int:
        return self._machine.steps

    @property
    def is_complete(self) -> bool:
        return self._machine.steps == self.n

    @property
    def pointer(self) -> EdgeRef | None:
        e = self._machine.pointer
        return None if e is None else _edge_ref(e, self._machine.m)

    @property
    def closures(self) -> tuple[ClosureRecord, ...]:
        return tuple(self._machine.closures)

    @property
    def partial(self) -> PartialDiagram:
        mach = self._machine
        chords = [(t + 1, h + 1) for t, h in zip(mach.ch_t, mach.ch_h)]
        return make_partial(self.n, chords)

    def __repr__(self) -> str:
        return (
            f"ProcedureState(n={self.n}, seed={self.seed}, "
            f"step={self.step_count}, pointer={self.pointer})"
        )


def init_procedure(n: int, seed: int) -> ProcedureState:
    """Fresh state: no chords, pointer on the first edge [1,2]+."""
    _check_order(n)
    return ProcedureState(n, seed, _Machine(n, Xoshiro256PP(seed)))


def step(state: ProcedureState) -> StepEvent:
    """Advance one chord placement; raises ProcedureComplete when done."""
    mach = state._machine
    t, h, loop_edges = mach.random_step()
    m = mach.m
    closed = None
    new_pointer = None
    if loop_edges is not None:
        lo = loop_edges.index(min(loop_edges))
        rotated = loop_edges[lo:] + loop_edges[:lo]
        closed = Loop(
            tuple(_edge_ref(e, m) for e in rotated), mach.closures[-1].size
        )
        if mach.pointer is not None:
            new_pointer = _edge_ref(mach.pointer, m)
    return StepEvent(
        mach.steps, OrientedChord(t + 1, h + 1), closed, new_pointer
    )


def run_procedure(n: int, seed: int) -> tuple[Diagram, tuple[ClosureRecord, ...]]:
    """Run all n steps; returns the uniform diagram and the closure records."""
    _check_order(n)
    mach = _Machine(n, Xoshiro256PP(seed))
    for _ in range(n):
        mach.random_step()
    chords = [(t + 1, h + 1) for t, h in zip(mach.ch_t, mach.ch_h)]
    return make_diagram(n, chords), tuple(mach.closures)


def pointer_segment(state: ProcedureState) -> Segment:
    """The open segment carrying the pointer (start dot may equal end dot)."""
    mach = state._machine
    ids = mach.segment_edge_ids()
    m = mach.m
    edges = tuple(_edge_ref(e, m) for e in ids)
    return Segment(
        edges, _e_start0(ids[0], m) + 1, _e_end0(ids[-1], m) + 1
    )


def choice_tree(n: int) -> Iterator[tuple[tuple[tuple[int, int], ...], Diagram]]:
    """Depth-first enumeration of every run of the procedure.

    Yields (choices, diagram) per leaf, where choices is the sequence of
    (pick, orient) pairs; picks ascend first, then orientation.  The leaf
    count is (2n)!/n! and every leaf is a distinct diagram.  Exhaustive, so
    capped at n <= 4.
    """
    _check_order(n)
    if n > _TREE_MAX_N:
        raise TooLarge(f"choice tree is exhaustive; n <= {_TREE_MAX_N} only")

    def walk(
        mach: _Machine, trail: tuple[tuple[int, int], ...]
    ) -> Iterator[tuple[tuple[tuple[int, int], ...], Diagram]]:
        if mach.steps == n:
            chords = [(t + 1, h + 1) for t, h in zip(mach.ch_t, mach.ch_h)]
            yield trail, make_diagram(n, chords)
            return
        for pick in range(mach.vacant - 1):
            for orient in (0, 1):
                branch = mach.clone()
                branch.apply_choice(pick, orient)
                yield from walk(branch, trail + ((pick, orient),))

    yield from walk(_Machine(n, None), ())
