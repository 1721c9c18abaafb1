"""The boundary walk: loops, segments, boundary count, genus.

Thickening the circle to an annulus and each chord to a band produces a surface
whose boundary is a disjoint union of closed curves.  Walking the 4n oriented
edges reads those curves off combinatorially.  The successor of an edge ``e``
ending at dot ``y``:

* ``y`` vacant — the walk stops (``SegmentEnd``); edges only chain across
  occupied dots.
* ``y`` is the tail of chord (y, z) — continue with the edge starting at ``z``
  of the *same* sign.
* ``y`` is the head of chord (z, y) — continue with the edge starting at ``z``
  of the *opposite* sign.

On a full diagram every edge has a successor and the walk partitions the edges
into closed loops; their number ``d`` determines the genus via
``g = (n + 2 - d) / 2``.  On a partial diagram the edges split into loops plus
open segments, one segment starting and one ending at each vacant dot per side
(2 * (2n - 2k) segments in total).

The *size* of a loop or segment is the number of distinct chords it visits; a
loop of size k has between k and 4k edges, and across the whole walk each chord
is visited exactly four times.

:func:`gluing_boundary_count` recomputes ``d`` for a full diagram by an
independent route — gluing edge endpoints around each chord with a union-find —
and never consults the successor rule; it exists to cross-check the walk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .diagrams import (
    Diagram,
    EdgeRef,
    PartialDiagram,
    _check_edge,
    _e_end0,
    _e_start0,
    _edge_id,
    _edge_ref,
    _neg_id_from_start0,
)
from .errors import IncompleteDiagram

__all__ = [
    "Next",
    "SegmentEnd",
    "WalkStep",
    "Loop",
    "Segment",
    "WalkDecomposition",
    "successor",
    "decompose",
    "boundary_count",
    "genus",
    "gluing_boundary_count",
]


@dataclass(frozen=True)
class Next:
    """The walk continues along ``edge``."""

    edge: EdgeRef


@dataclass(frozen=True)
class SegmentEnd:
    """The walk stops at the vacant dot ``dot``."""

    dot: int


WalkStep = Union[Next, SegmentEnd]


@dataclass(frozen=True)
class Loop:
    """A closed boundary component.

    Attributes:
        edges: the edges in walk order, starting from the edge with the
            smallest canonical index.
        size: number of distinct chords visited.
    """

    edges: tuple[EdgeRef, ...]
    size: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Segment:
    """An open walk between two vacant dots (which may coincide)."""

    edges: tuple[EdgeRef, ...]
    start_dot: int
    end_dot: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class WalkDecomposition:
    """All loops and segments of a (partial) diagram.

    Loops are ordered by their smallest canonical edge index, segments by the
    canonical index of their first edge.
    """

    n: int
    loops: tuple[Loop, ...]
    segments: tuple[Segment, ...]


# -- array-level internals ---------------------------------------------------


def _occ_arrays(
    partial: PartialDiagram,
) -> tuple[list[int], list[int], list[int], list[int]]:
    """0-based occupancy arrays: (occ_chord, occ_role, chord_tails, chord_heads)."""
    m = 2 * partial.n
    occ_chord = [-1] * m
    occ_role = [0] * m
    ch_t = []
    ch_h = []
    for i, (t, h) in enumerate(partial.chords):
        occ_chord[t - 1] = i
        occ_role[t - 1] = 0
        occ_chord[h - 1] = i
        occ_role[h - 1] = 1
        ch_t.append(t - 1)
        ch_h.append(h - 1)
    return occ_chord, occ_role, ch_t, ch_h


def _succ0(
    e: int,
    m: int,
    occ_chord: list[int],
    occ_role: list[int],
    ch_t: list[int],
    ch_h: list[int],
) -> int:
    """Successor edge id, or -1 when the end dot is vacant."""
    y = _e_end0(e, m)
    c = occ_chord[y]
    if c < 0:
        return -1
    if occ_role[y] == 0:  # tail: continue at the head, same sign
        z = ch_h[c]
        positive = e < m
    else:  # head: continue at the tail, opposite sign
        z = ch_t[c]
        positive = e >= m
    return z if positive else _neg_id_from_start0(z, m)


def _succ_table(
    m: int,
    occ_chord: list[int],
    occ_role: list[int],
    ch_t: list[int],
    ch_h: list[int],
) -> list[int]:
    return [_succ0(e, m, occ_chord, occ_role, ch_t, ch_h) for e in range(2 * m)]


def _loop_stats(
    m: int,
    occ_chord: list[int],
    occ_role: list[int],
    ch_t: list[int],
    ch_h: list[int],
) -> list[tuple[int, int]]:
    """(size, edge_count) per loop of a *full* diagram, cheap array walk."""
    succ = _succ_table(m, occ_chord, occ_role, ch_t, ch_h)
    visited = bytearray(2 * m)
    seen_chord = [-1] * (m // 2)
    out = []
    for e0 in range(2 * m):
        if visited[e0]:
            continue
        size = 0
        count = 0
        e = e0
        while not visited[e]:
            visited[e] = 1
            count += 1
            c = occ_chord[_e_end0(e, m)]
            if seen_chord[c] != e0:
                seen_chord[c] = e0
                size += 1
            e = succ[e]
        out.append((size, count))
    return out


# -- public operations -------------------------------------------------------


def successor(partial: PartialDiagram, edge: EdgeRef) -> WalkStep:
    """One step of the boundary walk from ``edge``."""
    _check_edge(edge, partial.n)
    m = 2 * partial.n
    e = _edge_id(edge, m)
    occ_chord, occ_role, ch_t, ch_h = _occ_arrays(partial)
    nxt = _succ0(e, m, occ_chord, occ_role, ch_t, ch_h)
    if nxt < 0:
        return SegmentEnd(_e_end0(e, m) + 1)
    return Next(_edge_ref(nxt, m))


def decompose(partial: PartialDiagram) -> WalkDecomposition:
    """Split all 4n edges into loops and segments."""
    m = 2 * partial.n
    total = 2 * m
    occ_chord, occ_role, ch_t, ch_h = _occ_arrays(partial)
    succ = _succ_table(m, occ_chord, occ_role, ch_t, ch_h)
    visited = bytearray(total)

    segments = []
    for e0 in range(total):
        if occ_chord[_e_start0(e0, m)] >= 0:
            continue  # start dot occupied: not a segment start
        edges = []
        e = e0
        while True:
            visited[e] = 1
            edges.append(_edge_ref(e, m))
            nxt = succ[e]
            if nxt < 0:
                break
            e = nxt
        segments.append(
            Segment(tuple(edges), edges[0].start, _e_end0(e, m) + 1)
        )

    loops = []
    for e0 in range(total):
        if visited[e0]:
            continue
        edges = []
        chords_seen = set()
        e = e0
        while not visited[e]:
            visited[e] = 1
            edges.append(_edge_ref(e, m))
            chords_seen.add(occ_chord[_e_end0(e, m)])
            e = succ[e]
        loops.append(Loop(tuple(edges), len(chords_seen)))

    return WalkDecomposition(partial.n, tuple(loops), tuple(segments))


def boundary_count(diagram: Diagram) -> int:
    """Number of boundary loops d of a full diagram (1 <= d <= n+1, d = n mod 2)."""
    if not diagram.is_full:
        raise IncompleteDiagram(
            f"boundary count needs a full diagram, {2 * diagram.n - 2 * diagram.k} "
            "dots are vacant"
        )
    occ_chord, occ_role, ch_t, ch_h = _occ_arrays(diagram)
    return len(_loop_stats(2 * diagram.n, occ_chord, occ_role, ch_t, ch_h))


def genus(diagram: Diagram) -> int:
    """Genus of the glued surface: g = (n + 2 - d) / 2."""
    return (diagram.n + 2 - boundary_count(diagram)) // 2


def gluing_boundary_count(diagram: Diagram) -> int:
    """Independent recomputation of d by gluing edge endpoints.

    Each of the 4n edges gets two endpoint markers.  Markers are identified
    (a) along each edge and (b) across each chord, where the four incoming
    edges at the chord's endpoints hand off to the four outgoing ones:
    [a-1,a]->[b,b+1], [b+1,b]->[a,a+1], [a+1,a]->[b,b-1], [b-1,b]->[a,a-1]
    for a chord from a to b.  The boundary loops are the connected components.
    """
    if not diagram.is_full:
        raise IncompleteDiagram("gluing oracle needs a full diagram")
    n = diagram.n
    m = 2 * n

    # Local edge ids, deliberately self-contained: positive edge starting at
    # 0-based dot s is s; negative edge starting at s is m + (s-1) % m.
    def pos(s: int) -> int:
        return s % m

    def neg(s: int) -> int:
        return m + (s - 1) % m

    parent = list(range(2 * (2 * m)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def start_marker(e: int) -> int:
        return 2 * e

    def end_marker(e: int) -> int:
        return 2 * e + 1

    for e in range(2 * m):
        union(start_marker(e), end_marker(e))
    for (tail, head) in diagram.chords:
        a = tail - 1
        b = head - 1
        union(end_marker(pos(a - 1)), start_marker(pos(b)))
        union(end_marker(neg(b + 1)), start_marker(pos(a)))
        union(end_marker(neg(a + 1)), start_marker(neg(b)))
        union(end_marker(pos(b - 1)), start_marker(neg(a)))

    return sum(1 for x in range(len(parent)) if find(x) == x)
