"""Plugs: segments that return to their starting dot.

A *plug* is a segment whose start and end dot coincide; that vacant dot is its
*entrance*.  A plug is *positive* when its first and last edges carry the same
sign, *negative* otherwise.  At most two plugs can share an entrance, and when
they do they have the same sign — properties the test suite checks rather than
assumes.

Two vacant dots are *neighbors* when they are the two endpoints of a common
segment; a plug entrance is its own neighbor.

:func:`closure_check` examines the situation around adding one chord: given a
partial diagram P, vacant dots a and b, an edge e entering a, and a chord Q
joining a and b, it reports (i) whether the walk continuing from e in P + Q
comes back out of a (reaches an edge starting at a), and (ii) how a and b
relate to plugs in P.  The shipped invariants — "(i) implies b is a plug
entrance" and the signed refinement "opposite-sign exit without a positive
plug at b implies a,b are neighbors or a is a plug entrance" — are exposed as
verdict properties and swept exhaustively in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import (
    EdgeRef,
    OrientedChord,
    PartialDiagram,
    _check_edge,
    _e_start0,
    _edge_id,
    _edge_ref,
)
from .errors import NotVacant, PreconditionViolated
from .walk import Segment, _occ_arrays, _succ0, decompose

__all__ = ["Plug", "ClosureCheck", "find_plugs", "neighbors", "closure_check"]


@dataclass(frozen=True)
class Plug:
    """A segment returning to its entrance dot; sign is +1 or -1."""

    segment: Segment
    entrance: int
    sign: int


def find_plugs(partial: PartialDiagram) -> tuple[Plug, ...]:
    """All plugs of the partial diagram, in decomposition order."""
    out = []
    for seg in decompose(partial).segments:
        if seg.start_dot == seg.end_dot:
            sign = 1 if seg.edges[0].sign == seg.edges[-1].sign else -1
            out.append(Plug(seg, seg.start_dot, sign))
    return tuple(out)


def neighbors(partial: PartialDiagram, dot: int) -> frozenset[int]:
    """Vacant dots sharing a segment with ``dot`` (at most four)."""
    if not partial.is_vacant(dot):
        raise NotVacant(f"dot {dot} is occupied")
    found = set()
    for seg in decompose(partial).segments:
        if seg.start_dot == dot:
            found.add(seg.end_dot)
        if seg.end_dot == dot:
            found.add(seg.start_dot)
    return frozenset(found)


@dataclass(frozen=True)
class ClosureCheck:
    """Verdict of :func:`closure_check`.

    Attributes:
        a, b: the two vacant dots, as passed in.
        chord: the added chord joining a and b.
        entering: the probed edge entering a.
        exit_reached: whether the walk from ``entering`` in P + chord reaches
            an edge starting at a.
        exit_edge: the first such edge on the walk, or None.
        b_is_entrance / b_has_positive / b_has_negative: plug situation at b
            in P (without the chord).
        a_is_entrance: whether a is a plug entrance in P.
        are_neighbors: whether a and b are neighbors in P.
    """

    a: int
    b: int
    chord: OrientedChord
    entering: EdgeRef
    exit_reached: bool
    exit_edge: EdgeRef | None
    b_is_entrance: bool
    b_has_positive: bool
    b_has_negative: bool
    a_is_entrance: bool
    are_neighbors: bool

    @property
    def signs_opposite(self) -> bool:
        """Entering edge and exit edge carry opposite signs."""
        return self.exit_edge is not None and (
            self.exit_edge.sign != self.entering.sign
        )

    @property
    def entrance_implication(self) -> bool:
        """Exiting at a forces b to be a plug entrance."""
        return (not self.exit_reached) or self.b_is_entrance

    @property
    def refined_implication(self) -> bool:
        """Opposite-sign exit with no positive plug at b forces a,b neighbors
        or a being a plug entrance itself."""
        if not (self.exit_reached and self.signs_opposite and not self.b_has_positive):
            return True
        return self.are_neighbors or self.a_is_entrance


def _require(condition: bool, clause: str) -> None:
    if not condition:
        raise PreconditionViolated(clause)


def closure_check(
    partial: PartialDiagram,
    a: int,
    entering: EdgeRef,
    b: int,
    chord: OrientedChord,
) -> ClosureCheck:
    """Probe the walk around adding ``chord`` = (a,b) or (b,a) to ``partial``."""
    n = partial.n
    m = 2 * n
    _require(1 <= a <= m and partial.is_vacant(a), f"dot a={a} must be vacant")
    _require(1 <= b <= m and partial.is_vacant(b), f"dot b={b} must be vacant")
    _require(a != b, "dots a and b must be distinct")
    _check_edge(entering, n)
    _require(entering.end(n) == a, f"edge {entering.label(n)} does not enter a={a}")
    chord = OrientedChord(*chord)
    _require(
        {chord.tail, chord.head} == {a, b},
        f"chord {chord} does not join a={a} and b={b}",
    )

    # Plug and neighbor relations in P itself.
    b_pos = b_neg = a_entrance = near = False
    for seg in decompose(partial).segments:
        plug = seg.start_dot == seg.end_dot
        if plug and seg.start_dot == b:
            if seg.edges[0].sign == seg.edges[-1].sign:
                b_pos = True
            else:
                b_neg = True
        if plug and seg.start_dot == a:
            a_entrance = True
        if {seg.start_dot, seg.end_dot} == {a, b}:
            near = True

    # Walk from the entering edge with the chord in place.
    occ_chord, occ_role, ch_t, ch_h = _occ_arrays(partial)
    ci = len(ch_t)
    ch_t.append(chord.tail - 1)
    ch_h.append(chord.head - 1)
    occ_chord[chord.tail - 1] = ci
    occ_role[chord.tail - 1] = 0
    occ_chord[chord.head - 1] = ci
    occ_role[chord.head - 1] = 1

    a0 = a - 1
    e = _edge_id(entering, m)
    start = e
    exit_id = -1
    for _ in range(4 * n + 1):
        e = _succ0(e, m, occ_chord, occ_role, ch_t, ch_h)
        if e < 0:
            break  # walk ended at a vacant dot
        if _e_start0(e, m) == a0:
            exit_id = e
            break
        if e == start:
            break  # closed into a loop avoiding a's exits

    return ClosureCheck(
        a=a,
        b=b,
        chord=chord,
        entering=entering,
        exit_reached=exit_id >= 0,
        exit_edge=None if exit_id < 0 else _edge_ref(exit_id, m),
        b_is_entrance=b_pos or b_neg,
        b_has_positive=b_pos,
        b_has_negative=b_neg,
        a_is_entrance=a_entrance,
        are_neighbors=near,
    )
