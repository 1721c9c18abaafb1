"""Oriented chord diagrams on a circle of 2n dots.

Conventions used throughout the package:

* Dots are labeled 1..2n in circular order; arithmetic on dots wraps around
  (``next_dot(2n) == 1``).
* A chord is an *ordered* pair (tail, head) of distinct dots; order n has
  exactly n chords and the number of full diagrams is (2n)!/n!.
* A partial diagram holds k <= n disjoint chords; the remaining 2n-2k dots are
  vacant.
* The circle is thickened to an annulus, so each arc between consecutive dots
  contributes two oppositely oriented boundary edges: the *positive* edge
  [a, a+1] runs with the circle, the *negative* edge [a+1, a] against it.
  An edge is identified by its (start dot, sign) — NOT by its endpoint pair,
  which is ambiguous for n = 1 where both arcs of [1,2] share the endpoint set
  {1, 2}.
* The canonical edge order lists the 2n positive edges [1,2], [2,3], ..,
  [2n,1] and then the 2n negative edges [2,1], [3,2], .., [1,2n].

Internally (and in the compiled kernel) edges carry 0-based ids ``e`` in
``[0, 4n)``: ids below m = 2n are positive with start dot ``e`` (0-based), ids
``m + t`` are negative and *end* at dot ``t``.  That numbering reproduces the
canonical order above.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import IntEnum
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    DiagramSyntaxError,
    DotOutOfRange,
    DuplicateDot,
    EdgeNotOfThisDiagram,
    IncompleteDiagram,
    InvalidOrder,
    TooManyChords,
)

__all__ = [
    "POSITIVE",
    "NEGATIVE",
    "Role",
    "OrientedChord",
    "EdgeRef",
    "PartialDiagram",
    "Diagram",
    "next_dot",
    "prev_dot",
    "make_partial",
    "make_diagram",
    "diagram_count",
    "edge_order",
    "edge_at",
    "edge_index",
    "parse_diagram",
    "format_diagram",
]

POSITIVE = 1
NEGATIVE = -1


class Role(IntEnum):
    """How a dot participates in its chord."""

    TAIL = 0
    HEAD = 1


class OrientedChord(NamedTuple):
    tail: int
    head: int

    def reversed(self) -> "OrientedChord":
        return OrientedChord(self.head, self.tail)

    def __str__(self) -> str:
        return f"({self.tail},{self.head})"


class EdgeRef(NamedTuple):
    """A boundary edge of the thickened circle, keyed by (start, sign)."""

    start: int
    sign: int

    def end(self, n: int) -> int:
        """The dot this edge runs into (depends on the order n)."""
        m = 2 * n
        if self.sign == POSITIVE:
            return self.start % m + 1
        return (self.start - 2) % m + 1

    def label(self, n: int) -> str:
        mark = "+" if self.sign == POSITIVE else "-"
        return f"[{self.start},{self.end(n)}]{mark}"


def next_dot(dot: int, n: int) -> int:
    return dot % (2 * n) + 1


def prev_dot(dot: int, n: int) -> int:
    return (dot - 2) % (2 * n) + 1


def _check_order(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidOrder(f"diagram order must be a positive integer, got {n!r}")


@dataclass(frozen=True, eq=False)
class PartialDiagram:
    """k disjoint oriented chords on 2n dots.

    ``chords`` keeps the construction order (used when formatting); equality
    and hashing treat the chords as a set, because the diagram itself is an
    unordered collection of ordered pairs.

    Attributes:
        n: the order (the circle has 2n dots).
        chords: the chords in input order, normalized to OrientedChord.
        occupancy: read-only mapping dot -> (chord index, Role).
        vacant_dots: the vacant dots in increasing order.
    """

    n: int
    chords: tuple[OrientedChord, ...]
    occupancy: Mapping[int, tuple[int, Role]] = field(init=False, repr=False)
    vacant_dots: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        _check_order(self.n)
        m = 2 * self.n
        chords = tuple(OrientedChord(int(t), int(h)) for (t, h) in self.chords)
        object.__setattr__(self, "chords", chords)
        if len(chords) > self.n:
            raise TooManyChords(
                f"order {self.n} admits at most {self.n} chords, got {len(chords)}"
            )
        occ: dict[int, tuple[int, Role]] = {}
        for i, (t, h) in enumerate(chords):
            for dot, role in ((t, Role.TAIL), (h, Role.HEAD)):
                if not 1 <= dot <= m:
                    raise DotOutOfRange(f"dot {dot} outside 1..{m}")
                if dot in occ or (role is Role.HEAD and t == h):
                    raise DuplicateDot(f"dot {dot} used twice")
                occ[dot] = (i, role)
        object.__setattr__(self, "occupancy", MappingProxyType(occ))
        object.__setattr__(
            self, "vacant_dots", tuple(d for d in range(1, m + 1) if d not in occ)
        )

    @property
    def k(self) -> int:
        return len(self.chords)

    @property
    def is_full(self) -> bool:
        return len(self.chords) == self.n

    @property
    def chord_set(self) -> frozenset[OrientedChord]:
        return frozenset(self.chords)

    def is_vacant(self, dot: int) -> bool:
        if not 1 <= dot <= 2 * self.n:
            raise DotOutOfRange(f"dot {dot} outside 1..{2 * self.n}")
        return dot not in self.occupancy

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialDiagram):
            return NotImplemented
        return self.n == other.n and self.chord_set == other.chord_set

    def __hash__(self) -> int:
        return hash((self.n, self.chord_set))

    def __str__(self) -> str:
        return format_diagram(self)


@dataclass(frozen=True, eq=False)
class Diagram(PartialDiagram):
    """A full diagram: every dot occupied (k = n)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.chords) != self.n:
            raise IncompleteDiagram(
                f"full diagram of order {self.n} needs {self.n} chords, "
                f"got {len(self.chords)}"
            )


def make_partial(
    n: int, chords: Iterable[tuple[int, int]]
) -> PartialDiagram:
    """Build a partial diagram; returns a full :class:`Diagram` when k = n."""
    chords = tuple(chords)
    if len(chords) == n:
        return Diagram(n, chords)
    return PartialDiagram(n, chords)


def make_diagram(n: int, chords: Iterable[tuple[int, int]]) -> Diagram:
    """Build a full diagram; raises IncompleteDiagram if fewer than n chords."""
    return Diagram(n, tuple(chords))


def diagram_count(n: int) -> int:
    """Number of full diagrams of order n: (2n)!/n!."""
    _check_order(n)
    return math.factorial(2 * n) // math.factorial(n)


# ---------------------------------------------------------------------------
# Edge numbering.
#
# 0-based ids: e in [0, m) is the positive edge starting at dot0 e; e in
# [m, 2m) is the negative edge *ending* at dot0 e - m.  These little helpers
# are shared with the walk/procedure modules and mirrored in the compiled
# kernel.


def _e_start0(e: int, m: int) -> int:
    return e if e < m else (e - m + 1) % m


def _e_end0(e: int, m: int) -> int:
    return (e + 1) % m if e < m else e - m


def _pos_id0(start0: int) -> int:
    return start0


def _neg_id_from_start0(start0: int, m: int) -> int:
    return m + (start0 - 1) % m


def _edge_ref(e: int, m: int) -> EdgeRef:
    return EdgeRef(_e_start0(e, m) + 1, POSITIVE if e < m else NEGATIVE)


def _edge_id(edge: EdgeRef, m: int) -> int:
    start0 = edge.start - 1
    if edge.sign == POSITIVE:
        return start0
    return _neg_id_from_start0(start0, m)


def edge_at(index: int, n: int) -> EdgeRef:
    """The edge at 0-based ``index`` of the canonical order."""
    _check_order(n)
    if not 0 <= index < 4 * n:
        raise EdgeNotOfThisDiagram(f"edge index {index} outside 0..{4 * n - 1}")
    return _edge_ref(index, 2 * n)


def edge_index(edge: EdgeRef, n: int) -> int:
    """Position of ``edge`` in the canonical order (inverse of edge_at)."""
    _check_edge(edge, n)
    return _edge_id(edge, 2 * n)


def edge_order(n: int) -> tuple[EdgeRef, ...]:
    """All 4n boundary edges in canonical order."""
    _check_order(n)
    return tuple(_edge_ref(e, 2 * n) for e in range(4 * n))


def _check_edge(edge: EdgeRef, n: int) -> None:
    _check_order(n)
    if not isinstance(edge, tuple) or len(edge) != 2:
        raise EdgeNotOfThisDiagram(f"not an edge reference: {edge!r}")
    start, sign = edge
    if sign not in (POSITIVE, NEGATIVE) or not 1 <= start <= 2 * n:
        raise EdgeNotOfThisDiagram(
            f"no edge with start {start!r} and sign {sign!r} at order {n}"
        )


# ---------------------------------------------------------------------------
# Text form.
#
# Grammar:  ["n=" INT ";"] "(" INT "," INT ")" { "," "(" INT "," INT ")" }
# The chord list may be empty only when the n= prefix is present (otherwise n
# cannot be inferred).  format_diagram emits the prefix exactly when the
# diagram is not full, so parse(format(d)) == d for every diagram and partial.

_PREFIX_RE = re.compile(r"n\s*=\s*(\d+)\s*;(.*)", re.S)
_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_diagram(text: str) -> PartialDiagram:
    body = text.strip()
    n: int | None = None
    prefix = _PREFIX_RE.fullmatch(body)
    if prefix:
        n = int(prefix.group(1))
        body = prefix.group(2).strip()
    pairs: list[tuple[int, int]] = []
    if body:
        pos = 0
        while True:
            match = _PAIR_RE.match(body, pos)
            if not match:
                raise DiagramSyntaxError(
                    f"expected '(a,b)' at position {pos} of {body!r}"
                )
            pairs.append((int(match.group(1)), int(match.group(2))))
            pos = match.end()
            while pos < len(body) and body[pos].isspace():
                pos += 1
            if pos == len(body):
                break
            if body[pos] != ",":
                raise DiagramSyntaxError(
                    f"expected ',' at position {pos} of {body!r}"
                )
            pos += 1
            while pos < len(body) and body[pos].isspace():
                pos += 1
    if n is None:
        if not pairs:
            raise DiagramSyntaxError("empty diagram text with no n= prefix")
        n = len(pairs)
    if n < 1:
        raise InvalidOrder(f"diagram order must be a positive integer, got {n}")
    return make_partial(n, pairs)


def format_diagram(diagram: PartialDiagram) -> str:
    body = ",".join(str(c) for c in diagram.chords)
    if diagram.is_full:
        return body
    return f"n={diagram.n};{body}"
