"""Construction, validation, parsing, and edge numbering."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

import chordgenus as cg
from chordgenus import (
    DiagramSyntaxError,
    DotOutOfRange,
    DuplicateDot,
    EdgeRef,
    IncompleteDiagram,
    InvalidOrder,
    OrientedChord,
    TooManyChords,
)
from chordgenus.diagrams import POSITIVE, NEGATIVE

from conftest import diagrams, partials


class TestConstruction:
    def test_basic(self):
        d = cg.make_diagram(2, [(1, 3), (2, 4)])
        assert d.n == 2 and d.k == 2 and d.is_full
        assert d.chords == (OrientedChord(1, 3), OrientedChord(2, 4))
        assert d.vacant_dots == ()

    def test_partial(self):
        p = cg.make_partial(3, [(1, 3)])
        assert not p.is_full
        assert p.vacant_dots == (2, 4, 5, 6)
        assert p.is_vacant(2) and not p.is_vacant(3)

    def test_make_partial_promotes_to_diagram(self):
        p = cg.make_partial(1, [(2, 1)])
        assert isinstance(p, cg.Diagram)

    def test_invalid_order(self):
        with pytest.raises(InvalidOrder):
            cg.make_partial(0, [])
        with pytest.raises(InvalidOrder):
            cg.make_partial(-3, [])

    def test_dot_out_of_range(self):
        with pytest.raises(DotOutOfRange):
            cg.make_diagram(1, [(1, 3)])
        with pytest.raises(DotOutOfRange):
            cg.make_partial(2, [(0, 1)])

    def test_duplicate_dot(self):
        with pytest.raises(DuplicateDot):
            cg.make_diagram(2, [(1, 2), (2, 3)])
        with pytest.raises(DuplicateDot):
            cg.make_partial(2, [(3, 3)])

    def test_too_many_chords(self):
        with pytest.raises(TooManyChords):
            cg.make_partial(1, [(1, 2), (2, 1)])

    def test_incomplete(self):
        with pytest.raises(IncompleteDiagram):
            cg.make_diagram(2, [(1, 2)])

    def test_equality_is_set_like(self):
        a = cg.make_diagram(2, [(1, 3), (2, 4)])
        b = cg.make_diagram(2, [(2, 4), (1, 3)])
        c = cg.make_diagram(2, [(3, 1), (2, 4)])
        assert a == b and hash(a) == hash(b)
        assert a != c

    def test_orientation_matters(self):
        assert cg.make_diagram(1, [(1, 2)]) != cg.make_diagram(1, [(2, 1)])


class TestParsing:
    def test_round_trip_full(self):
        text = "(1,3),(2,4)"
        d = cg.parse_diagram(text)
        assert isinstance(d, cg.Diagram)
        assert cg.format_diagram(d) == text

    def test_round_trip_partial(self):
        p = cg.parse_diagram("n=3;(2,4)")
        assert p.n == 3 and p.k == 1
        assert cg.format_diagram(p) == "n=3;(2,4)"

    def test_empty_partial(self):
        p = cg.parse_diagram("n=2;")
        assert p.n == 2 and p.k == 0

    def test_whitespace_tolerated(self):
        d = cg.parse_diagram(" ( 1 , 3 ) , ( 2 , 4 ) ")
        assert d == cg.make_diagram(2, [(1, 3), (2, 4)])

    @pytest.mark.parametrize(
        "bad",
        ["", "(1,3),", "(1,3)(2,4)", "(1 3)", "1,2", "n=;(1,2)", "(1,3),,(2,4)"],
    )
    def test_syntax_errors(self, bad):
        with pytest.raises(DiagramSyntaxError):
            cg.parse_diagram(bad)

    def test_semantic_errors_still_checked(self):
        with pytest.raises(DotOutOfRange):
            cg.parse_diagram("n=2;(1,5)")

    @given(partials())
    def test_format_parse_round_trip(self, p):
        assert cg.parse_diagram(cg.format_diagram(p)) == p


class TestEdges:
    def test_canonical_order_n2(self):
        labels = [e.label(2) for e in cg.edge_order(2)]
        assert labels == [
            "[1,2]+", "[2,3]+", "[3,4]+", "[4,1]+",
            "[2,1]-", "[3,2]-", "[4,3]-", "[1,4]-",
        ]

    def test_edge_index_round_trip(self):
        for n in (1, 2, 3, 5):
            for i in range(4 * n):
                assert cg.edge_index(cg.edge_at(i, n), n) == i

    def test_n1_edges_distinct_by_sign(self):
        # With a single chord both edges run between dots 1 and 2; the sign
        # is what tells them apart.
        pos, neg = cg.edge_at(0, 1), cg.edge_at(2, 1)
        assert pos == EdgeRef(1, POSITIVE) and neg == EdgeRef(2, NEGATIVE)
        assert pos.end(1) == 2 and neg.end(1) == 1

    def test_edge_ends(self):
        assert EdgeRef(4, POSITIVE).end(2) == 1  # wraps around
        assert EdgeRef(1, NEGATIVE).end(2) == 4

    def test_edge_index_range(self):
        with pytest.raises(cg.DiagramError):
            cg.edge_at(8, 2)
        with pytest.raises(cg.DiagramError):
            cg.edge_at(-1, 2)


class TestNextPrev:
    @given(st.integers(1, 20), st.integers(1, 40))
    def test_next_prev_inverse(self, n, dot):
        if dot > 2 * n:
            dot = (dot - 1) % (2 * n) + 1
        assert cg.prev_dot(cg.next_dot(dot, n), n) == dot
        assert cg.next_dot(cg.prev_dot(dot, n), n) == dot

    def test_wrap(self):
        assert cg.next_dot(4, 2) == 1
        assert cg.prev_dot(1, 2) == 4


@given(diagrams())
def test_diagram_dot_cover(d):
    dots = [dot for ch in d.chords for dot in ch]
    assert sorted(dots) == list(range(1, 2 * d.n + 1))
