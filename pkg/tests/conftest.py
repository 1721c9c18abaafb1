"""Shared test helpers: random diagram generators and hypothesis strategies."""

from __future__ import annotations

import numpy as np
from hypothesis import settings
from hypothesis import strategies as st

import chordgenus as cg

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


def permutation_chords(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """n disjoint ordered chords from a uniform permutation of 1..2n.

    Every full diagram corresponds to exactly n! permutations (the chord
    order), so pairing consecutive entries samples diagrams uniformly — an
    oracle for the incremental procedure that shares none of its machinery.
    """
    perm = rng.permutation(2 * n) + 1
    return [(int(perm[2 * i]), int(perm[2 * i + 1])) for i in range(n)]


def random_diagram(n: int, rng: np.random.Generator) -> cg.Diagram:
    return cg.make_diagram(n, permutation_chords(n, rng))


def random_partial(n: int, k: int, rng: np.random.Generator) -> cg.PartialDiagram:
    perm = rng.permutation(2 * n) + 1
    return cg.make_partial(
        n, [(int(perm[2 * i]), int(perm[2 * i + 1])) for i in range(k)]
    )


@st.composite
def partials(draw, max_n: int = 8, min_n: int = 1, full: bool = False):
    """A partial (or full) diagram with uniformly chosen shape."""
    n = draw(st.integers(min_n, max_n))
    k = n if full else draw(st.integers(0, n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_partial(n, k, np.random.default_rng(seed))


@st.composite
def diagrams(draw, max_n: int = 8, min_n: int = 1):
    return draw(partials(max_n=max_n, min_n=min_n, full=True))
