# treecross/core/crossings.py
"""Crossings of a labelled tree whose vertices sit on a circle in label order.

Only the cyclic order matters: chords {u,v} and {x,y} (u < v, x < y) cross
iff their endpoints interleave, u < x < v < y or x < u < y < v. Chords that
share a vertex never cross. A crossing is named by the 4-tuple a < b < c < d
of its endpoints, with {a,c} and {b,d} the two chords.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterator

import numpy as np

from ..errors import GuardViolation, require
from ..utils.inversions import count_inversions, ranks_with_ties_last
from .trees import LabeledTree

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CrossingIndex:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if not 1 <= self.a < self.b < self.c < self.d:
            raise GuardViolation(f"crossing index needs 1 <= a < b < c < d, got {self.vertices}")

    @classmethod
    def of(cls, vertices) -> "CrossingIndex":
        a, b, c, d = sorted(int(v) for v in vertices)
        return cls(a, b, c, d)

    @property
    def vertices(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def chords(self) -> tuple:
        return ((self.a, self.c), (self.b, self.d))

    def is_disjoint(self, other: "CrossingIndex") -> bool:
        return not set(self.vertices) & set(other.vertices)

    def __str__(self):
        return "({},{},{},{})".format(*self.vertices)


def index_count(n: int) -> int:
    return comb(n, 4)


def all_indices(n: int) -> Iterator[CrossingIndex]:
    for quad in itertools.combinations(range(1, n + 1), 4):
        yield CrossingIndex(*quad)


def random_index(n: int, rng: np.random.Generator) -> CrossingIndex:
    """Uniform over the C(n,4) indices."""
    require(n >= 4, f"crossing indices need n >= 4, got {n}")
    return CrossingIndex.of(rng.choice(n, size=4, replace=False) + 1)


def chords_interleave(e1, e2) -> bool:
    u, v = sorted(e1)
    x, y = sorted(e2)
    return u < x < v < y or x < u < y < v


def has_crossing_at(t: LabeledTree, j: CrossingIndex) -> bool:
    require(j.d <= t.n, f"index {j} does not fit a tree on {t.n} vertices")
    return t.has_edge(j.a, j.c) and t.has_edge(j.b, j.d)


def count_crossings_naive(t: LabeledTree) -> int:
    return sum(1 for e1, e2 in itertools.combinations(t.sorted_edges(), 2) if chords_interleave(e1, e2))


def count_crossings_fast(t: LabeledTree) -> int:
    """Same value as `count_crossings_naive` in O(n log n).

    With edges (u, v), u < v, the crossing pairs are the pairs with
    u1 < u2 < v1 < v2. That set is every pair with u1 < u2 < v1 (a sorted
    search per edge) minus the pairs with u1 < u2 and v2 <= v1 (an inversion
    count over the right endpoints listed by left endpoint).
    """
    return count_interleaving(t.edge_array)


def count_interleaving(pairs: np.ndarray) -> int:
    if len(pairs) < 2:
        return 0
    lefts, rights = pairs[:, 0], pairs[:, 1]
    sorted_lefts = np.sort(lefts)
    opened = np.searchsorted(sorted_lefts, rights, side="left") - np.searchsorted(sorted_lefts, lefts, side="right")
    started_inside = int(opened.sum())

    # rows by (left, right): equal lefts then have increasing rights and never count
    order = np.lexsort((rights, lefts))
    nested = count_inversions(ranks_with_ties_last(rights[order]))
    return started_inside - nested


def list_crossings(t: LabeledTree) -> set:
    found = set()
    for e1, e2 in itertools.combinations(t.sorted_edges(), 2):
        if chords_interleave(e1, e2):
            found.add(CrossingIndex.of(e1 + e2))
    return found


def max_crossings(n: int) -> int:
    """Pairs of edges: an upper bound on the crossings of any tree on n vertices."""
    return comb(max(n - 1, 0), 2)
