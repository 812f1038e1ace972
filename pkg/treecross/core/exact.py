# treecross/core/exact.py
"""Closed-form moments of the crossing count, in exact rational arithmetic,
and the enumeration oracles that check them.

All formulas return `fractions.Fraction`; float projections are only taken
at the edges (CLI output, large-n asymptotics). The variance polynomial
cancels heavily at small n, so exact equality with enumeration is only
testable in rationals.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from ..errors import GuardViolation, require
from .crossings import count_crossings_naive
from .executor import run_tasks
from .trees import contains_forest, enumerate_trees, forest_blocks, normalize_edge, split_components, tree_count

log = logging.getLogger(__name__)

MIN_MOMENT_N = 4
MAX_ORACLE_N = 7


@dataclass(frozen=True)
class ExactMoments:
    n: int
    mean: Fraction
    variance: Fraction

    def to_dict(self):
        return {
            "n": self.n,
            "mean": str(self.mean),
            "variance": str(self.variance),
            "mean_float": float(self.mean),
            "var_float": float(self.variance),
        }


def _require_oracle_range(n, low=MIN_MOMENT_N, high=MAX_ORACLE_N):
    if not low <= n <= high:
        raise GuardViolation(f"exhaustive oracle supports {low} <= n <= {high}, got {n}")


def forest_probability(n: int, forest) -> Fraction:
    """P(uniform tree on n vertices contains every component of `forest`).

    `forest` lists the nontrivial components, each an iterable of edges;
    isolated vertices are implicit and contribute a factor 1. The value is
    prod(component sizes) / n^(edges).
    """
    require(n >= 1, f"n must be positive, got {n}")
    components = [frozenset(normalize_edge(u, v) for u, v in comp) for comp in forest]
    blocks = forest_blocks(n, components)
    weight = 1
    for block in blocks:
        weight *= len(block)
    edge_total = sum(len(comp) for comp in components)
    return Fraction(weight, n ** edge_total)


def forest_edges_probability(n: int, edges) -> Fraction:
    return forest_probability(n, split_components(edges))


def enumeration_forest_frequency(n: int, edges) -> Fraction:
    """Fraction of all labelled trees on n vertices that contain `edges`."""
    _require_oracle_range(n, low=2)
    edges = [normalize_edge(u, v) for u, v in edges]
    hits = sum(1 for t in enumerate_trees(n) if contains_forest(t, edges))
    return Fraction(hits, tree_count(n))


def edge_probability(n: int) -> Fraction:
    require(n >= 2, f"edge probability needs n >= 2, got {n}")
    return Fraction(2, n)


def crossing_probability(n: int) -> Fraction:
    """P(Y_j = 1) for any fixed index: two disjoint edges, 4/n^2."""
    require(n >= 4, f"crossing indices need n >= 4, got {n}")
    return Fraction(4, n * n)


def exact_mean(n: int) -> Fraction:
    require(n >= 1, f"n must be positive, got {n}")
    if n < 4:
        return Fraction(0)
    return Fraction((n - 1) * (n - 2) * (n - 3), 6 * n)


def exact_variance(n: int) -> Fraction:
    require(n >= MIN_MOMENT_N, f"variance formula needs n >= {MIN_MOMENT_N}, got {n}")
    x = Fraction(n)
    return (
        x**3 / 45
        - 3 * x**2 / 40
        - 17 * x / 72
        + Fraction(35, 24)
        - Fraction(1003, 360) / x
        + Fraction(157, 60) / x**2
        - 1 / x**3
    )


def exact_moments(n: int) -> ExactMoments:
    return ExactMoments(n, exact_mean(n), exact_variance(n))


def size_bias_mean(n: int) -> Fraction:
    """E[X^s] = E[X^2] / E[X]."""
    mu = exact_mean(n)
    require(mu > 0, f"size bias needs a positive mean, n={n}")
    return (exact_variance(n) + mu * mu) / mu


def moments_float(n: int) -> dict:
    return {
        "mean": float(exact_mean(n)),
        "variance": float(exact_variance(n)),
        "mean_asymptotic": n * n / 6,
        "variance_asymptotic": n**3 / 45,
    }


def neighborhood_size(n: int) -> int:
    """|C_I|: indices sharing at least one vertex with a fixed index."""
    require(n >= 4, f"neighbourhood size needs n >= 4, got {n}")
    return comb(n, 4) - comb(n - 4, 4)


def neighborhood_size_polynomial(n: int) -> Fraction:
    return Fraction(2, 3) * n**3 - 7 * n**2 + Fraction(79, 3) * n - 35


def overlap_profile(n: int) -> dict:
    """For a fixed index, how many indices share exactly k of its vertices.

    Sums to C(n,4); the k >= 1 part is the neighbourhood size.
    """
    require(n >= 4, f"overlap profile needs n >= 4, got {n}")
    return {k: comb(4, k) * comb(n - 4, 4 - k) for k in range(5)}


def index_pair_counts(n: int) -> dict:
    profile = overlap_profile(n)
    per_index = comb(n, 4)
    return {
        "sharing": per_index * sum(profile[k] for k in range(1, 5)),
        "disjoint": per_index * profile[0],
        "total": per_index * per_index,
    }


def _law_slice(task):
    n, prefix = task
    counts = Counter()
    for t in enumerate_trees(n, prefix):
        counts[count_crossings_naive(t)] += 1
    return counts


@lru_cache(maxsize=None)
def crossing_counts(n: int, threads: int = 1) -> dict:
    """Number of labelled trees with each crossing count, over all n^(n-2) trees."""
    _require_oracle_range(n)
    tasks = [(n, (first,)) for first in range(1, n + 1)]
    total = Counter()
    for part in run_tasks(_law_slice, tasks, threads):
        total.update(part)
    log.debug("enumerated %d trees for n=%d", sum(total.values()), n)
    return dict(sorted(total.items()))


def crossing_law(n: int, threads: int = 1) -> dict:
    """Exact pmf of X_n as {k: Fraction}."""
    counts = crossing_counts(n, threads)
    return {k: Fraction(c, tree_count(n)) for k, c in counts.items()}


def enumeration_moments(n: int, threads: int = 1) -> ExactMoments:
    law = crossing_law(n, threads)
    mean = sum(k * p for k, p in law.items())
    second = sum(k * k * p for k, p in law.items())
    return ExactMoments(n, mean, second - mean * mean)
