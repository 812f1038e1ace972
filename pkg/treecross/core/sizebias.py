# treecross/core/sizebias.py
"""Size-bias transform of the crossing count.

Three realizations of X^s live here:

* the law by definition, pmf(k) = k P(X = k) / E[X], from enumeration;
* the constructive coupling: pick an index I = (a,b,c,d) uniformly and, if
  the tree does not cross at I, add chord {a,c}, break the cycle at one of the
  two path edges touching a or c (fair coin), then do the same for {b,d};
* the rejection coupling: keep the tree if it crosses at I, otherwise draw
  trees until one does. That is size-biased by construction, but after a
  rejection the new tree is independent of the old one, so |X^s - X| is not
  bounded for it.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from ..errors import CouplingFailure, GuardViolation, require
from .crossings import (
    CrossingIndex,
    all_indices,
    count_crossings_fast,
    count_crossings_naive,
    has_crossing_at,
    random_index,
)
from .exact import crossing_law
from .executor import run_tasks
from .trees import LabeledTree, enumerate_trees, sample_tree_containing, sample_uniform_tree, tree_count

log = logging.getLogger(__name__)

MAX_COUPLING_ORACLE_N = 6
REJECTION_CAP = 10**7
# above this n the rejection loop is replaced by a direct draw from the same law
DIRECT_REJECTION_N = 40


def coupling_bound(n: int) -> int:
    """A = 4(n-3): each rewired edge changes at most n-3 crossings."""
    return 4 * (n - 3)


@dataclass(frozen=True)
class CouplingOutcome:
    tree: LabeledTree
    index: CrossingIndex
    biased_tree: LabeledTree
    x: int
    x_s: int
    rewired: tuple = ()
    retries: int = 0

    @property
    def difference(self) -> int:
        return self.x_s - self.x

    @property
    def within_bound(self) -> bool:
        return abs(self.difference) <= coupling_bound(self.tree.n)


@dataclass(frozen=True)
class SizeBiasLaw:
    n: int
    pmf: dict = field(default_factory=dict)

    def probability(self, k) -> Fraction:
        return self.pmf.get(k, Fraction(0))

    def total_mass(self) -> Fraction:
        return sum(self.pmf.values(), Fraction(0))

    def expectation(self, f) -> Fraction:
        return sum((p * f(k) for k, p in self.pmf.items()), Fraction(0))

    def mean(self) -> Fraction:
        return self.expectation(lambda k: k)

    def tv_distance(self, other: "SizeBiasLaw") -> Fraction:
        support = set(self.pmf) | set(other.pmf)
        return sum((abs(self.probability(k) - other.probability(k)) for k in support), Fraction(0)) / 2

    def to_dict(self):
        return {"n": self.n, "pmf": {str(k): str(p) for k, p in sorted(self.pmf.items())}}


def _require_coupling_oracle(n, high=MAX_COUPLING_ORACLE_N):
    if not 4 <= n <= high:
        raise GuardViolation(f"exact coupling oracle supports 4 <= n <= {high}, got {n}")


def _cycle_edges(t: LabeledTree, u: int, v: int) -> list:
    """Path edges that may be deleted when chord {u,v} is added; empty if it is present."""
    if u == v:
        raise GuardViolation(f"cannot rewire a vertex to itself ({u})")
    if t.has_edge(u, v):
        return []
    path = t.path(u, v)
    return [(path[0], path[1]), (path[-2], path[-1])]


def rewire_branches(t: LabeledTree, u: int, v: int) -> list:
    """Every outcome of `rewire_pair` with its probability."""
    candidates = _cycle_edges(t, u, v)
    if not candidates:
        return [(t, Fraction(1))]
    weight = Fraction(1, len(candidates))
    return [(t.swap_edges((u, v), removed), weight) for removed in candidates]


def rewire_pair(t: LabeledTree, u: int, v: int, rng: np.random.Generator) -> LabeledTree:
    candidates = _cycle_edges(t, u, v)
    if not candidates:
        return t
    removed = candidates[int(rng.integers(len(candidates)))]
    return t.swap_edges((u, v), removed)


def _check_biased(out: LabeledTree, j: CrossingIndex):
    if not out.is_valid():
        raise CouplingFailure(f"rewiring towards {j} left a graph that is not a tree")
    # the (b,d) rewiring only deletes edges at b or d, so {a,c} must survive it
    if not has_crossing_at(out, j):
        raise CouplingFailure(f"constructed tree has no crossing at {j}")


def _construct(t: LabeledTree, j: CrossingIndex, rng) -> tuple:
    if has_crossing_at(t, j):
        return t, ()
    rewired = []
    out = t
    for u, v in j.chords:
        if not out.has_edge(u, v):
            out = rewire_pair(out, u, v, rng)
            rewired.append((u, v))
    _check_biased(out, j)
    return out, tuple(rewired)


def construct_biased_tree(t: LabeledTree, j: CrossingIndex, rng: np.random.Generator) -> LabeledTree:
    return _construct(t, j, rng)[0]


def biased_tree_branches(t: LabeledTree, j: CrossingIndex) -> list:
    """Every outcome of `construct_biased_tree` with its probability (1, 1/2 or 1/4)."""
    if has_crossing_at(t, j):
        return [(t, Fraction(1))]
    (a, c), (b, d) = j.chords
    branches = []
    for middle, w1 in rewire_branches(t, a, c):
        for out, w2 in rewire_branches(middle, b, d):
            _check_biased(out, j)
            branches.append((out, w1 * w2))
    return branches


def sample_coupling(n: int, rng: np.random.Generator) -> CouplingOutcome:
    require(n >= 4, f"couplings need n >= 4, got {n}")
    t = sample_uniform_tree(n, rng)
    j = random_index(n, rng)
    biased, rewired = _construct(t, j, rng)
    x = count_crossings_fast(t)
    x_s = x if biased is t else count_crossings_fast(biased)
    return CouplingOutcome(t, j, biased, x, x_s, rewired)


def rejection_size_bias_sample(
    n: int, rng: np.random.Generator, cap: int = REJECTION_CAP, direct: bool | None = None
) -> CouplingOutcome:
    """Size-bias draw by conditioning the tree on crossing at I.

    The first draw is the original tree; it is kept if it crosses at I. Else
    trees are redrawn until one does, failing hard after `cap` retries. With
    `direct` (default for n > DIRECT_REJECTION_N) the redraw loop is replaced
    by one draw from the uniform law on trees containing both chords, and the
    retry count by a geometric draw with the acceptance rate 4/n^2: the joint
    law of (tree, biased tree, retries) is the same as the loop's.
    """
    require(n >= 4, f"couplings need n >= 4, got {n}")
    if direct is None:
        direct = n > DIRECT_REJECTION_N
    t = sample_uniform_tree(n, rng)
    j = random_index(n, rng)
    x = count_crossings_fast(t)
    if has_crossing_at(t, j):
        return CouplingOutcome(t, j, t, x, x)

    if direct:
        retries = int(rng.geometric(4 / (n * n)))
        if retries > cap:
            raise CouplingFailure(f"rejection sampler exceeded {cap} retries at n={n}")
        accepted = sample_tree_containing(n, j.chords, rng)
    else:
        retries = 0
        while True:
            retries += 1
            if retries > cap:
                raise CouplingFailure(f"rejection sampler exceeded {cap} retries at n={n}")
            accepted = sample_uniform_tree(n, rng)
            if has_crossing_at(accepted, j):
                break
    return CouplingOutcome(t, j, accepted, x, count_crossings_fast(accepted), retries=retries)


def coupling_batch(count: int, rng: np.random.Generator, n: int, mode: str, cap: int = REJECTION_CAP) -> np.ndarray:
    """(x, x_s, retries) for `count` couplings, one row each."""
    rows = np.zeros((count, 3), dtype=np.int64)
    for i in range(count):
        if mode == "construct":
            outcome = sample_coupling(n, rng)
        elif mode == "reject":
            outcome = rejection_size_bias_sample(n, rng, cap=cap)
        else:
            raise GuardViolation(f"unknown sampling mode {mode!r}")
        rows[i] = (outcome.x, outcome.x_s, outcome.retries)
    return rows


def size_bias_law_oracle(n: int, threads: int = 1) -> SizeBiasLaw:
    if not 4 <= n <= 7:
        raise GuardViolation(f"size-bias oracle supports 4 <= n <= 7, got {n}")
    law = crossing_law(n, threads)
    mu = sum(k * p for k, p in law.items())
    return SizeBiasLaw(n, {k: k * p / mu for k, p in law.items() if k > 0 and p > 0})


def rejection_law_exact(n: int) -> SizeBiasLaw:
    """Law of X^s under the rejection coupling, by enumerating every index."""
    _require_coupling_oracle(n)
    trees = [(t, count_crossings_naive(t)) for t in enumerate_trees(n)]
    indices = list(all_indices(n))
    pmf = defaultdict(Fraction)
    for j in indices:
        accepted = [x for t, x in trees if has_crossing_at(t, j)]
        for x, hits in Counter(accepted).items():
            pmf[x] += Fraction(hits, len(accepted) * len(indices))
    return SizeBiasLaw(n, dict(sorted(pmf.items())))


@dataclass(frozen=True)
class CouplingAnalysis:
    n: int
    marginal: SizeBiasLaw
    psi_squared: Fraction
    psi_squared_tree: Fraction
    max_abs_diff: int
    tv_distance: Fraction


def _analysis_slice(task):
    n, prefix = task
    indices = list(all_indices(n))
    marginal = defaultdict(Fraction)
    by_x = defaultdict(lambda: [0, Fraction(0)])
    squares = Fraction(0)
    widest = 0
    for t in enumerate_trees(n, prefix):
        x = count_crossings_naive(t)
        shift = Fraction(0)
        for j in indices:
            for out, weight in biased_tree_branches(t, j):
                x_s = count_crossings_naive(out)
                marginal[x_s] += weight
                shift += weight * (x_s - x)
                widest = max(widest, abs(x_s - x))
        shift /= len(indices)
        by_x[x][0] += 1
        by_x[x][1] += shift
        squares += shift * shift
    return dict(marginal), {x: tuple(v) for x, v in by_x.items()}, squares, widest


@lru_cache(maxsize=None)
def coupling_analysis(n: int, threads: int = 1) -> CouplingAnalysis:
    """One exact pass over trees x indices x deletion branches.

    Gives the marginal law of X^s under the constructive coupling, its total
    variation distance to the size-bias law, and Psi^2 = Var(E[X^s - X | X])
    next to Var(E[X^s - X | T]), which can only be larger.
    """
    _require_coupling_oracle(n)
    tasks = [(n, (first,)) for first in range(1, n + 1)]
    marginal = defaultdict(Fraction)
    by_x = defaultdict(lambda: [0, Fraction(0)])
    squares = Fraction(0)
    widest = 0
    for part_marginal, part_by_x, part_squares, part_widest in run_tasks(_analysis_slice, tasks, threads):
        for k, w in part_marginal.items():
            marginal[k] += w
        for x, (count, shift) in part_by_x.items():
            by_x[x][0] += count
            by_x[x][1] += shift
        squares += part_squares
        widest = max(widest, part_widest)

    trees = tree_count(n)
    norm = trees * comb(n, 4)
    law = SizeBiasLaw(n, {k: w / norm for k, w in sorted(marginal.items()) if w})

    mean_shift = sum((shift for _, shift in by_x.values()), Fraction(0)) / trees
    psi_x = sum((Fraction(count, trees) * (shift / count) ** 2 for count, shift in by_x.values()), Fraction(0))
    psi_x -= mean_shift**2
    psi_t = squares / trees - mean_shift**2
    if psi_x > psi_t:
        raise CouplingFailure(f"conditioning on X increased the conditional variance at n={n}")

    tv = law.tv_distance(size_bias_law_oracle(n, threads))
    log.info("n=%d: constructive coupling TV distance to size-bias law = %s", n, tv)
    return CouplingAnalysis(n, law, psi_x, psi_t, widest, tv)


def coupling_marginal_exact(n: int) -> SizeBiasLaw:
    return coupling_analysis(n).marginal


def psi_exact(n: int) -> Fraction:
    """Psi^2 = Var(E[X^s - X | X]) for the constructive coupling, exactly."""
    return coupling_analysis(n).psi_squared


@dataclass(frozen=True)
class PsiEstimate:
    n: int
    samples: int
    psi_squared: float
    psi_squared_tree: float


def conditional_shift(t: LabeledTree) -> Fraction:
    """E[X^s - X | T = t] under the constructive coupling, averaged exactly."""
    x = count_crossings_naive(t)
    indices = list(all_indices(t.n))
    total = Fraction(0)
    for j in indices:
        for out, weight in biased_tree_branches(t, j):
            total += weight * (count_crossings_naive(out) - x)
    return total / len(indices)


def psi_monte_carlo(n: int, samples: int, rng: np.random.Generator) -> PsiEstimate:
    """Estimate Psi^2 past the exact range by grouping exact per-tree shifts by X."""
    require(n >= 4, f"couplings need n >= 4, got {n}")
    require(samples >= 2, f"need at least two samples, got {samples}")
    groups = defaultdict(list)
    shifts = []
    for _ in range(samples):
        t = sample_uniform_tree(n, rng)
        shift = float(conditional_shift(t))
        groups[count_crossings_naive(t)].append(shift)
        shifts.append(shift)
    overall = float(np.mean(shifts))
    between = sum(len(g) * (float(np.mean(g)) - overall) ** 2 for g in groups.values()) / samples
    return PsiEstimate(n, samples, between, float(np.var(shifts)))
