# treecross/core/normal.py
"""Normal approximation of the standardized crossing count.

Covers the explicit Kolmogorov bound for bounded size-bias couplings
(6 mu A^2 / sigma^3 + 2 mu Psi / sigma^2 with A = 4(n-3) and
Psi <= sqrt(2112 n)), the empirical Kolmogorov distance of simulated
W_n = (X_n - mu_n) / sigma_n, the adjacency event behind the covariance
bound, and the log-log fit of distance against n.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.special import ndtr

from ..errors import GuardViolation, require
from .crossings import CrossingIndex, count_crossings_fast
from .exact import exact_mean, exact_variance
from .executor import run_seeded
from .sizebias import coupling_bound
from .trees import enumerate_trees, sample_uniform_tree, tree_count

log = logging.getLogger(__name__)

PSI_CONSTANT = 2112
# sd of the limiting Kolmogorov law of sqrt(N) * D_N
KS_SPREAD = 0.26
CENTERINGS = ("exact", "asymptotic")


def normal_cdf(z: float) -> float:
    z = float(z)
    if math.isnan(z):
        raise ValueError("normal_cdf is undefined at NaN")
    return float(ndtr(z))


def normal_cdf_array(z) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if np.isnan(z).any():
        raise ValueError("normal_cdf is undefined at NaN")
    return ndtr(z)


def standardization(n: int, centering: str = "exact") -> tuple:
    """(mu, sigma) used to standardize X_n."""
    if centering == "exact":
        return float(exact_mean(n)), math.sqrt(exact_variance(n))
    if centering == "asymptotic":
        return n * n / 6, math.sqrt(n**3 / 45)
    raise GuardViolation(f"centering must be one of {CENTERINGS}, got {centering!r}")


@dataclass(frozen=True, eq=False)
class EmpiricalSummary:
    n: int
    sample_count: int
    samples: np.ndarray
    mean: float
    variance: float
    centering: str = "exact"

    def __post_init__(self):
        if self.sample_count != len(self.samples):
            raise ValueError("sample_count must equal the number of samples")
        if len(self.samples) > 1 and np.any(np.diff(self.samples) < 0):
            raise ValueError("samples must be sorted ascending")

    @classmethod
    def from_counts(cls, n: int, counts, centering: str = "exact") -> "EmpiricalSummary":
        counts = np.asarray(counts, dtype=np.float64)
        require(counts.size >= 1, "need at least one sample")
        mu, sigma = standardization(n, centering)
        standardized = np.sort((counts - mu) / sigma)
        variance = float(counts.var(ddof=1)) if counts.size > 1 else 0.0
        return cls(n, int(counts.size), standardized, float(counts.mean()), variance, centering)


def empirical_kolmogorov(summary: EmpiricalSummary) -> float:
    """sup_z |F_N(z) - Phi(z)| for the empirical CDF of the standardized samples."""
    size = summary.sample_count
    if size < 1:
        raise GuardViolation("Kolmogorov distance of an empirical sample needs at least one point")
    cdf = normal_cdf_array(summary.samples)
    steps = np.arange(1, size + 1, dtype=np.float64)
    upper = np.abs(steps / size - cdf)
    lower = np.abs((steps - 1) / size - cdf)
    return float(max(upper.max(), lower.max()))


def ks_stderr_proxy(samples: int) -> float:
    return KS_SPREAD / math.sqrt(samples)


@dataclass(frozen=True)
class BoundReport:
    n: int
    mu: float
    sigma: float
    a_bound: float
    psi_bound: float
    term1: float
    term2: float
    total: float
    loose_total: float

    def to_dict(self):
        return asdict(self)


def theoretical_bound(n: int) -> BoundReport:
    """Right-hand side of the size-bias Kolmogorov bound for X_n.

    `loose_total` is the simplified form 16 n^4 / sigma^3 + sqrt(2112) n^(5/2) / (3 sigma^2)
    obtained from mu <= n^2/6 and (n-3)^2 <= n^2; it dominates `total`.
    """
    if n <= 4:
        raise GuardViolation(f"the bound needs a positive variance, n >= 5, got {n}")
    mu = float(exact_mean(n))
    variance = float(exact_variance(n))
    sigma = math.sqrt(variance)
    a_bound = float(coupling_bound(n))
    psi_bound = math.sqrt(PSI_CONSTANT * n)
    term1 = 6 * mu * a_bound**2 / sigma**3
    term2 = 2 * mu * psi_bound / variance
    loose = 16 * float(n) ** 4 / sigma**3 + math.sqrt(PSI_CONSTANT) * float(n) ** 2.5 / (3 * variance)
    return BoundReport(n, mu, sigma, a_bound, psi_bound, term1, term2, term1 + term2, loose)


def bound_limit_constant() -> float:
    """lim sqrt(n) * total: 16 * 45^(3/2) + 15 * sqrt(2112)."""
    return 16 * 45**1.5 + 15 * math.sqrt(PSI_CONSTANT)


def simulate_crossing_counts(count: int, rng: np.random.Generator, n: int) -> np.ndarray:
    counts = np.empty(count, dtype=np.int64)
    for i in range(count):
        counts[i] = count_crossings_fast(sample_uniform_tree(n, rng))
    return counts


def simulate_standardized(n: int, samples: int, rng: np.random.Generator, centering: str = "exact") -> EmpiricalSummary:
    require(n >= 5, f"standardizing needs n >= 5, got {n}")
    require(samples >= 1, f"samples must be positive, got {samples}")
    return EmpiricalSummary.from_counts(n, simulate_crossing_counts(samples, rng, n), centering)


def simulate_standardized_parallel(n: int, samples: int, seed: int, threads: int = 1, centering: str = "exact") -> EmpiricalSummary:
    """`simulate_standardized` fanned out over workers with derived seeds."""
    require(n >= 5, f"standardizing needs n >= 5, got {n}")
    require(samples >= 1, f"samples must be positive, got {samples}")
    parts = run_seeded(simulate_crossing_counts, samples, seed, threads, n)
    return EmpiricalSummary.from_counts(n, np.concatenate(parts), centering)


class ProportionEstimate(NamedTuple):
    value: float
    stderr: float
    samples: int

    def __float__(self):
        return self.value


def adjacency_union_bound(n: int) -> float:
    """16 vertex pairs, each adjacent with probability 2/n."""
    return 32 / n


def _adjacency_pairs(n: int, i: CrossingIndex, j: CrossingIndex) -> list:
    require(i.d <= n and j.d <= n, f"indices {i}, {j} do not fit n={n}")
    if not i.is_disjoint(j):
        raise GuardViolation(f"indices {i} and {j} share a vertex")
    return [(u, v) for u in i.vertices for v in j.vertices]


def adjacency_event_probability(
    n: int, i: CrossingIndex, j: CrossingIndex, samples: int, rng: np.random.Generator
) -> ProportionEstimate:
    """Monte Carlo P(some vertex of i is adjacent to some vertex of j)."""
    pairs = _adjacency_pairs(n, i, j)
    require(samples >= 1, f"samples must be positive, got {samples}")
    hits = 0
    for _ in range(samples):
        t = sample_uniform_tree(n, rng)
        if any(t.has_edge(u, v) for u, v in pairs):
            hits += 1
    p = hits / samples
    return ProportionEstimate(p, math.sqrt(p * (1 - p) / samples), samples)


def adjacency_event_exact(n: int, i: CrossingIndex, j: CrossingIndex) -> Fraction:
    pairs = _adjacency_pairs(n, i, j)
    hits = sum(1 for t in enumerate_trees(n) if any(t.has_edge(u, v) for u, v in pairs))
    return Fraction(hits, tree_count(n))


class RateFit(NamedTuple):
    slope: float
    intercept: float


def rate_fit(points) -> RateFit:
    """Least-squares line through (log n, log distance)."""
    points = list(points)
    if len(points) < 3:
        raise GuardViolation(f"rate fit needs at least 3 points, got {len(points)}")
    ns = np.array([p[0] for p in points], dtype=np.float64)
    distances = np.array([p[1] for p in points], dtype=np.float64)
    if np.any(distances <= 0) or np.any(ns <= 0):
        raise GuardViolation("rate fit needs positive n and positive distances")
    slope, intercept = np.polyfit(np.log(ns), np.log(distances), 1)
    return RateFit(float(slope), float(intercept))


def rate_experiment(n_list, samples: int, seed: int, threads: int = 1, centering: str = "exact", progress=None) -> list:
    """One row per n: distance, noise proxy, bound and the running slope."""
    rows = []
    points = []
    for n in n_list:
        summary = simulate_standardized_parallel(n, samples, seed, threads, centering)
        distance = empirical_kolmogorov(summary)
        points.append((n, distance))
        slope = rate_fit(points).slope if len(points) >= 3 and distance > 0 else None
        rows.append({
            "n": n,
            "N": samples,
            "ks_distance": distance,
            "ks_stderr_proxy": ks_stderr_proxy(samples),
            "bound_total": theoretical_bound(n).total,
            "slope_running": slope,
        })
        log.info("n=%d: KS distance %.5f over %d samples", n, distance, samples)
        if progress is not None:
            progress(n)
    return rows
