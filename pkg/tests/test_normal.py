# tests/test_normal.py
import math

import mpmath
import numpy as np
import pytest

from treecross.core.crossings import CrossingIndex
from treecross.core.exact import exact_mean, exact_variance
from treecross.core.executor import worker_rng
from treecross.core.normal import (
    EmpiricalSummary,
    adjacency_event_exact,
    adjacency_event_probability,
    adjacency_union_bound,
    bound_limit_constant,
    empirical_kolmogorov,
    ks_stderr_proxy,
    normal_cdf,
    normal_cdf_array,
    rate_experiment,
    rate_fit,
    simulate_standardized,
    simulate_standardized_parallel,
    theoretical_bound,
)
from treecross.errors import GuardViolation

I1 = CrossingIndex(1, 2, 3, 4)
I2 = CrossingIndex(5, 6, 7, 8)


def summary_of(values, n=5):
    values = np.sort(np.asarray(values, dtype=np.float64))
    mean = float(values.mean()) if values.size else 0.0
    return EmpiricalSummary(n, len(values), values, mean, 0.0)


# ------------------------------------------------------------------ #
# Normal CDF                                                          #
# ------------------------------------------------------------------ #


def test_normal_cdf_points():
    assert normal_cdf(0) == 0.5
    assert abs(normal_cdf(1.959963985) - 0.975) < 1e-7
    assert normal_cdf(-8) < 1e-14


def test_normal_cdf_rejects_nan():
    with pytest.raises(ValueError):
        normal_cdf(float("nan"))
    with pytest.raises(ValueError):
        normal_cdf_array([0.0, float("nan")])


def test_normal_cdf_against_high_precision():
    grid = np.linspace(-8, 8, 10_000)
    with mpmath.workdps(40):
        reference = np.array([float(mpmath.ncdf(mpmath.mpf(float(z)))) for z in grid])
    values = normal_cdf_array(grid)
    assert np.max(np.abs(values - reference)) <= 1e-10
    assert np.all(np.diff(values) >= -1e-15)
    assert np.max(np.abs(normal_cdf_array(-grid) - (1 - values))) <= 1e-12


# ------------------------------------------------------------------ #
# Empirical Kolmogorov distance                                       #
# ------------------------------------------------------------------ #


def test_single_sample_at_zero():
    assert empirical_kolmogorov(summary_of([0.0])) == 0.5


def test_degenerate_samples():
    assert empirical_kolmogorov(summary_of([3.0] * 10)) == pytest.approx(normal_cdf(3.0), abs=1e-15)


def test_empty_sample():
    with pytest.raises(GuardViolation):
        empirical_kolmogorov(summary_of([]))


def test_gaussian_samples_are_close(rng):
    assert empirical_kolmogorov(summary_of(rng.standard_normal(100_000))) < 0.01


def test_matches_grid_supremum(rng):
    samples = np.sort(rng.standard_normal(100))
    exact = empirical_kolmogorov(summary_of(samples))
    grid = np.linspace(samples[0] - 1, samples[-1] + 1, 400_001)
    ecdf = np.searchsorted(samples, grid, side="right") / samples.size
    brute = np.max(np.abs(ecdf - normal_cdf_array(grid)))
    assert brute <= exact + 1e-12
    assert exact - brute < 1e-3


def test_order_of_counts_does_not_matter(rng):
    counts = rng.integers(0, 400, size=300)
    a = EmpiricalSummary.from_counts(50, counts)
    b = EmpiricalSummary.from_counts(50, rng.permutation(counts))
    assert empirical_kolmogorov(a) == empirical_kolmogorov(b)


def test_summary_requires_sorted_samples():
    with pytest.raises(ValueError):
        EmpiricalSummary(5, 2, np.array([1.0, 0.0]), 0.5, 0.5)


def test_asymptotic_centering():
    summary = EmpiricalSummary.from_counts(60, [600], centering="asymptotic")
    assert summary.samples[0] == pytest.approx(0.0)
    with pytest.raises(GuardViolation):
        EmpiricalSummary.from_counts(60, [600], centering="median")


# ------------------------------------------------------------------ #
# Theoretical bound                                                   #
# ------------------------------------------------------------------ #


def test_bound_at_n10():
    report = theoretical_bound(10)
    mu = 8.4
    variance = float(exact_variance(10))
    expected = 6 * mu * 28**2 / variance**1.5 + 2 * mu * math.sqrt(2112 * 10) / variance
    assert report.total == pytest.approx(expected, rel=1e-12)
    assert report.total == report.term1 + report.term2
    assert report.term1 > 0 and report.term2 > 0
    assert report.loose_total >= report.total
    assert report.to_dict()["a_bound"] == 28


def test_bound_guard():
    with pytest.raises(GuardViolation):
        theoretical_bound(4)


def test_bound_decays_like_inverse_root():
    constant = bound_limit_constant()
    for n in (10**5, 10**6):
        assert abs(math.sqrt(n) * theoretical_bound(n).total / constant - 1) < 0.1


def test_bound_is_decreasing():
    totals = [theoretical_bound(n).total for n in range(100, 2000, 50)]
    assert all(a > b for a, b in zip(totals, totals[1:]))


# ------------------------------------------------------------------ #
# Simulation                                                          #
# ------------------------------------------------------------------ #


def test_simulated_moments(rng):
    n, samples = 100, 2000
    summary = simulate_standardized(n, samples, rng)
    sigma = math.sqrt(exact_variance(n))
    assert abs(summary.mean - float(exact_mean(n))) < 4 * sigma / math.sqrt(samples)
    assert abs(summary.variance / float(exact_variance(n)) - 1) < 0.15
    assert empirical_kolmogorov(summary) <= theoretical_bound(n).total


def test_simulation_guards(rng):
    with pytest.raises(GuardViolation):
        simulate_standardized(4, 10, rng)
    with pytest.raises(GuardViolation):
        simulate_standardized(10, 0, rng)


@pytest.mark.parametrize("threads", [1, 2])
def test_parallel_simulation_is_reproducible(threads):
    a = simulate_standardized_parallel(30, 401, seed=11, threads=threads)
    b = simulate_standardized_parallel(30, 401, seed=11, threads=threads)
    assert a.sample_count == 401
    assert np.array_equal(a.samples, b.samples)


def test_single_worker_uses_stream_zero():
    direct = simulate_standardized(30, 50, worker_rng(11, 0))
    pooled = simulate_standardized_parallel(30, 50, seed=11, threads=1)
    assert np.array_equal(direct.samples, pooled.samples)


# ------------------------------------------------------------------ #
# Adjacency event                                                     #
# ------------------------------------------------------------------ #


def test_adjacency_requires_disjoint_indices(rng):
    with pytest.raises(GuardViolation):
        adjacency_event_probability(20, I1, CrossingIndex(4, 5, 6, 7), 10, rng)


def test_adjacency_small_n(rng):
    estimate = adjacency_event_probability(20, I1, I2, 2000, rng)
    assert estimate.value <= 1
    assert adjacency_union_bound(20) == 1.6


def test_adjacency_under_union_bound(rng):
    estimate = adjacency_event_probability(200, I1, I2, 2000, rng)
    assert estimate.value <= adjacency_union_bound(200) + 3 * estimate.stderr


@pytest.mark.slow
@pytest.mark.parametrize("n", [100, 200])
def test_adjacency_under_union_bound_at_scale(n):
    estimate = adjacency_event_probability(n, I1, I2, 100_000, np.random.default_rng(n))
    assert estimate.value <= adjacency_union_bound(n) + 3 * estimate.stderr


@pytest.mark.slow
def test_adjacency_exact_at_n8(rng):
    exact = adjacency_event_exact(8, I1, I2)
    assert 0 < exact <= 1
    estimate = adjacency_event_probability(8, I1, I2, 20_000, rng)
    assert abs(estimate.value - float(exact)) < 4 * estimate.stderr + 1e-3


# ------------------------------------------------------------------ #
# Rate fit                                                            #
# ------------------------------------------------------------------ #


def test_rate_fit_recovers_power_laws():
    ns = [50, 100, 200, 400, 800]
    assert rate_fit([(n, n**-0.5) for n in ns]).slope == pytest.approx(-0.5, abs=1e-9)
    assert rate_fit([(n, 3.0 / n) for n in ns]).slope == pytest.approx(-1.0, abs=1e-9)


def test_rate_fit_guards():
    with pytest.raises(GuardViolation):
        rate_fit([(10, 0.1), (20, 0.05)])
    with pytest.raises(GuardViolation):
        rate_fit([(10, 0.1), (20, 0.0), (40, 0.02)])


def test_stderr_proxy():
    assert ks_stderr_proxy(10_000) == pytest.approx(0.0026)


def test_rate_experiment_rows():
    rows = rate_experiment([20, 40, 80], samples=300, seed=1)
    assert [row["n"] for row in rows] == [20, 40, 80]
    assert rows[0]["slope_running"] is None and rows[1]["slope_running"] is None
    assert isinstance(rows[2]["slope_running"], float)
    for row in rows:
        assert 0 < row["ks_distance"] <= row["bound_total"]


@pytest.mark.slow
def test_rate_reproduces_inverse_root_decay():
    rows = rate_experiment([50, 100, 200, 400, 800], samples=100_000, seed=20240601, threads=8)
    assert all(row["ks_distance"] < 0.05 for row in rows if row["n"] >= 100)
    assert -0.8 <= rows[-1]["slope_running"] <= -0.3
