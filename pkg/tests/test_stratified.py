"""Stratified estimator: allocation, subset sampling, bounds, comparisons."""

import math

import numpy as np
import pytest
from conftest import majority_game, random_table_game
from scipy.stats import chisquare

from shapmc import (
    BudgetTooSmallError,
    allocate_samples,
    estimate_srs,
    estimate_stratified,
    estimate_stratified_all,
    hoeffding_error_bound,
    linear_bounds_exact,
    make_additive,
    make_airport,
    per_stratum_delta,
    per_stratum_error_bound,
    sample_k_subset,
    shapley_exact_coalitions,
    srs_error_floor,
    stratified_beats_srs,
    stratified_error_bound,
    stratum_mean_exact,
    stream,
)


def test_allocation_hand_values():
    plan = allocate_samples(100, 4)
    assert list(plan.counts) == [14, 23, 28, 35]
    assert plan.fractional == pytest.approx([13.913, 22.086, 28.941, 35.060], abs=1e-3)

    assert list(allocate_samples(5, 1).counts) == [5]
    plan = allocate_samples(10, 2)
    assert list(plan.counts) == [4, 6]
    assert plan.fractional == pytest.approx([3.865, 6.135], abs=1e-3)


def test_allocation_properties_randomized():
    rng = np.random.default_rng(307)
    for _ in range(2000):
        n = int(rng.integers(1, 201))
        m = int(rng.integers(n, 10 ** 6))
        plan = allocate_samples(m, n)
        assert int(plan.counts.sum()) == m
        assert plan.counts.min() >= 1
        # nondecreasing up to the one-sample redistribution
        assert np.all(plan.counts[1:] >= plan.counts[:-1] - 1)
        # never rounded below floor, nor below half the fractional optimum
        assert np.all(plan.counts >= np.floor(plan.fractional).astype(int))
        big = plan.fractional >= 1.0
        assert np.all(plan.counts[big] >= plan.fractional[big] / 2)


def test_allocation_rejects_small_budget():
    with pytest.raises(BudgetTooSmallError):
        allocate_samples(3, 4)
    with pytest.raises(ValueError):
        allocate_samples(5, 0)


def test_sample_k_subset_degenerate_sizes():
    gen = stream(1)
    for _ in range(10):
        assert sample_k_subset(5, 2, 0, gen).size == 0
        top = sample_k_subset(5, 2, 4, gen)
        assert top.members == (0, 1, 3, 4)


def test_sample_k_subset_rejects_bad_args():
    gen = stream(2)
    with pytest.raises(ValueError):
        sample_k_subset(5, 0, 5, gen)
    with pytest.raises(ValueError):
        sample_k_subset(5, 0, -1, gen)
    with pytest.raises(ValueError):
        sample_k_subset(5, 5, 1, gen)


def test_sample_k_subset_uniform_chi_square():
    gen = stream(3)
    seen = {}
    counts = np.zeros(6)  # C(4, 2) subsets of {1,2,3,4}
    for _ in range(60000):
        c = sample_k_subset(5, 0, 2, gen)
        idx = seen.setdefault(c.mask, len(seen))
        counts[idx] += 1
    assert len(seen) == 6
    assert not any(mask & 1 for mask in seen)  # excluded player never appears
    assert chisquare(counts).pvalue > 0.001


def test_per_stratum_bound_is_the_range_bound():
    assert per_stratum_error_bound(1.0, 185, 0.05) == hoeffding_error_bound(1.0, 185, 0.05)
    assert per_stratum_error_bound(1.0, 185, 0.05) == pytest.approx(0.09984961, abs=1e-7)
    assert per_stratum_error_bound(0.0, 10, 0.05) == 0.0


def test_per_stratum_delta():
    d = per_stratum_delta(0.05, 4)
    assert d == pytest.approx(0.0127415, abs=1e-6)
    for n in (1, 2, 10, 50):
        d = per_stratum_delta(0.05, n)
        assert 0 < d <= 0.05 + 1e-15
    assert per_stratum_delta(0.3, 1) == pytest.approx(0.3, abs=1e-15)


def test_stratified_error_bound_hand_value():
    assert stratified_error_bound(1.0, 100, 4, 0.05) == pytest.approx(0.56215, abs=1e-4)
    assert stratified_error_bound(0.0, 100, 4, 0.05) == 0.0


def test_stratified_error_bound_single_stratum():
    # n = 1: the joint confidence split is vacuous and the size factor is 1,
    # leaving d sqrt(ln(2/beta) / m) (the allocation's factor-two slack keeps
    # a sqrt(2) over the plain range bound at the same m)
    for m in (10, 100):
        got = stratified_error_bound(2.0, m, 1, 0.1)
        assert got == pytest.approx(2.0 * math.sqrt(math.log(2 / 0.1) / m), abs=1e-12)
        assert got == pytest.approx(math.sqrt(2) * hoeffding_error_bound(2.0, m, 0.1), abs=1e-12)


def test_stratified_error_bound_rejects_bad_args():
    with pytest.raises(ValueError):
        stratified_error_bound(1.0, 100, 4, 0.0)
    with pytest.raises(ValueError):
        stratified_error_bound(1.0, 100, 4, 1.0)
    with pytest.raises(ValueError):
        stratified_error_bound(-1.0, 100, 4, 0.05)
    with pytest.raises(ValueError):
        stratified_error_bound(1.0, 0, 4, 0.05)


def test_stratified_beats_srs():
    assert stratified_beats_srs(100, 4)
    assert not stratified_beats_srs(2, 3)
    assert not stratified_beats_srs(4, 3)  # boundary m = (n+1)^2/4 is strict
    assert stratified_beats_srs(5, 3)


def test_bound_comparison_formula_level():
    # wherever the budget clears (n+1)^2/4, the aggregate stratified radius
    # undercuts the unstratified floor computed from the same information
    for n in range(1, 51):
        delta = per_stratum_delta(0.05, n)
        floor_m = (n + 1) ** 2 // 4 + 1
        for m in (floor_m, 10 * floor_m, 1000 * floor_m):
            assert stratified_beats_srs(m, n)
            assert stratified_error_bound(1.0, m, n, 0.05) < srs_error_floor(1.0, n, delta)


def test_estimate_stratified_additive_is_exact():
    g = make_additive((1, 2, 3))
    lb = g.metadata.linear_bounds
    for m in (3, 10, 50):
        est = estimate_stratified(g, 1, m, 0.05, lb, seed=5)
        assert est.global_estimate == 2.0
        assert np.array_equal(est.per_stratum, [2.0, 2.0, 2.0])


def test_estimate_stratified_majority_within_bound():
    maj = majority_game()
    lb = linear_bounds_exact(maj)
    est = estimate_stratified(maj, 0, 3000, 0.05, lb, seed=7)
    assert abs(est.global_estimate - 1 / 3) <= est.bound.epsilon
    assert est.bound.epsilon == pytest.approx(
        stratified_error_bound(1.0, 3000, 3, 0.05), abs=1e-15)
    assert est.delta_per_stratum == pytest.approx(per_stratum_delta(0.05, 3), abs=1e-15)
    assert 0 < est.delta_per_stratum <= est.beta


def test_estimate_stratified_mean_of_strata():
    rng = np.random.default_rng(311)
    g = random_table_game(rng, 6)
    lb = linear_bounds_exact(g)
    est = estimate_stratified(g, 2, 40, 0.05, lb, seed=9)
    assert est.global_estimate == pytest.approx(float(est.per_stratum.mean()), abs=1e-15)
    assert int(est.plan.counts.sum()) == 40


def test_saturated_strata_are_enumerated_exactly():
    rng = np.random.default_rng(313)
    g = random_table_game(rng, 4)
    # m = 400 over 4 strata allocates far beyond C(3, k) everywhere
    est = estimate_stratified(g, 0, 400, 0.05, linear_bounds_exact(g), seed=11)
    for k in range(4):
        assert est.per_stratum[k] == pytest.approx(
            stratum_mean_exact(g, 0, k).mean, abs=1e-12)
    assert est.global_estimate == pytest.approx(
        shapley_exact_coalitions(g, 0), abs=1e-12)


def test_sampled_stratum_means_converge():
    rng = np.random.default_rng(317)
    g = random_table_game(rng, 5)
    lb = linear_bounds_exact(g)
    # budget 9 leaves the middle strata genuinely sampled: counts ~ (1,2,2,2,2)
    runs = np.array([
        estimate_stratified(g, 0, 9, 0.05, lb, seed=s).per_stratum for s in range(200)
    ])
    exact = np.array([stratum_mean_exact(g, 0, k).mean for k in range(5)])
    mean = runs.mean(axis=0)
    se = runs.std(axis=0, ddof=1) / math.sqrt(200)
    assert np.all(np.abs(mean - exact) <= 4 * se + 1e-12)


def test_estimate_stratified_unbiased():
    rng = np.random.default_rng(331)
    g = random_table_game(rng, 5)
    lb = linear_bounds_exact(g)
    truth = shapley_exact_coalitions(g, 3)
    vals = np.array([
        estimate_stratified(g, 3, 12, 0.05, lb, seed=s).global_estimate
        for s in range(200)
    ])
    se = vals.std(ddof=1) / math.sqrt(200)
    assert abs(vals.mean() - truth) <= 4 * se + 1e-12


def test_estimate_stratified_deterministic_and_all_players():
    maj = majority_game()
    lb = linear_bounds_exact(maj)
    one = estimate_stratified(maj, 1, 30, 0.05, lb, seed=13)
    again = estimate_stratified(maj, 1, 30, 0.05, lb, seed=13)
    assert np.array_equal(one.per_stratum, again.per_stratum)
    all_est = estimate_stratified_all(maj, 30, 0.05, lb, seed=13)
    assert len(all_est) == 3
    assert np.array_equal(all_est[1].per_stratum, one.per_stratum)


def test_estimate_stratified_propagates_budget_error():
    maj = majority_game()
    with pytest.raises(BudgetTooSmallError):
        estimate_stratified(maj, 0, 2, 0.05, linear_bounds_exact(maj), seed=1)


def test_estimate_stratified_rejects_bad_args():
    maj = majority_game()
    lb = linear_bounds_exact(maj)
    with pytest.raises(ValueError):
        estimate_stratified(maj, 3, 30, 0.05, lb, seed=1)
    with pytest.raises(ValueError):
        estimate_stratified(maj, 0, 30, 1.5, lb, seed=1)


def test_bound_coverage_smoke():
    air = make_airport((1, 2, 3, 4, 5))
    lb = linear_bounds_exact(air)
    truth = shapley_exact_coalitions(air, 4)
    eps = stratified_error_bound(lb.d, 60, 5, 0.05)
    misses = sum(
        abs(estimate_stratified(air, 4, 60, 0.05, lb, seed=s).global_estimate - truth) > eps
        for s in range(300)
    )
    assert misses / 300 <= 0.05 + 3 * math.sqrt(0.05 * 0.95 / 300)


def test_variance_reduction_on_majority():
    # every stratum of the majority game is internally constant, so the
    # stratified estimate is exact while plain sampling keeps jittering
    maj = majority_game()
    lb = linear_bounds_exact(maj)
    strat = [estimate_stratified(maj, 0, 10, 0.05, lb, seed=s).global_estimate
             for s in range(100)]
    srs = [estimate_srs(maj, 5, seed=s).per_player[0] for s in range(100)]  # 20 calls each
    assert np.std(strat) <= np.std(srs)
    assert np.std(strat) <= 1e-15  # identical to the exact value every seed
