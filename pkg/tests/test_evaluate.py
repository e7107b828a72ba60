import numpy as np
import pytest

from uisearch import (DivergenceError, ExtensionSpec, MarketParams,
                      PolicyProfile, build_policy, evaluate_policy,
                      expected_welfare_at_offer, offer_value_post_extension,
                      simulate_many, solve_schedules, solve_w0_basic,
                      value_post_extension, welfare_loss)
from uisearch.schedule import build_basic_schedule


class TestPostExtensionValues:
    def test_continuation_value(self, uniform, fig3_params):
        basic = build_basic_schedule(uniform, fig3_params, horizon=5)
        assert value_post_extension(uniform, fig3_params, basic, 0) == pytest.approx(
            16.0, abs=1e-7)

    def test_offer_node_value(self, uniform, fig3_params):
        basic = build_basic_schedule(uniform, fig3_params, horizon=5)
        assert offer_value_post_extension(uniform, fig3_params, basic, 0) == pytest.approx(
            16.4, abs=1e-7)

    def test_myopic_limit(self, uniform):
        p = MarketParams(beta=1e-9, z=0.3, c=0.1, n_periods=1)
        basic = build_basic_schedule(uniform, p, horizon=1)
        assert value_post_extension(uniform, p, basic, 0) == pytest.approx(0.3, abs=1e-6)


class TestBellmanConsistency:
    def test_true_belief_recovers_optimal_value(self, uniform, benchmark_params,
                                                benchmark_truth):
        schedule = solve_schedules(uniform, benchmark_params, benchmark_truth)
        policy = build_policy(uniform, benchmark_params, benchmark_truth)
        result = evaluate_policy(policy, benchmark_truth, benchmark_params, uniform)
        optimal = schedule.with_extension[-1] / (1 - benchmark_params.beta)
        assert result.welfare == pytest.approx(optimal, abs=1e-9)

    def test_no_extension_offer_values_match_closed_form(self, uniform,
                                                         benchmark_params):
        belief = ExtensionSpec(delta=0.0, length=1)
        policy = build_policy(uniform, benchmark_params, belief)
        result = evaluate_policy(policy, belief, benchmark_params, uniform)
        for n in range(benchmark_params.n_periods + 1):
            expected = expected_welfare_at_offer(benchmark_params.beta,
                                                 policy.pre_thresholds[n])
            assert result.offer_values[n] == pytest.approx(expected, abs=1e-9)


class TestOptimalityOfTruth:
    def test_loss_nonnegative_and_zero_only_at_truth(self, uniform, benchmark_params,
                                                     benchmark_truth):
        for delta_b in (0.3, 0.4, 0.5, 0.6, 0.7):
            for length_b in (15, 20, 25, 30, 35):
                belief = ExtensionSpec(delta=delta_b, length=length_b)
                loss = welfare_loss(belief, benchmark_truth, benchmark_params,
                                    uniform)
                assert loss >= -1e-10
                if belief == benchmark_truth:
                    assert abs(loss) < 1e-8
                else:
                    assert loss > 1e-8


class TestDurationAndWage:
    def test_geometric_duration_identity(self, uniform):
        # no compensation, no extension: constant threshold, geometric count
        p = MarketParams(beta=0.95, z=0.42, c=0.0, n_periods=4)
        truth = ExtensionSpec(delta=0.0, length=1)
        policy = build_policy(uniform, p, truth)
        result = evaluate_policy(policy, truth, p, uniform)
        threshold = solve_w0_basic(uniform, p, flow=p.z)
        assert result.duration == pytest.approx(1 / (1 - threshold), abs=1e-10)

    def test_direction_of_errors(self, uniform, benchmark_params, benchmark_truth):
        optimal = build_policy(uniform, benchmark_params, benchmark_truth)
        base = evaluate_policy(optimal, benchmark_truth, benchmark_params, uniform)
        pessimist = build_policy(uniform, benchmark_params,
                                 ExtensionSpec(delta=0.1, length=25))
        optimist = build_policy(uniform, benchmark_params,
                                ExtensionSpec(delta=0.9, length=25))
        low = evaluate_policy(pessimist, benchmark_truth, benchmark_params, uniform)
        high = evaluate_policy(optimist, benchmark_truth, benchmark_params, uniform)
        assert low.duration < base.duration < high.duration
        assert low.accepted_wage < base.accepted_wage < high.accepted_wage

    def test_duration_at_least_one_and_wage_in_support(self, uniform,
                                                       benchmark_params,
                                                       benchmark_truth):
        policy = build_policy(uniform, benchmark_params,
                              ExtensionSpec(delta=0.2, length=10),
                              true_length=benchmark_truth.length)
        result = evaluate_policy(policy, benchmark_truth, benchmark_params, uniform)
        assert result.duration >= 1.0
        assert 0.0 <= result.accepted_wage <= 1.0


class TestWelfareLoss:
    def test_zero_at_truth(self, uniform, benchmark_params, benchmark_truth):
        assert abs(welfare_loss(benchmark_truth, benchmark_truth,
                                benchmark_params, uniform)) < 1e-10

    def test_pessimism_costs_more_than_optimism(self, uniform, benchmark_params,
                                                benchmark_truth):
        low = welfare_loss(ExtensionSpec(0.1, 25), benchmark_truth,
                           benchmark_params, uniform)
        high = welfare_loss(ExtensionSpec(0.9, 25), benchmark_truth,
                            benchmark_params, uniform)
        assert low > high > 0.0

    def test_length_misperception_zero_at_truth(self, uniform, benchmark_params,
                                                benchmark_truth):
        for length_b in (5, 25, 45):
            loss = welfare_loss(ExtensionSpec(0.5, length_b), benchmark_truth,
                                benchmark_params, uniform)
            if length_b == 25:
                assert abs(loss) < 1e-10
            else:
                assert loss > 0.0


class TestValidation:
    def test_divergence_when_state_zero_never_accepts(self, uniform):
        p = MarketParams(beta=0.95, z=0.42, c=0.42, n_periods=2)
        policy = PolicyProfile(pre_thresholds=np.full(3, 1.0),
                               post_thresholds=np.full(30, 1.0))
        with pytest.raises(DivergenceError):
            evaluate_policy(policy, ExtensionSpec(delta=0.0, length=1), p, uniform)

    def test_short_post_thresholds_rejected(self, uniform, benchmark_params,
                                            benchmark_truth):
        policy = build_policy(uniform, benchmark_params,
                              ExtensionSpec(delta=0.5, length=5))
        with pytest.raises(ValueError, match="post_thresholds"):
            evaluate_policy(policy, benchmark_truth, benchmark_params, uniform)

    def test_wrong_pre_length_rejected(self, uniform, benchmark_params,
                                       benchmark_truth):
        policy = PolicyProfile(pre_thresholds=np.linspace(0.5, 0.6, 3),
                               post_thresholds=np.linspace(0.5, 0.7, 40))
        with pytest.raises(ValueError, match="pre_thresholds"):
            evaluate_policy(policy, benchmark_truth, benchmark_params, uniform)


class TestMonteCarloAgreement:
    def test_exact_within_mc_error_bars(self, uniform, benchmark_params,
                                        benchmark_truth):
        belief = ExtensionSpec(delta=0.3, length=25)
        policy = build_policy(uniform, benchmark_params, belief,
                              true_length=benchmark_truth.length)
        exact = evaluate_policy(policy, benchmark_truth, benchmark_params, uniform)
        summary = simulate_many(policy, benchmark_truth, benchmark_params, uniform,
                                n_spells=100_000, master_seed=99)
        assert abs(summary.welfare_mean - exact.welfare) < 3 * summary.welfare_stderr
        assert abs(summary.duration_mean - exact.duration) < 3 * summary.duration_stderr
        assert abs(summary.wage_mean - exact.accepted_wage) < 3 * summary.wage_stderr
