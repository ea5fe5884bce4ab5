import numpy as np
import pytest
from hypothesis import given, settings

from conftest import sample_params, sample_state, state_devs, state_from, valid_params
from mogir import model_core, policy
from mogir.errors import BracketFailure
from mogir.model_core import EconState
from mogir.policy import (
    Objective,
    PolicyRule,
    Strategy,
    apply_rule,
    golden_section,
    growth_max_rule,
    inflation_targeting_rule,
    numeric_optimal_rate,
    rule_for,
    satisfies_taylor_principle,
    stabilization_rule,
)


class TestClosedFormRules:
    def test_stabilization_example(self, params):
        rule = stabilization_rule(params)
        assert rule.c0 == pytest.approx(0.04, abs=1e-15)
        assert rule.c_x == pytest.approx(1.6, abs=1e-15)
        # (0.5 + 0.3) / (0.5 * 1.09)
        assert rule.c_pi == pytest.approx(0.8 / 0.545, rel=1e-14)
        assert rule.c_pi == pytest.approx(1.46789, abs=1e-5)
        assert rule.strategy.label == "PureStabilization"

    def test_growth_max_example(self, params):
        rule = growth_max_rule(params)
        assert rule.c_x == pytest.approx(1.6, abs=1e-15)
        assert rule.c_pi == pytest.approx(1 / 0.15, rel=1e-14)
        assert rule.c0 == pytest.approx(0.04 - 0.85 / 0.18, rel=1e-14)
        assert rule.c0 == pytest.approx(-4.68222, abs=1e-5)
        assert rule.strategy.label == "GrowthMax"

    def test_inflation_targeting_example(self, params):
        rule = inflation_targeting_rule(params)
        assert (rule.c0, rule.c_x) == pytest.approx((0.04, 1.6), abs=1e-15)
        assert rule.c_pi == pytest.approx(6.66667, abs=1e-5)
        assert rule.strategy.label == "StrictInflationTargeting"

    def test_rule_for_dispatch(self, params):
        for s in Strategy:
            assert rule_for(params, s).strategy is s
        assert rule_for(params, "it") == inflation_targeting_rule(params)

    def test_growth_max_forecast_above_target(self, params):
        rule = growth_max_rule(params)
        for state in (EconState(0.0, params.pi_n), EconState(0.03, 0.05), EconState(-0.02, -0.01)):
            i = apply_rule(rule, state, params.pi_n)
            m = model_core.structural_fixed_point(params, state, i)
            assert m == pytest.approx(params.pi_n + 1 / (2 * params.gamma * params.lam), abs=1e-10)

    def test_it_forecast_on_target(self, params):
        rule = inflation_targeting_rule(params)
        state = EconState(0.02, 0.035)
        _, m = model_core.conditional_means(params, state.x, state.pi, apply_rule(rule, state, params.pi_n))
        assert m == pytest.approx(params.pi_n, abs=1e-15)

    @settings(max_examples=500, deadline=None)
    @given(p=valid_params)
    def test_shared_output_coefficient_and_taylor_principle(self, p):
        rules = [rule_for(p, s) for s in Strategy]
        assert all(rule.c_x == p.beta / p.phi for rule in rules)
        assert all(satisfies_taylor_principle(rule) for rule in rules)

    @settings(max_examples=500, deadline=None)
    @given(p=valid_params)
    def test_rule_constant_identity(self, p):
        it, gm = inflation_targeting_rule(p), growth_max_rule(p)
        assert it.c_pi == gm.c_pi and it.c_x == gm.c_x
        gap = (1 - p.lam * p.phi) / (2 * p.gamma * p.lam**2 * p.phi)
        assert gap > 0
        assert abs((it.c0 - gm.c0) - gap) <= 1e-12 * max(1.0, gap)


class TestApplyRule:
    RULE = PolicyRule(0.04, 1.6, 1.46789, Strategy.STABILIZATION)

    def test_steady_state(self, params):
        assert apply_rule(self.RULE, EconState(0.0, params.pi_n), params.pi_n) == 0.04

    def test_worked_example(self, params):
        rate = apply_rule(self.RULE, EconState(0.01, params.pi_n + 0.01), params.pi_n)
        assert rate == pytest.approx(0.04 + 0.016 + 0.0146789, abs=1e-15)

    def test_linear_in_inflation_deviation(self):
        rule = PolicyRule(0.0, 0.0, 1.46789, Strategy.STABILIZATION)
        one = apply_rule(rule, EconState(0.0, 0.25), 0.0)
        two = apply_rule(rule, EconState(0.0, 0.5), 0.0)
        assert two == 2 * one


class TestTaylorPrinciple:
    @pytest.mark.parametrize("c_pi, expected", [(1.46789, True), (1.0, False), (6.66667, True), (0.9, False)])
    def test_boundary(self, c_pi, expected):
        rule = PolicyRule(0.04, 1.6, c_pi, Strategy.STABILIZATION)
        assert satisfies_taylor_principle(rule) is expected


class TestFocIdentities:
    @settings(max_examples=300, deadline=None)
    @given(p=valid_params, devs=state_devs)
    def test_each_rule_solves_its_condition(self, p, devs):
        state = state_from(p, devs)
        k = 1.0 / (2 * p.gamma * p.lam)
        for s in Strategy:
            i = apply_rule(rule_for(p, s), state, p.pi_n)
            ex, epi = model_core.conditional_means(p, state.x, state.pi, i)
            if s is Strategy.STABILIZATION:
                resid = ex + p.alpha * p.lam * (epi - p.pi_n)
            elif s is Strategy.GROWTH_MAX:
                resid = epi - p.pi_n - k
            else:
                resid = epi - p.pi_n
            assert abs(resid) < 1e-10


class TestGoldenSection:
    def test_quadratic(self):
        assert golden_section(lambda z: (z - 0.3) ** 2, -2.0, 5.0, 1e-9) == pytest.approx(0.3, abs=1e-9)

    def test_edge_optimum_raises(self):
        with pytest.raises(BracketFailure):
            policy._search(lambda z: z, 0.0, 1.0, 1e-6)


class TestNumericOptimalRate:
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_reference_states(self, params, strategy):
        objective = policy.STRATEGY_OBJECTIVE[strategy]
        for state in (EconState(0.0, params.pi_n), EconState(0.01, 0.03), EconState(-0.04, -0.02)):
            closed = apply_rule(rule_for(params, strategy), state, params.pi_n)
            assert abs(numeric_optimal_rate(params, objective, state) - closed) < 1e-7

    def test_random_draws(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            p = sample_params(rng)
            state = sample_state(rng, p)
            for strategy, objective in policy.STRATEGY_OBJECTIVE.items():
                closed = apply_rule(rule_for(p, strategy), state, p.pi_n)
                worst = max(worst, abs(numeric_optimal_rate(p, objective, state) - closed))
        assert worst < 1e-7

    def test_loss_optimum_is_grid_minimum(self, params):
        from mogir import analytics

        state = EconState(0.01, 0.03)
        best = numeric_optimal_rate(params, Objective.LOSS, state)
        grid = best + np.linspace(-0.05, 0.05, 2001)
        losses = [analytics.loss_value(params, state, float(i)) for i in grid]
        assert min(losses) >= analytics.loss_value(params, state, best) - 1e-18

    def test_independent_of_closed_form_rules(self, params, monkeypatch):
        # sabotaging the closed forms must not move the oracle
        state = EconState(0.01, 0.03)
        before = numeric_optimal_rate(params, Objective.EXP_GROWTH, state)
        monkeypatch.setattr(policy, "growth_max_rule", lambda p: PolicyRule(0, 0, 0, Strategy.GROWTH_MAX))
        monkeypatch.setattr(model_core, "conditional_means", None)
        assert numeric_optimal_rate(params, Objective.EXP_GROWTH, state) == before
