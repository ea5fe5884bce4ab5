"""Oracle cross-checks run by ``mogir verify``.

Each check pits a closed form against an independent computation and
reports the worst deviation it saw next to the tolerance it must meet.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mogir import analytics, model_core, policy, simulation
from mogir.model_core import EconState, ModelParams
from mogir.policy import Strategy
from mogir.simulation import SimConfig

SEARCH_TOL = 1e-7
ANALYTIC_TOL = 1e-10
Z_TOL = 4.0

CHECKS = ("foc", "foc-identity", "fixed-point", "moments")


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    unit: str  # "abs" or "se"
    n_cases: int

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def random_states(p: ModelParams, n: int, seed: int, spread: float = 0.02) -> list[EconState]:
    rng = np.random.default_rng(seed)
    xs = rng.normal(0.0, spread, n)
    ds = rng.normal(0.0, spread, n)
    return [EconState(x=float(x), pi=float(p.pi_n + d)) for x, d in zip(xs, ds)]


def foc_conditions(p: ModelParams, strategy: Strategy, state: EconState) -> float:
    """Residual of the strategy's first-order condition when its rule is applied."""
    rule = policy.rule_for(p, strategy)
    i = policy.apply_rule(rule, state, p.pi_n)
    ex, epi = model_core.conditional_means(p, state.x, state.pi, i)
    if strategy is Strategy.STABILIZATION:
        return ex + p.alpha * p.lam * (epi - p.pi_n)
    if strategy is Strategy.GROWTH_MAX:
        return epi - p.pi_n - 1.0 / (2.0 * p.gamma * p.lam)
    return epi - p.pi_n


def check_foc_oracle(p: ModelParams, states) -> CheckResult:
    worst = 0.0
    for state in states:
        for strategy, objective in policy.STRATEGY_OBJECTIVE.items():
            closed = policy.apply_rule(policy.rule_for(p, strategy), state, p.pi_n)
            numeric = policy.numeric_optimal_rate(p, objective, state)
            worst = max(worst, abs(numeric - closed))
    return CheckResult("foc", worst, SEARCH_TOL, "abs", 3 * len(states))


def check_foc_identities(p: ModelParams, states) -> CheckResult:
    worst = max(
        (abs(foc_conditions(p, s, state)) for state in states for s in Strategy), default=0.0
    )
    return CheckResult("foc-identity", worst, ANALYTIC_TOL, "abs", 3 * len(states))


def check_fixed_point(p: ModelParams, states, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    rates = p.r + p.pi_n + rng.normal(0.0, 0.05, len(states))
    worst = 0.0
    for state, i in zip(states, rates):
        _, closed = model_core.conditional_means(p, state.x, state.pi, float(i))
        worst = max(worst, abs(model_core.structural_fixed_point(p, state, float(i)) - closed))
    return CheckResult("fixed-point", worst, ANALYTIC_TOL, "abs", len(states))


def moment_z_scores(p: ModelParams, cfg: SimConfig, threads: int | None = None):
    """``{(strategy, statistic): z}`` for simulated long-run moments."""
    out = {}
    for strategy in Strategy:
        res = simulation.simulate(p, policy.rule_for(p, strategy), cfg, threads=threads)
        sim = simulation.estimate_moments(res)
        lr = analytics.longrun_moments(p, strategy)
        targets = {
            "mean_pi": lr.mean_pi,
            "mean_x": lr.mean_x,
            "var_pi": lr.var_pi,
            "mean_growth": lr.mean_growth,
            "lag1_autocorr_pi": analytics.law_of_motion(p, strategy).pi_lagpi,
        }
        for name, est in sim.items():
            diff = abs(est.value - targets[name])
            if np.isnan(est.value):
                # autocorrelation of a constant path is undefined
                z = 0.0
            elif est.std_error > 0:
                z = diff / est.std_error
            else:
                z = 0.0 if diff <= 1e-12 * max(1.0, abs(targets[name])) else float("inf")
            out[(strategy, name)] = z
    return out


def check_moments(p: ModelParams, cfg: SimConfig, threads: int | None = None) -> CheckResult:
    z = moment_z_scores(p, cfg, threads)
    return CheckResult("moments", max(z.values()), Z_TOL, "se", len(z))


def run_checks(
    p: ModelParams,
    cfg: SimConfig,
    checks=CHECKS,
    n_states: int = 200,
    threads: int | None = None,
) -> list[CheckResult]:
    states = random_states(p, n_states, cfg.seed)
    results = []
    for name in checks:
        if name == "foc":
            results.append(check_foc_oracle(p, states))
        elif name == "foc-identity":
            results.append(check_foc_identities(p, states))
        elif name == "fixed-point":
            results.append(check_fixed_point(p, states, cfg.seed))
        elif name == "moments":
            results.append(check_moments(p, cfg, threads))
        else:
            raise ValueError(f"unknown check {name!r}")
    return results
