"""Side-by-side comparison of the three strategies.

The report covers long-run targets (mean inflation and output gap),
one-step expected growth at a reference state, and long-run growth. Each
comes in analytic and simulated form. A simulated cell that misses its
closed form by more than four standard errors is flagged rather than
raised, so a bad run is visible in the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mogir import analytics, model_core, policy, simulation
from mogir.analytics import LawOfMotion, LongRunMoments
from mogir.model_core import EconState, ModelParams
from mogir.policy import PolicyRule, Strategy
from mogir.simulation import MomentEstimate, SimConfig, SimulatedMoments

DISCREPANCY = "DISCREPANCY"
Z_TOL = 4.0
# absorbs rounding when a standard error is exactly zero
_ROUNDOFF = 1e-12

ONE_STEP_MIN_PATHS = 10_000


@dataclass(frozen=True)
class Cell:
    statistic: str
    analytic: float
    simulated: float
    std_error: float
    flag: str = ""


def check_cell(statistic: str, analytic: float, est: MomentEstimate) -> Cell:
    flag = ""
    if not math.isnan(est.value):
        bound = Z_TOL * est.std_error + _ROUNDOFF * max(1.0, abs(analytic))
        if not abs(est.value - analytic) <= bound:
            flag = DISCREPANCY
    return Cell(statistic, analytic, est.value, est.std_error, flag)


@dataclass
class StrategyReport:
    strategy: Strategy
    rule: PolicyRule
    law: LawOfMotion
    analytic: LongRunMoments
    simulated: SimulatedMoments
    growth_analytic: float
    growth_simulated: MomentEstimate
    cells: list[Cell] = field(default_factory=list)


@dataclass(frozen=True)
class TimeInconsistency:
    one_step_gap: float  # growth max minus targeting, one period ahead
    long_run_gap: float  # targeting minus growth max, long-run mean growth
    closed_form: float
    coincide: bool


@dataclass
class ComparisonReport:
    params: ModelParams
    config: SimConfig
    reference_state: EconState
    per_strategy: dict[Strategy, StrategyReport]
    ranking: list[Strategy]
    time_inconsistency: TimeInconsistency

    @property
    def time_inconsistency_gap(self) -> float:
        return self.time_inconsistency.one_step_gap

    @property
    def discrepancies(self) -> list[tuple[Strategy, str]]:
        return [
            (s, c.statistic)
            for s, rep in self.per_strategy.items()
            for c in rep.cells
            if c.flag
        ]


def demonstrate_time_inconsistency(p: ModelParams, reference_state: EconState) -> TimeInconsistency:
    """The per-period temptation to leave targeting and its long-run cost.

    Both equal ``1/(4*gamma*lam^2)``. The check compares the two numbers as
    evaluated, not the formula with itself.
    """
    model_core.validate_params(p)
    one_step = analytics.expected_growth(
        p, Strategy.GROWTH_MAX, reference_state
    ) - analytics.expected_growth(p, Strategy.INFLATION_TARGETING, reference_state)
    long_run = (
        analytics.longrun_moments(p, Strategy.INFLATION_TARGETING).mean_growth
        - analytics.longrun_moments(p, Strategy.GROWTH_MAX).mean_growth
    )
    closed = analytics.temptation_gap(p)
    tol = 1e-12 * max(1.0, closed)
    coincide = abs(one_step - closed) <= tol and abs(long_run - closed) <= tol
    return TimeInconsistency(one_step, long_run, closed, coincide)


def compare_strategies(
    p: ModelParams,
    cfg: SimConfig,
    reference_state: EconState | None = None,
    threads: int | None = None,
) -> ComparisonReport:
    model_core.validate_params(p)
    ref = reference_state if reference_state is not None else model_core.steady_state(p)
    one_step_paths = max(cfg.n_paths, ONE_STEP_MIN_PATHS)
    one_step_seed = (cfg.seed + 1) % (1 << 64)

    per: dict[Strategy, StrategyReport] = {}
    for strategy in Strategy:
        rule = policy.rule_for(p, strategy)
        law = analytics.law_of_motion(p, strategy)
        lr = analytics.longrun_moments(p, strategy)
        sim = simulation.estimate_moments(simulation.simulate(p, rule, cfg, threads=threads))
        g_an = analytics.expected_growth(p, strategy, ref)
        g_sim = simulation.one_step_growth(
            p, rule, ref, one_step_paths, seed=one_step_seed, threads=threads
        )
        cells = [
            check_cell("mean_pi", lr.mean_pi, sim.mean_pi),
            check_cell("mean_x", lr.mean_x, sim.mean_x),
            check_cell("var_pi", lr.var_pi, sim.var_pi),
            check_cell("mean_growth", lr.mean_growth, sim.mean_growth),
            check_cell("lag1_autocorr_pi", law.pi_lagpi, sim.lag1_autocorr_pi),
            check_cell("one_step_growth", g_an, g_sim),
        ]
        per[strategy] = StrategyReport(strategy, rule, law, lr, sim, g_an, g_sim, cells)

    ranking = sorted(Strategy, key=lambda s: per[s].analytic.mean_growth, reverse=True)
    return ComparisonReport(
        p, cfg, ref, per, ranking, demonstrate_time_inconsistency(p, ref)
    )
