"""Optimal interest-rate rules and a numerical check on them.

All three strategies produce an affine rule::

    i = c0 + c_x * x + c_pi * (pi - pi_n)

evaluated on last period's state. The closed forms live in
:func:`stabilization_rule`, :func:`growth_max_rule` and
:func:`inflation_targeting_rule`. :func:`numeric_optimal_rate` re-derives
the optimal rate for a given state by direct search on the one-period
objective, using only the iterated structural forecast.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from mogir import model_core
from mogir.errors import BracketFailure
from mogir.model_core import EconState, ModelParams

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_EPS = 2.220446049250313e-16


class Strategy(str, enum.Enum):
    STABILIZATION = "stab"
    GROWTH_MAX = "growthmax"
    INFLATION_TARGETING = "it"

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Strategy.STABILIZATION: "PureStabilization",
    Strategy.GROWTH_MAX: "GrowthMax",
    Strategy.INFLATION_TARGETING: "StrictInflationTargeting",
}


class Objective(str, enum.Enum):
    """One-period objectives, each reduced to its rate-dependent part."""

    LOSS = "loss"  # minimize (E x)^2 + alpha (E pi - pi_n)^2
    EXP_GROWTH = "exp_growth"  # maximize -gamma (E pi - pi_n)^2 + E x
    SQ_INFL_DEV = "sq_infl_dev"  # minimize (E pi - pi_n)^2


@dataclass(frozen=True)
class PolicyRule:
    c0: float
    c_x: float
    c_pi: float
    strategy: Strategy


def stabilization_rule(p: ModelParams) -> PolicyRule:
    c_pi = (p.phi + p.alpha * p.lam) / (p.phi * (1.0 + p.alpha * p.lam**2))
    return PolicyRule(p.r + p.pi_n, p.beta / p.phi, c_pi, Strategy.STABILIZATION)


def growth_max_offset(p: ModelParams) -> float:
    """How far the growth-maximizing intercept sits below the targeting one."""
    return (1.0 - p.lam * p.phi) / (2.0 * p.gamma * p.lam**2 * p.phi)


def growth_max_rule(p: ModelParams) -> PolicyRule:
    return PolicyRule(
        p.r + p.pi_n - growth_max_offset(p),
        p.beta / p.phi,
        1.0 / (p.lam * p.phi),
        Strategy.GROWTH_MAX,
    )


def inflation_targeting_rule(p: ModelParams) -> PolicyRule:
    return PolicyRule(
        p.r + p.pi_n, p.beta / p.phi, 1.0 / (p.lam * p.phi), Strategy.INFLATION_TARGETING
    )


STRATEGY_OBJECTIVE = {
    Strategy.STABILIZATION: Objective.LOSS,
    Strategy.GROWTH_MAX: Objective.EXP_GROWTH,
    Strategy.INFLATION_TARGETING: Objective.SQ_INFL_DEV,
}


def rule_for(p: ModelParams, strategy: Strategy) -> PolicyRule:
    strategy = Strategy(strategy)
    if strategy is Strategy.STABILIZATION:
        return stabilization_rule(p)
    if strategy is Strategy.GROWTH_MAX:
        return growth_max_rule(p)
    return inflation_targeting_rule(p)


def apply_rule(rule: PolicyRule, state: EconState, pi_n: float):
    return rule.c0 + rule.c_x * state.x + rule.c_pi * (state.pi - pi_n)


def satisfies_taylor_principle(rule: PolicyRule) -> bool:
    return rule.c_pi > 1.0


# -- numerical optimum ------------------------------------------------------


def golden_section(f, lo: float, hi: float, tol: float) -> float:
    """Minimizer of a unimodal ``f`` on ``[lo, hi]``, to a bracket of width ``tol``."""
    c = hi - _INV_GOLDEN * (hi - lo)
    d = lo + _INV_GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_GOLDEN * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def _objective_form(p: ModelParams, objective: Objective):
    """Objective as a quadratic ``q(a, b)`` in a = E x, b = E pi - pi_n, to be minimized.

    Returns the level form and its exact increment ``dq(a, b, da, db)``.
    """
    if objective is Objective.LOSS:
        return (
            lambda a, b: a * a + p.alpha * b * b,
            lambda a, b, da, db: da * (2.0 * a + da) + p.alpha * db * (2.0 * b + db),
        )
    if objective is Objective.EXP_GROWTH:
        return (
            lambda a, b: p.gamma * b * b - a,
            lambda a, b, da, db: p.gamma * db * (2.0 * b + db) - da,
        )
    return (
        lambda a, b: b * b,
        lambda a, b, da, db: db * (2.0 * b + db),
    )


def _search(f, center: float, half_width: float, tol: float) -> float:
    for attempt in range(2):
        lo, hi = center - half_width, center + half_width
        best = golden_section(f, lo, hi, tol)
        if best - lo > tol and hi - best > tol:
            return best
        half_width *= 10.0
        tol *= 10.0
    raise BracketFailure(
        f"optimum stuck at the edge of [{lo:.6g}, {hi:.6g}] after widening"
    )


def numeric_optimal_rate(
    p: ModelParams, objective: Objective, state: EconState, tol: float = 1e-10
) -> float:
    """Optimal rate for one period, found by searching over the rate.

    Forecasts come from the iterated structural fixed point only. The
    search runs in two passes: a coarse golden-section pass on objective
    levels, then a fine pass on objective increments relative to the coarse
    optimum. Increments avoid the cancellation that limits a level-based
    search to roughly the square root of machine precision.
    """
    objective = Objective(objective)
    level, increment = _objective_form(p, objective)
    x, pi = state.x, state.pi

    def forecast_terms(i, fp_tol=model_core.FIXED_POINT_TOL):
        m = model_core.structural_fixed_point(p, state, i, tol=fp_tol)
        return p.beta * x - p.phi * (i - m - p.r), m - p.pi_n

    # largest inflation response among the three strategies
    c_pi_max = 1.0 / (p.lam * p.phi)
    half_width = 10.0 * (1.0 + abs(x) + abs(pi - p.pi_n)) * c_pi_max
    center = p.r + p.pi_n

    coarse = _search(lambda i: level(*forecast_terms(i)), center, half_width, 1e-6 * half_width)

    m0 = model_core.structural_fixed_point(p, state, coarse)
    # bound on the magnitude of every term in the forecast recursion
    scale = max(abs(pi), abs(m0), p.lam * abs(p.beta * x), p.lam * p.phi * (abs(coarse) + p.r))
    a1, b1 = forecast_terms(coarse, fp_tol=8.0 * _EPS * scale)
    lam_phi = p.lam * p.phi

    def refined(di):
        dm = model_core.forecast_increment(p, di, tol=8.0 * _EPS * lam_phi * abs(di))
        return increment(a1, b1, -p.phi * (di - dm), dm)

    step = _search(refined, 0.0, 1e-3 * half_width, tol)
    return coarse + step
