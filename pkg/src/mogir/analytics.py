"""Closed-form equilibrium results for the three policy strategies.

Everything here is a direct evaluation of the equilibrium formulas. The
only rewrite is the stabilization inflation persistence, kept as
``1/(1 + alpha*lam^2)`` instead of ``1 - alpha*lam^2/(1 + alpha*lam^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from mogir import model_core
from mogir.model_core import EconState, ModelParams, innovation_variance
from mogir.policy import Strategy


@dataclass(frozen=True)
class LawOfMotion:
    """Equilibrium dynamics in deviations from target, d = pi - pi_n::

        x_t = x_const + x_lagpi * d_{t-1} + eps_x
        d_t = pi_const + pi_lagpi * d_{t-1} + lam*eps_x + eps_pi
    """

    x_const: float
    x_lagpi: float
    pi_const: float
    pi_lagpi: float


@dataclass(frozen=True)
class LongRunMoments:
    mean_pi: float
    mean_x: float
    var_pi: float
    mean_growth: float


def law_of_motion(p: ModelParams, strategy: Strategy) -> LawOfMotion:
    strategy = Strategy(strategy)
    if strategy is Strategy.STABILIZATION:
        k = 1.0 + p.alpha * p.lam**2
        return LawOfMotion(0.0, -p.alpha * p.lam / k, 0.0, 1.0 / k)
    if strategy is Strategy.GROWTH_MAX:
        return LawOfMotion(
            1.0 / (2.0 * p.gamma * p.lam**2),
            -1.0 / p.lam,
            1.0 / (2.0 * p.gamma * p.lam),
            0.0,
        )
    return LawOfMotion(0.0, -1.0 / p.lam, 0.0, 0.0)


def expected_growth(p: ModelParams, strategy: Strategy, state: EconState) -> float:
    """One-step expected growth of actual output from ``state`` under ``strategy``."""
    strategy = Strategy(strategy)
    d = state.pi - p.pi_n
    v = innovation_variance(p)
    if strategy is Strategy.STABILIZATION:
        k = 1.0 + p.alpha * p.lam**2
        return p.delta - p.gamma * ((d / k) ** 2 + v) - p.alpha * p.lam * d / k - state.x
    if strategy is Strategy.GROWTH_MAX:
        return (
            p.delta - p.gamma * v + 1.0 / (4.0 * p.gamma * p.lam**2) - d / p.lam - state.x
        )
    return p.delta - p.gamma * v - d / p.lam - state.x


def longrun_moments(p: ModelParams, strategy: Strategy) -> LongRunMoments:
    strategy = Strategy(strategy)
    v = innovation_variance(p)
    if strategy is Strategy.STABILIZATION:
        k2 = (1.0 + p.alpha * p.lam**2) ** 2
        var_pi = k2 * v / (k2 - 1.0)
        return LongRunMoments(p.pi_n, 0.0, var_pi, p.delta - p.gamma * var_pi)
    if strategy is Strategy.GROWTH_MAX:
        premium = 1.0 / (2.0 * p.gamma * p.lam)
        return LongRunMoments(
            p.pi_n + premium, 0.0, v, p.delta - p.gamma * (premium**2 + v)
        )
    return LongRunMoments(p.pi_n, 0.0, v, p.delta - p.gamma * v)


def stabilization_growth_shortfall(p: ModelParams) -> float:
    """Long-run growth lost by pure stabilization relative to inflation targeting."""
    return p.gamma * innovation_variance(p) / ((1.0 + p.alpha * p.lam**2) ** 2 - 1.0)


def temptation_gap(p: ModelParams) -> float:
    """Per-period growth gain from switching targeting to growth maximization."""
    return 1.0 / (4.0 * p.gamma * p.lam**2)


def loss_value(p: ModelParams, state: EconState, i: float) -> float:
    """Full conditional expected loss for rate ``i``, variance floor included."""
    ex, epi = model_core.conditional_means(p, state.x, state.pi, i)
    return ex**2 + p.sigma_x**2 + p.alpha * model_core.expected_sq_deviation(p, epi)
