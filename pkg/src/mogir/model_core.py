"""Backward-looking monetary model with an inflation-sensitive potential output.

Structural block (all rates are decimals per period, outputs are log levels)::

    x_t   = beta*x_{t-1} - phi*(i_{t-1} - E_{t-1}pi_t - r) + eps_x
    pi_t  = pi_{t-1} + lam*x_t + eps_pi
    x_t   = y_t - y^p_t
    y^p_t = delta - gamma*E_{t-1}(pi_t - pi_n)^2 + y^p_{t-1} + eps_y

``pi_n`` is the inflation rate that maximizes potential growth (the MOGIR).
Expectations are rational, so ``E_{t-1}pi_t`` is the fixed point of the first
two equations given the lagged state and the rate; :func:`conditional_means`
is its closed form and :func:`structural_fixed_point` finds it by iteration.

The arithmetic helpers accept numpy arrays as well as floats so the
simulation engine can push many paths through the same code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from mogir.errors import (
    NegativeShockScale,
    NegativeSquaredDeviation,
    NonConvergence,
    NonPositiveParameter,
    SlopeOutOfRange,
)

FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 10_000


@dataclass(frozen=True)
class ModelParams:
    """Structural parameters, shock scales and targets.

    ``lam`` stands in for lambda (a Python keyword). The defaults are a
    desk calibration used throughout the tests and the CLI, not estimates.
    """

    beta: float = 0.8
    phi: float = 0.5
    lam: float = 0.3
    delta: float = 0.005
    gamma: float = 2.0
    r: float = 0.02
    pi_n: float = 0.02
    alpha: float = 1.0
    sigma_x: float = 0.01
    sigma_pi: float = 0.01
    sigma_y: float = 0.01

    def replace(self, **changes) -> ModelParams:
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class EconState:
    """One period's realized state.

    ``i`` is the rate set at the end of the period, in force for the next
    one. Actual output is derived, so ``y = y_pot + x`` by construction.
    """

    x: float = 0.0
    pi: float = 0.0
    y_pot: float = 0.0
    i: float = 0.0

    @property
    def y(self) -> float:
        return self.y_pot + self.x


@dataclass(frozen=True)
class ShockDraw:
    eps_x: float = 0.0
    eps_pi: float = 0.0
    eps_y: float = 0.0


# (field, violation name) in the order invariants are checked
_POSITIVE = (
    ("beta", "NonPositiveBeta"),
    ("phi", "NonPositivePhi"),
    ("lam", "NonPositiveLambda"),
    ("delta", "NonPositiveDelta"),
    ("gamma", "NonPositiveGamma"),
    ("r", "NonPositiveR"),
    ("alpha", "NonPositiveAlpha"),
)
_SCALES = ("sigma_x", "sigma_pi", "sigma_y")


def validate_params(p: ModelParams) -> ModelParams:
    """Return ``p`` unchanged if every invariant holds, else raise.

    The first failed invariant wins. Positivity is checked before the
    slope bounds, which come before the shock scales.
    """
    for name, violation in _POSITIVE:
        value = getattr(p, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise NonPositiveParameter(violation, f"{name} must be > 0, got {value!r}")
    for name in ("lam", "phi"):
        value = getattr(p, name)
        if not value < 1:
            raise SlopeOutOfRange(
                "SlopeOutOfRange", f"{name} must lie in (0, 1), got {value!r}"
            )
    if not math.isfinite(p.pi_n):
        raise NonPositiveParameter("NonFiniteTarget", f"pi_n must be finite, got {p.pi_n!r}")
    for name in _SCALES:
        value = getattr(p, name)
        if not (math.isfinite(value) and value >= 0):
            raise NegativeShockScale(
                "NegativeShockScale", f"{name} must be >= 0, got {value!r}"
            )
    return p


def steady_state(p: ModelParams, y_pot: float = 0.0) -> EconState:
    """Deterministic steady state: no gap, inflation at target, neutral rate."""
    return EconState(x=0.0, pi=p.pi_n, y_pot=y_pot, i=p.r + p.pi_n)


def innovation_variance(p: ModelParams) -> float:
    """Conditional variance of inflation one step ahead: lam^2 sx^2 + spi^2."""
    return p.lam**2 * p.sigma_x**2 + p.sigma_pi**2


def conditional_means(p: ModelParams, x, pi, i):
    """Closed-form ``(E_{t-1}x_t, E_{t-1}pi_t)`` given lagged state and rate."""
    denom = 1.0 - p.lam * p.phi
    ex = (p.beta * x - p.phi * (i - pi - p.r)) / denom
    epi = (pi + p.lam * (p.beta * x - p.phi * (i - p.r))) / denom
    return ex, epi


def reduced_form_step(p: ModelParams, prev: EconState, shocks: ShockDraw) -> tuple[float, float]:
    """Next-period ``(x, pi)`` from the solved model, shocks added on top."""
    ex, epi = conditional_means(p, prev.x, prev.pi, prev.i)
    x_next = ex + shocks.eps_x
    pi_next = epi + p.lam * shocks.eps_x + shocks.eps_pi
    return x_next, pi_next


def _iterate_forecast(lam, phi, beta, r, x, pi, i, tol, max_iter):
    m = pi
    for _ in range(max_iter):
        m_next = pi + lam * (beta * x - phi * (i - m - r))
        step = abs(m_next - m)
        m = m_next
        if step < tol or step == 0.0:
            return m
    raise NonConvergence(
        f"forecast iteration did not settle within {max_iter} steps (last step {step:.3e})"
    )


def forecast_iterates(p: ModelParams, prev: EconState, i: float):
    """Yield the successive forecast iterates m_1, m_2, ... starting from m_0 = prev.pi."""
    m = prev.pi
    while True:
        m = prev.pi + p.lam * (p.beta * prev.x - p.phi * (i - m - p.r))
        yield m


def structural_fixed_point(
    p: ModelParams,
    prev: EconState,
    i: float,
    tol: float = FIXED_POINT_TOL,
    max_iter: int = FIXED_POINT_MAX_ITER,
) -> float:
    """Rational inflation forecast found by iterating the structural equations.

    Solves ``m = pi + lam*(beta*x - phi*(i - m - r))``. The map is a
    contraction with modulus ``lam*phi < 1``, so iteration from ``m_0 =
    prev.pi`` converges for any valid parameters.
    """
    return _iterate_forecast(p.lam, p.phi, p.beta, p.r, prev.x, prev.pi, i, tol, max_iter)


def forecast_increment(
    p: ModelParams,
    di: float,
    tol: float = FIXED_POINT_TOL,
    max_iter: int = FIXED_POINT_MAX_ITER,
) -> float:
    """Change in the rational inflation forecast caused by raising the rate by ``di``.

    By superposition this is the structural fixed point of the homogeneous
    system (zero lagged state, zero natural rate) driven by ``di`` alone.
    Working in increments keeps rounding proportional to ``di``.
    """
    return _iterate_forecast(p.lam, p.phi, p.beta, 0.0, 0.0, 0.0, di, tol, max_iter)


def expected_sq_deviation(p: ModelParams, expected_pi):
    """``E_{t-1}(pi_t - pi_n)^2`` from the one-step inflation forecast."""
    return (expected_pi - p.pi_n) ** 2 + innovation_variance(p)


def potential_output_step(
    p: ModelParams, y_pot_prev: float, expected_sq_dev: float, eps_y: float
) -> float:
    if expected_sq_dev < 0:
        raise NegativeSquaredDeviation(
            f"expected squared deviation must be >= 0, got {expected_sq_dev!r}"
        )
    return potential_output(p, y_pot_prev, expected_sq_dev, eps_y)


def potential_output(p: ModelParams, y_pot_prev, expected_sq_dev, eps_y):
    """Unchecked, array-friendly body of :func:`potential_output_step`."""
    return p.delta - p.gamma * expected_sq_dev + y_pot_prev + eps_y
