"""Monte Carlo engine for the model under a fixed policy rule.

Shocks are addressed by ``(seed, path, t)``: each path owns a Philox key
built from the seed and the path index, and period ``t`` reads counter
block ``t``. A draw therefore never depends on which other draws were made
or in what order, and paths can be simulated in any grouping or on any
number of threads with bit-identical results.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from mogir import model_core
from mogir.errors import InsufficientData, InvalidConfig
from mogir.model_core import EconState, ModelParams, ShockDraw
from mogir.policy import PolicyRule, apply_rule

THREADS_ENV = "MOGIR_SIM_THREADS"
_U64 = 1 << 64


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo contract. ``initial=None`` means the deterministic steady state."""

    horizon: int = 6000
    burn_in: int = 1000
    n_paths: int = 200
    seed: int = 0
    initial: EconState | None = None

    def __post_init__(self):
        for name in ("horizon", "burn_in", "n_paths", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidConfig("NonIntegerSetting", f"{name} must be an integer, got {value!r}")
        if self.horizon < 1:
            raise InvalidConfig("NonPositiveHorizon", f"horizon must be >= 1, got {self.horizon}")
        if not 0 <= self.burn_in < self.horizon:
            raise InvalidConfig(
                "BurnInOutOfRange",
                f"burn_in must satisfy 0 <= burn_in < horizon, got {self.burn_in}",
            )
        if self.n_paths < 1:
            raise InvalidConfig("NonPositivePathCount", f"n_paths must be >= 1, got {self.n_paths}")
        if not 0 <= self.seed < _U64:
            raise InvalidConfig("SeedOutOfRange", f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def initial_state(self, p: ModelParams) -> EconState:
        return self.initial if self.initial is not None else model_core.steady_state(p)

    @property
    def n_obs(self) -> int:
        return self.n_paths * (self.horizon - self.burn_in)


@dataclass(frozen=True)
class MomentEstimate:
    value: float
    std_error: float
    n_obs: int


@dataclass(frozen=True)
class SimulatedMoments:
    mean_pi: MomentEstimate
    mean_x: MomentEstimate
    var_pi: MomentEstimate
    mean_growth: MomentEstimate
    lag1_autocorr_pi: MomentEstimate
    se_method: str

    NAMES = ("mean_pi", "mean_x", "var_pi", "mean_growth", "lag1_autocorr_pi")

    def items(self):
        return [(name, getattr(self, name)) for name in self.NAMES]


@dataclass
class SimulationResult:
    """Simulated states, each array shaped ``(n_paths, horizon + 1)``.

    Column 0 is the initial condition. ``i[:, t]`` is the rate the rule sets
    after observing period ``t``.
    """

    x: np.ndarray
    pi: np.ndarray
    y_pot: np.ndarray
    y: np.ndarray
    i: np.ndarray
    rule: PolicyRule
    config: SimConfig

    def states(self, path: int = 0) -> list[EconState]:
        return [
            EconState(float(x), float(pi), float(yp), float(i))
            for x, pi, yp, i in zip(self.x[path], self.pi[path], self.y_pot[path], self.i[path])
        ]


# -- shocks -----------------------------------------------------------------


def _standard_normals(seed: int, path_index: int, start: int, count: int) -> np.ndarray:
    """``(count, 3)`` independent N(0, 1) draws for periods ``start .. start+count-1``."""
    gen = np.random.Philox(key=int(seed) | (int(path_index) << 64), counter=int(start))
    raw = gen.random_raw(4 * count).reshape(count, 4)[:, :3]
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return ndtri(u)


def generate_shocks(cfg: SimConfig, p: ModelParams, path_index: int, t: int) -> ShockDraw:
    if not 0 <= path_index < cfg.n_paths or not 0 <= t < cfg.horizon:
        raise IndexError(f"(path {path_index}, t {t}) outside the configured grid")
    z = _standard_normals(cfg.seed, path_index, t, 1)[0]
    return ShockDraw(
        float(p.sigma_x * z[0]), float(p.sigma_pi * z[1]), float(p.sigma_y * z[2])
    )


def _path_shocks(cfg: SimConfig, p: ModelParams, paths) -> tuple[np.ndarray, ...]:
    z = np.stack([_standard_normals(cfg.seed, k, 0, cfg.horizon) for k in paths])
    return p.sigma_x * z[:, :, 0], p.sigma_pi * z[:, :, 1], p.sigma_y * z[:, :, 2]


# -- paths ------------------------------------------------------------------


def _run_paths(p: ModelParams, rule: PolicyRule, cfg: SimConfig, paths):
    n, horizon = len(paths), cfg.horizon
    eps_x, eps_pi, eps_y = _path_shocks(cfg, p, paths)
    init = cfg.initial_state(p)
    x = np.empty((n, horizon + 1))
    pi = np.empty_like(x)
    y_pot = np.empty_like(x)
    rate = np.empty_like(x)
    x[:, 0], pi[:, 0], y_pot[:, 0] = init.x, init.pi, init.y_pot
    v = model_core.innovation_variance(p)

    for t in range(1, horizon + 1):
        prev = EconState(x[:, t - 1], pi[:, t - 1])
        rate[:, t - 1] = apply_rule(rule, prev, p.pi_n)
        ex, epi = model_core.conditional_means(p, prev.x, prev.pi, rate[:, t - 1])
        e_x = eps_x[:, t - 1]
        x[:, t] = ex + e_x
        pi[:, t] = epi + p.lam * e_x + eps_pi[:, t - 1]
        sq_dev = (epi - p.pi_n) ** 2 + v
        y_pot[:, t] = model_core.potential_output(p, y_pot[:, t - 1], sq_dev, eps_y[:, t - 1])
    rate[:, horizon] = apply_rule(rule, EconState(x[:, horizon], pi[:, horizon]), p.pi_n)
    return x, pi, y_pot, rate


def sim_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InvalidConfig("BadThreadCount", f"{THREADS_ENV} must be an integer, got {raw!r}")
    if n < 0:
        raise InvalidConfig("BadThreadCount", f"{THREADS_ENV} must be >= 0, got {n}")
    return n or (os.cpu_count() or 1)


def simulate(
    p: ModelParams, rule: PolicyRule, cfg: SimConfig, threads: int | None = None
) -> SimulationResult:
    """Simulate all ``cfg.n_paths`` paths, split across up to ``threads`` workers."""
    model_core.validate_params(p)
    threads = sim_threads() if threads is None else max(1, int(threads))
    chunks = [c for c in np.array_split(np.arange(cfg.n_paths), threads) if len(c)]
    if len(chunks) == 1:
        parts = [_run_paths(p, rule, cfg, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(lambda c: _run_paths(p, rule, cfg, c), chunks))
    x, pi, y_pot, rate = (np.concatenate(arrs) for arrs in zip(*parts))
    return SimulationResult(x, pi, y_pot, y_pot + x, rate, rule, cfg)


def simulate_path(p: ModelParams, rule: PolicyRule, cfg: SimConfig, path_index: int) -> list[EconState]:
    """The ``horizon`` states following the initial condition on one path."""
    if not 0 <= path_index < cfg.n_paths:
        raise IndexError(f"path {path_index} outside 0..{cfg.n_paths - 1}")
    model_core.validate_params(p)
    x, pi, y_pot, rate = _run_paths(p, rule, cfg, [path_index])
    res = SimulationResult(x, pi, y_pot, y_pot + x, rate, rule, cfg)
    return res.states(0)[1:]


# -- moments ----------------------------------------------------------------


def _ratio_estimate(nums, dens) -> tuple[float, float]:
    """Pooled ratio sum(nums)/sum(dens) with a between-unit standard error."""
    num, den = math.fsum(nums), math.fsum(dens)
    if den == 0.0:
        return math.nan, math.nan
    ratio = num / den
    k = len(nums)
    resid = math.fsum((a - ratio * b) ** 2 for a, b in zip(nums, dens))
    return ratio, math.sqrt(k / (k - 1) * resid) / den


def estimate_moments(paths: SimulationResult, burn_in: int | None = None) -> SimulatedMoments:
    """Pooled post-burn-in moments with Monte Carlo standard errors.

    With several paths every path is one unit for the standard errors. A
    single path is cut into about sqrt(n) contiguous batches instead.
    Deviations for the variance and autocorrelation are taken around the
    pooled mean, so short units do not bias either statistic.
    """
    burn_in = paths.config.burn_in if burn_in is None else burn_in
    horizon = paths.x.shape[1] - 1
    n_per = horizon - burn_in
    if burn_in < 0 or n_per < 2:
        raise InsufficientData(f"burn-in {burn_in} leaves {max(n_per, 0)} observations per path")

    keep = slice(burn_in + 1, horizon + 1)
    pi, x = paths.pi[:, keep], paths.x[:, keep]
    growth = paths.y[:, keep] - paths.y[:, burn_in:horizon]

    if pi.shape[0] > 1:
        se_method = "between-path"
        units = [(pi[k], x[k], growth[k]) for k in range(pi.shape[0])]
    else:
        se_method = "batch-means"
        n_batches = max(2, math.isqrt(n_per))
        units = list(zip(*(np.array_split(a[0], n_batches) for a in (pi, x, growth))))

    counts = [float(u[0].size) for u in units]
    n_obs = int(sum(counts))

    def mean_of(col):
        value, se = _ratio_estimate([float(np.sum(u[col])) for u in units], counts)
        return MomentEstimate(value, se, n_obs)

    mean_pi = mean_of(0)
    # shifting by an observed value first keeps a constant path exactly constant
    shift = float(pi[0, 0])
    mu = math.fsum(float(np.sum(u[0] - shift)) for u in units) / n_obs
    dev = [(u[0] - shift) - mu for u in units]
    var_value, var_se = _ratio_estimate([float(np.sum(d * d)) for d in dev], counts)

    lag_nums = [float(np.sum(d[1:] * d[:-1])) for d in dev]
    lag_dens = [0.5 * float(np.sum(d[1:] ** 2) + np.sum(d[:-1] ** 2)) for d in dev]
    rho, rho_se = _ratio_estimate(lag_nums, lag_dens)
    n_pairs = n_obs - len(units)

    return SimulatedMoments(
        mean_pi=mean_pi,
        mean_x=mean_of(1),
        var_pi=MomentEstimate(var_value, var_se, n_obs),
        mean_growth=mean_of(2),
        lag1_autocorr_pi=MomentEstimate(rho, rho_se, n_pairs),
        se_method=se_method,
    )


def one_step_growth(
    p: ModelParams,
    rule: PolicyRule,
    state: EconState,
    n_paths: int,
    seed: int = 0,
    threads: int | None = None,
) -> MomentEstimate:
    """Average one-period output growth from a fixed starting state."""
    if n_paths < 2:
        raise InsufficientData("one-step growth needs at least two paths")
    cfg = SimConfig(horizon=1, burn_in=0, n_paths=n_paths, seed=seed, initial=state)
    res = simulate(p, rule, cfg, threads=threads)
    g = res.y[:, 1] - res.y[:, 0]
    value, se = _ratio_estimate([float(v) for v in g], [1.0] * n_paths)
    return MomentEstimate(value, se, n_paths)
