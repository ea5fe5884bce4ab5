import numpy as np
import pytest
from hypothesis import strategies as st

from mogir.model_core import EconState, ModelParams


@pytest.fixture
def params():
    return ModelParams()


def sample_params(rng: np.random.Generator) -> ModelParams:
    """A random valid calibration over economically plausible ranges."""
    return ModelParams(
        beta=rng.uniform(0.05, 1.5),
        phi=rng.uniform(0.05, 0.95),
        lam=rng.uniform(0.05, 0.95),
        delta=rng.uniform(1e-4, 0.05),
        gamma=rng.uniform(0.2, 20.0),
        r=rng.uniform(0.001, 0.1),
        pi_n=rng.uniform(-0.02, 0.06),
        alpha=rng.uniform(0.05, 10.0),
        sigma_x=rng.uniform(1e-4, 0.05),
        sigma_pi=rng.uniform(1e-4, 0.05),
        sigma_y=rng.uniform(0.0, 0.05),
    )


def sample_state(rng: np.random.Generator, p: ModelParams, spread: float = 0.05) -> EconState:
    return EconState(
        x=rng.normal(0.0, spread),
        pi=p.pi_n + rng.normal(0.0, spread),
        y_pot=rng.normal(0.0, 1.0),
        i=p.r + p.pi_n + rng.normal(0.0, spread),
    )


def _f(lo, hi):
    return st.floats(lo, hi, allow_nan=False, allow_infinity=False)


valid_params = st.builds(
    ModelParams,
    beta=_f(0.05, 1.5),
    phi=_f(0.05, 0.95),
    lam=_f(0.05, 0.95),
    delta=_f(1e-4, 0.05),
    gamma=_f(0.2, 20.0),
    r=_f(0.001, 0.1),
    pi_n=_f(-0.02, 0.06),
    alpha=_f(0.05, 10.0),
    sigma_x=_f(1e-4, 0.05),
    sigma_pi=_f(1e-4, 0.05),
    sigma_y=_f(0.0, 0.05),
)

# states are drawn as deviations and shifted by pi_n at use
state_devs = st.tuples(_f(-0.1, 0.1), _f(-0.1, 0.1), _f(-0.3, 0.3))


def state_from(p: ModelParams, devs) -> EconState:
    dx, dpi, di = devs
    return EconState(x=dx, pi=p.pi_n + dpi, y_pot=0.0, i=p.r + p.pi_n + di)
