"""Stochastic-volatility factor paths.

Each factor follows

    dF_t = mu dt + rho sigma_t dB_t + sqrt(1 - rho^2) sigma_t dW_t,
    sigma_t = exp(a + b varrho_t),   d varrho_t = -kappa varrho_t dt + dB_t,

with varrho_0 drawn from its stationary law N(0, 1/(2 kappa)).
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from weakfactor.config import SvFactorParams
from weakfactor.errors import ParameterError, ShapeError

logger = logging.getLogger(__name__)


@dataclass
class SvPath:
    """Simulated factor increments together with the volatility state."""

    increments: NDArray[np.float64]  # r x n, aggregated to the observation grid
    log_vol_state: NDArray[np.float64]  # r x (n*refinement + 1), varrho on the fine grid

    @property
    def initial_state(self) -> NDArray[np.float64]:
        return self.log_vol_state[:, 0]


def simulate_sv_paths(
    params: SvFactorParams,
    n: int,
    refinement: int,
    rng: np.random.Generator,
    *,
    initial_state: NDArray[np.float64] | None = None,
) -> SvPath:
    """Simulate ``params.r`` independent SV factors on a grid refined ``refinement`` times.

    The OU state advances by its exact Gaussian transition. F advances by Euler with the
    volatility at the left end of each sub-step, and the same normal shock drives both
    the OU state and the B-part of F.
    """
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if refinement < 1:
        raise ParameterError(f"refinement must be at least 1, got {refinement}")

    r = params.r
    steps = n * refinement
    dt = 1.0 / steps
    decay = np.exp(-params.kappa * dt)
    ou_sd = np.sqrt((1.0 - np.exp(-2.0 * params.kappa * dt)) / (2.0 * params.kappa))

    if initial_state is None:
        initial_state = rng.normal(0.0, np.sqrt(1.0 / (2.0 * params.kappa)), size=r)
    elif initial_state.shape != (r,):
        raise ShapeError(f"initial_state must have shape ({r},), got {initial_state.shape}")

    shock_b = rng.standard_normal((r, steps))
    shock_w = rng.standard_normal((r, steps))

    state = np.empty((r, steps + 1))
    state[:, 0] = initial_state
    for k in range(steps):
        state[:, k + 1] = decay * state[:, k] + ou_sd * shock_b[:, k]

    sigma = np.exp(params.a + params.b * state[:, :-1])
    diffusion = params.rho * shock_b + np.sqrt(1.0 - params.rho**2) * shock_w
    fine = params.mu * dt + sigma * np.sqrt(dt) * diffusion

    increments = fine.reshape(r, n, refinement).sum(axis=2)
    return SvPath(increments=increments, log_vol_state=state)


def simulate_sv_factors(
    params: SvFactorParams,
    n: int,
    refinement: int,
    rng: np.random.Generator,
) -> NDArray[np.float64]:
    """r x n factor increments of the SV model on the observation grid."""
    return simulate_sv_paths(params, n, refinement, rng).increments
