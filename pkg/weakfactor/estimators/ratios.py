"""Perturbed eigenvalue-ratio estimators: r^P, r^P,cor and Pelger's tuning."""

import numpy as np
from numpy.typing import NDArray

from weakfactor.config import EstimatorConfig
from weakfactor.errors import ParameterError
from weakfactor.estimators.base import median_eigenvalue, require_source
from weakfactor.spectra import Spectrum


def er_statistics(spectrum: Spectrum, perturbation: float, r_max: int) -> NDArray[np.float64]:
    """ER_j = (lambda_j + p) / (lambda_{j+1} + p) for j = 1..r_max.

    0/0 is read as 1 and x/0 with x > 0 as +inf.
    """
    if perturbation < 0:
        raise ParameterError(f"perturbation must be nonnegative, got {perturbation}")
    values = spectrum.padded(max(spectrum.d, r_max + 1))
    numerator = values[:r_max] + perturbation
    denominator = values[1 : r_max + 1] + perturbation
    ratios = np.ones(r_max)
    positive = denominator > 0
    ratios[positive] = numerator[positive] / denominator[positive]
    ratios[~positive & (numerator > 0)] = np.inf
    return ratios


def estimate_perturbed_ratio(
    spectrum: Spectrum,
    d: int,
    config: EstimatorConfig,
    g_value: float,
    gamma: float | None = None,
) -> int:
    """max{j <= r_max : ER_j > 1 + gamma} with perturbation d^tau * g_value."""
    if g_value < 0:
        raise ParameterError(f"g_value must be nonnegative, got {g_value}")
    gamma = config.gamma if gamma is None else gamma
    ratios = er_statistics(spectrum, d**config.tau * g_value, config.r_max)
    above = np.flatnonzero(ratios > 1.0 + gamma)
    return int(above[-1]) + 1 if above.size else 0


def estimate_pelger(spectrum: Spectrum, d: int, config: EstimatorConfig) -> int:
    """r^P,cor with g(d) = median correlation eigenvalue and gamma = pelger_gamma.

    When d > 2n more than half of the eigenvalues vanish, so the perturbation is 0.
    """
    require_source(spectrum, "correlation", "estimate_pelger")
    return estimate_perturbed_ratio(
        spectrum, d, config, median_eigenvalue(spectrum), gamma=config.pelger_gamma
    )
