"""Eigenvalue-thresholding estimators: r^BN, r^BN,cor and PC_p1."""

import math

from weakfactor.config import EstimatorConfig
from weakfactor.errors import ParameterError
from weakfactor.estimators.base import (
    count_above,
    loglog,
    require_source,
    resolve_g,
    sigma2_hat,
)
from weakfactor.spectra import Spectrum


def bn_threshold(spectrum: Spectrum, d: int, config: EstimatorConfig, scale: float = 1.0) -> float:
    """d^tau * g(d) with g(d) = scale * sigma2_hat * sqrt(log log d)."""
    sigma2 = sigma2_hat(spectrum, config.r_max, config.sigma2_normalization)
    return d**config.tau * scale * sigma2 * loglog(d)


def estimate_bn(
    spectrum: Spectrum, d: int, config: EstimatorConfig, scale: float = 1.0
) -> int:
    """Count covariance eigenvalues above d^tau * sigma2_hat * sqrt(log log d)."""
    require_source(spectrum, "covariance", "estimate_bn")
    if d < 3:
        raise ParameterError(f"estimate_bn needs d >= 3, got {d}")
    return count_above(spectrum, bn_threshold(spectrum, d, config, scale), config.r_max)


def estimate_bn_cor(spectrum: Spectrum, d: int, config: EstimatorConfig) -> int:
    """Correlation-matrix version of r^BN: count eigenvalues above d^tau * g(d)."""
    require_source(spectrum, "correlation", "estimate_bn_cor")
    return count_above(spectrum, d**config.tau * resolve_g(spectrum, config), config.r_max)


def estimate_pc_p1(
    spectrum: Spectrum, d: int, n: int, r_max: int, normalization: str = "mean"
) -> int:
    """Bai-Ng PC_p1: threshold sigma2_hat * (1 + d/n) * log(dn / (d + n))."""
    require_source(spectrum, "covariance", "estimate_pc_p1")
    if d < 1 or n < 1:
        raise ParameterError(f"d and n must be positive, got d={d}, n={n}")
    sigma2 = sigma2_hat(spectrum, r_max, normalization)
    threshold = sigma2 * (1.0 + d / n) * math.log(d * n / (d + n))
    return count_above(spectrum, max(threshold, 0.0), r_max)
