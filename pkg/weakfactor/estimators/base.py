"""Shared pieces of the factor-number estimators."""

import math
from dataclasses import asdict, dataclass

import numpy as np

from weakfactor.config import EstimatorConfig
from weakfactor.errors import ParameterError
from weakfactor.spectra import Spectrum, SpectrumSource

# Column order of every report.
ESTIMATOR_NAMES: tuple[str, ...] = ("bn", "p_cor", "pc_p1", "pelger", "onatski")


@dataclass(frozen=True)
class EstimateSet:
    """The five estimator outputs of one replication."""

    bn: int
    p_cor: int
    pc_p1: int
    pelger: int
    onatski: int

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


def count_above(spectrum: Spectrum, threshold: float, r_max: int) -> int:
    """max{j <= r_max : lambda_j > threshold}, with max of the empty set = 0."""
    if threshold < 0:
        raise ParameterError(f"threshold must be nonnegative, got {threshold}")
    head = spectrum.padded(max(r_max, spectrum.d))[:r_max]
    above = np.flatnonzero(head > threshold)
    return int(above[-1]) + 1 if above.size else 0


def loglog(d: int) -> float:
    """sqrt(log log d) with natural logarithms; requires d >= 3."""
    if d < 3:
        raise ParameterError(f"log log d is not positive for d={d}; need d >= 3")
    return math.sqrt(math.log(math.log(d)))


def sigma2_hat(spectrum: Spectrum, r_max: int, normalization: str = "mean") -> float:
    """Tail eigenvalue mass beyond r_max, divided by d unless normalization is 'sum'."""
    tail = float(spectrum.padded()[r_max:].sum())
    return tail if normalization == "sum" else tail / spectrum.d


def median_eigenvalue(spectrum: Spectrum) -> float:
    """Median of all d eigenvalues, zeros included."""
    return float(np.median(spectrum.padded()))


def resolve_g(spectrum: Spectrum, config: EstimatorConfig) -> float:
    """g(d) for the perturbed-ratio estimator according to ``config.g_rule``, times g_scale."""
    d = spectrum.d
    if config.g_rule == "loglog":
        g = loglog(d)
    elif config.g_rule == "sigma2_loglog":
        g = sigma2_hat(spectrum, config.r_max, config.sigma2_normalization) * loglog(d)
    elif config.g_rule == "median_eigen":
        g = median_eigenvalue(spectrum)
    else:
        assert config.g_value is not None
        g = config.g_value
    return config.g_scale * g


def require_source(spectrum: Spectrum, source: SpectrumSource, estimator: str) -> None:
    if spectrum.source != source:
        raise ParameterError(f"{estimator} needs a {source} spectrum, got {spectrum.source}")
