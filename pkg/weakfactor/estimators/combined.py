"""One-replication driver over the five reported estimators."""

from weakfactor.config import EstimatorConfig
from weakfactor.estimators.base import EstimateSet, require_source, resolve_g
from weakfactor.estimators.onatski import estimate_onatski_ed
from weakfactor.estimators.ratios import estimate_pelger, estimate_perturbed_ratio
from weakfactor.estimators.thresholds import estimate_bn, estimate_pc_p1
from weakfactor.spectra import Spectrum


def estimate_all(
    cov_spectrum: Spectrum,
    cor_spectrum: Spectrum,
    d: int,
    n: int,
    config: EstimatorConfig,
) -> EstimateSet:
    """Run every estimator on the two spectra of one set of increments.

    r^P,cor uses g(d) = g_scale * sqrt(log log d) unless ``config.g_rule`` says otherwise.

    Args:
        cov_spectrum: Spectrum of the realized covariance.
        cor_spectrum: Spectrum of the realized correlation matrix.
        d: Cross-section size.
        n: Number of increments.
        config: Estimator tuning constants.

    Returns:
        The five estimates.
    """
    require_source(cov_spectrum, "covariance", "estimate_all")
    require_source(cor_spectrum, "correlation", "estimate_all")
    g_value = resolve_g(cor_spectrum, config)
    return EstimateSet(
        bn=estimate_bn(cov_spectrum, d, config),
        p_cor=estimate_perturbed_ratio(cor_spectrum, d, config, g_value),
        pc_p1=estimate_pc_p1(cov_spectrum, d, n, config.r_max, config.sigma2_normalization),
        pelger=estimate_pelger(cor_spectrum, d, config),
        onatski=estimate_onatski_ed(cor_spectrum, config.r_max, config.onatski_max_iter),
    )
