"""Factor-number estimators operating on realized spectra."""

from weakfactor.estimators.base import (
    ESTIMATOR_NAMES,
    EstimateSet,
    count_above,
    loglog,
    median_eigenvalue,
    resolve_g,
    sigma2_hat,
)
from weakfactor.estimators.combined import estimate_all
from weakfactor.estimators.onatski import estimate_onatski_ed
from weakfactor.estimators.ratios import er_statistics, estimate_pelger, estimate_perturbed_ratio
from weakfactor.estimators.thresholds import (
    bn_threshold,
    estimate_bn,
    estimate_bn_cor,
    estimate_pc_p1,
)

__all__ = [
    "ESTIMATOR_NAMES",
    "EstimateSet",
    "bn_threshold",
    "count_above",
    "er_statistics",
    "estimate_all",
    "estimate_bn",
    "estimate_bn_cor",
    "estimate_onatski_ed",
    "estimate_pc_p1",
    "estimate_pelger",
    "estimate_perturbed_ratio",
    "loglog",
    "median_eigenvalue",
    "resolve_g",
    "sigma2_hat",
]
