"""Onatski's edge-distribution (ED) estimator on eigenvalue differences."""

import logging

import numpy as np

from weakfactor.errors import ParameterError
from weakfactor.spectra import Spectrum

logger = logging.getLogger(__name__)

WINDOW = 5


def _count_gaps(values: np.ndarray, delta: float, r_max: int) -> int:
    gaps = values[:r_max] - values[1 : r_max + 1]
    above = np.flatnonzero(gaps >= delta)
    return int(above[-1]) + 1 if above.size else 0


def _calibrate_delta(values: np.ndarray, j: int) -> float:
    """Twice the absolute OLS slope of lambda_j..lambda_{j+4} on (j-1)^{2/3}..(j+3)^{2/3}."""
    y = values[j - 1 : j - 1 + WINDOW]
    x = np.arange(j - 1, j - 1 + WINDOW, dtype=np.float64) ** (2.0 / 3.0)
    slope = np.polyfit(x, y, 1)[0]
    return 2.0 * abs(float(slope))


def estimate_onatski_ed(spectrum: Spectrum, r_max: int, max_iter: int = 8) -> int:
    """Threshold successive eigenvalue differences at a delta calibrated by the ED iteration.

    Starting from j = r_max + 1, delta is recalibrated from the window beginning at j and
    j is reset to r(delta) + 1 until j stops changing or ``max_iter`` rounds have run; the
    last r(delta) is returned.
    """
    if spectrum.d < r_max + WINDOW:
        raise ParameterError(
            f"ED calibration needs at least r_max + {WINDOW} = {r_max + WINDOW} "
            f"eigenvalues, spectrum has d={spectrum.d}"
        )
    values = spectrum.padded()
    j = r_max + 1
    estimate = 0
    for _ in range(max_iter):
        delta = _calibrate_delta(values, j)
        estimate = _count_gaps(values, delta, r_max)
        if estimate + 1 == j:
            return estimate
        j = estimate + 1
    logger.debug(f"ED iteration did not settle within {max_iter} rounds; using {estimate}")
    return estimate
