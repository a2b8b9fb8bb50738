"""Idiosyncratic increments Z = sqrt(theta) * A * L with A A^T = (phi^|j-k|)."""

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import toeplitz
from scipy.signal import lfilter

from weakfactor.config import IdiosyncraticSpec
from weakfactor.errors import ParameterError
from weakfactor.processes.levy import nts_increments, wiener_increments


def toeplitz_correlation(d: int, phi: float) -> NDArray[np.float64]:
    """The d x d matrix (phi^|j-k|)."""
    return toeplitz(phi ** np.arange(d, dtype=np.float64))


def toeplitz_mix(base: NDArray[np.float64], phi: float) -> NDArray[np.float64]:
    """Apply the lower-triangular square root of (phi^|j-k|) down the rows of ``base``.

    Row recursion: X^1 = xi^1, X^j = phi X^(j-1) + sqrt(1 - phi^2) xi^j.
    """
    if not 0.0 <= phi < 1.0:
        raise ParameterError(f"phi must lie in [0, 1), got {phi}")
    if phi == 0.0:
        return np.array(base, dtype=np.float64, copy=True)
    innovation_scale = np.sqrt(1.0 - phi**2)
    # lfilter scales every row by innovation_scale; undo it on the first row.
    shifted = np.array(base, dtype=np.float64, copy=True)
    shifted[0] /= innovation_scale
    return lfilter([innovation_scale], [1.0, -phi], shifted, axis=0)


def idiosyncratic_increments(
    spec: IdiosyncraticSpec, n: int, d: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    """d x n increments of the idiosyncratic process."""
    if spec.kind == "nts":
        assert spec.alpha is not None
        base = nts_increments(spec.alpha, n, d, rng, mode=spec.subordinator)
    else:
        base = wiener_increments(d, n, rng)
    return np.sqrt(spec.theta) * toeplitz_mix(base, spec.phi)
