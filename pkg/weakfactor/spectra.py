"""Realized covariance and correlation spectra.

The estimation pipeline never forms the d x d realized covariance: when d > n the
nonzero eigenvalues come from the n x n Gram matrix dY^T dY instead.
"""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from weakfactor.errors import CapacityError, ComputationError, DegenerateInputError, ShapeError

logger = logging.getLogger(__name__)

DEFAULT_COVARIANCE_CAP = 4000
CLAMP_TOLERANCE = 1e-10
CLAMP_FAILURE = 1e-8

SpectrumSource = Literal["covariance", "correlation"]


@dataclass(frozen=True)
class Spectrum:
    """Descending eigenvalues of a realized covariance or correlation matrix.

    ``values`` holds the min(d, n) leading eigenvalues; the remaining d - min(d, n)
    eigenvalues are zero and are supplied by ``padded``.
    """

    values: NDArray[np.float64]
    source: SpectrumSource
    d: int
    n: int

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size > self.d:
            raise ShapeError(f"spectrum of length {values.size} does not fit d={self.d}")
        if np.any(values < 0):
            raise ValueError("spectrum values must be nonnegative")
        if np.any(np.diff(values) > 0):
            raise ValueError("spectrum values must be sorted in descending order")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(
        cls,
        values: list[float] | NDArray[np.float64],
        source: SpectrumSource = "covariance",
        d: int | None = None,
        n: int | None = None,
    ) -> "Spectrum":
        """Build a spectrum from given eigenvalues, sorting them in descending order."""
        arr = np.sort(np.asarray(values, dtype=np.float64))[::-1]
        size = arr.size
        return cls(values=arr, source=source, d=d or size, n=n or size)

    def padded(self, length: int | None = None) -> NDArray[np.float64]:
        """Eigenvalues padded with zeros to ``length`` (default d)."""
        length = self.d if length is None else length
        out = np.zeros(max(length, self.values.size))
        out[: self.values.size] = self.values
        return out[:length]

    def eigenvalue(self, j: int) -> float:
        """The j-th largest eigenvalue (1-based); zero beyond the stored values."""
        return float(self.values[j - 1]) if 1 <= j <= self.values.size else 0.0


def realized_covariance(
    increments: NDArray[np.float64], cap: int = DEFAULT_COVARIANCE_CAP
) -> NDArray[np.float64]:
    """Dense realized covariance dY dY^T, exactly symmetric."""
    d = increments.shape[0]
    if d > cap:
        raise CapacityError(f"refusing to form a {d} x {d} matrix (cap {cap})")
    cov = increments @ increments.T
    return (cov + cov.T) / 2.0


def realized_variances(increments: NDArray[np.float64]) -> NDArray[np.float64]:
    """Per-component sums of squared increments, i.e. diag([Y, Y]^n_1)."""
    return np.einsum("ij,ij->i", increments, increments)


def realized_spectrum(increments: NDArray[np.float64]) -> Spectrum:
    """Eigenvalues of dY dY^T, through the smaller of the outer and Gram products."""
    return _spectrum(increments, "covariance")


def realized_correlation_spectrum(increments: NDArray[np.float64]) -> Spectrum:
    """Eigenvalues of the realized correlation matrix.

    Rows are rescaled by their realized volatility before the Gram reduction.
    """
    variances = realized_variances(increments)
    zero = np.flatnonzero(variances <= 0.0)
    if zero.size:
        component = int(zero[0])
        raise DegenerateInputError(
            f"realized variance of component {component} is zero; correlation undefined",
            component=component,
        )
    scaled = increments / np.sqrt(variances)[:, np.newaxis]
    return _spectrum(scaled, "correlation")


def _spectrum(increments: NDArray[np.float64], source: SpectrumSource) -> Spectrum:
    if increments.ndim != 2:
        raise ShapeError(f"increments must be a d x n matrix, got shape {increments.shape}")
    d, n = increments.shape
    gram = increments @ increments.T if d <= n else increments.T @ increments
    gram = (gram + gram.T) / 2.0
    try:
        eigenvalues = linalg.eigvalsh(gram)
    except linalg.LinAlgError as e:
        raise ComputationError(f"eigensolver failed on {source} spectrum ({d} x {n}): {e}") from e

    eigenvalues = eigenvalues[::-1]
    top = max(float(eigenvalues[0]), 0.0) if eigenvalues.size else 0.0
    negative = eigenvalues[eigenvalues < 0.0]
    if negative.size:
        mass = float(-negative.sum())
        if mass > CLAMP_FAILURE * top and mass > 0.0 and top > 0.0:
            raise ComputationError(
                f"{source} spectrum has negative eigen-mass {mass:.3e} "
                f"against largest eigenvalue {top:.3e}"
            )
        if mass > CLAMP_TOLERANCE * top:
            logger.warning(f"Clamped negative eigen-mass {mass:.3e} in {source} spectrum")
    return Spectrum(values=np.clip(eigenvalues, 0.0, None), source=source, d=d, n=n)
