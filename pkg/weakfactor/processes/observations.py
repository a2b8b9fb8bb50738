"""Assembly of observed increments Y = beta F + Z."""

import numpy as np
from numpy.typing import NDArray

from weakfactor.errors import ShapeError


def assemble_observations(
    loadings: NDArray[np.float64],
    factor_increments: NDArray[np.float64],
    idio_increments: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Return dY = beta dF + dZ column by column."""
    d, r = loadings.shape
    if factor_increments.ndim != 2 or factor_increments.shape[0] != r:
        raise ShapeError(
            f"factor increments of shape {factor_increments.shape} do not match "
            f"{r} loading columns"
        )
    n = factor_increments.shape[1]
    if idio_increments.shape != (d, n):
        raise ShapeError(
            f"idiosyncratic increments have shape {idio_increments.shape}, expected {(d, n)}"
        )
    return loadings @ factor_increments + idio_increments
