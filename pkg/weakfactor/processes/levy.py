"""Increments of Wiener and normal tempered stable (NTS) Levy processes on [0, 1]."""

import numpy as np
from numpy.typing import NDArray

from weakfactor.config import PtsParams, SubordinatorMode
from weakfactor.errors import ParameterError, ShapeError
from weakfactor.processes.stable import sample_pts


def wiener_increments(rows: int, n: int, rng: np.random.Generator) -> NDArray[np.float64]:
    """rows x n matrix of standard Wiener increments over intervals of length 1/n."""
    _check_grid(rows, n)
    return rng.standard_normal((rows, n)) / np.sqrt(n)


def nts_subordinator(
    alpha: float, n: int, rng: np.random.Generator, rows: int | None = None
) -> NDArray[np.float64]:
    """Subordinator draws V ~ PTS(alpha, c/n, lambda) with unit-moment c, lambda.

    Returns a length-n vector, or a rows x n matrix of independent draws when ``rows``
    is given.
    """
    params = PtsParams.unit_moment(alpha).scaled(1.0 / n)
    if rows is None:
        return np.asarray(sample_pts(params, rng, size=n))
    return np.asarray(sample_pts(params, rng, size=rows * n)).reshape(rows, n)


def nts_increments(
    alpha: float,
    n: int,
    d: int,
    rng: np.random.Generator,
    *,
    subordinator: NDArray[np.float64] | None = None,
    mode: SubordinatorMode = "shared",
) -> NDArray[np.float64]:
    """d x n increments of a d-dimensional NTS process.

    With ``mode="shared"`` column i is ``sqrt(V_i) * zeta_i``: every component of an
    interval shares the single subordinator draw V_i while zeta_i has independent
    standard normal entries. With ``mode="independent"`` entry (j, i) is
    ``sqrt(V_ji) * zeta_ji``, i.e. the d components are independent NTS processes.

    Args:
        alpha: Stability index in (0, 1) of the subordinator.
        n: Number of intervals.
        d: Dimension.
        rng: Random stream.
        subordinator: Optional override of the V draws, shape (n,) when shared and
            (d, n) when independent.
        mode: "shared" or "independent".
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    _check_grid(d, n)
    expected: tuple[int, ...] = (n,) if mode == "shared" else (d, n)
    if subordinator is None:
        subordinator = nts_subordinator(alpha, n, rng, rows=None if mode == "shared" else d)
    elif subordinator.shape != expected:
        raise ShapeError(f"subordinator must have shape {expected}, got {subordinator.shape}")
    zeta = rng.standard_normal((d, n))
    return zeta * np.sqrt(subordinator)


def _check_grid(rows: int, n: int) -> None:
    if rows < 1 or n < 1:
        raise ParameterError(f"dimensions must be positive, got {rows} x {n}")
