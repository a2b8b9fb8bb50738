"""Sparse weak-factor loading matrices."""

import numpy as np
from numpy.typing import NDArray

from weakfactor.config import LoadingSpec
from weakfactor.errors import ParameterError


def generate_loadings(spec: LoadingSpec, rng: np.random.Generator) -> NDArray[np.float64]:
    """d x r loading matrix with exactly d_j normal entries in column j.

    Row positions of each column are sampled uniformly without replacement, independently
    across columns; all other entries are exactly zero.
    """
    sizes = spec.column_sizes()
    too_big = [(j + 1, s) for j, s in enumerate(sizes) if s > spec.d]
    if too_big:
        raise ParameterError(f"column sizes exceed d={spec.d}: {too_big}")

    beta = np.zeros((spec.d, len(sizes)))
    for j, size in enumerate(sizes):
        rows = rng.choice(spec.d, size=size, replace=False)
        beta[rows, j] = rng.normal(spec.entry_mean, spec.entry_sd, size=size)
    return beta
