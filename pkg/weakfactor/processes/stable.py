"""One-sided stable and positive tempered stable samplers."""

import logging

import numpy as np
from numpy.typing import NDArray

from weakfactor.config import PtsParams
from weakfactor.errors import ParameterError

logger = logging.getLogger(__name__)


def sample_one_sided_stable(
    alpha: float,
    rng: np.random.Generator,
    size: int | tuple[int, ...] | None = None,
) -> float | NDArray[np.float64]:
    """Draw from the one-sided alpha-stable law with Laplace transform exp(-u^alpha).

    Uses the Chambers-Mallows-Stuck (Kanter) representation
    ``S = sin(alpha*U) / sin(U)^(1/alpha) * (sin((1-alpha)*U) / E)^((1-alpha)/alpha)``
    with U uniform on (0, pi) and E standard exponential.

    Args:
        alpha: Stability index in (0, 1).
        rng: Random stream.
        size: Output shape; a scalar is returned when None.

    Returns:
        Strictly positive draw(s).
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")

    u = rng.uniform(0.0, np.pi, size=size)
    e = rng.standard_exponential(size=size)
    # U = 0 has probability zero but numpy's uniform can return the left endpoint.
    u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
    s = (
        np.sin(alpha * u)
        / np.sin(u) ** (1.0 / alpha)
        * (np.sin((1.0 - alpha) * u) / e) ** ((1.0 - alpha) / alpha)
    )
    if size is None:
        return float(s)
    return np.asarray(s, dtype=np.float64)


def sample_pts(
    params: PtsParams,
    rng: np.random.Generator,
    size: int | None = None,
) -> float | NDArray[np.float64]:
    """Exact draw(s) from PTS(alpha, c, lambda) by exponential-tilting rejection.

    A proposal ``S`` comes from the untempered stable law with Laplace transform
    ``exp(c*Gamma(-alpha)*u^alpha)`` and is accepted with probability ``exp(-lambda*S)``.
    The acceptance rate is ``exp(c*Gamma(-alpha)*lambda^alpha) > 0``.
    """
    count = 1 if size is None else int(size)
    out = np.empty(count, dtype=np.float64)
    filled = 0
    batch = max(16, int(count / params.acceptance_rate * 1.1) + 1)
    logger.debug(
        f"PTS rejection sampling: {count} draws in batches of {batch}, "
        f"acceptance {params.acceptance_rate:.3f}"
    )
    while filled < count:
        proposal, accept = tilted_proposals(params, rng, batch)
        kept = proposal[accept][: count - filled]
        out[filled : filled + kept.size] = kept
        filled += kept.size

    if size is None:
        return float(out[0])
    return out


def tilted_proposals(
    params: PtsParams, rng: np.random.Generator, batch: int
) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    """One batch of stable proposals and their acceptance flags for sample_pts."""
    scale = (-params.stable_log_coefficient) ** (1.0 / params.alpha)
    proposal = scale * np.asarray(sample_one_sided_stable(params.alpha, rng, size=batch))
    accept = rng.uniform(size=batch) < np.exp(-params.lam * proposal)
    return proposal, accept
