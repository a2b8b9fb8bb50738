"""Desk-scale scaling studies of realized covariance bounds.

The studies cannot observe universal constants. They report medians of a norm or an
eigenvalue over replications, ratios of those medians to a theoretical envelope, and
log-log slopes with percentile-bootstrap bands.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from weakfactor.config import (
    DEFAULT_EXPONENTS,
    IdiosyncraticSpec,
    ModelConfig,
    SubordinatorMode,
)
from weakfactor.errors import CapacityError, ParameterError
from weakfactor.montecarlo import parallel_map, simulate_increments
from weakfactor.processes import idiosyncratic_increments, toeplitz_correlation
from weakfactor.random import make_stream
from weakfactor.spectra import realized_covariance, realized_spectrum
from weakfactor.tracing import trace_run

logger = logging.getLogger(__name__)

# Median of the concentration bound holds with probability 1 - 2 exp(-u) = 1/2.
MEDIAN_DEVIATION = math.log(4.0)
CONCENTRATION_CAP = 400

DEFAULT_CONCENTRATION_GRID: tuple[tuple[int, int], ...] = tuple(
    (d, n) for d in (50, 100, 200, 400) for n in (d // 4, d, 4 * d)
)
DEFAULT_JUMP_GRID: tuple[tuple[int, int], ...] = ((100, 390), (400, 390), (1600, 390))
DEFAULT_EIGEN_DIMENSIONS: tuple[int, ...] = (100, 300, 1000, 3000)

Norm = Literal["spectral", "frobenius"]


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares slope of log median statistic on log grid variable."""

    slope: float
    ci_low: float
    ci_high: float

    def overlaps(self, target: float, tolerance: float) -> bool:
        """True when the band meets [target - tolerance, target + tolerance]."""
        return self.ci_low <= target + tolerance and self.ci_high >= target - tolerance


@dataclass
class ScalingStudyResult:
    """Per-replication statistics of a study over a (d, n) grid.

    ``samples`` has shape (points, replications, series) and ``envelope`` has shape
    (points, series).
    """

    study: str
    points: list[tuple[int, int]]
    samples: NDArray[np.float64]
    envelope: NDArray[np.float64]
    series: list[str]

    def __post_init__(self) -> None:
        if not self.points:
            raise ParameterError("a scaling study needs at least one grid point")
        if self.samples.shape[0] != len(self.points) or self.samples.shape[2] != len(self.series):
            raise ParameterError(f"samples of shape {self.samples.shape} do not match the grid")

    @property
    def d(self) -> NDArray[np.int64]:
        return np.array([p[0] for p in self.points])

    @property
    def n(self) -> NDArray[np.int64]:
        return np.array([p[1] for p in self.points])

    @property
    def observed(self) -> NDArray[np.float64]:
        """Median over replications, shape (points, series)."""
        return np.median(self.samples, axis=1)

    @property
    def ratios(self) -> NDArray[np.float64]:
        """observed / envelope; nan where the envelope vanishes."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.envelope > 0, self.observed / self.envelope, np.nan)

    def ratio_spread(self, series: int = 0) -> float:
        """max / min of the observed-to-envelope ratios over the grid."""
        column = self.ratios[:, series]
        return float(np.nanmax(column) / np.nanmin(column))

    def shrink_factor(
        self, first: tuple[int, int], second: tuple[int, int], series: int = 0
    ) -> float:
        """Median statistic at ``first`` divided by the one at ``second``."""
        observed = self.observed[:, series]
        return float(observed[self.points.index(first)] / observed[self.points.index(second)])

    def fit_slope(
        self,
        series: int = 0,
        x: Literal["d", "n"] = "d",
        points: Sequence[tuple[int, int]] | None = None,
        n_boot: int = 500,
        confidence: float = 0.95,
        seed: int = 0,
    ) -> SlopeFit:
        """Slope of log median statistic against log ``x`` with a bootstrap band.

        Args:
            series: Column of ``samples`` to fit.
            x: Grid variable on the horizontal axis.
            points: Subset of grid points to use; all of them by default.
            n_boot: Bootstrap resamples of the replications at every point.
            confidence: Coverage of the percentile band.
            seed: Seed of the bootstrap stream.

        Returns:
            Point estimate and percentile band.
        """
        chosen = list(self.points) if points is None else list(points)
        if len(chosen) < 2:
            raise ParameterError("a slope needs at least two grid points")
        index = [self.points.index(p) for p in chosen]
        axis = np.log([p[0] if x == "d" else p[1] for p in chosen])
        if np.ptp(axis) == 0:
            raise ParameterError(f"grid points do not vary in {x}")
        samples = self.samples[index, :, series]
        slope = _log_slope(axis, np.median(samples, axis=1))

        rng = make_stream(seed)
        reps = samples.shape[1]
        boot = np.empty(n_boot)
        for b in range(n_boot):
            draw = rng.integers(0, reps, size=samples.shape)
            boot[b] = _log_slope(axis, np.median(np.take_along_axis(samples, draw, axis=1), axis=1))
        tail = (1.0 - confidence) / 2.0
        low, high = np.nanquantile(boot, [tail, 1.0 - tail])
        return SlopeFit(slope=slope, ci_low=float(low), ci_high=float(high))

    def to_rows(self) -> list[dict[str, object]]:
        """Point rows for every (grid point, series) plus a spread row per series."""
        rows: list[dict[str, object]] = []
        observed, envelope, ratios = self.observed, self.envelope, self.ratios
        for s, label in enumerate(self.series):
            for p, (d, n) in enumerate(self.points):
                rows.append(
                    {
                        "study": self.study,
                        "row_kind": "point",
                        "label": label,
                        "d": d,
                        "n": n,
                        "observed": observed[p, s],
                        "envelope": envelope[p, s],
                        "ratio": ratios[p, s],
                    }
                )
            if np.any(np.isfinite(ratios[:, s])):
                rows.append(
                    {
                        "study": self.study,
                        "row_kind": "ratio_spread",
                        "label": label,
                        "value": self.ratio_spread(s),
                    }
                )
        return rows


def _log_slope(axis: NDArray[np.float64], medians: NDArray[np.float64]) -> float:
    if np.any(medians <= 0):
        return float("nan")
    return float(np.polyfit(axis, np.log(medians), 1)[0])


def _study_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63))


def concentration_envelope(d: int, n: int, scale: float, u: float = MEDIAN_DEVIATION) -> float:
    """scale * ((d + u) / n + sqrt((d + u) / n))."""
    ratio = (d + u) / n
    return scale * (ratio + math.sqrt(ratio))


def jump_norm_envelope(d: int, n: int, scale: float) -> float:
    """scale * log^2 d * ((d / n) log(min(d, n)) + log^2(min(d, n)))."""
    m = min(d, n)
    return scale * math.log(d) ** 2 * ((d / n) * math.log(m) + math.log(m) ** 2)


def _concentration_error(
    d: int, n: int, theta: float, phi: float, norm: Norm, rng: np.random.Generator
) -> float:
    if theta == 0:
        return 0.0
    spec = IdiosyncraticSpec(kind="wiener", theta=theta, phi=phi)
    noise = idiosyncratic_increments(spec, n, d, rng)
    diff = realized_covariance(noise, cap=CONCENTRATION_CAP) - theta * toeplitz_correlation(d, phi)
    if norm == "frobenius":
        return float(np.linalg.norm(diff, "fro"))
    return float(np.max(np.abs(linalg.eigvalsh(diff))))


def concentration_study(
    grid: Sequence[tuple[int, int]],
    replications: int,
    rng: np.random.Generator,
    *,
    theta: float = 1.5,
    phi: float = 0.1,
    norm: Norm = "spectral",
    workers: int = -1,
) -> ScalingStudyResult:
    """Error of the realized covariance of Toeplitz-correlated Brownian noise.

    The integrated covariance is theta * (phi^|j-k|) exactly, so the error is observable.
    The envelope uses Lambda = theta * lambda_max(Toeplitz).

    Raises:
        CapacityError: If a grid point has d above 400.
    """
    too_big = [d for d, _ in grid if d > CONCENTRATION_CAP]
    if too_big:
        raise CapacityError(f"concentration study caps d at {CONCENTRATION_CAP}, got {too_big}")
    seed = _study_seed(rng)
    points = list(grid)
    samples = np.empty((len(points), replications, 1))
    envelope = np.empty((len(points), 1))
    with trace_run("concentration_study", {"points": len(points), "norm": norm}):
        for p, (d, n) in enumerate(points):
            logger.info(f"Concentration study at d={d}, n={n}")
            samples[p, :, 0] = parallel_map(
                lambda i: _concentration_error(d, n, theta, phi, norm, make_stream(seed, p, i)),
                replications,
                workers,
            )
            scale = theta * float(linalg.eigvalsh(toeplitz_correlation(d, phi))[-1])
            envelope[p, 0] = concentration_envelope(d, n, scale)
    return ScalingStudyResult(
        study="concentration", points=points, samples=samples, envelope=envelope, series=[norm]
    )


def _jump_norm(d: int, n: int, spec: IdiosyncraticSpec, rng: np.random.Generator) -> float:
    noise = idiosyncratic_increments(spec, n, d, rng)
    return realized_spectrum(noise).eigenvalue(1)


def jump_norm_study(
    grid: Sequence[tuple[int, int]],
    alpha: float,
    replications: int,
    rng: np.random.Generator,
    *,
    theta: float = 1.5,
    phi: float = 0.1,
    subordinator: SubordinatorMode = "independent",
    workers: int = -1,
) -> ScalingStudyResult:
    """Spectral norm of the realized covariance of NTS idiosyncratic noise.

    The envelope takes Lambda_n = theta.
    """
    spec = IdiosyncraticSpec(
        kind="nts", alpha=alpha, theta=theta, phi=phi, subordinator=subordinator
    )
    seed = _study_seed(rng)
    points = list(grid)
    samples = np.empty((len(points), replications, 1))
    envelope = np.empty((len(points), 1))
    with trace_run("jump_norm_study", {"points": len(points), "alpha": alpha}):
        for p, (d, n) in enumerate(points):
            logger.info(f"Jump norm study at d={d}, n={n}, alpha={alpha}")
            samples[p, :, 0] = parallel_map(
                lambda i: _jump_norm(d, n, spec, make_stream(seed, p, i)), replications, workers
            )
            envelope[p, 0] = jump_norm_envelope(d, n, theta)
    return ScalingStudyResult(
        study="jumpnorm", points=points, samples=samples, envelope=envelope, series=["spectral"]
    )


def _leading_eigenvalues(
    config: ModelConfig, count: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    return realized_spectrum(simulate_increments(config, rng)).padded(count)[:count]


def eigen_scaling_study(
    dimensions: Sequence[int],
    n: int,
    replications: int,
    rng: np.random.Generator,
    *,
    theta: float = 1.5,
    phi: float = 0.1,
    components: int = 7,
    tau: float = 0.5,
    workers: int = -1,
) -> ScalingStudyResult:
    """Leading realized eigenvalues of the Wiener-factor model across d.

    Series j tracks lambda_j; its envelope is d^alpha_j for the strong columns and d^tau
    beyond them.
    """
    exponents = [0.0 if e == "log" else float(e) for e in DEFAULT_EXPONENTS]
    strong = [e for e in exponents if e > tau]
    seed = _study_seed(rng)
    points = [(int(d), n) for d in dimensions]
    samples = np.empty((len(points), replications, components))
    envelope = np.empty((len(points), components))
    with trace_run("eigen_scaling_study", {"points": len(points), "n": n}):
        for p, (d, _) in enumerate(points):
            logger.info(f"Eigenvalue scaling study at d={d}, n={n}")
            config = ModelConfig(
                n=n, d=d, factor_kind="wiener", idio_kind="wiener", theta=theta, phi=phi
            )
            draws = parallel_map(
                lambda i: _leading_eigenvalues(config, components, make_stream(seed, p, i)),
                replications,
                workers,
            )
            samples[p] = np.vstack(draws)
            envelope[p] = [
                d ** (strong[j] if j < len(strong) else tau) for j in range(components)
            ]
    return ScalingStudyResult(
        study="eigenscaling",
        points=points,
        samples=samples,
        envelope=envelope,
        series=[f"lambda_{j + 1}" for j in range(components)],
    )
