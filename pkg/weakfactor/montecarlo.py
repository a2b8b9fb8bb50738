"""Monte Carlo replication of the factor-number experiments.

Replication ``i`` of an experiment draws everything from the Philox stream keyed by
``(master_seed, i, attempt)``. Workers only ever see the immutable config and an index,
so results do not depend on how joblib schedules them.
"""

import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import TypeVar

import numpy as np
from joblib import Parallel, delayed
from numpy.typing import NDArray

from weakfactor.config import ModelConfig, SweepParameter
from weakfactor.errors import (
    ComputationError,
    DegenerateInputError,
    ExperimentError,
    ParameterError,
    ReplicationError,
)
from weakfactor.estimators import ESTIMATOR_NAMES, EstimateSet, estimate_all
from weakfactor.processes import (
    assemble_observations,
    generate_loadings,
    idiosyncratic_increments,
    simulate_sv_factors,
    wiener_increments,
)
from weakfactor.random import make_stream
from weakfactor.spectra import realized_correlation_spectrum, realized_spectrum
from weakfactor.tracing import trace_run

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Share of replications allowed to fail before an experiment is abandoned.
MAX_FAILURE_RATE = 0.01


@dataclass
class MCReport:
    """Aggregated estimates of one experiment."""

    config: ModelConfig
    estimates: list[EstimateSet]
    failures: int = 0
    elapsed: float = 0.0
    means: dict[str, float] = field(init=False)
    hit_probabilities: dict[str, float] = field(init=False)

    def __post_init__(self) -> None:
        if not self.estimates:
            raise ExperimentError("no replication succeeded")
        table = np.array([[getattr(e, name) for name in ESTIMATOR_NAMES] for e in self.estimates])
        self.means = dict(zip(ESTIMATOR_NAMES, table.mean(axis=0).tolist()))
        hits = (table == self.config.r_tau).mean(axis=0)
        self.hit_probabilities = dict(zip(ESTIMATOR_NAMES, hits.tolist()))

    @property
    def replications(self) -> int:
        """Number of replications that produced estimates."""
        return len(self.estimates)

    @property
    def master_seed(self) -> int:
        return self.config.master_seed

    def rows(self) -> list[dict[str, object]]:
        """One record per estimator with the cell coordinates and its summary."""
        config = self.config
        return [
            {
                "factor_kind": config.factor_kind,
                "idio_kind": config.idio_kind,
                "alpha": config.alpha,
                "n": config.n,
                "d": config.d,
                "estimator": name,
                "mean_rhat": self.means[name],
                "prob_hit": self.hit_probabilities[name],
                "replications": self.replications,
                "seed": config.master_seed,
            }
            for name in ESTIMATOR_NAMES
        ]


def simulate_increments(config: ModelConfig, rng: np.random.Generator) -> NDArray[np.float64]:
    """Draw loadings, factors and idiosyncratic noise and return the d x n matrix dY."""
    loadings = generate_loadings(config.loading_spec(), rng)
    if config.factor_kind == "sv":
        factors = simulate_sv_factors(config.sv, config.n, config.refinement, rng)
    else:
        factors = wiener_increments(config.sv.r, config.n, rng)
    if config.theta > 0:
        noise = idiosyncratic_increments(config.idiosyncratic_spec(), config.n, config.d, rng)
    else:
        noise = np.zeros((config.d, config.n))
    return assemble_observations(loadings, factors, noise)


def _estimate_once(config: ModelConfig, rng: np.random.Generator) -> EstimateSet:
    increments = simulate_increments(config, rng)
    cov = realized_spectrum(increments)
    cor = realized_correlation_spectrum(increments)
    return estimate_all(cov, cor, config.d, config.n, config.estimator)


def run_replication(config: ModelConfig, replication_index: int) -> EstimateSet:
    """Run replication ``replication_index`` of ``config``.

    A draw that makes a statistic undefined is resampled once from the stream
    ``(replication_index, 1)``; a second failure raises ReplicationError.
    """
    if replication_index < 0:
        raise ParameterError(f"replication_index must be non-negative, got {replication_index}")
    try:
        return _estimate_once(config, make_stream(config.master_seed, replication_index, 0))
    except (DegenerateInputError, ComputationError) as e:
        logger.warning(f"Replication {replication_index} resampled: {e}")
    try:
        return _estimate_once(config, make_stream(config.master_seed, replication_index, 1))
    except (DegenerateInputError, ComputationError) as e:
        raise ReplicationError(
            f"replication {replication_index} failed after resampling: {e}",
            replication_index=replication_index,
        ) from e


def _replication_or_none(config: ModelConfig, replication_index: int) -> EstimateSet | None:
    try:
        estimate = run_replication(config, replication_index)
    except ReplicationError as e:
        logger.warning(str(e))
        return None
    logger.debug(f"Replication {replication_index}: {estimate.as_dict()}")
    return estimate


def parallel_map(func: Callable[[int], T], count: int, workers: int = -1) -> list[T]:
    """Evaluate ``func(0), ..., func(count - 1)`` with joblib, results in index order."""
    if workers == 1:
        return [func(i) for i in range(count)]
    return list(Parallel(n_jobs=workers)(delayed(func)(i) for i in range(count)))


def run_experiment(config: ModelConfig, workers: int = -1) -> MCReport:
    """Run ``config.replications`` replications and aggregate them.

    Args:
        config: Experiment configuration.
        workers: joblib ``n_jobs``; the report does not depend on it.

    Returns:
        Per-estimator mean of r-hat and empirical P(r-hat = r_tau).

    Raises:
        ExperimentError: If more than 1% of the replications fail.
    """
    attributes = {
        "n": config.n,
        "d": config.d,
        "factor_kind": config.factor_kind,
        "idio_kind": config.idio_kind,
        "alpha": config.alpha,
        "subordinator": config.subordinator if config.idio_kind == "nts" else None,
        "replications": config.replications,
        "seed": config.master_seed,
    }
    with trace_run("experiment", attributes):
        logger.info(
            f"Running {config.replications} replications: n={config.n}, d={config.d}, "
            f"factors={config.factor_kind}, idio={config.idio_kind}, alpha={config.alpha}"
        )
        start = time.perf_counter()
        results = parallel_map(
            lambda i: _replication_or_none(config, i), config.replications, workers
        )
        estimates = [r for r in results if r is not None]
        failures = len(results) - len(estimates)
        if failures > MAX_FAILURE_RATE * config.replications:
            raise ExperimentError(
                f"{failures} of {config.replications} replications failed "
                f"(limit {MAX_FAILURE_RATE:.0%})"
            )
        report = MCReport(
            config=config,
            estimates=estimates,
            failures=failures,
            elapsed=time.perf_counter() - start,
        )
        logger.info(
            f"Finished n={config.n}, d={config.d} in {report.elapsed:.1f}s: "
            + ", ".join(f"{k}={v:.2f}" for k, v in report.means.items())
        )
        return report


def run_sweep(
    base: ModelConfig,
    parameter: SweepParameter,
    grid: Sequence[float],
    workers: int = -1,
) -> list[MCReport]:
    """Run one experiment per grid value of ``parameter``.

    Every grid value reuses ``base.master_seed``, so all points see the same draws
    wherever the parameter does not enter the simulation.
    """
    if not grid:
        raise ParameterError("sweep grid must not be empty")
    reports = []
    for value in grid:
        with trace_run("sweep_point", {"parameter": parameter, "value": float(value)}):
            logger.info(f"Sweep {parameter}={value}")
            reports.append(run_experiment(base.with_parameter(parameter, value), workers))
    return reports
