"""Tests for the Monte Carlo driver."""

import numpy as np
import pytest

from weakfactor import montecarlo
from weakfactor.config import ModelConfig
from weakfactor.errors import (
    DegenerateInputError,
    ExperimentError,
    ParameterError,
    ReplicationError,
)
from weakfactor.estimators import EstimateSet
from weakfactor.montecarlo import (
    MCReport,
    parallel_map,
    run_experiment,
    run_replication,
    run_sweep,
    simulate_increments,
)
from weakfactor.presets import get_preset
from weakfactor.random import make_stream
from weakfactor.spectra import realized_spectrum


@pytest.fixture
def config():
    """A small NTS cell that runs in well under a second per replication."""
    return ModelConfig(
        n=26, d=40, idio_kind="nts", alpha=0.5, replications=6, master_seed=11
    )


class TestSimulateIncrements:
    """Tests for drawing one increment matrix."""

    def test_shape(self, config):
        assert simulate_increments(config, make_stream(1)).shape == (40, 26)

    def test_noiseless_model_has_factor_rank(self):
        config = ModelConfig(
            n=390,
            d=10,
            factor_kind="wiener",
            theta=0.0,
            phi=0.0,
            estimator={"r_max": 5},
        )
        spectrum = realized_spectrum(simulate_increments(config, make_stream(2)))
        assert spectrum.values[9] <= 1e-9 * spectrum.values[0]

    def test_sv_factors(self, config):
        sv = config.model_copy(update={"factor_kind": "sv"})
        wiener = config.model_copy(update={"factor_kind": "wiener"})
        assert not np.array_equal(
            simulate_increments(sv, make_stream(3)), simulate_increments(wiener, make_stream(3))
        )


class TestRunReplication:
    """Tests for one seeded replication."""

    def test_deterministic(self, config):
        assert run_replication(config, 3) == run_replication(config, 3)

    def test_estimates_within_range(self, config):
        result = run_replication(config, 0)
        assert all(0 <= v <= config.estimator.r_max for v in result.as_dict().values())

    def test_indices_draw_different_data(self, config, monkeypatch):
        seen = []

        def record(cfg, rng):
            seen.append(rng.random())
            return EstimateSet(6, 6, 6, 6, 6)

        monkeypatch.setattr(montecarlo, "_estimate_once", record)
        run_replication(config, 0)
        run_replication(config, 1)
        assert seen[0] != seen[1]

    def test_rejects_negative_index(self, config):
        with pytest.raises(ParameterError):
            run_replication(config, -1)

    def test_resamples_once_from_next_stream(self, config, monkeypatch):
        draws = []

        def flaky(cfg, rng):
            draws.append(rng.random())
            if len(draws) == 1:
                raise DegenerateInputError("zero variance", component=0)
            return EstimateSet(1, 2, 3, 4, 5)

        monkeypatch.setattr(montecarlo, "_estimate_once", flaky)
        assert run_replication(config, 4) == EstimateSet(1, 2, 3, 4, 5)
        assert draws == [
            make_stream(config.master_seed, 4, 0).random(),
            make_stream(config.master_seed, 4, 1).random(),
        ]

    def test_second_failure_raises(self, config, monkeypatch):
        def broken(cfg, rng):
            raise DegenerateInputError("zero variance", component=2)

        monkeypatch.setattr(montecarlo, "_estimate_once", broken)
        with pytest.raises(ReplicationError) as excinfo:
            run_replication(config, 7)
        assert excinfo.value.replication_index == 7


class TestRunExperiment:
    """Tests for aggregation and the failure policy."""

    def test_single_replication_equals_replication(self, config):
        one = config.model_copy(update={"replications": 1})
        report = run_experiment(one, workers=1)
        estimate = run_replication(one, 0)
        assert report.estimates == [estimate]
        assert report.means == {k: float(v) for k, v in estimate.as_dict().items()}

    def test_independent_of_worker_count(self, config):
        sequential = run_experiment(config, workers=1)
        parallel = run_experiment(config, workers=2)
        assert sequential.estimates == parallel.estimates
        assert sequential.means == parallel.means

    def test_repeatable(self, config):
        assert run_experiment(config, workers=1).means == run_experiment(config, workers=1).means

    def test_aggregates(self, config):
        report = run_experiment(config, workers=1)
        bn = [e.bn for e in report.estimates]
        assert report.replications == 6
        assert report.failures == 0
        assert report.means["bn"] == pytest.approx(np.mean(bn))
        assert report.hit_probabilities["bn"] == pytest.approx(
            np.mean([v == config.r_tau for v in bn])
        )
        assert len(report.rows()) == 5

    def _fail_indices(self, monkeypatch, failing):
        def fake(cfg, index):
            if index in failing:
                raise ReplicationError("boom", replication_index=index)
            return EstimateSet(6, 6, 7, 6, 5)

        monkeypatch.setattr(montecarlo, "run_replication", fake)

    def test_one_percent_failures_tolerated(self, config, monkeypatch):
        self._fail_indices(monkeypatch, {17})
        report = run_experiment(config.model_copy(update={"replications": 100}), workers=1)
        assert report.failures == 1
        assert report.replications == 99
        assert report.hit_probabilities == {
            "bn": 1.0,
            "p_cor": 1.0,
            "pc_p1": 0.0,
            "pelger": 1.0,
            "onatski": 0.0,
        }

    def test_more_failures_abort(self, config, monkeypatch):
        self._fail_indices(monkeypatch, {3, 50})
        with pytest.raises(ExperimentError, match="2 of 100"):
            run_experiment(config.model_copy(update={"replications": 100}), workers=1)


def test_report_needs_estimates(config):
    with pytest.raises(ExperimentError):
        MCReport(config=config, estimates=[])


def test_parallel_map_keeps_order():
    assert parallel_map(lambda i: i * i, 5, workers=1) == [0, 1, 4, 9, 16]
    assert parallel_map(abs, 4, workers=2) == [0, 1, 2, 3]


class TestRunSweep:
    """Tests for one-parameter sweeps."""

    def test_single_point_matches_experiment(self, config):
        [report] = run_sweep(config, "gamma", [config.estimator.gamma], workers=1)
        assert report.estimates == run_experiment(config, workers=1).estimates

    def test_gamma_sweep_is_monotone_per_replication(self, config):
        loose, strict = run_sweep(config, "gamma", [0.02, 0.2], workers=1)
        for a, b in zip(loose.estimates, strict.estimates, strict=True):
            assert b.p_cor <= a.p_cor
            assert b.bn == a.bn

    def test_sweep_sets_parameter(self, config):
        reports = run_sweep(config, "phi", [0.0, 0.5], workers=1)
        assert [r.config.phi for r in reports] == [0.0, 0.5]

    def test_empty_grid(self, config):
        with pytest.raises(ParameterError):
            run_sweep(config, "theta", [], workers=1)


@pytest.mark.slow
def test_wiener_table_cell_recovers_strong_factors():
    """p_cor at n=78, d=500 with Wiener factors and noise centres on r_tau = 6."""
    preset = get_preset("table5")
    config = preset.panel.configure(78, 500, replications=300, seed=20240101)
    report = run_experiment(config)
    assert report.means["p_cor"] == pytest.approx(6.0, abs=0.2)
    assert report.hit_probabilities["p_cor"] > 0.9


def _assert_near_reference(preset_id, report, estimators, mean_tol, prob_tol=None):
    preset = get_preset(preset_id)
    config = report.config
    for name in estimators:
        mean, prob = preset.reference_cell(config.n, config.d, name)
        assert report.means[name] == pytest.approx(mean, abs=mean_tol), name
        if prob_tol is not None:
            assert report.hit_probabilities[name] == pytest.approx(prob, abs=prob_tol), name


@pytest.mark.slow
def test_sv_table_cell_with_wiener_noise():
    """SV factors, Wiener noise at n=390, d=1000: BN and p_cor match the published cell."""
    config = get_preset("table1").panel.configure(390, 1000, replications=200, seed=20240101)
    report = run_experiment(config)
    _assert_near_reference("table1", report, ["bn", "p_cor"], mean_tol=0.3, prob_tol=0.1)


@pytest.mark.slow
def test_sv_table_cell_with_jump_noise():
    """SV factors, NTS(0.25) noise at n=78, d=1000.

    Jumps in the noise must not show up as extra factors: the threshold and ratio
    estimators stay near their published means instead of saturating at r_max.
    """
    config = get_preset("table2").panel.configure(78, 1000, replications=200, seed=20240101)
    assert config.subordinator == "independent"
    report = run_experiment(config)
    _assert_near_reference("table2", report, ["pc_p1", "pelger", "onatski"], mean_tol=0.3)
    _assert_near_reference("table2", report, ["p_cor"], mean_tol=0.3, prob_tol=0.1)
    _assert_near_reference("table2", report, ["bn"], mean_tol=0.75)
    assert report.means["bn"] < config.estimator.r_max


@pytest.mark.slow
def test_hit_probability_grows_with_the_sample():
    """P(p_cor = r_tau) at (n=390, d=1500) is at least the one at (n=26, d=100)."""
    preset = get_preset("table1")
    small = run_experiment(preset.panel.configure(26, 100, replications=200, seed=7))
    large = run_experiment(preset.panel.configure(390, 1500, replications=200, seed=7))
    assert large.hit_probabilities["p_cor"] >= small.hit_probabilities["p_cor"]
