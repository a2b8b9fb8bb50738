"""Tests for CSV reports and manifests."""

import numpy as np
import pandas as pd
import pytest
import yaml

from weakfactor.bounds import ScalingStudyResult, SlopeFit
from weakfactor.config import ModelConfig
from weakfactor.estimators import EstimateSet
from weakfactor.montecarlo import MCReport
from weakfactor.presets import get_preset
from weakfactor.reports import (
    BOUNDS_COLUMNS,
    COMPARE_COLUMNS,
    SIMULATE_COLUMNS,
    TABLE_COLUMNS,
    RunManifest,
    bounds_frame,
    simulate_frame,
    sweep_frame,
    table_frame,
    write_csv,
)


def _report(n=78, d=500, **overrides):
    config = ModelConfig(n=n, d=d, factor_kind="wiener", replications=3, master_seed=4, **overrides)
    estimates = [
        EstimateSet(bn=6, p_cor=6, pc_p1=9, pelger=6, onatski=6),
        EstimateSet(bn=7, p_cor=6, pc_p1=9, pelger=5, onatski=6),
        EstimateSet(bn=6, p_cor=6, pc_p1=8, pelger=6, onatski=7),
    ]
    return MCReport(config=config, estimates=estimates)


class TestFrames:
    """Tests for the frame builders."""

    def test_simulate_frame(self):
        frame = simulate_frame(_report(), "2026-01-01T00:00:00+00:00")
        assert list(frame.columns) == SIMULATE_COLUMNS
        assert frame["estimator"].tolist() == ["bn", "p_cor", "pc_p1", "pelger", "onatski"]
        bn = frame.set_index("estimator").loc["bn"]
        assert bn["mean_rhat"] == pytest.approx(19 / 3)
        assert bn["prob_hit"] == pytest.approx(2 / 3)
        assert bn["seed"] == 4

    def test_table_frame_with_published_values(self):
        preset = get_preset("table5")
        frame = table_frame(preset, [_report()], compare=True)
        assert list(frame.columns) == COMPARE_COLUMNS
        p_cor = frame.set_index("estimator").loc["p_cor"]
        assert (p_cor["paper_mean"], p_cor["paper_prob"]) == (6.00, 1.00)
        assert (frame["table_id"] == "table5").all()

    def test_table_frame_without_comparison(self):
        frame = table_frame(get_preset("table5"), [_report(), _report(n=390, d=100)])
        assert list(frame.columns) == TABLE_COLUMNS
        assert len(frame) == 10

    def test_unpublished_cell_has_no_reference(self):
        frame = table_frame(get_preset("table5"), [_report(n=40, d=60)], compare=True)
        assert frame["paper_mean"].isna().all()

    def test_sweep_frame(self):
        reports = [_report(phi=0.0), _report(phi=0.5)]
        frame = sweep_frame("fig4", "phi", [0.0, 0.5], reports)
        assert len(frame) == 10
        assert frame["value"].tolist() == [0.0] * 5 + [0.5] * 5
        assert (frame["parameter"] == "phi").all()

    def test_sweep_frame_needs_aligned_grid(self):
        with pytest.raises(ValueError):
            sweep_frame("fig4", "phi", [0.0], [_report(), _report()])

    def test_bounds_frame(self):
        points = [(100, 50), (200, 50)]
        result = ScalingStudyResult(
            study="concentration",
            points=points,
            samples=np.ones((2, 3, 1)),
            envelope=np.full((2, 1), 2.0),
            series=["spectral"],
        )
        frame = bounds_frame(result, {"spectral d-slope n=50": SlopeFit(0.5, 0.4, 0.6)})
        assert list(frame.columns) == BOUNDS_COLUMNS
        assert frame["row_kind"].tolist() == ["point", "point", "ratio_spread", "slope"]
        slope = frame.iloc[-1]
        assert (slope["value"], slope["ci_low"], slope["ci_high"]) == (0.5, 0.4, 0.6)
        assert frame.iloc[0]["ratio"] == 0.5


def test_write_csv_uses_six_significant_digits(tmp_path):
    path = write_csv(pd.DataFrame({"x": [1 / 3, 2.0], "label": ["a", "b"]}), tmp_path / "a/b.csv")
    assert path.read_text(encoding="utf-8") == "x,label\n0.333333,a\n2,b\n"


def test_manifest_is_written_next_to_csv(tmp_path):
    csv_path = tmp_path / "out.csv"
    manifest = RunManifest(
        command="table", source="table1", master_seed=7, output=str(csv_path), workers=1
    )
    path = manifest.write(csv_path)
    assert path.name == "out.csv.manifest.yaml"
    loaded = yaml.safe_load(path.read_text())
    assert loaded["source"] == "table1"
    assert loaded["master_seed"] == 7
    assert loaded["timestamp"]
