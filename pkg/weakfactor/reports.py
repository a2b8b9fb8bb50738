"""CSV reports and run manifests."""

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import pandas as pd
import yaml
from pydantic import BaseModel, Field

from weakfactor.bounds import ScalingStudyResult, SlopeFit
from weakfactor.montecarlo import MCReport
from weakfactor.presets import TablePreset

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6g"

CELL_COLUMNS = [
    "factor_kind",
    "idio_kind",
    "alpha",
    "n",
    "d",
    "estimator",
    "mean_rhat",
    "prob_hit",
    "replications",
    "seed",
]
SIMULATE_COLUMNS = [*CELL_COLUMNS, "timestamp"]
TABLE_COLUMNS = ["table_id", *CELL_COLUMNS]
COMPARE_COLUMNS = [*TABLE_COLUMNS, "paper_mean", "paper_prob"]
SWEEP_COLUMNS = [
    "figure_id",
    "factor_kind",
    "idio_kind",
    "alpha",
    "n",
    "d",
    "parameter",
    "value",
    "estimator",
    "mean_rhat",
    "prob_hit",
    "replications",
    "seed",
]
BOUNDS_COLUMNS = [
    "study",
    "row_kind",
    "label",
    "d",
    "n",
    "observed",
    "envelope",
    "ratio",
    "value",
    "ci_low",
    "ci_high",
]


class RunManifest(BaseModel):
    """Provenance of one CLI run, written next to its CSV."""

    command: str
    source: str = Field(description="Config path or preset id.")
    master_seed: int
    output: str
    workers: int
    replications: int | None = None
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def write(self, csv_path: str | Path) -> Path:
        """Write ``<csv_path>.manifest.yaml`` and return its path."""
        path = Path(f"{csv_path}.manifest.yaml")
        path.write_text(yaml.safe_dump(self.model_dump(), sort_keys=False))
        return path


def simulate_frame(report: MCReport, timestamp: str) -> pd.DataFrame:
    """One row per estimator for a single experiment."""
    rows = [{**row, "timestamp": timestamp} for row in report.rows()]
    return pd.DataFrame(rows, columns=SIMULATE_COLUMNS)


def table_frame(
    preset: TablePreset, reports: list[MCReport], compare: bool = False
) -> pd.DataFrame:
    """Rows for every cell of a table preset, optionally with the published values."""
    rows: list[dict[str, Any]] = []
    for report in reports:
        for row in report.rows():
            record: dict[str, Any] = {"table_id": preset.preset_id, **row}
            if compare:
                estimator = str(row["estimator"])
                cell = preset.reference_cell(report.config.n, report.config.d, estimator)
                record["paper_mean"], record["paper_prob"] = cell if cell else (None, None)
            rows.append(record)
    return pd.DataFrame(rows, columns=COMPARE_COLUMNS if compare else TABLE_COLUMNS)


def sweep_frame(
    figure_id: str, parameter: str, grid: list[float], reports: list[MCReport]
) -> pd.DataFrame:
    """Rows for one panel sweep; ``reports`` align with ``grid``."""
    rows = []
    for value, report in zip(grid, reports, strict=True):
        for row in report.rows():
            rows.append({"figure_id": figure_id, "parameter": parameter, "value": value, **row})
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def bounds_frame(result: ScalingStudyResult, slopes: dict[str, SlopeFit]) -> pd.DataFrame:
    """Point and spread rows of a study followed by one row per fitted slope."""
    rows: list[dict[str, Any]] = list(result.to_rows())
    for label, fit in slopes.items():
        rows.append(
            {
                "study": result.study,
                "row_kind": "slope",
                "label": label,
                "value": fit.slope,
                "ci_low": fit.ci_low,
                "ci_high": fit.ci_high,
            }
        )
    return pd.DataFrame(rows, columns=BOUNDS_COLUMNS)


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    """Write a report as UTF-8 CSV with six significant digits per float."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8", lineterminator="\n"
    )
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path
