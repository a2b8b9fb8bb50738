"""Command-line front end: experiments, published tables and figures, scaling studies."""

import argparse
import logging
import sys
from collections import defaultdict
from collections.abc import Sequence
from datetime import datetime, timezone
from pathlib import Path

import pandas as pd
import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from weakfactor import bounds
from weakfactor.config import ModelConfig, Settings, load_config
from weakfactor.errors import ParameterError, WeakFactorError
from weakfactor.montecarlo import run_experiment, run_sweep
from weakfactor.presets import (
    DEFAULT_REPLICATIONS,
    FigurePreset,
    TablePreset,
    get_preset,
    list_presets,
)
from weakfactor.random import make_stream
from weakfactor.reports import (
    RunManifest,
    bounds_frame,
    simulate_frame,
    sweep_frame,
    table_frame,
    write_csv,
)
from weakfactor.tracing import init_tracing, trace_run

logger = logging.getLogger("weakfactor")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3

STUDIES = ("concentration", "jumpnorm", "eigenscaling")
DEFAULT_STUDY_REPLICATIONS = 200


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakfactor",
        description="Monte Carlo study of weak-factor number estimators on high-frequency data.",
    )
    parser.add_argument("--log-level", default=None, help="Overrides WEAKFACTOR_LOG_LEVEL.")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--reps", type=int, default=None, help="Replications per cell.")
        sub.add_argument("--seed", type=int, default=None, help="64-bit master seed.")
        sub.add_argument("--workers", type=int, default=None, help="joblib n_jobs.")
        sub.add_argument("--out", type=Path, default=None, help="CSV output path.")

    simulate = commands.add_parser("simulate", help="Run one experiment from a YAML config.")
    simulate.add_argument("--config", type=Path, default=None, help="Experiment YAML file.")
    common(simulate)

    table = commands.add_parser("table", help="Reproduce a published table.")
    table.add_argument("--preset", required=True, help="table1 .. table8")
    table.add_argument("--compare", action="store_true", help="Append the published values.")
    common(table)

    sweep = commands.add_parser("sweep", help="Reproduce a published sensitivity figure.")
    sweep.add_argument("--preset", required=True, help="fig1 .. fig4")
    sweep.add_argument("--grid", type=_float_list, default=None, help="Comma-separated values.")
    common(sweep)

    study = commands.add_parser("bounds", help="Run a scaling study of the realized covariance.")
    study.add_argument("study", help=" | ".join(STUDIES))
    study.add_argument(
        "--grid",
        default=None,
        help="d:n pairs (concentration, jumpnorm) or d values (eigenscaling), comma-separated.",
    )
    study.add_argument("--alpha", type=float, default=0.5, help="NTS index for jumpnorm.")
    study.add_argument(
        "--subordinator",
        choices=["independent", "shared"],
        default="independent",
        help="NTS subordinator per asset or shared across assets (jumpnorm).",
    )
    study.add_argument("--n", type=int, default=390, help="Sample size for eigenscaling.")
    study.add_argument(
        "--norm", choices=["spectral", "frobenius"], default="spectral", help="concentration norm"
    )
    common(study)

    commands.add_parser("list-presets", help="List table and figure presets.")
    return parser


def _resolve_workers(args: argparse.Namespace, settings: Settings) -> int:
    if args.workers is None:
        return settings.workers
    if args.workers == 0:
        raise ParameterError("--workers must be a positive count or negative (joblib n_jobs)")
    return int(args.workers)


def _resolve_reps(args: argparse.Namespace, default: int) -> int:
    return default if args.reps is None else int(args.reps)


def _default_out(label: str) -> Path:
    return Path(f"weakfactor-{label}.csv")


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    config = load_config(args.config)
    overrides: dict[str, int] = {}
    if args.reps is not None:
        overrides["replications"] = args.reps
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if overrides:
        config = ModelConfig.model_validate({**config.model_dump(), **overrides})
    workers = _resolve_workers(args, settings)

    report = run_experiment(config, workers)
    timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    out = args.out or _default_out("simulate")
    write_csv(simulate_frame(report, timestamp), out)
    RunManifest(
        command="simulate",
        source=str(args.config or "experiment.yaml"),
        master_seed=config.master_seed,
        output=str(out),
        workers=workers,
        replications=config.replications,
        timestamp=timestamp,
    ).write(out)
    return EXIT_OK


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    preset = get_preset(args.preset)
    if not isinstance(preset, TablePreset):
        raise ParameterError(f"{args.preset} is not a table preset")
    seed = 0 if args.seed is None else args.seed
    workers = _resolve_workers(args, settings)
    configs = preset.expand(_resolve_reps(args, DEFAULT_REPLICATIONS), seed)

    reports = []
    for config in configs:
        with trace_run("table_cell", {"table": preset.preset_id, "n": config.n, "d": config.d}):
            reports.append(run_experiment(config, workers))
    out = args.out or _default_out(preset.preset_id)
    write_csv(table_frame(preset, reports, compare=args.compare), out)
    RunManifest(
        command="table",
        source=preset.preset_id,
        master_seed=seed,
        output=str(out),
        workers=workers,
        replications=configs[0].replications,
    ).write(out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    preset = get_preset(args.preset)
    if not isinstance(preset, FigurePreset):
        raise ParameterError(f"{args.preset} is not a figure preset")
    if args.grid is not None and not args.grid:
        raise ParameterError("--grid must contain at least one value")
    grid = list(args.grid or preset.grid)
    seed = 0 if args.seed is None else args.seed
    workers = _resolve_workers(args, settings)
    bases = preset.expand(_resolve_reps(args, DEFAULT_REPLICATIONS), seed)

    frames = []
    for base in bases:
        reports = run_sweep(base, preset.parameter, grid, workers)
        frames.append(sweep_frame(preset.preset_id, preset.parameter, grid, reports))
    out = args.out or _default_out(preset.preset_id)
    write_csv(pd.concat(frames, ignore_index=True), out)
    RunManifest(
        command="sweep",
        source=preset.preset_id,
        master_seed=seed,
        output=str(out),
        workers=workers,
        replications=bases[0].replications,
    ).write(out)
    return EXIT_OK


def _parse_points(text: str) -> list[tuple[int, int]]:
    points = []
    for item in text.split(","):
        d, sep, n = item.strip().partition(":")
        if not sep or not (d.isdigit() and n.isdigit()):
            raise ParameterError(f"grid entries must look like d:n, got {item!r}")
        points.append((int(d), int(n)))
    return points


def _slopes(result: bounds.ScalingStudyResult) -> dict[str, bounds.SlopeFit]:
    """Slopes in d for each series, within groups of points sharing n (or n/d)."""
    fits: dict[str, bounds.SlopeFit] = {}
    groups: dict[str, list[tuple[int, int]]] = defaultdict(list)
    for d, n in result.points:
        key = f"n/d={n / d:g}" if result.study == "concentration" else f"n={n}"
        groups[key].append((d, n))
    for s, label in enumerate(result.series):
        for key, points in groups.items():
            if len({d for d, _ in points}) >= 2:
                fits[f"{label} d-slope {key}"] = result.fit_slope(series=s, points=points)
    return fits


def cmd_bounds(args: argparse.Namespace, settings: Settings) -> int:
    if args.study not in STUDIES:
        raise ParameterError(f"Unknown study: {args.study} (known: {', '.join(STUDIES)})")
    reps = _resolve_reps(args, DEFAULT_STUDY_REPLICATIONS)
    if reps < 1:
        raise ParameterError(f"--reps must be at least 1, got {reps}")
    seed = 0 if args.seed is None else args.seed
    workers = _resolve_workers(args, settings)
    rng = make_stream(seed)

    if args.study == "concentration":
        grid = _parse_points(args.grid) if args.grid else list(bounds.DEFAULT_CONCENTRATION_GRID)
        result = bounds.concentration_study(grid, reps, rng, norm=args.norm, workers=workers)
    elif args.study == "jumpnorm":
        grid = _parse_points(args.grid) if args.grid else list(bounds.DEFAULT_JUMP_GRID)
        result = bounds.jump_norm_study(
            grid, args.alpha, reps, rng, subordinator=args.subordinator, workers=workers
        )
    else:
        dims = [int(v) for v in _float_list(args.grid)] if args.grid else None
        result = bounds.eigen_scaling_study(
            dims or list(bounds.DEFAULT_EIGEN_DIMENSIONS), args.n, reps, rng, workers=workers
        )

    out = args.out or _default_out(args.study)
    write_csv(bounds_frame(result, _slopes(result)), out)
    RunManifest(
        command="bounds",
        source=args.study,
        master_seed=seed,
        output=str(out),
        workers=workers,
        replications=reps,
    ).write(out)
    return EXIT_OK


def cmd_list_presets() -> int:
    for preset in list_presets():
        if isinstance(preset, TablePreset):
            print(f"{preset.preset_id:<8} table   {preset.title}")
        else:
            grid = ", ".join(f"{v:g}" for v in preset.grid)
            print(f"{preset.preset_id:<8} figure  {preset.title} [{preset.parameter}: {grid}]")
    return EXIT_OK


def _describe_validation(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        key = ".".join(str(loc) for loc in item["loc"]) or "config"
        parts.append(f"{key}: {item['msg']}")
    return "; ".join(parts)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the command and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env()
    except ValidationError as e:
        print(f"error: invalid environment settings: {_describe_validation(e)}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    init_tracing(settings.trace)

    try:
        if args.command == "simulate":
            return cmd_simulate(args, settings)
        if args.command == "table":
            return cmd_table(args, settings)
        if args.command == "sweep":
            return cmd_sweep(args, settings)
        if args.command == "bounds":
            return cmd_bounds(args, settings)
        return cmd_list_presets()
    except ValidationError as e:
        print(f"error: invalid configuration: {_describe_validation(e)}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, FileNotFoundError, yaml.YAMLError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except WeakFactorError as e:
        logger.error(f"Run failed: {e}")
        return EXIT_RUNTIME


def main() -> None:
    """Entry point for the weakfactor command."""
    for env_path in [Path(".env.local"), Path(".env")]:
        if env_path.exists():
            load_dotenv(env_path)
            break

    sys.exit(run())


if __name__ == "__main__":
    main()
