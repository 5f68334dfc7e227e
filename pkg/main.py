#!/usr/bin/env python3
"""
DisorderWalk - Main Entry Point
===============================
Coined quantum walks on homogeneous, statically disordered, dynamically
disordered and slowly drifting lattices.

Usage:
    # Coherent Hadamard walk
    python main.py run homogeneous --steps 28

    # Anderson localization ensemble
    python main.py run static --steps 11 --phi-max 1.14pi --realizations 10000 --seed 42

    # Reproduce a previous run
    python main.py run custom --from-manifest results/static_manifest.json

    # Compare two distribution tables
    python main.py compare results/homogeneous_distribution.csv results/dynamic_distribution.csv

    # Final variance against disorder strength
    python main.py sweep --variants static dynamic --phi-max-list 0 0.25pi 0.5pi 0.75pi pi

    # Variance trends of all four regimes
    python main.py trends --steps 50
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from core.config import settings
from core.angles import format_angle, parse_angle
from core.exceptions import (
    ConfigurationError,
    DataError,
    DisorderWalkError,
    InsufficientDataError,
    InvalidArgumentError,
    ScenarioConfigError,
)
from core.models import DisorderVariant, RunManifest, Scenario, ScenarioConfig, VarianceMode

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

TREND_SCENARIOS = [Scenario.HOMOGENEOUS, Scenario.STATIC, Scenario.DYNAMIC, Scenario.SLOW]


def setup_logging():
    """Configure logging."""
    logger.remove()
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=settings.log_level,
    )
    if settings.log_dir:
        logger.add(
            str(Path(settings.log_dir) / "disorderwalk_{time}.log"),
            rotation="1 day",
            retention="7 days",
            level="DEBUG",
        )


# ============================================================================
# Run
# ============================================================================

def _overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Scenario fields given on the command line."""
    disorder: Dict[str, Any] = {}
    for flag, key in (("theta", "theta"), ("phi_max", "phi_max"), ("phase_ratio", "phase_ratio"), ("seed", "seed")):
        value = getattr(args, flag, None)
        if value is not None:
            disorder[key] = value

    overrides: Dict[str, Any] = {"disorder": disorder} if disorder else {}
    for flag, key in (
        ("steps", "n_steps"),
        ("realizations", "n_realizations"),
        ("variance_mode", "variance_mode"),
        ("initial", "initial"),
        ("half_width", "half_width"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "final_only", False):
        overrides["record_every_step"] = False
    return overrides


def resolve_run_config(args: argparse.Namespace) -> ScenarioConfig:
    """Config from a manifest, a scenario file or a preset, in that order."""
    from data.loaders import load_manifest, load_scenario_file, preset_config

    overrides = _overrides_from_args(args)
    if args.from_manifest:
        manifest = load_manifest(args.from_manifest)
        if overrides:
            logger.warning("Flag overrides are ignored when reproducing from a manifest")
        return manifest.config
    if args.config:
        return load_scenario_file(args.config, overrides)
    if args.scenario == Scenario.CUSTOM.value:
        raise ScenarioConfigError("scenario", "custom runs need --config or --from-manifest")
    return preset_config(args.scenario, overrides)


def write_run_outputs(config: ScenarioConfig, summary, output_dir: Path) -> Dict[str, str]:
    """Distribution table, variance trend table and summary document for one run."""
    from analysis.report import run_report
    from data.writers import write_distribution_table, write_summary, write_trends_table

    trend_rows = [
        {"scenario": config.name, "step": point.step, "variance": point.variance, "stderr": point.stderr}
        for point in summary.variance_per_step
    ]
    return {
        "distribution": write_distribution_table(
            summary.mean_distributions, output_dir / f"{config.name}_distribution.csv"
        ),
        "variance": write_trends_table(trend_rows, output_dir / f"{config.name}_variance.csv"),
        "summary": write_summary(run_report(config, summary), output_dir / f"{config.name}_summary.json"),
    }


def cmd_run(args: argparse.Namespace) -> int:
    """Run one scenario and write its data files plus a manifest."""
    from ensemble.engine import run_ensemble
    from analysis.report import tail_fits
    from data.writers import write_manifest

    config = resolve_run_config(args)
    workers = args.workers if args.workers is not None else settings.ensemble.resolved_workers()
    output_dir = Path(args.output_dir or settings.output.output_dir)

    logger.info(
        f"Running '{config.name}' ({config.disorder.variant.value}): {config.n_steps} steps, "
        f"{config.n_realizations} realizations, seed {config.disorder.seed}"
    )
    started = time.perf_counter()
    summary = run_ensemble(config, workers=workers)
    duration = time.perf_counter() - started

    outputs = write_run_outputs(config, summary, output_dir)
    manifest = RunManifest(
        format_version=settings.output.format_version,
        scenario=config.name,
        config=config,
        master_seed=config.disorder.seed,
        artifact_version=settings.app_version,
        workers=workers,
        duration_seconds=duration,
        outputs=outputs,
    )
    outputs["manifest"] = write_manifest(manifest, output_dir / f"{config.name}_manifest.json")

    final = summary.final_variance()
    fits = tail_fits(summary.final_distribution(), center=config.initial.x0)
    print("\n" + "=" * 60)
    print(f"RUN COMPLETE: {config.name}")
    print("=" * 60)
    print(f"Variant: {config.disorder.variant.value}")
    print(f"Steps: {config.n_steps}  Realizations: {summary.n_realizations}")
    print(f"Variance at step {final.step}: {final.variance:.6f} +/- {final.stderr:.6f}")
    for key in ("exponential", "gaussian"):
        fit = fits[key]
        if "error" in fit:
            print(f"{key.capitalize()} fit: {fit['error']}")
        else:
            print(f"{key.capitalize()} fit: rate={fit['rate']:.4f} r2={fit['r_squared']:.4f}")
    for name, path in outputs.items():
        print(f"{name}: {path}")
    print(f"Duration: {duration:.2f}s")
    print("=" * 60 + "\n")
    return EXIT_OK


# ============================================================================
# Compare
# ============================================================================

def _pick_step(tables: Dict[int, Any], step: Optional[int], path: str):
    chosen = max(tables) if step is None else step
    if chosen not in tables:
        raise InvalidArgumentError("step", f"step {chosen} not present in {path}")
    return chosen, tables[chosen]


def cmd_compare(args: argparse.Namespace) -> int:
    """TV distance, variance difference and residuals of two distribution tables."""
    from analysis.observables import tv_distance, variance
    from data.loaders import read_distribution_table

    step_a, dist_a = _pick_step(read_distribution_table(args.file_a), args.step, args.file_a)
    step_b, dist_b = _pick_step(read_distribution_table(args.file_b), args.step, args.file_b)

    if (step_a - step_b) % 2 != 0 or dist_a.occupied_parity() != dist_b.occupied_parity():
        logger.warning(
            f"Parity mismatch (steps {step_a} and {step_b}); comparing over the union of both supports"
        )

    distance = tv_distance(dist_a, dist_b)
    variance_a = variance(dist_a)
    variance_b = variance(dist_b)
    residuals = dist_a.as_series().sub(dist_b.as_series(), fill_value=0.0).rename("residual")

    print("\n" + "=" * 60)
    print("DISTRIBUTION COMPARISON")
    print("=" * 60)
    print(f"A: {args.file_a} (step {step_a})")
    print(f"B: {args.file_b} (step {step_b})")
    print(f"TV distance: {distance:.6f}")
    print(f"Variance A: {variance_a:.6f}  Variance B: {variance_b:.6f}  Difference: {variance_a - variance_b:.6f}")
    print("\nResiduals (A - B):")
    print(residuals.to_frame().to_string(float_format=lambda value: f"{value: .6e}"))
    print("=" * 60 + "\n")
    return EXIT_OK


# ============================================================================
# Sweep
# ============================================================================

def cmd_sweep(args: argparse.Namespace) -> int:
    """Final variance for each disorder strength of each variant."""
    from ensemble.engine import sweep_disorder
    from data.loaders import preset_config
    from data.writers import write_sweep_table

    phi_values = [parse_angle(value) for value in args.phi_max_list]
    if not phi_values:
        raise InvalidArgumentError("phi_max_list", "at least one disorder strength is required")

    overrides = _overrides_from_args(args)
    base = preset_config(Scenario.STATIC.value, overrides)
    workers = args.workers if args.workers is not None else settings.ensemble.resolved_workers()
    points = sweep_disorder(base, phi_values, [DisorderVariant(v) for v in args.variants], workers=workers)

    output_dir = Path(args.output_dir or settings.output.output_dir)
    path = write_sweep_table(points, output_dir / "sweep.csv")

    print("\n" + "=" * 60)
    print(f"DISORDER SWEEP ({base.n_steps} steps, {base.n_realizations} realizations)")
    print("=" * 60)
    print(f"Classical variance: {float(base.n_steps):.4f}")
    for point in points:
        print(
            f"  {point.variant.value:<8} phi_max={format_angle(point.phi_max):<10} "
            f"variance={point.variance:.4f} +/- {point.stderr:.4f}"
        )
    print(f"Table: {path}")
    print("=" * 60 + "\n")
    return EXIT_OK


# ============================================================================
# Trends
# ============================================================================

def cmd_trends(args: argparse.Namespace) -> int:
    """Variance against step count for the four presets on a common step count."""
    from ensemble.engine import run_ensemble
    from analysis.fitting import scaling_exponent
    from analysis.report import default_scaling_range
    from data.loaders import preset_config
    from data.writers import write_summary, write_trends_table

    workers = args.workers if args.workers is not None else settings.ensemble.resolved_workers()
    fit_range = default_scaling_range(args.steps)
    rows: List[Dict[str, Any]] = []
    exponents: Dict[str, Optional[float]] = {}

    for scenario in TREND_SCENARIOS:
        overrides: Dict[str, Any] = {"n_steps": args.steps}
        if scenario in (Scenario.STATIC, Scenario.DYNAMIC):
            if args.realizations is not None:
                overrides["n_realizations"] = args.realizations
            if args.seed is not None:
                overrides["disorder"] = {"seed": args.seed}
        config = preset_config(scenario.value, overrides)
        summary = run_ensemble(config, workers=workers)
        rows.extend(
            {"scenario": scenario.value, "step": point.step, "variance": point.variance, "stderr": point.stderr}
            for point in summary.variance_per_step
        )
        try:
            exponents[scenario.value] = scaling_exponent(summary.variance_per_step, fit_range)
        except InsufficientDataError as e:
            logger.warning(f"No scaling exponent for {scenario.value}: {e.message}")
            exponents[scenario.value] = None

    output_dir = Path(args.output_dir or settings.output.output_dir)
    table = write_trends_table(rows, output_dir / "trends.csv")
    write_summary(
        {"n_steps": args.steps, "fit_range": list(fit_range), "scaling_exponents": exponents},
        output_dir / "trends_summary.json",
    )

    print("\n" + "=" * 60)
    print(f"VARIANCE TRENDS ({args.steps} steps)")
    print("=" * 60)
    for name, exponent in exponents.items():
        shown = "n/a" if exponent is None else f"{exponent:.3f}"
        print(f"  {name:<12} scaling exponent: {shown}")
    print(f"Table: {table}")
    print("=" * 60 + "\n")
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================

def _add_ensemble_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--steps", type=int, help="Number of walk steps")
    parser.add_argument("--theta", help="Coin angle, e.g. pi/8")
    parser.add_argument("--realizations", type=int, help="Disorder realizations")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--phase-ratio", type=float, help="phi_V / phi_H (inf decouples phi_H)")
    parser.add_argument("--initial", help="Coin input: horizontal, vertical or symmetric")
    parser.add_argument("--workers", type=int, help="Worker processes (default: ENSEMBLE_WORKERS or CPU count)")
    parser.add_argument("--output-dir", help="Directory for output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="DisorderWalk - coined quantum walks in disordered lattices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Run command
    run_parser = subparsers.add_parser("run", help="Run one scenario")
    run_parser.add_argument("scenario", choices=[s.value for s in Scenario], help="Scenario preset")
    _add_ensemble_flags(run_parser)
    run_parser.add_argument("--phi-max", help="Disorder strength, e.g. 1.14pi")
    run_parser.add_argument("--half-width", type=int, help="Lattice half width (default |x0| + steps)")
    run_parser.add_argument(
        "--variance-mode",
        choices=[m.value for m in VarianceMode],
        help="Variance of the mean distribution or mean of per-realization variances",
    )
    run_parser.add_argument("--final-only", action="store_true", help="Record the last step only")
    run_parser.add_argument("--config", help="YAML or JSON scenario file")
    run_parser.add_argument("--from-manifest", help="Reproduce the run described by a manifest")

    # Compare command
    compare_parser = subparsers.add_parser("compare", help="Compare two distribution tables")
    compare_parser.add_argument("file_a", help="First distribution table")
    compare_parser.add_argument("file_b", help="Second distribution table")
    compare_parser.add_argument("--step", type=int, help="Step to compare (default: last recorded)")

    # Sweep command
    sweep_parser = subparsers.add_parser("sweep", help="Variance against disorder strength")
    _add_ensemble_flags(sweep_parser)
    sweep_parser.add_argument(
        "--variants",
        nargs="+",
        choices=[DisorderVariant.STATIC.value, DisorderVariant.DYNAMIC.value],
        default=[DisorderVariant.STATIC.value, DisorderVariant.DYNAMIC.value],
        help="Disorder variants to sweep",
    )
    sweep_parser.add_argument(
        "--phi-max-list",
        nargs="+",
        default=["0", "0.25pi", "0.5pi", "0.75pi", "pi"],
        help="Disorder strengths",
    )
    sweep_parser.set_defaults(steps=11)

    # Trends command
    trends_parser = subparsers.add_parser("trends", help="Variance trends of the four regimes")
    trends_parser.add_argument("--steps", type=int, default=50, help="Common number of steps")
    trends_parser.add_argument("--realizations", type=int, help="Realizations for static and dynamic disorder")
    trends_parser.add_argument("--seed", type=int, help="Master seed for static and dynamic disorder")
    trends_parser.add_argument("--workers", type=int, help="Worker processes")
    trends_parser.add_argument("--output-dir", help="Directory for output files")

    return parser


COMMANDS = {
    "run": cmd_run,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "trends": cmd_trends,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    setup_logging()

    handler = COMMANDS.get(args.command)
    if handler is None:
        parser.print_help()
        return EXIT_OK

    try:
        return handler(args)
    except (ConfigurationError, DataError, InvalidArgumentError) as e:
        logger.error(e.message)
        return EXIT_CONFIG
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG
    except DisorderWalkError as e:
        logger.error(e.message)
        return EXIT_RUNTIME
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
