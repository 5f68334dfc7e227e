"""
Run Reports
===========
Machine-readable summary of one ensemble run: variance trend, tail fits,
scaling exponent and distances to the classical references.

The report holds no timestamps or paths so re-running a scenario reproduces
it byte for byte.
"""

from typing import TYPE_CHECKING, Any, Dict, Optional

from loguru import logger

from core.exceptions import InsufficientDataError
from core.models import DisorderVariant, ScenarioConfig, TailModel, Wing
from .classical import classical_markov_oracle, classical_walk
from .fitting import fit_tail, scaling_exponent
from .observables import Distribution, tv_distance, variance

if TYPE_CHECKING:
    from ensemble.summary import EnsembleSummary


def _fit_entry(dist: Distribution, model: TailModel, wing: Wing, center: int) -> Dict[str, Any]:
    try:
        return fit_tail(dist, model, wing, center=center).model_dump(mode="json")
    except InsufficientDataError as e:
        return {"model": model.value, "wing": wing.value, "error": e.message}


def tail_fits(dist: Distribution, center: int = 0) -> Dict[str, Dict[str, Any]]:
    """Both models on pooled wings, plus the exponential model per wing, measured from ``center``."""
    return {
        "exponential": _fit_entry(dist, TailModel.EXPONENTIAL, Wing.BOTH, center),
        "gaussian": _fit_entry(dist, TailModel.GAUSSIAN, Wing.BOTH, center),
        "exponential_left": _fit_entry(dist, TailModel.EXPONENTIAL, Wing.LEFT, center),
        "exponential_right": _fit_entry(dist, TailModel.EXPONENTIAL, Wing.RIGHT, center),
    }


def default_scaling_range(n_steps: int) -> tuple:
    """Skip the first fifth of the walk, where every regime still spreads ballistically."""
    return max(1, n_steps // 5), n_steps


def run_report(config: ScenarioConfig, summary: "EnsembleSummary") -> Dict[str, Any]:
    """Assemble the summary document for one run."""
    final = summary.final_distribution()
    n_steps = config.n_steps
    w_h, w_v = config.initial.occupations

    classical = classical_walk(n_steps, 0.5).shifted(config.initial.x0)
    distances: Dict[str, Optional[float]] = {
        "tv_binomial": tv_distance(final, classical),
        "binomial_variance": variance(classical),
    }
    if config.disorder.variant == DisorderVariant.DYNAMIC:
        oracle = classical_markov_oracle(n_steps, config.disorder.theta, w_h, w_v, x0=config.initial.x0)
        distances["tv_markov_oracle"] = tv_distance(final, oracle)

    exponent = None
    fit_range = default_scaling_range(n_steps)
    if config.record_every_step:
        try:
            exponent = scaling_exponent(summary.variance_per_step, fit_range)
        except InsufficientDataError as e:
            logger.debug(f"No scaling exponent for '{config.name}': {e.message}")

    final_point = summary.final_variance()
    return {
        "scenario": config.name,
        "variant": config.disorder.variant.value,
        "master_seed": summary.master_seed,
        "n_steps": n_steps,
        "n_realizations": summary.n_realizations,
        "variance_mode": summary.variance_mode.value,
        "final_variance": {"step": final_point.step, "variance": final_point.variance, "stderr": final_point.stderr},
        "variance_trend": [point.model_dump() for point in summary.variance_per_step],
        "scaling": {"fit_range": list(fit_range), "exponent": exponent},
        "fits": tail_fits(final, center=config.initial.x0),
        "classical_reference": distances,
        "config": config.model_dump(mode="python"),
    }
