"""
Ensemble Engine
===============
Monte Carlo runs over disorder realizations and coin-angle grids.

Realizations are split into fixed-size chunks keyed by realization index.
Chunks are independent work items; their partial sums are merged in chunk
order, so the summary is the same for any worker count.
"""

import math
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from loguru import logger

from core.config import settings
from core.exceptions import InvalidArgumentError
from core.models import (
    DisorderSpec,
    DisorderVariant,
    ScenarioConfig,
    SweepPoint,
    VarianceMode,
    VariancePoint,
)
from walk.coin import CoinField, coin_matrices
from walk.evolution import evolve_batch
from disorder.patterns import sample_pattern
from disorder.fields import BatchCoinSchedule
from analysis.observables import Distribution, variance_array
from .aggregation import CompensatedSum
from .pool import WorkerPool
from .summary import EnsembleSummary


@dataclass(frozen=True)
class ChunkTask:
    """Realizations [start, stop) of one scenario."""
    config: ScenarioConfig
    start: int
    stop: int


@dataclass
class ChunkResult:
    start: int
    stop: int
    probability_sum: CompensatedSum
    member_variances: NDArray[np.float64]


# ============================================================================
# Chunk Workers
# ============================================================================

def _recorded_steps(config: ScenarioConfig) -> List[int]:
    if config.record_every_step:
        return list(range(config.n_steps + 1))
    return [config.n_steps]


def _initial_amplitudes(config: ScenarioConfig, batch: int) -> NDArray[np.complex128]:
    half_width = config.lattice_half_width
    amplitudes = np.zeros((batch, 2 * half_width + 1, 2), dtype=np.complex128)
    amplitudes[:, config.initial.x0 + half_width] = (config.initial.c_h, config.initial.c_v)
    return amplitudes


def _member_schedule(config: ScenarioConfig, start: int, stop: int):
    """Coin schedule for members [start, stop) of the scenario."""
    spec = config.disorder
    half_width = config.lattice_half_width
    positions = np.arange(-half_width, half_width + 1, dtype=np.int64)

    if spec.variant == DisorderVariant.HOMOGENEOUS:
        coins = CoinField.homogeneous(spec.theta).coins(positions, 1)
        return lambda step: coins

    if spec.variant == DisorderVariant.SLOW:
        thetas = np.asarray(spec.theta_grid[start:stop], dtype=np.float64)
        coins = coin_matrices(thetas[:, None], 0.0, np.zeros(positions.size))
        return lambda step: coins

    patterns = [sample_pattern(spec, r, half_width, config.n_steps) for r in range(start, stop)]
    return BatchCoinSchedule(spec.theta, patterns)


def _simulate_chunk(task: ChunkTask) -> ChunkResult:
    """Evolve one chunk and reduce it to a probability sum plus member variances."""
    config = task.config
    batch = task.stop - task.start
    half_width = config.lattice_half_width
    positions = np.arange(-half_width, half_width + 1, dtype=np.int64)

    probabilities = evolve_batch(
        _initial_amplitudes(config, batch),
        _member_schedule(config, task.start, task.stop),
        config.n_steps,
    )
    if not config.record_every_step:
        probabilities = probabilities[:, -1:]

    accumulator = CompensatedSum(probabilities.shape[1:])
    for member in probabilities:
        accumulator.add(member)

    member_variances = variance_array(probabilities.sum(axis=-1), positions)
    return ChunkResult(
        start=task.start,
        stop=task.stop,
        probability_sum=accumulator,
        member_variances=member_variances,
    )


def _chunk_bounds(n_members: int, chunk_size: int) -> List[Tuple[int, int]]:
    chunk_size = max(1, chunk_size)
    return [(start, min(start + chunk_size, n_members)) for start in range(0, n_members, chunk_size)]


# ============================================================================
# Reduction
# ============================================================================

def _standard_errors(member_variances: NDArray[np.float64]) -> NDArray[np.float64]:
    count = member_variances.shape[0]
    if count < 2:
        return np.zeros(member_variances.shape[1], dtype=np.float64)
    return np.std(member_variances, axis=0, ddof=1) / math.sqrt(count)


def _summarize(config: ScenarioConfig, results: Sequence[ChunkResult]) -> EnsembleSummary:
    results = sorted(results, key=lambda result: result.start)
    total = CompensatedSum(results[0].probability_sum.total.shape)
    for result in results:
        total.merge(result.probability_sum)
    mean = total.mean()

    half_width = config.lattice_half_width
    positions = np.arange(-half_width, half_width + 1, dtype=np.int64)
    steps = _recorded_steps(config)
    distributions = [
        Distribution.from_probabilities(positions, mean[k], step=step) for k, step in enumerate(steps)
    ]

    member_variances = np.concatenate([result.member_variances for result in results], axis=0)
    if config.variance_mode == VarianceMode.PER_REALIZATION:
        variances = np.mean(member_variances, axis=0)
    else:
        variances = variance_array(mean.sum(axis=-1), positions)
    stderrs = _standard_errors(member_variances)

    points = [
        VariancePoint(step=step, variance=float(variances[k]), stderr=float(stderrs[k]))
        for k, step in enumerate(steps)
    ]
    return EnsembleSummary(
        scenario=config.name,
        variant=config.disorder.variant,
        steps=steps,
        mean_distributions=distributions,
        variance_per_step=points,
        n_realizations=int(total.count),
        master_seed=config.disorder.seed,
        variance_mode=config.variance_mode,
        member_variances=member_variances,
    )


def _execute(config: ScenarioConfig, n_members: int, workers: Optional[int]) -> EnsembleSummary:
    if n_members < 1:
        raise InvalidArgumentError("n_realizations", f"must be at least 1, got {n_members}")

    chunk_size = settings.ensemble.chunk_size
    if config.disorder.variant == DisorderVariant.SLOW:
        chunk_size = n_members
    tasks = [ChunkTask(config=config, start=start, stop=stop) for start, stop in _chunk_bounds(n_members, chunk_size)]

    requested = settings.ensemble.resolved_workers() if workers is None else workers
    pool_size = max(1, min(requested, len(tasks)))

    started = time.perf_counter()
    with WorkerPool(pool_size) as pool:
        results = pool.map(_simulate_chunk, tasks)
    summary = _summarize(config, results)

    logger.info(
        f"Ensemble '{config.name}' ({config.disorder.variant.value}): {n_members} members, "
        f"{len(tasks)} chunks, {pool_size} workers, {time.perf_counter() - started:.2f}s"
    )
    return summary


# ============================================================================
# Public Operations
# ============================================================================

def run_ensemble(config: ScenarioConfig, workers: Optional[int] = None) -> EnsembleSummary:
    """
    Average probability distributions over the scenario's realizations.

    Homogeneous scenarios run a single coherent walk; slow-drift scenarios
    are delegated to ``run_slow_average``.
    """
    if config.disorder.variant == DisorderVariant.SLOW:
        return run_slow_average(config, workers=workers)
    return _execute(config, config.n_realizations, workers)


def run_slow_average(config: ScenarioConfig, workers: Optional[int] = None) -> EnsembleSummary:
    """
    Uniform-weight average of the coherent walks for every angle of the theta grid.

    Variance is taken on the averaged distribution unless the config asks
    for per-realization variances; the standard error comes from the spread
    of the member variances.
    """
    if config.disorder.variant != DisorderVariant.SLOW:
        raise InvalidArgumentError("disorder.variant", f"expected slow, got {config.disorder.variant.value}")
    return _execute(config, len(config.disorder.theta_grid), workers)


def variance_trend(config: ScenarioConfig, workers: Optional[int] = None) -> List[Tuple[int, float]]:
    """sigma^2 of the ensemble-mean distribution at every step 0..n_steps."""
    if not config.record_every_step:
        raise InvalidArgumentError("record_every_step", "variance trend needs every step recorded")
    return run_ensemble(config, workers=workers).variance_trend()


def sweep_disorder(
    base: ScenarioConfig,
    phi_max_values: Iterable[float],
    variants: Iterable[DisorderVariant] = (DisorderVariant.STATIC, DisorderVariant.DYNAMIC),
    workers: Optional[int] = None,
) -> List[SweepPoint]:
    """Final-step variance for each (variant, phi_max) pair, sharing the base seed."""
    points: List[SweepPoint] = []
    phi_values = list(phi_max_values)
    for variant in variants:
        variant = DisorderVariant(variant)
        if variant not in (DisorderVariant.STATIC, DisorderVariant.DYNAMIC):
            raise InvalidArgumentError("variants", f"sweeps cover static and dynamic disorder, got {variant.value}")
        for phi_max in phi_values:
            spec = DisorderSpec.model_validate(
                {**base.disorder.model_dump(), "variant": variant, "phi_max": phi_max, "theta_grid": None}
            )
            config = base.model_copy(update={"disorder": spec, "record_every_step": False})
            final = run_ensemble(config, workers=workers).final_variance()
            points.append(
                SweepPoint(
                    variant=variant,
                    phi_max=float(phi_max),
                    n_steps=config.n_steps,
                    variance=final.variance,
                    stderr=final.stderr,
                )
            )
            logger.debug(f"Sweep {variant.value} phi_max={phi_max:.4f}: variance={final.variance:.4f}")
    return points
