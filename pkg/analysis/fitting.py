"""
Semilog Fits
============
Tail fits separating exponential localization from Gaussian (diffusive)
profiles, and log-log scaling exponents of variance trends.
"""

import math
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from scipy.stats import linregress

from core.config import settings
from core.exceptions import InsufficientDataError
from core.models import FitResult, TailModel, VariancePoint, Wing
from .observables import Distribution

TrendPoint = Union[Tuple[int, float], VariancePoint]


def fit_tail(
    dist: Distribution,
    model: TailModel,
    wing: Wing = Wing.BOTH,
    floor: Optional[float] = None,
    center: int = 0,
    exclude_front: Optional[bool] = None,
) -> FitResult:
    """
    Least-squares fit of log p against |x - center| (exponential) or (x - center)^2 (gaussian).

    Only the occupied parity sublattice enters, and points with p below the
    floor (default ``settings.analysis.fit_floor``) are dropped. When the
    distribution knows its step n, the light-cone sites |x - center| = n are
    left out as well (``settings.analysis.exclude_front``): they carry the
    ballistic front, not the tail.
    """
    floor = settings.analysis.fit_floor if floor is None else floor
    exclude_front = settings.analysis.exclude_front if exclude_front is None else exclude_front
    model = TailModel(model)
    wing = Wing(wing)

    parity = dist.occupied_parity()
    x = dist.support
    p = dist.p_total
    offset = x - center
    mask = ((x - parity) % 2 == 0) & (p > 0) & (p >= floor)
    if exclude_front and dist.step is not None and dist.step > 0:
        mask &= np.abs(offset) < dist.step
    if wing == Wing.LEFT:
        mask &= offset <= 0
    elif wing == Wing.RIGHT:
        mask &= offset >= 0

    xs = offset[mask].astype(np.float64)
    ys = np.log(p[mask])
    regressor = np.abs(xs) if model == TailModel.EXPONENTIAL else xs ** 2

    needed = settings.analysis.min_fit_points
    if xs.size < needed or np.unique(regressor).size < 2:
        raise InsufficientDataError(f"fit_tail[{model.value}]", needed, int(xs.size))

    fit = linregress(regressor, ys)
    r_squared = float(fit.rvalue) ** 2
    if not math.isfinite(r_squared):
        r_squared = 0.0

    result = FitResult(
        model=model,
        wing=wing,
        rate=-float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=min(max(r_squared, 0.0), 1.0),
        n_points_used=int(xs.size),
        rate_stderr=float(fit.stderr) if math.isfinite(fit.stderr) else 0.0,
    )
    logger.debug(f"Tail fit {model.value}/{wing.value}: rate={result.rate:.4g} r2={result.r_squared:.4f}")
    return result


def _as_pairs(trend: Iterable[TrendPoint]) -> Sequence[Tuple[int, float]]:
    pairs = []
    for point in trend:
        if isinstance(point, VariancePoint):
            pairs.append((point.step, point.variance))
        else:
            step, value = point[0], point[1]
            pairs.append((int(step), float(value)))
    return pairs


def scaling_exponent(trend: Iterable[TrendPoint], fit_range: Tuple[int, int]) -> float:
    """Slope b of log sigma^2 against log n over steps within ``fit_range`` (inclusive)."""
    lo, hi = fit_range
    points = [(n, v) for n, v in _as_pairs(trend) if lo <= n <= hi and n > 0 and v > 0]

    needed = settings.analysis.min_scaling_points
    if len(points) < needed:
        raise InsufficientDataError("scaling_exponent", needed, len(points))

    steps = np.log(np.array([n for n, _ in points], dtype=np.float64))
    values = np.log(np.array([v for _, v in points], dtype=np.float64))
    return float(linregress(steps, values).slope)
