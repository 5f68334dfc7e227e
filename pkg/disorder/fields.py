"""
Coin Fields from Disorder
=========================
Adapters from a disorder draw (phase pattern or coin angle) to the coin
fields and coin schedules consumed by the quantum core.
"""

from typing import List, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from core.config import settings
from core.exceptions import InvalidArgumentError
from core.models import DisorderSpec, DisorderVariant
from walk.coin import CoinField, coin_matrices
from .patterns import PhasePattern


def theta_grid(lo: float, hi: float, count: int) -> List[float]:
    """Inclusive, uniformly spaced grid of ``count`` coin angles from ``lo`` to ``hi``."""
    if count < 1:
        raise InvalidArgumentError("count", f"must be at least 1, got {count}")
    if lo > hi:
        raise InvalidArgumentError("lo", f"lower bound {lo} exceeds upper bound {hi}")
    return [float(value) for value in np.linspace(lo, hi, count)]


def default_theta_grid() -> List[float]:
    """Slow-drift grid from settings (six points over [0, pi/4] unless overridden)."""
    config = settings.disorder
    return theta_grid(config.slow_grid_lo, config.slow_grid_hi, config.slow_grid_count)


def coin_field_for(spec: DisorderSpec, pattern: Union[PhasePattern, float, None] = None) -> CoinField:
    """
    Coin field realizing one disorder draw.

    Homogeneous specs ignore ``pattern``; static/dynamic specs need the
    sampled ``PhasePattern``; slow specs take the member's coin angle.
    """
    if spec.variant == DisorderVariant.HOMOGENEOUS:
        return CoinField.homogeneous(spec.theta)

    if spec.variant == DisorderVariant.SLOW:
        if not isinstance(pattern, (int, float)):
            raise InvalidArgumentError("pattern", "slow regime needs a coin angle from the theta grid")
        return CoinField.homogeneous(float(pattern))

    if not isinstance(pattern, PhasePattern):
        raise InvalidArgumentError("pattern", f"{spec.variant.value} disorder needs a PhasePattern")
    if pattern.is_static != (spec.variant == DisorderVariant.STATIC):
        raise InvalidArgumentError("pattern", f"pattern does not match {spec.variant.value} disorder")
    return CoinField.from_phase_tables(spec.theta, pattern.phi_h, pattern.phi_v, pattern.half_width)


class BatchCoinSchedule:
    """
    Stacked coins for a batch of phase patterns.

    Calling the schedule with step n returns coins of shape (B, L, 2, 2),
    the coins ``coin_field_for`` gives each member.
    """

    def __init__(self, theta: float, patterns: Sequence[PhasePattern]):
        if not patterns:
            raise InvalidArgumentError("patterns", "batch is empty")
        phi_v = np.stack([pattern.phi_v for pattern in patterns])
        phi_h = np.stack([pattern.phi_h for pattern in patterns])
        self.static = patterns[0].is_static
        self.coins: NDArray[np.complex128] = coin_matrices(theta, phi_h, phi_v)

    def __call__(self, step: int) -> NDArray[np.complex128]:
        row = 0 if self.static else step - 1
        return self.coins[:, row]
