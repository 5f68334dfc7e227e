"""
DisorderWalk Disorder Models
============================
Seeded phase patterns and coin-angle schedules for the four regimes.
"""

from .rng import realization_rng
from .patterns import (
    PhasePattern,
    sample_static_pattern,
    sample_dynamic_pattern,
    sample_pattern,
)
from .fields import theta_grid, default_theta_grid, coin_field_for, BatchCoinSchedule

__all__ = [
    "realization_rng",
    "PhasePattern",
    "sample_static_pattern",
    "sample_dynamic_pattern",
    "sample_pattern",
    "theta_grid",
    "default_theta_grid",
    "coin_field_for",
    "BatchCoinSchedule",
]
