"""
Phase Patterns
==============
Seeded phi_V / phi_H tables for static and dynamic disorder.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from core.exceptions import InvalidArgumentError
from core.models import DisorderSpec, DisorderVariant
from .rng import realization_rng


@dataclass(frozen=True)
class PhasePattern:
    """
    phi_V per (step, position) with phi_H = phi_V / phase_ratio.

    ``phi_v`` has shape (rows, 2*half_width + 1): one row for static disorder
    (reused at every step), ``n_steps`` rows for dynamic disorder (row n-1
    belongs to step n).
    """

    phi_v: NDArray[np.float64]
    phase_ratio: float
    half_width: int
    realization: int

    def __post_init__(self):
        phi_v = np.asarray(self.phi_v, dtype=np.float64)
        if phi_v.ndim != 2 or phi_v.shape[1] != 2 * self.half_width + 1:
            raise InvalidArgumentError("phi_v", f"bad pattern shape {phi_v.shape}")
        phi_v.setflags(write=False)
        object.__setattr__(self, "phi_v", phi_v)

    @property
    def phi_h(self) -> NDArray[np.float64]:
        # phase_ratio = inf gives exact zeros
        return self.phi_v / self.phase_ratio

    @property
    def is_static(self) -> bool:
        return self.phi_v.shape[0] == 1

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(-self.half_width, self.half_width + 1, dtype=np.int64)

    def phi_v_at(self, x: int, step: int) -> float:
        row = 0 if self.is_static else step - 1
        return float(self.phi_v[row, x + self.half_width])

    def phi_h_at(self, x: int, step: int) -> float:
        return self.phi_v_at(x, step) / self.phase_ratio


def _uniform_phases(spec: DisorderSpec, realization: int, shape: tuple) -> NDArray[np.float64]:
    if spec.phi_max == 0.0:
        return np.zeros(shape, dtype=np.float64)
    rng = realization_rng(spec.seed, realization)
    return rng.uniform(-spec.phi_max, spec.phi_max, size=shape)


def sample_static_pattern(spec: DisorderSpec, realization: int, half_width: int) -> PhasePattern:
    """One i.i.d. uniform phi_V per lattice site, shared by every step."""
    if spec.variant != DisorderVariant.STATIC:
        raise InvalidArgumentError("spec.variant", f"expected static, got {spec.variant.value}")
    if realization < 0 or half_width < 0:
        raise InvalidArgumentError("realization", "realization and half_width must be non-negative")

    phi_v = _uniform_phases(spec, realization, (1, 2 * half_width + 1))
    return PhasePattern(phi_v=phi_v, phase_ratio=spec.phase_ratio, half_width=half_width, realization=realization)


def sample_dynamic_pattern(spec: DisorderSpec, realization: int, half_width: int, n_steps: int) -> PhasePattern:
    """An independent uniform phi_V for every (step, site) pair."""
    if spec.variant != DisorderVariant.DYNAMIC:
        raise InvalidArgumentError("spec.variant", f"expected dynamic, got {spec.variant.value}")
    if n_steps < 1:
        raise InvalidArgumentError("n_steps", f"must be positive, got {n_steps}")
    if realization < 0 or half_width < 0:
        raise InvalidArgumentError("realization", "realization and half_width must be non-negative")

    phi_v = _uniform_phases(spec, realization, (n_steps, 2 * half_width + 1))
    return PhasePattern(phi_v=phi_v, phase_ratio=spec.phase_ratio, half_width=half_width, realization=realization)


def sample_pattern(spec: DisorderSpec, realization: int, half_width: int, n_steps: int) -> PhasePattern:
    """Dispatch on ``spec.variant``."""
    if spec.variant == DisorderVariant.STATIC:
        return sample_static_pattern(spec, realization, half_width)
    if spec.variant == DisorderVariant.DYNAMIC:
        return sample_dynamic_pattern(spec, realization, half_width, n_steps)
    raise InvalidArgumentError("spec.variant", f"{spec.variant.value} lattices carry no phase pattern")

