"""
Walker State
============
Two-component complex wave function on the finite lattice [-N, N].
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from core.config import settings
from core.exceptions import InvalidArgumentError, LatticeBoundsError

H, V = 0, 1


@dataclass(frozen=True)
class WalkerState:
    """
    Amplitudes ``(a_H(x), a_V(x))`` stored as an (L, 2) complex array with
    L = 2 * origin_offset + 1; row ``origin_offset`` is position x = 0.
    The array is read-only once wrapped.
    """

    step_index: int
    origin_offset: int
    amplitudes: NDArray[np.complex128]

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if amplitudes.shape != (2 * self.origin_offset + 1, 2):
            raise InvalidArgumentError(
                "amplitudes",
                f"expected shape ({2 * self.origin_offset + 1}, 2), got {amplitudes.shape}",
            )
        if self.step_index < 0:
            raise InvalidArgumentError("step_index", "must be non-negative")
        if amplitudes.flags.writeable:
            amplitudes = amplitudes.copy()
            amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def half_width(self) -> int:
        return self.origin_offset

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(-self.origin_offset, self.origin_offset + 1, dtype=np.int64)

    @property
    def a_h(self) -> NDArray[np.complex128]:
        return self.amplitudes[:, H]

    @property
    def a_v(self) -> NDArray[np.complex128]:
        return self.amplitudes[:, V]

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def amplitude_at(self, x: int) -> NDArray[np.complex128]:
        if abs(x) > self.origin_offset:
            raise LatticeBoundsError(x, self.origin_offset)
        return self.amplitudes[x + self.origin_offset]

    def with_amplitudes(self, amplitudes: NDArray[np.complex128], step_index: int = None) -> "WalkerState":
        return WalkerState(
            step_index=self.step_index if step_index is None else step_index,
            origin_offset=self.origin_offset,
            amplitudes=amplitudes,
        )

    def restricted_to(self, positions) -> "WalkerState":
        """Copy with every amplitude outside ``positions`` set to zero."""
        keep = np.zeros(len(self.amplitudes), dtype=bool)
        for x in positions:
            if abs(x) <= self.origin_offset:
                keep[x + self.origin_offset] = True
        amplitudes = np.where(keep[:, None], self.amplitudes, 0.0)
        return self.with_amplitudes(amplitudes)


def initial_state(x0: int, c_h: complex, c_v: complex, lattice_half_width: int) -> WalkerState:
    """Point start |x0> (x) (cH|H> + cV|V>) at step 0."""
    norm = abs(c_h) ** 2 + abs(c_v) ** 2
    if not math.isfinite(norm) or abs(norm - 1.0) > settings.walk.norm_tolerance:
        raise InvalidArgumentError("coin state", f"|cH|^2 + |cV|^2 = {norm}, expected 1")
    if lattice_half_width < 0:
        raise InvalidArgumentError("lattice_half_width", "must be non-negative")
    if abs(x0) > lattice_half_width:
        raise LatticeBoundsError(x0, lattice_half_width)

    amplitudes = np.zeros((2 * lattice_half_width + 1, 2), dtype=np.complex128)
    amplitudes[x0 + lattice_half_width] = (c_h, c_v)
    return WalkerState(step_index=0, origin_offset=lattice_half_width, amplitudes=amplitudes)
