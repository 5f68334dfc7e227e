"""
Two-Step Transfer Blocks
========================
Coin-resolved form of the two-step recursion

    a_{n+2}(x) = gamma_x a_n(x) + beta_plus a_n(x-2) + beta_minus a_n(x+2)

with every coefficient a 2x2 block fixed by C_{n+1} and C_{n+2}.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import NDArray

from .coin import CoinField, CoinMatrix
from .state import WalkerState

CoinSlice = Callable[[int], CoinMatrix]

_P_H = np.array([[1, 0], [0, 0]], dtype=np.complex128)
_P_V = np.array([[0, 0], [0, 1]], dtype=np.complex128)


@dataclass(frozen=True)
class TransferCoefficients:
    """Stay block ``gamma`` and transfer blocks from x-2 (``beta_plus``) and x+2 (``beta_minus``)."""

    x: int
    gamma: NDArray[np.complex128]
    beta_plus: NDArray[np.complex128]
    beta_minus: NDArray[np.complex128]

    def apply(
        self,
        left: NDArray[np.complex128],
        centre: NDArray[np.complex128],
        right: NDArray[np.complex128],
    ) -> NDArray[np.complex128]:
        """Amplitude pair at x two steps later from the pairs at x-2, x, x+2."""
        return self.gamma @ centre + self.beta_plus @ left + self.beta_minus @ right


def two_step_coefficients(c1: CoinSlice, c2: CoinSlice, x: int) -> TransferCoefficients:
    """
    Blocks for site ``x`` from the coin slices of steps n+1 (``c1``) and n+2 (``c2``).

    Uses C_{n+1} at x-2, x, x+2 and C_{n+2} at x-1, x+1.
    """
    c1_left, c1_centre, c1_right = c1(x - 2), c1(x), c1(x + 2)
    c2_left, c2_right = c2(x - 1), c2(x + 1)

    beta_plus = _P_H @ c2_left @ _P_H @ c1_left
    beta_minus = _P_V @ c2_right @ _P_V @ c1_right
    gamma = _P_H @ c2_left @ _P_V @ c1_centre + _P_V @ c2_right @ _P_H @ c1_centre
    return TransferCoefficients(x=x, gamma=gamma, beta_plus=beta_plus, beta_minus=beta_minus)


def two_step_from_state(state: WalkerState, field: CoinField, x: int) -> NDArray[np.complex128]:
    """Predict the amplitude pair at (x, n+2) from ``state`` at step n via the transfer blocks."""
    n = state.step_index
    blocks = two_step_coefficients(field.slice(n + 1), field.slice(n + 2), x)

    def pair(position: int) -> NDArray[np.complex128]:
        if abs(position) > state.origin_offset:
            return np.zeros(2, dtype=np.complex128)
        return state.amplitude_at(position)

    return blocks.apply(pair(x - 2), pair(x), pair(x + 2))
