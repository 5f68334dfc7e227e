"""
Unitary Evolution
=================
Coin-then-shift propagation U = prod_n S C_n.

The two kernels below act elementwise on arrays shaped (..., L, 2), so the
same code drives a single ``WalkerState`` and a stack of ensemble members.
"""

from typing import Callable, List

import numpy as np
from numpy.typing import NDArray
from loguru import logger

from core.exceptions import InvalidArgumentError, LatticeOverflowError
from .coin import CoinField
from .state import WalkerState, H, V

CoinSchedule = Callable[[int], NDArray[np.complex128]]


# ============================================================================
# Kernels
# ============================================================================

def coin_kernel(amplitudes: NDArray[np.complex128], coins: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """(a_H, a_V) <- C(x) (a_H, a_V) at every site."""
    a_h = amplitudes[..., H]
    a_v = amplitudes[..., V]
    out = np.empty(np.broadcast_shapes(amplitudes.shape, coins.shape[:-1]), dtype=np.complex128)
    out[..., H] = coins[..., 0, 0] * a_h + coins[..., 0, 1] * a_v
    out[..., V] = coins[..., 1, 0] * a_h + coins[..., 1, 1] * a_v
    return out


def shift_kernel(amplitudes: NDArray[np.complex128], step: int) -> NDArray[np.complex128]:
    """H moves +1, V moves -1. Pure permutation; raises if mass would leave the lattice."""
    if np.any(amplitudes[..., -1, H] != 0):
        raise LatticeOverflowError(step, "H")
    if np.any(amplitudes[..., 0, V] != 0):
        raise LatticeOverflowError(step, "V")

    out = np.zeros_like(amplitudes)
    out[..., 1:, H] = amplitudes[..., :-1, H]
    out[..., :-1, V] = amplitudes[..., 1:, V]
    return out


# ============================================================================
# State Operations
# ============================================================================

def apply_coin(state: WalkerState, field: CoinField) -> WalkerState:
    """Apply C_{n+1}(x) to a state at step n; the step index is unchanged."""
    coins = field.coins(state.positions, state.step_index + 1)
    return state.with_amplitudes(coin_kernel(state.amplitudes, coins))


def shift(state: WalkerState) -> WalkerState:
    """Conditional shift; increments the step index."""
    amplitudes = shift_kernel(state.amplitudes, state.step_index + 1)
    return state.with_amplitudes(amplitudes, step_index=state.step_index + 1)


def evolve(initial: WalkerState, n_steps: int, field: CoinField) -> List[WalkerState]:
    """
    Trajectory of ``n_steps`` coin-then-shift steps.

    Element k is (S C_k) ... (S C_1) applied to ``initial``, counted from the
    initial state's own step index.
    """
    if n_steps < 0:
        raise InvalidArgumentError("n_steps", f"must be non-negative, got {n_steps}")

    trajectory = [initial]
    state = initial
    for _ in range(n_steps):
        state = shift(apply_coin(state, field))
        trajectory.append(state)
    return trajectory


def evolve_batch(
    amplitudes: NDArray[np.complex128],
    coin_schedule: CoinSchedule,
    n_steps: int,
    start_step: int = 0,
) -> NDArray[np.float64]:
    """
    Propagate a stack of states and record coin-resolved probabilities.

    Args:
        amplitudes: initial amplitudes, shape (B, L, 2)
        coin_schedule: step n -> coins of shape (B, L, 2, 2) or (L, 2, 2)
        n_steps: number of steps
        start_step: step index of the initial amplitudes

    Returns:
        |a|^2 per member, step, site and coin component; shape (B, n_steps + 1, L, 2)
    """
    if n_steps < 0:
        raise InvalidArgumentError("n_steps", f"must be non-negative, got {n_steps}")
    if amplitudes.ndim != 3 or amplitudes.shape[-1] != 2:
        raise InvalidArgumentError("amplitudes", f"expected shape (B, L, 2), got {amplitudes.shape}")

    batch, width, _ = amplitudes.shape
    probabilities = np.empty((batch, n_steps + 1, width, 2), dtype=np.float64)

    current = np.asarray(amplitudes, dtype=np.complex128)
    probabilities[:, 0] = np.abs(current) ** 2
    for k in range(1, n_steps + 1):
        step = start_step + k
        current = shift_kernel(coin_kernel(current, coin_schedule(step)), step)
        probabilities[:, k] = np.abs(current) ** 2

    logger.debug(f"Propagated batch of {batch} states over {n_steps} steps on {width} sites")
    return probabilities
