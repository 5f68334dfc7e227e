"""
DisorderWalk Quantum Core
=========================
Exact unitary evolution of the coined walker on a finite lattice.
"""

from .coin import (
    CoinField,
    CoinMatrix,
    coin_matrices,
    make_coin,
    is_unitary,
    hadamard_field,
    random_coin_field,
)
from .state import WalkerState, initial_state
from .evolution import (
    apply_coin,
    shift,
    evolve,
    evolve_batch,
    coin_kernel,
    shift_kernel,
)
from .transfer import TransferCoefficients, two_step_coefficients, two_step_from_state
from .oracle import path_sum_amplitudes

__all__ = [
    "CoinField",
    "CoinMatrix",
    "coin_matrices",
    "make_coin",
    "is_unitary",
    "hadamard_field",
    "random_coin_field",
    "WalkerState",
    "initial_state",
    "apply_coin",
    "shift",
    "evolve",
    "evolve_batch",
    "coin_kernel",
    "shift_kernel",
    "TransferCoefficients",
    "two_step_coefficients",
    "two_step_from_state",
    "path_sum_amplitudes",
]
