"""
Path-Sum Oracle
===============
Brute-force amplitudes from an explicit sum over all 2^n coin histories.
Shares no code with the array kernels; meant for cross-checking them at n <= 12.
"""

from itertools import product
from typing import Dict, Tuple

import numpy as np
from numpy.typing import NDArray

from core.exceptions import InvalidArgumentError
from .coin import CoinField

MAX_ORACLE_STEPS = 16


def path_sum_amplitudes(
    x0: int,
    c_h: complex,
    c_v: complex,
    n_steps: int,
    field: CoinField,
    half_width: int,
) -> NDArray[np.complex128]:
    """
    Amplitudes after ``n_steps`` as an (2*half_width+1, 2) array.

    A history is the sequence of outgoing coin labels c_1..c_n; its amplitude
    is sum_j a0[j] * C_1(x_0)[c_1, j] * C_2(x_1)[c_2, c_1] * ... with
    x_k = x_{k-1} + 1 for H and - 1 for V.
    """
    if not 0 <= n_steps <= MAX_ORACLE_STEPS:
        raise InvalidArgumentError("n_steps", f"oracle supports 0..{MAX_ORACLE_STEPS} steps, got {n_steps}")
    if abs(x0) + n_steps > half_width:
        raise InvalidArgumentError("half_width", "lattice too small for the light cone")

    # plain nested lists keep the inner loop free of array machinery
    table: Dict[Tuple[int, int], list] = {}
    for step in range(1, n_steps + 1):
        reach = range(x0 - step + 1, x0 + step, 2)
        coins = field.coins(np.fromiter(reach, dtype=np.int64), step)
        for x, coin in zip(reach, coins):
            table[(step, x)] = [[complex(coin[0, 0]), complex(coin[0, 1])], [complex(coin[1, 0]), complex(coin[1, 1])]]

    result = np.zeros((2 * half_width + 1, 2), dtype=np.complex128)
    start = (complex(c_h), complex(c_v))
    if n_steps == 0:
        result[x0 + half_width] = start
        return result

    for history in product((0, 1), repeat=n_steps):
        x = x0
        first = table[(1, x)]
        amplitude = first[history[0]][0] * start[0] + first[history[0]][1] * start[1]
        x += 1 if history[0] == 0 else -1
        previous = history[0]
        for step in range(2, n_steps + 1):
            label = history[step - 1]
            amplitude *= table[(step, x)][label][previous]
            x += 1 if label == 0 else -1
            previous = label
        result[x + half_width, previous] += amplitude
    return result
