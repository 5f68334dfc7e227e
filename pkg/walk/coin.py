"""
Coin Operators
==============
Phase-diagonal times rotation-reflection coins and the fields that assign
one to every (position, step) of a walk.

    C = diag(e^{i phi_H}, e^{i phi_V}) . [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
"""

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.config import settings
from core.exceptions import InvalidArgumentError, LatticeBoundsError

CoinMatrix = NDArray[np.complex128]
PhaseFunction = Callable[[NDArray[np.int64], int], NDArray[np.float64]]


def coin_matrices(theta: ArrayLike, phi_h: ArrayLike, phi_v: ArrayLike) -> NDArray[np.complex128]:
    """
    Broadcasting coin constructor.

    Returns an array of shape ``broadcast(theta, phi_h, phi_v).shape + (2, 2)``.
    Every kernel in the package builds its coins here, single and batched
    evolution alike.
    """
    theta = np.asarray(theta, dtype=np.float64)
    phi_h = np.asarray(phi_h, dtype=np.float64)
    phi_v = np.asarray(phi_v, dtype=np.float64)
    theta, phi_h, phi_v = np.broadcast_arrays(theta, phi_h, phi_v)

    c = np.cos(2.0 * theta)
    s = np.sin(2.0 * theta)
    eh = np.exp(1j * phi_h)
    ev = np.exp(1j * phi_v)

    out = np.empty(theta.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = eh * c
    out[..., 0, 1] = eh * s
    out[..., 1, 0] = ev * s
    out[..., 1, 1] = -ev * c
    return out


def make_coin(theta: float, phi_h: float, phi_v: float) -> CoinMatrix:
    """Return the 2x2 coin for one (theta, phi_H, phi_V) triple."""
    for name, value in (("theta", theta), ("phi_h", phi_h), ("phi_v", phi_v)):
        if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
            raise InvalidArgumentError(name, f"must be a finite real number, got {value!r}")
    return coin_matrices(theta, phi_h, phi_v)


def is_unitary(coin: ArrayLike, atol: Optional[float] = None) -> bool:
    atol = settings.walk.unitarity_tolerance if atol is None else atol
    coin = np.asarray(coin)
    identity = np.eye(2)
    product = np.swapaxes(coin.conj(), -1, -2) @ coin
    return bool(np.allclose(product, identity, rtol=0.0, atol=atol))


def _zero_phase(positions: NDArray[np.int64], step: int) -> NDArray[np.float64]:
    return np.zeros(positions.shape, dtype=np.float64)


def _table_phase(
    table: NDArray[np.float64], half_width: int, positions: NDArray[np.int64], step: int
) -> NDArray[np.float64]:
    positions = np.asarray(positions)
    if positions.size and (positions.min() < -half_width or positions.max() > half_width):
        bad = int(positions.min()) if positions.min() < -half_width else int(positions.max())
        raise LatticeBoundsError(bad, half_width)
    if table.shape[0] == 1:
        row = 0
    elif 1 <= step <= table.shape[0]:
        row = step - 1
    else:
        raise InvalidArgumentError("step", f"phase table covers steps 1..{table.shape[0]}, got {step}")
    return table[row, positions + half_width]


@dataclass(frozen=True)
class CoinField:
    """
    A coin angle plus phase functions phi_H(x, n), phi_V(x, n).

    Phase functions are vectorized over positions. Step ``n`` is 1-based:
    the coin applied to the state at step ``n - 1`` is ``C_n``.
    """

    theta: float
    phi_h: PhaseFunction = field(default=_zero_phase)
    phi_v: PhaseFunction = field(default=_zero_phase)

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise InvalidArgumentError("theta", f"must be finite, got {self.theta}")

    @classmethod
    def homogeneous(cls, theta: float, phi_h: float = 0.0, phi_v: float = 0.0) -> "CoinField":
        """Same coin at every position and step."""
        if phi_h == 0.0 and phi_v == 0.0:
            return cls(theta=theta)
        return cls(
            theta=theta,
            phi_h=lambda positions, step: np.full(np.shape(positions), phi_h, dtype=np.float64),
            phi_v=lambda positions, step: np.full(np.shape(positions), phi_v, dtype=np.float64),
        )

    @classmethod
    def from_phase_tables(
        cls,
        theta: float,
        phi_h: NDArray[np.float64],
        phi_v: NDArray[np.float64],
        half_width: int,
    ) -> "CoinField":
        """
        Field backed by phase tables of shape (rows, 2*half_width + 1).

        One row means the phases depend on position only; otherwise row
        ``n - 1`` holds the phases of step ``n``.
        """
        phi_h = np.asarray(phi_h, dtype=np.float64)
        phi_v = np.asarray(phi_v, dtype=np.float64)
        if phi_h.shape != phi_v.shape or phi_h.ndim != 2 or phi_h.shape[1] != 2 * half_width + 1:
            raise InvalidArgumentError(
                "phase tables",
                f"expected matching (rows, {2 * half_width + 1}) tables, got {phi_h.shape} and {phi_v.shape}",
            )
        return cls(
            theta=theta,
            phi_h=partial(_table_phase, phi_h, half_width),
            phi_v=partial(_table_phase, phi_v, half_width),
        )

    def coins(self, positions: ArrayLike, step: int) -> NDArray[np.complex128]:
        """Coins for every position at step ``step``; shape (len(positions), 2, 2)."""
        positions = np.asarray(positions, dtype=np.int64)
        return coin_matrices(self.theta, self.phi_h(positions, step), self.phi_v(positions, step))

    def coin_at(self, x: int, step: int) -> CoinMatrix:
        return self.coins(np.array([x]), step)[0]

    def slice(self, step: int) -> Callable[[int], CoinMatrix]:
        """Position -> coin map for one step."""
        return partial(self._coin_at_step, step)

    def _coin_at_step(self, step: int, x: int) -> CoinMatrix:
        return self.coin_at(x, step)


def hadamard_field() -> CoinField:
    return CoinField.homogeneous(math.pi / 8)


def random_coin_field(
    rng: np.random.Generator,
    half_width: int,
    n_steps: int,
    theta: Optional[float] = None,
) -> CoinField:
    """Field with i.i.d. phases in [-pi, pi) at every (x, n); used for property checks."""
    width = 2 * half_width + 1
    theta = float(rng.uniform(0.0, math.pi / 4)) if theta is None else theta
    phi_h = rng.uniform(-math.pi, math.pi, size=(n_steps, width))
    phi_v = rng.uniform(-math.pi, math.pi, size=(n_steps, width))
    return CoinField.from_phase_tables(theta, phi_h, phi_v, half_width)
