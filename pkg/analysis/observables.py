"""
Observables
===========
Coin-resolved position distributions, variance and the total variation
distance between distributions.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from core.exceptions import InvalidArgumentError
from walk.state import WalkerState, H, V

TABLE_COLUMNS = ["step", "x", "p_total", "p_H", "p_V"]


@dataclass(frozen=True)
class Distribution:
    """
    Probability per position split by coin component.

    For distributions without a meaningful coin split (the classical
    binomial walk) ``p_h`` carries the total and ``p_v`` is zero.
    """

    support: NDArray[np.int64]
    p_h: NDArray[np.float64]
    p_v: NDArray[np.float64]
    step: Optional[int] = None

    def __post_init__(self):
        support = np.asarray(self.support, dtype=np.int64)
        p_h = np.asarray(self.p_h, dtype=np.float64)
        p_v = np.asarray(self.p_v, dtype=np.float64)
        if not (support.shape == p_h.shape == p_v.shape) or support.ndim != 1:
            raise InvalidArgumentError("distribution", "support, p_H and p_V must be 1-d and equally long")
        if support.size > 1 and np.any(np.diff(support) <= 0):
            raise InvalidArgumentError("support", "positions must be strictly increasing")
        if np.any(p_h < 0) or np.any(p_v < 0):
            raise InvalidArgumentError("distribution", "probabilities must be non-negative")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "p_h", p_h)
        object.__setattr__(self, "p_v", p_v)

    @classmethod
    def from_probabilities(
        cls, positions: ArrayLike, probabilities: NDArray[np.float64], step: Optional[int] = None
    ) -> "Distribution":
        """Build from an (L, 2) array of |a_H|^2, |a_V|^2 values."""
        probabilities = np.asarray(probabilities, dtype=np.float64)
        return cls(support=positions, p_h=probabilities[:, H], p_v=probabilities[:, V], step=step)

    @classmethod
    def from_mapping(cls, values: dict, step: Optional[int] = None) -> "Distribution":
        """Total-only distribution from {x: p}."""
        support = np.array(sorted(values), dtype=np.int64)
        p_total = np.array([values[x] for x in support], dtype=np.float64)
        return cls(support=support, p_h=p_total, p_v=np.zeros_like(p_total), step=step)

    @property
    def p_total(self) -> NDArray[np.float64]:
        return self.p_h + self.p_v

    def total(self) -> float:
        return float(np.sum(self.p_total))

    def is_normalized(self, tolerance: float = 1e-9) -> bool:
        return abs(self.total() - 1.0) <= tolerance

    def mean_position(self) -> float:
        return float(np.dot(self.p_total, self.support))

    def value_at(self, x: int) -> float:
        index = np.searchsorted(self.support, x)
        if index < self.support.size and self.support[index] == x:
            return float(self.p_total[index])
        return 0.0

    def shifted(self, k: int) -> "Distribution":
        return Distribution(support=self.support + k, p_h=self.p_h, p_v=self.p_v, step=self.step)

    def restricted(self, parity: int) -> "Distribution":
        """Keep the sublattice of positions with x = parity (mod 2)."""
        keep = (self.support - parity) % 2 == 0
        return Distribution(support=self.support[keep], p_h=self.p_h[keep], p_v=self.p_v[keep], step=self.step)

    def occupied_parity(self) -> int:
        """Parity of the sublattice holding the mass (that of the most probable site)."""
        return int(self.support[int(np.argmax(self.p_total))] % 2)

    def as_series(self) -> pd.Series:
        return pd.Series(self.p_total, index=pd.Index(self.support, name="x"), name="p_total")

    def to_frame(self) -> pd.DataFrame:
        step = -1 if self.step is None else self.step
        return pd.DataFrame(
            {
                "step": np.full(self.support.size, step, dtype=np.int64),
                "x": self.support,
                "p_total": self.p_total,
                "p_H": self.p_h,
                "p_V": self.p_v,
            },
            columns=TABLE_COLUMNS,
        )

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Distribution":
        """Inverse of ``to_frame`` for a single-step table."""
        steps = frame["step"].unique()
        if len(steps) != 1:
            raise InvalidArgumentError("frame", f"expected one step, found {len(steps)}")
        frame = frame.sort_values("x")
        return cls(
            support=frame["x"].to_numpy(dtype=np.int64),
            p_h=frame["p_H"].to_numpy(dtype=np.float64),
            p_v=frame["p_V"].to_numpy(dtype=np.float64),
            step=int(steps[0]),
        )


def distribution(state: WalkerState) -> Distribution:
    """p_H(x) = |a_H(x)|^2, p_V(x) = |a_V(x)|^2."""
    probabilities = np.abs(state.amplitudes) ** 2
    return Distribution.from_probabilities(state.positions, probabilities, step=state.step_index)


def variance_array(probabilities: NDArray[np.float64], positions: NDArray[np.int64]) -> NDArray[np.float64]:
    """Variance along the last axis of a stack of position distributions."""
    x = np.asarray(positions, dtype=np.float64)
    mean = probabilities @ x
    return np.sum(probabilities * (x - mean[..., None]) ** 2, axis=-1)


def variance(dist: Distribution) -> float:
    """sum p x^2 - (sum p x)^2, evaluated about the mean."""
    return float(variance_array(dist.p_total, dist.support))


def tv_distance(p: Distribution, q: Distribution) -> float:
    """Half the L1 difference over the union of both supports (missing sites count as zero)."""
    difference = p.as_series().sub(q.as_series(), fill_value=0.0)
    distance = 0.5 * float(np.abs(difference.to_numpy()).sum())
    return min(distance, 1.0)
