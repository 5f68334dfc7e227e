"""
Compensated Aggregation
=======================
Neumaier summation of equally shaped arrays, merged in a fixed order so the
ensemble mean does not depend on how realizations were split across workers.
"""

from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from core.exceptions import InvalidArgumentError


class CompensatedSum:
    """Elementwise Neumaier accumulator."""

    def __init__(self, shape: Tuple[int, ...]):
        self.total = np.zeros(shape, dtype=np.float64)
        self.compensation = np.zeros(shape, dtype=np.float64)
        self.count = 0

    def _accumulate(self, values: NDArray[np.float64]) -> None:
        updated = self.total + values
        larger = np.abs(self.total) >= np.abs(values)
        self.compensation += np.where(
            larger,
            (self.total - updated) + values,
            (values - updated) + self.total,
        )
        self.total = updated

    def add(self, values: NDArray[np.float64]) -> None:
        """Add one sample."""
        values = np.asarray(values, dtype=np.float64)
        if values.shape != self.total.shape:
            raise InvalidArgumentError("values", f"shape mismatch: {values.shape} vs {self.total.shape}")
        self._accumulate(values)
        self.count += 1

    def merge(self, other: "CompensatedSum") -> None:
        """Fold in another accumulator's partial sum."""
        self._accumulate(other.total)
        self._accumulate(other.compensation)
        self.count += other.count

    def value(self) -> NDArray[np.float64]:
        return self.total + self.compensation

    def mean(self) -> NDArray[np.float64]:
        if self.count == 0:
            raise InvalidArgumentError("count", "mean of an empty accumulator")
        return self.value() / self.count
