"""
Ensemble Summary
================
Aggregated result of one ensemble run.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from core.exceptions import InvalidArgumentError
from core.models import DisorderVariant, VarianceMode, VariancePoint
from analysis.observables import Distribution, TABLE_COLUMNS


@dataclass(frozen=True)
class EnsembleSummary:
    """
    Mean distributions and variance statistics per recorded step.

    ``member_variances`` has shape (n_realizations, len(steps)) and holds the
    variance of every member's own distribution; the standard errors in
    ``variance_per_step`` are derived from it.
    """

    scenario: str
    variant: DisorderVariant
    steps: List[int]
    mean_distributions: List[Distribution]
    variance_per_step: List[VariancePoint]
    n_realizations: int
    master_seed: int
    variance_mode: VarianceMode = VarianceMode.MEAN_DISTRIBUTION
    member_variances: NDArray[np.float64] = field(default=None, repr=False)

    def final_distribution(self) -> Distribution:
        return self.mean_distributions[-1]

    def distribution_at(self, step: int) -> Distribution:
        try:
            return self.mean_distributions[self.steps.index(step)]
        except ValueError:
            raise InvalidArgumentError("step", f"step {step} was not recorded (recorded: {self.steps[0]}..{self.steps[-1]})")

    def variance_trend(self) -> List[Tuple[int, float]]:
        return [(point.step, point.variance) for point in self.variance_per_step]

    def final_variance(self) -> VariancePoint:
        return self.variance_per_step[-1]

    def to_frame(self) -> pd.DataFrame:
        """All recorded steps as one long table in column order step,x,p_total,p_H,p_V."""
        frames = [dist.to_frame() for dist in self.mean_distributions]
        if not frames:
            return pd.DataFrame(columns=TABLE_COLUMNS)
        return pd.concat(frames, ignore_index=True)[TABLE_COLUMNS]
