"""
DisorderWalk Analysis
=====================
Observables, classical references and semilog diagnostics.
"""

from .observables import (
    Distribution,
    TABLE_COLUMNS,
    distribution,
    variance,
    variance_array,
    tv_distance,
)
from .classical import classical_walk, classical_markov_oracle
from .fitting import fit_tail, scaling_exponent
from .report import run_report, tail_fits, default_scaling_range

__all__ = [
    "Distribution",
    "TABLE_COLUMNS",
    "distribution",
    "variance",
    "variance_array",
    "tv_distance",
    "classical_walk",
    "classical_markov_oracle",
    "fit_tail",
    "scaling_exponent",
    "run_report",
    "tail_fits",
    "default_scaling_range",
]
