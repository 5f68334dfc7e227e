"""
DisorderWalk Ensemble Engine
============================
Deterministic, parallel Monte Carlo averaging over disorder realizations.
"""

from .aggregation import CompensatedSum
from .pool import WorkerPool
from .summary import EnsembleSummary
from .engine import run_ensemble, run_slow_average, variance_trend, sweep_disorder

__all__ = [
    "CompensatedSum",
    "WorkerPool",
    "EnsembleSummary",
    "run_ensemble",
    "run_slow_average",
    "variance_trend",
    "sweep_disorder",
]
