"""
DisorderWalk Core
=================
Core configuration, models, and utilities.
"""

from .config import settings, get_settings
from .angles import parse_angle, format_angle
from .models import (
    DisorderVariant,
    Scenario,
    TailModel,
    Wing,
    VarianceMode,
    DisorderSpec,
    InitialCondition,
    ScenarioConfig,
    VariancePoint,
    FitResult,
    SweepPoint,
    RunManifest,
)
from .exceptions import (
    DisorderWalkError,
    ConfigurationError,
    ScenarioConfigError,
    InvalidArgumentError,
    LatticeError,
    LatticeBoundsError,
    LatticeOverflowError,
    AnalysisError,
    InsufficientDataError,
    DataError,
    MalformedTableError,
    FormatVersionError,
    EnsembleError,
)

__all__ = [
    # Config
    "settings",
    "get_settings",
    # Angles
    "parse_angle",
    "format_angle",
    # Models
    "DisorderVariant",
    "Scenario",
    "TailModel",
    "Wing",
    "VarianceMode",
    "DisorderSpec",
    "InitialCondition",
    "ScenarioConfig",
    "VariancePoint",
    "FitResult",
    "SweepPoint",
    "RunManifest",
    # Exceptions
    "DisorderWalkError",
    "ConfigurationError",
    "ScenarioConfigError",
    "InvalidArgumentError",
    "LatticeError",
    "LatticeBoundsError",
    "LatticeOverflowError",
    "AnalysisError",
    "InsufficientDataError",
    "DataError",
    "MalformedTableError",
    "FormatVersionError",
    "EnsembleError",
]
