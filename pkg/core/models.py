"""
DisorderWalk Data Models
========================
Pydantic models for disorder specifications, scenario configuration,
analysis results and run manifests.
"""

import math
from datetime import datetime
from typing import Annotated, Optional, List, Dict, Any
from enum import Enum

from loguru import logger
from pydantic import (
    BaseModel,
    BeforeValidator,
    Field,
    PlainSerializer,
    PlainValidator,
    PositiveInt,
    field_validator,
    model_validator,
)

from .angles import parse_angle
from .config import settings

QUARTER_PI = math.pi / 4
TWO_PI = 2 * math.pi
_ANGLE_SLACK = 1e-12


# ============================================================================
# Enums
# ============================================================================

class DisorderVariant(str, Enum):
    """Environmental regime of the lattice."""
    HOMOGENEOUS = "homogeneous"      # identical coin everywhere
    STATIC = "static"                # position-dependent, step-independent phases
    DYNAMIC = "dynamic"              # phases random in position and step
    SLOW = "slow"                    # coin angle drifts between ensemble members


class Scenario(str, Enum):
    """CLI scenario presets."""
    HOMOGENEOUS = "homogeneous"
    STATIC = "static"
    DYNAMIC = "dynamic"
    SLOW = "slow"
    CUSTOM = "custom"


class TailModel(str, Enum):
    """Semilog tail model."""
    EXPONENTIAL = "exponential"      # log p ~ a - rate*|x|
    GAUSSIAN = "gaussian"            # log p ~ a - rate*x^2


class Wing(str, Enum):
    """Which side of the distribution enters a tail fit."""
    BOTH = "both"
    LEFT = "left"
    RIGHT = "right"


class VarianceMode(str, Enum):
    """How ensemble variances are formed."""
    MEAN_DISTRIBUTION = "mean_distribution"    # variance of the averaged distribution
    PER_REALIZATION = "per_realization"        # average of per-realization variances


# ============================================================================
# Field Types
# ============================================================================

def _parse_complex(value: Any) -> complex:
    if isinstance(value, bool):
        raise ValueError("boolean is not a complex amplitude")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ValueError(f"cannot interpret {value!r} as a complex amplitude")


Angle = Annotated[float, BeforeValidator(parse_angle)]

ComplexAmplitude = Annotated[
    complex,
    PlainValidator(_parse_complex),
    PlainSerializer(lambda c: [c.real, c.imag], return_type=list),
]


# ============================================================================
# Disorder Models
# ============================================================================

class DisorderSpec(BaseModel):
    """Selects one environmental regime together with its parameters and seed."""

    variant: DisorderVariant
    phi_max: Angle = Field(default=0.0, description="Half-width of the uniform phi_V interval")
    phase_ratio: float = Field(default=3.5, description="phi_V / phi_H; inf decouples phi_H")
    theta: Angle = Field(default_factory=lambda: settings.walk.default_theta, description="Coin angle (all but slow)")
    theta_grid: Optional[List[Angle]] = Field(default=None, description="Coin angles averaged by the slow regime")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Master seed")

    @model_validator(mode="after")
    def _check_ranges(self) -> "DisorderSpec":
        if not (0.0 <= self.phi_max <= TWO_PI + _ANGLE_SLACK):
            raise ValueError(f"phi_max must lie in [0, 2pi], got {self.phi_max}")
        if not self.phase_ratio > 0:
            raise ValueError(f"phase_ratio must be positive, got {self.phase_ratio}")
        if not (0.0 <= self.theta <= QUARTER_PI + _ANGLE_SLACK):
            raise ValueError(f"theta must lie in [0, pi/4], got {self.theta}")
        if self.variant == DisorderVariant.HOMOGENEOUS and self.phi_max != 0.0:
            raise ValueError("homogeneous lattice requires phi_max = 0")
        if self.variant == DisorderVariant.SLOW:
            if not self.theta_grid:
                raise ValueError("slow regime requires a nonempty theta_grid")
            for value in self.theta_grid:
                if not (0.0 <= value <= QUARTER_PI + _ANGLE_SLACK):
                    raise ValueError(f"theta_grid values must lie in [0, pi/4], got {value}")
        return self

    @property
    def is_random(self) -> bool:
        return self.variant in (DisorderVariant.STATIC, DisorderVariant.DYNAMIC)


# ============================================================================
# Scenario Models
# ============================================================================

class InitialCondition(BaseModel):
    """Point start |x0> (x) (cH|H> + cV|V>)."""

    x0: int = 0
    c_h: ComplexAmplitude = complex(1.0)
    c_v: ComplexAmplitude = complex(0.0)

    @model_validator(mode="after")
    def _check_norm(self) -> "InitialCondition":
        norm = abs(self.c_h) ** 2 + abs(self.c_v) ** 2
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"coin state must be normalized, |cH|^2+|cV|^2 = {norm}")
        return self

    @classmethod
    def horizontal(cls, x0: int = 0) -> "InitialCondition":
        return cls(x0=x0, c_h=1.0, c_v=0.0)

    @classmethod
    def symmetric(cls, x0: int = 0) -> "InitialCondition":
        """(|H> + i|V>)/sqrt(2), the input giving a left-right symmetric walk."""
        return cls(x0=x0, c_h=1 / math.sqrt(2), c_v=1j / math.sqrt(2))

    @property
    def occupations(self) -> tuple:
        return abs(self.c_h) ** 2, abs(self.c_v) ** 2


class ScenarioConfig(BaseModel):
    """Fully resolved description of one ensemble run."""

    name: str = Field(default="custom", description="Scenario label used in output file names")
    disorder: DisorderSpec
    initial: InitialCondition = Field(default_factory=InitialCondition)
    n_steps: PositiveInt
    n_realizations: PositiveInt = 1
    record_every_step: bool = True
    variance_mode: VarianceMode = VarianceMode.MEAN_DISTRIBUTION
    half_width: Optional[int] = Field(default=None, ge=0, description="Lattice half width (default |x0| + n_steps)")

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not value or any(ch in value for ch in "/\\ "):
            raise ValueError(f"name must be a non-empty token without spaces or slashes, got {value!r}")
        return value

    @model_validator(mode="after")
    def _resolve(self) -> "ScenarioConfig":
        variant = self.disorder.variant
        if variant == DisorderVariant.HOMOGENEOUS and self.n_realizations != 1:
            logger.warning(
                f"Homogeneous walk is deterministic; forcing n_realizations=1 (was {self.n_realizations})"
            )
            self.n_realizations = 1
        elif variant == DisorderVariant.SLOW and self.n_realizations != len(self.disorder.theta_grid):
            self.n_realizations = len(self.disorder.theta_grid)

        if self.half_width is not None and abs(self.initial.x0) > self.half_width:
            raise ValueError(
                f"initial position {self.initial.x0} outside lattice half width {self.half_width}"
            )
        return self

    @property
    def lattice_half_width(self) -> int:
        if self.half_width is not None:
            return self.half_width
        return abs(self.initial.x0) + self.n_steps


# ============================================================================
# Analysis Models
# ============================================================================

class VariancePoint(BaseModel):
    """Ensemble variance at one step."""
    step: int = Field(ge=0)
    variance: float
    stderr: float = Field(default=0.0, ge=0.0, description="Sample std of per-realization variance / sqrt(R)")


class FitResult(BaseModel):
    """Least-squares semilog tail fit."""

    model: TailModel
    wing: Wing = Wing.BOTH
    rate: float = Field(description="Decay rate per |x| (exponential) or per x^2 (gaussian)")
    intercept: float
    r_squared: float = Field(ge=0.0, le=1.0)
    n_points_used: int = Field(ge=3)
    rate_stderr: float = Field(default=0.0, ge=0.0)

    @field_validator("rate")
    @classmethod
    def _finite_rate(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("rate must be finite")
        return value

    @property
    def decay_length(self) -> float:
        """1/rate; infinite for a flat profile."""
        return math.inf if self.rate == 0 else 1.0 / self.rate


class SweepPoint(BaseModel):
    """One disorder-strength sample of a variance sweep."""
    variant: DisorderVariant
    phi_max: float
    n_steps: int
    variance: float
    stderr: float


# ============================================================================
# Run Records
# ============================================================================

class RunManifest(BaseModel):
    """Everything needed to reproduce a run's data files."""

    format_version: str
    scenario: str
    config: ScenarioConfig
    master_seed: int
    artifact_version: str
    workers: int
    duration_seconds: float
    outputs: Dict[str, str] = Field(default_factory=dict)
    created_at: datetime = Field(default_factory=datetime.utcnow)
