"""
DisorderWalk Configuration
==========================
Centralized configuration management using Pydantic settings.
"""

import math
import os
from typing import Optional
from pydantic_settings import BaseSettings
from pydantic import Field
from functools import lru_cache


class WalkSettings(BaseSettings):
    """Quantum-core numerical tolerances."""

    norm_tolerance: float = Field(default=1e-10, description="Allowed cumulative norm drift")
    unitarity_tolerance: float = Field(default=1e-12, description="Per-operation unitarity tolerance")
    default_theta: float = Field(default=math.pi / 8, description="Hadamard coin angle")

    class Config:
        env_prefix = "WALK_"
        extra = "ignore"


class DisorderSettings(BaseSettings):
    """Disorder generation defaults."""

    # Hardware-motivated coupling phi_V / phi_H
    phase_ratio: float = Field(default=3.5, description="Default phi_V / phi_H ratio")

    # Slow-drift coin grid
    slow_grid_lo: float = Field(default=0.0)
    slow_grid_hi: float = Field(default=math.pi / 4)
    slow_grid_count: int = Field(default=6, description="Inclusive grid size over [lo, hi]")

    class Config:
        env_prefix = "DISORDER_"
        extra = "ignore"


class EnsembleSettings(BaseSettings):
    """Monte Carlo execution configuration."""

    workers: Optional[int] = Field(default=None, description="Worker processes (None: machine parallelism)")
    chunk_size: int = Field(default=250, description="Realizations per work item")
    default_realizations: int = Field(default=10_000, description="Static/dynamic preset ensemble size")
    variance_mode: str = Field(default="mean_distribution", description="mean_distribution or per_realization")

    class Config:
        env_prefix = "ENSEMBLE_"
        extra = "ignore"

    def resolved_workers(self) -> int:
        """Worker count with the machine default applied."""
        if self.workers is not None and self.workers > 0:
            return self.workers
        return os.cpu_count() or 1


class AnalysisSettings(BaseSettings):
    """Fitting thresholds."""

    fit_floor: float = Field(default=1e-6, description="Probabilities below this are excluded from semilog fits")
    min_fit_points: int = Field(default=3)
    exclude_front: bool = Field(default=True, description="Leave the light-cone sites |x - x0| = n out of tail fits")
    min_scaling_points: int = Field(default=4)

    class Config:
        env_prefix = "ANALYSIS_"
        extra = "ignore"


class OutputSettings(BaseSettings):
    """Result file configuration."""

    output_dir: str = Field(default="./results", description="Directory for run outputs")
    float_format: str = Field(default="%.17g", description="Lossless float format for CSV tables")
    format_version: str = Field(default="1.0", description="Declared format version of every output file")

    class Config:
        env_prefix = "OUTPUT_"
        extra = "ignore"


class Settings(BaseSettings):
    """Main application settings."""

    # Application
    app_name: str = "DisorderWalk"
    app_version: str = "0.3.0"
    debug: bool = Field(default=False, alias="DEBUG")
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    log_dir: str = Field(default="logs", alias="LOG_DIR")

    # Sub-settings
    walk: WalkSettings = Field(default_factory=WalkSettings)
    disorder: DisorderSettings = Field(default_factory=DisorderSettings)
    ensemble: EnsembleSettings = Field(default_factory=EnsembleSettings)
    analysis: AnalysisSettings = Field(default_factory=AnalysisSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Convenience accessor
settings = get_settings()
