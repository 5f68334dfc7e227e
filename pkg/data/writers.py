"""
Result Writers
==============
Versioned CSV tables and JSON documents for run outputs.

Every CSV starts with a ``# disorderwalk-<kind> <version>`` line followed by a
header row; numerics use ``settings.output.float_format`` so re-reading a table
recovers the written floats exactly.
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

import pandas as pd
from loguru import logger

from core.config import settings
from core.models import RunManifest, SweepPoint
from analysis.observables import Distribution, TABLE_COLUMNS

FORMAT_TAG = "disorderwalk"
DISTRIBUTION_KIND = "distribution"
TRENDS_KIND = "trends"
SWEEP_KIND = "sweep"

TRENDS_COLUMNS = ["scenario", "step", "variance", "stderr"]
SWEEP_COLUMNS = ["variant", "phi_max", "n_steps", "variance", "stderr", "classical_variance"]

PathLike = Union[str, Path]


def format_header(kind: str) -> str:
    return f"# {FORMAT_TAG}-{kind} {settings.output.format_version}\n"


def _write_table(frame: pd.DataFrame, path: PathLike, kind: str) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(format_header(kind))
        frame.to_csv(handle, index=False, float_format=settings.output.float_format, lineterminator="\n")
    logger.info(f"Saved {kind} table to {path}")
    return str(path)


def write_distribution_table(distributions: Iterable[Distribution], path: PathLike) -> str:
    """One block of rows per recorded step, columns step,x,p_total,p_H,p_V."""
    frames = [dist.to_frame() for dist in distributions]
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=TABLE_COLUMNS)
    return _write_table(frame[TABLE_COLUMNS], path, DISTRIBUTION_KIND)


def write_trends_table(rows: List[Dict[str, Any]], path: PathLike) -> str:
    frame = pd.DataFrame(rows, columns=TRENDS_COLUMNS)
    return _write_table(frame, path, TRENDS_KIND)


def write_sweep_table(points: List[SweepPoint], path: PathLike) -> str:
    rows = [
        {
            "variant": point.variant.value,
            "phi_max": point.phi_max,
            "n_steps": point.n_steps,
            "variance": point.variance,
            "stderr": point.stderr,
            "classical_variance": float(point.n_steps),
        }
        for point in points
    ]
    return _write_table(pd.DataFrame(rows, columns=SWEEP_COLUMNS), path, SWEEP_KIND)


def write_json(document: Dict[str, Any], path: PathLike) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(document, f, indent=2, default=str)
        f.write("\n")
    logger.info(f"Saved {path.name} to {path.parent}")
    return str(path)


def write_summary(report: Dict[str, Any], path: PathLike) -> str:
    document = {"format_version": settings.output.format_version, **report}
    return write_json(document, path)


def write_manifest(manifest: RunManifest, path: PathLike) -> str:
    # python-mode dump keeps inf phase ratios; json writes them as Infinity
    return write_json(manifest.model_dump(mode="python"), path)
