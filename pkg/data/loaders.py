"""
Data Loaders
============
Scenario presets, scenario files, result tables and run manifests.
"""

import copy
import json
import re
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import pandas as pd
import yaml
from loguru import logger
from pydantic import ValidationError

from core.config import settings
from core.exceptions import (
    FormatVersionError,
    InvalidArgumentError,
    MalformedTableError,
    ScenarioConfigError,
)
from core.models import DisorderVariant, InitialCondition, RunManifest, ScenarioConfig
from disorder.fields import default_theta_grid
from analysis.observables import Distribution, TABLE_COLUMNS
from .writers import DISTRIBUTION_KIND, FORMAT_TAG

PathLike = Union[str, Path]

_HEADER_PATTERN = re.compile(rf"^#\s*{FORMAT_TAG}-(?P<kind>[a-z]+)\s+(?P<major>\d+)\.(?P<minor>\d+)\s*$")

_NAMED_INPUTS = {
    "horizontal": InitialCondition.horizontal,
    "symmetric": InitialCondition.symmetric,
    "vertical": lambda x0=0: InitialCondition(x0=x0, c_h=0.0, c_v=1.0),
}


def get_data_dir() -> Path:
    """Get the data directory path."""
    return Path(__file__).parent


# ============================================================================
# Presets
# ============================================================================

def load_presets() -> Dict[str, Dict[str, Any]]:
    """Load the scenario preset catalogue."""
    presets_path = get_data_dir() / "presets" / "scenarios.json"

    if not presets_path.exists():
        logger.warning(f"Preset catalogue not found: {presets_path}")
        return _get_default_presets()

    try:
        with open(presets_path) as f:
            data = json.load(f)
        return data.get("presets", {})
    except Exception as e:
        logger.error(f"Failed to load presets: {e}")
        return _get_default_presets()


def _get_default_presets() -> Dict[str, Dict[str, Any]]:
    """Return the built-in presets if the catalogue is not available."""
    return {
        "homogeneous": {
            "name": "homogeneous",
            "disorder": {"variant": "homogeneous", "theta": "pi/8"},
            "initial": "symmetric",
            "n_steps": 28,
        },
        "static": {
            "name": "static",
            "disorder": {"variant": "static", "phi_max": "1.14pi", "theta": "pi/8"},
            "initial": "horizontal",
            "n_steps": 11,
        },
        "dynamic": {
            "name": "dynamic",
            "disorder": {"variant": "dynamic", "phi_max": "pi", "theta": "pi/8"},
            "initial": "horizontal",
            "n_steps": 11,
        },
        "slow": {
            "name": "slow",
            "disorder": {"variant": "slow"},
            "initial": "symmetric",
            "n_steps": 10,
        },
    }


def preset_config(name: str, overrides: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
    """Resolved config for one of the named presets, with optional overrides."""
    presets = load_presets()
    if name not in presets:
        raise ScenarioConfigError("scenario", f"unknown preset '{name}' (known: {', '.join(sorted(presets))})")
    return build_config(presets[name], overrides)


# ============================================================================
# Scenario Configs
# ============================================================================

def resolve_initial(value: Any) -> Any:
    """Map a named coin input (``horizontal``, ``vertical``, ``symmetric``) to its fields."""
    if value is None:
        return InitialCondition.horizontal().model_dump()
    if isinstance(value, InitialCondition):
        return value.model_dump()
    if isinstance(value, str):
        factory = _NAMED_INPUTS.get(value.lower())
        if factory is None:
            raise ScenarioConfigError("initial", f"unknown coin input '{value}' (known: {', '.join(_NAMED_INPUTS)})")
        return factory().model_dump()
    if isinstance(value, dict) and "input" in value:
        named = dict(resolve_initial(value["input"]))
        named.update({key: item for key, item in value.items() if key != "input"})
        return named
    return value


def _variant_name(value: Any) -> str:
    return str(getattr(value, "value", value))


def build_config(
    raw: Dict[str, Any],
    overrides: Optional[Dict[str, Any]] = None,
    source_node: Optional[yaml.Node] = None,
) -> ScenarioConfig:
    """
    Normalize a raw scenario mapping and validate it.

    Fills the defaults that depend on the regime (slow theta grid, ensemble
    size for random lattices, phase ratio) from settings. Validation failures
    become ``ScenarioConfigError`` carrying the dotted field path and, when
    the mapping came from a file, its line.
    """
    data = copy.deepcopy(raw)
    data.pop("description", None)
    for key, value in (overrides or {}).items():
        if key == "disorder":
            data.setdefault("disorder", {}).update(value)
        else:
            data[key] = value

    data["initial"] = resolve_initial(data.get("initial"))
    disorder = data.get("disorder")
    if isinstance(disorder, dict):
        variant = _variant_name(disorder.get("variant"))
        if variant == DisorderVariant.SLOW.value and not disorder.get("theta_grid"):
            disorder["theta_grid"] = default_theta_grid()
        if variant in (DisorderVariant.STATIC.value, DisorderVariant.DYNAMIC.value):
            disorder.setdefault("phase_ratio", settings.disorder.phase_ratio)
            data.setdefault("n_realizations", settings.ensemble.default_realizations)
    data.setdefault("variance_mode", settings.ensemble.variance_mode)

    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        raise _config_error(e, source_node)


def _config_error(error: ValidationError, source_node: Optional[yaml.Node]) -> ScenarioConfigError:
    first = error.errors()[0]
    loc = tuple(str(part) for part in first["loc"])
    field = ".".join(loc) or "<root>"
    return ScenarioConfigError(field, first["msg"], _node_line(source_node, loc))


def _node_line(node: Optional[yaml.Node], loc: Tuple[str, ...]) -> Optional[int]:
    """1-based line of the deepest mapping key along ``loc``."""
    if node is None:
        return None
    line = None
    for part in loc:
        if not isinstance(node, yaml.MappingNode):
            break
        for key_node, value_node in node.value:
            if key_node.value == part:
                line = key_node.start_mark.line + 1
                node = value_node
                break
        else:
            break
    return line


def load_scenario_file(path: PathLike, overrides: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
    """Load a YAML or JSON scenario file."""
    path = Path(path)
    if not path.exists():
        raise ScenarioConfigError(str(path), "file not found")

    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() == ".json":
            raw = json.loads(text)
        else:
            raw = yaml.safe_load(text)
    except json.JSONDecodeError as e:
        raise ScenarioConfigError(path.name, e.msg, e.lineno)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or str(e)
        raise ScenarioConfigError(path.name, problem, mark.line + 1 if mark else None)

    if not isinstance(raw, dict):
        raise ScenarioConfigError(path.name, "top level must be a mapping")

    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        root = None

    logger.debug(f"Loaded scenario file {path}")
    return build_config(raw, overrides, source_node=root)


# ============================================================================
# Result Files
# ============================================================================

def check_format_header(path: PathLike, line: str, kind: str) -> None:
    """Validate a ``# disorderwalk-<kind> <major>.<minor>`` line."""
    match = _HEADER_PATTERN.match(line.strip())
    if not match:
        raise MalformedTableError(str(path), "missing format version line")
    if match.group("kind") != kind:
        raise MalformedTableError(str(path), f"expected a {kind} file, found {match.group('kind')}")
    _check_major(path, f"{match.group('major')}.{match.group('minor')}")


def _check_major(path: PathLike, found: str) -> None:
    supported = settings.output.format_version
    if str(found).split(".")[0] != supported.split(".")[0]:
        raise FormatVersionError(str(path), str(found), supported)


def read_distribution_table(path: PathLike) -> Dict[int, Distribution]:
    """Parse a distribution table into one ``Distribution`` per recorded step."""
    path = Path(path)
    if not path.exists():
        raise MalformedTableError(str(path), "file not found")

    try:
        with open(path, encoding="utf-8") as handle:
            check_format_header(path, handle.readline(), DISTRIBUTION_KIND)
            frame = pd.read_csv(handle, float_precision="round_trip")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise MalformedTableError(str(path), str(e))

    if list(frame.columns) != TABLE_COLUMNS:
        raise MalformedTableError(str(path), f"expected header {','.join(TABLE_COLUMNS)}, got {','.join(map(str, frame.columns))}")
    if frame.empty or frame.isnull().values.any():
        raise MalformedTableError(str(path), "table is empty or has missing values")

    try:
        distributions = {
            int(step): Distribution.from_frame(group)
            for step, group in frame.groupby("step", sort=True)
        }
        inconsistent = float((frame["p_total"] - frame["p_H"] - frame["p_V"]).abs().max())
    except (ValueError, TypeError, InvalidArgumentError) as e:
        raise MalformedTableError(str(path), str(e))

    if inconsistent > 1e-12:
        raise MalformedTableError(str(path), f"p_total differs from p_H + p_V by {inconsistent:.3g}")

    logger.debug(f"Read {len(distributions)} steps from {path}")
    return distributions


def load_manifest(path: PathLike) -> RunManifest:
    """Load and validate a run manifest."""
    path = Path(path)
    if not path.exists():
        raise ScenarioConfigError(str(path), "manifest not found")
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise MalformedTableError(str(path), f"{e.msg} (line {e.lineno})")

    if not isinstance(data, dict):
        raise MalformedTableError(str(path), "manifest must be a JSON object")
    _check_major(path, data.get("format_version", "0.0"))

    try:
        return RunManifest.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ScenarioConfigError(f"manifest.{field}", first["msg"])
