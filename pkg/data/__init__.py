"""
DisorderWalk Data Package
=========================
Scenario presets, config and result-file loaders, and versioned writers.
"""

from .loaders import (
    get_data_dir,
    load_presets,
    preset_config,
    build_config,
    resolve_initial,
    load_scenario_file,
    read_distribution_table,
    load_manifest,
)
from .writers import (
    write_distribution_table,
    write_trends_table,
    write_sweep_table,
    write_summary,
    write_manifest,
    write_json,
)

__all__ = [
    "get_data_dir",
    "load_presets",
    "preset_config",
    "build_config",
    "resolve_initial",
    "load_scenario_file",
    "read_distribution_table",
    "load_manifest",
    "write_distribution_table",
    "write_trends_table",
    "write_sweep_table",
    "write_summary",
    "write_manifest",
    "write_json",
]
