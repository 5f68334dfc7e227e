"""
CLI and Data File Tests
=======================
Tests for the command-line surface, scenario loading and result files.
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from core.config import settings
from core.exceptions import FormatVersionError, MalformedTableError, ScenarioConfigError
from core.models import DisorderVariant, InitialCondition
from analysis import Distribution
from data.loaders import (
    build_config,
    load_manifest,
    load_scenario_file,
    preset_config,
    read_distribution_table,
    resolve_initial,
)
from data.writers import write_distribution_table
from main import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, main


# ============================================================================
# Fixtures
# ============================================================================

@pytest.fixture(autouse=True)
def no_log_files(monkeypatch):
    """Keep test runs from writing log files."""
    monkeypatch.setattr(settings, "log_dir", "")


@pytest.fixture
def scenario_file(tmp_path):
    """Small static-disorder scenario in YAML."""
    path = tmp_path / "scenario.yaml"
    path.write_text(
        "name: small_static\n"
        "disorder:\n"
        "  variant: static\n"
        "  phi_max: 1.14pi\n"
        "  seed: 3\n"
        "initial: horizontal\n"
        "n_steps: 5\n"
        "n_realizations: 30\n"
    )
    return path


def _run(tmp_path: Path, *args: str) -> int:
    return main(["run", *args, "--output-dir", str(tmp_path), "--workers", "1"])


def _table(tmp_path: Path, header: str, rows: str) -> Path:
    path = tmp_path / "table.csv"
    path.write_text(header + "step,x,p_total,p_H,p_V\n" + rows)
    return path


# ============================================================================
# Scenario Loading
# ============================================================================

class TestPresets:
    """Test preset resolution."""

    def test_static_preset(self):
        """Test the static preset carries the localization parameters."""
        config = preset_config("static")
        assert config.disorder.variant == DisorderVariant.STATIC
        assert config.disorder.phi_max == pytest.approx(1.14 * math.pi)
        assert config.disorder.phase_ratio == 3.5
        assert config.n_steps == 11
        assert config.n_realizations == settings.ensemble.default_realizations
        assert config.initial.occupations == (1.0, 0.0)

    def test_slow_preset_grid(self):
        """Test the slow preset gets the inclusive six-point grid."""
        config = preset_config("slow")
        grid = config.disorder.theta_grid
        assert len(grid) == 6
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(math.pi / 4)
        assert config.n_realizations == 6

    def test_overrides(self):
        config = preset_config("dynamic", {"n_steps": 4, "disorder": {"seed": 9, "phase_ratio": math.inf}})
        assert config.n_steps == 4
        assert config.disorder.seed == 9
        assert math.isinf(config.disorder.phase_ratio)
        assert config.disorder.phi_max == pytest.approx(math.pi)

    def test_unknown_preset(self):
        with pytest.raises(ScenarioConfigError):
            preset_config("turbulent")

    def test_named_inputs(self):
        """Test named coin inputs and their x0 override."""
        assert resolve_initial("symmetric") == InitialCondition.symmetric().model_dump()
        shifted = resolve_initial({"input": "vertical", "x0": 3})
        assert shifted["x0"] == 3
        with pytest.raises(ScenarioConfigError):
            resolve_initial("diagonal")


class TestScenarioFiles:
    """Test YAML and JSON scenario files."""

    def test_yaml_file(self, scenario_file):
        config = load_scenario_file(scenario_file)
        assert config.name == "small_static"
        assert config.n_realizations == 30
        assert config.disorder.seed == 3

    def test_validation_error_has_line(self, tmp_path):
        """Test a bad value reports its dotted field and line."""
        path = tmp_path / "bad.yaml"
        path.write_text("name: bad\ndisorder:\n  variant: static\nn_steps: -1\n")
        with pytest.raises(ScenarioConfigError) as excinfo:
            load_scenario_file(path)
        assert excinfo.value.details["field"] == "n_steps"
        assert excinfo.value.details["line"] == 4

    def test_yaml_syntax_error_has_line(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("name: broken\ndisorder:\n  variant: [static\nn_steps: 3\n")
        with pytest.raises(ScenarioConfigError) as excinfo:
            load_scenario_file(path)
        assert excinfo.value.details["line"] is not None

    def test_json_file(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"disorder": {"variant": "homogeneous"}, "n_steps": 3}))
        config = load_scenario_file(path)
        assert config.n_realizations == 1
        assert config.variance_mode.value == settings.ensemble.variance_mode

    def test_homogeneous_rejects_disorder(self):
        with pytest.raises(ScenarioConfigError) as excinfo:
            build_config({"disorder": {"variant": "homogeneous", "phi_max": "pi"}, "n_steps": 3})
        assert excinfo.value.details["field"] == "disorder"


# ============================================================================
# Result Files
# ============================================================================

class TestDistributionTables:
    """Test reading and writing distribution tables."""

    def test_lossless(self, tmp_path):
        """Test written floats are recovered exactly."""
        dist = Distribution(
            support=[-1, 1], p_h=[1 / 3, 0.0], p_v=[math.pi / 10, 1 - 1 / 3 - math.pi / 10], step=1
        )
        path = write_distribution_table([dist], tmp_path / "d.csv")
        assert Path(path).read_text().startswith("# disorderwalk-distribution 1.0\n")

        table = read_distribution_table(path)
        assert list(table) == [1]
        assert np.array_equal(table[1].p_h, dist.p_h)
        assert np.array_equal(table[1].p_v, dist.p_v)

    def test_missing_header_line(self, tmp_path):
        with pytest.raises(MalformedTableError):
            read_distribution_table(_table(tmp_path, "", "0,0,1,1,0\n"))

    def test_future_major(self, tmp_path):
        path = _table(tmp_path, "# disorderwalk-distribution 2.0\n", "0,0,1,1,0\n")
        with pytest.raises(FormatVersionError):
            read_distribution_table(path)

    def test_inconsistent_total(self, tmp_path):
        path = _table(tmp_path, "# disorderwalk-distribution 1.0\n", "0,0,0.9,1,0\n")
        with pytest.raises(MalformedTableError):
            read_distribution_table(path)

    def test_non_numeric(self, tmp_path):
        path = _table(tmp_path, "# disorderwalk-distribution 1.0\n", "0,zero,1,1,0\n")
        with pytest.raises(MalformedTableError):
            read_distribution_table(path)


# ============================================================================
# Commands
# ============================================================================

class TestRunCommand:
    """Test `run`."""

    def test_homogeneous(self, tmp_path):
        """Test a preset run writes its tables, summary and manifest."""
        assert _run(tmp_path, "homogeneous", "--steps", "6") == EXIT_OK
        for suffix in ("distribution.csv", "variance.csv", "summary.json", "manifest.json"):
            assert (tmp_path / f"homogeneous_{suffix}").exists()

        table = read_distribution_table(tmp_path / "homogeneous_distribution.csv")
        assert sorted(table) == list(range(7))
        summary = json.loads((tmp_path / "homogeneous_summary.json").read_text())
        assert summary["format_version"] == "1.0"
        assert summary["n_realizations"] == 1
        assert "classical_reference" in summary

    def test_manifest_reproduces_bytes(self, tmp_path, scenario_file):
        """Test re-running from a manifest writes byte-identical data files."""
        first, second = tmp_path / "first", tmp_path / "second"
        assert _run(first, "custom", "--config", str(scenario_file)) == EXIT_OK
        manifest = first / "small_static_manifest.json"
        assert load_manifest(manifest).master_seed == 3

        assert _run(second, "custom", "--from-manifest", str(manifest)) == EXIT_OK
        for suffix in ("distribution.csv", "variance.csv", "summary.json"):
            name = f"small_static_{suffix}"
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_bad_config_exit_code(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("disorder:\n  variant: static\n  phi_max: 9pi\nn_steps: 3\n")
        assert _run(tmp_path, "custom", "--config", str(path)) == EXIT_CONFIG

    def test_custom_needs_file(self, tmp_path):
        assert _run(tmp_path, "custom") == EXIT_CONFIG

    def test_overflow_exit_code(self, tmp_path):
        """Test an undersized lattice fails at run time."""
        code = _run(tmp_path, "static", "--steps", "5", "--half-width", "2", "--realizations", "10")
        assert code == EXIT_RUNTIME

    def test_write_failure_exit_code(self, tmp_path, monkeypatch):
        """Test an unwritable output surfaces as a run-time failure."""
        def refuse(*args, **kwargs):
            raise OSError("read-only file system")

        monkeypatch.setattr("data.writers.write_distribution_table", refuse)
        assert _run(tmp_path, "homogeneous", "--steps", "2") == EXIT_RUNTIME

    def test_future_manifest(self, tmp_path, scenario_file):
        assert _run(tmp_path, "custom", "--config", str(scenario_file)) == EXIT_OK
        manifest = tmp_path / "small_static_manifest.json"
        document = json.loads(manifest.read_text())
        document["format_version"] = "2.0"
        manifest.write_text(json.dumps(document))
        assert _run(tmp_path / "again", "custom", "--from-manifest", str(manifest)) == EXIT_CONFIG


class TestCompareCommand:
    """Test `compare`."""

    def test_identical_files(self, tmp_path, capsys):
        assert _run(tmp_path, "homogeneous", "--steps", "4") == EXIT_OK
        table = str(tmp_path / "homogeneous_distribution.csv")
        assert main(["compare", table, table]) == EXIT_OK
        assert "TV distance: 0.000000" in capsys.readouterr().out

    def test_parity_warning(self, tmp_path, capsys):
        """Test steps of different parity are compared with a warning."""
        assert _run(tmp_path, "homogeneous", "--steps", "4") == EXIT_OK
        table = str(tmp_path / "homogeneous_distribution.csv")
        assert main(["compare", table, table, "--step", "3"]) == EXIT_OK
        capsys.readouterr()

        odd = tmp_path / "odd.csv"
        write_distribution_table([read_distribution_table(table)[3]], odd)
        assert main(["compare", table, str(odd)]) == EXIT_OK
        assert "Parity mismatch" in capsys.readouterr().err

    def test_malformed_table(self, tmp_path):
        path = _table(tmp_path, "# disorderwalk-distribution 1.0\n", "0,0,not-a-number,1,0\n")
        assert main(["compare", str(path), str(path)]) == EXIT_CONFIG

    def test_missing_step(self, tmp_path):
        assert _run(tmp_path, "homogeneous", "--steps", "2") == EXIT_OK
        table = str(tmp_path / "homogeneous_distribution.csv")
        assert main(["compare", table, table, "--step", "9"]) == EXIT_CONFIG


class TestSweepAndTrends:
    """Test `sweep` and `trends`."""

    def test_sweep(self, tmp_path):
        code = main([
            "sweep", "--steps", "4", "--realizations", "20", "--workers", "1",
            "--phi-max-list", "0", "pi", "--output-dir", str(tmp_path),
        ])
        assert code == EXIT_OK
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "# disorderwalk-sweep 1.0"
        assert lines[1] == "variant,phi_max,n_steps,variance,stderr,classical_variance"
        assert len(lines) == 2 + 4

    def test_trends(self, tmp_path):
        code = main([
            "trends", "--steps", "8", "--realizations", "20", "--workers", "1", "--output-dir", str(tmp_path),
        ])
        assert code == EXIT_OK
        lines = (tmp_path / "trends.csv").read_text().splitlines()
        assert lines[0] == "# disorderwalk-trends 1.0"
        assert len(lines) == 2 + 4 * 9
        summary = json.loads((tmp_path / "trends_summary.json").read_text())
        assert set(summary["scaling_exponents"]) == {"homogeneous", "static", "dynamic", "slow"}
