"""
Ensemble Engine Tests
=====================
Unit tests for compensated aggregation, the worker pool and ensemble runs.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from core.config import settings
from core.exceptions import InvalidArgumentError, LatticeOverflowError
from core.models import (
    DisorderSpec,
    DisorderVariant,
    InitialCondition,
    ScenarioConfig,
    VarianceMode,
)
from walk import evolve, hadamard_field, initial_state
from disorder import coin_field_for, sample_static_pattern
from analysis import distribution, variance
from ensemble import (
    CompensatedSum,
    WorkerPool,
    run_ensemble,
    run_slow_average,
    sweep_disorder,
    variance_trend,
)


# ============================================================================
# Fixtures
# ============================================================================

@pytest.fixture
def small_chunks(monkeypatch):
    """Split ensembles into many chunks so several workers get work."""
    monkeypatch.setattr(settings.ensemble, "chunk_size", 40)


@pytest.fixture
def static_config():
    """Strong static disorder, short walk."""
    return ScenarioConfig(
        name="static",
        disorder=DisorderSpec(variant="static", phi_max="1.14pi", seed=42),
        n_steps=6,
        n_realizations=200,
    )


@pytest.fixture
def homogeneous_config():
    """Symmetric Hadamard walk."""
    return ScenarioConfig(
        name="homogeneous",
        disorder=DisorderSpec(variant="homogeneous"),
        initial=InitialCondition.symmetric(),
        n_steps=28,
    )


def _square(value):
    return value * value


# ============================================================================
# Aggregation
# ============================================================================

class TestCompensatedSum:
    """Test Neumaier accumulation."""

    def test_cancellation(self):
        """Test small terms survive a large cancelling pair."""
        total = CompensatedSum((1,))
        for value in (1e16, 1.0, -1e16):
            total.add(np.array([value]))
        assert total.value()[0] == 1.0
        assert total.count == 3

    def test_merge_matches_single_pass(self):
        """Test merging partial sums agrees with one pass."""
        samples = np.random.default_rng(3).random((50, 4))
        single = CompensatedSum((4,))
        for sample in samples:
            single.add(sample)

        left, right = CompensatedSum((4,)), CompensatedSum((4,))
        for sample in samples[:20]:
            left.add(sample)
        for sample in samples[20:]:
            right.add(sample)
        left.merge(right)

        assert left.count == 50
        assert np.allclose(left.mean(), samples.mean(axis=0), rtol=0, atol=1e-15)
        assert np.allclose(left.value(), single.value(), rtol=0, atol=1e-14)

    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            CompensatedSum((2,)).add(np.zeros(3))

    def test_empty_mean(self):
        with pytest.raises(InvalidArgumentError):
            CompensatedSum((2,)).mean()


class TestWorkerPool:
    """Test ordered mapping."""

    def test_in_process(self):
        with WorkerPool(1) as pool:
            assert pool.map(_square, range(5)) == [0, 1, 4, 9, 16]

    def test_process_pool_keeps_order(self):
        with WorkerPool(2) as pool:
            assert pool.map(_square, range(20)) == [n * n for n in range(20)]


# ============================================================================
# Ensemble Runs
# ============================================================================

class TestRunEnsemble:
    """Test run_ensemble."""

    def test_homogeneous_is_single_walk(self, homogeneous_config):
        """Test the homogeneous summary is the coherent walk itself."""
        summary = run_ensemble(homogeneous_config, workers=1)
        coherent = evolve(initial_state(0, 1 / math.sqrt(2), 1j / math.sqrt(2), 28), 28, hadamard_field())

        assert summary.n_realizations == 1
        assert summary.steps == list(range(29))
        for mean, state in zip(summary.mean_distributions, coherent):
            assert np.allclose(mean.p_total, distribution(state).p_total, rtol=0, atol=1e-12)
        assert all(point.stderr == 0.0 for point in summary.variance_per_step)
        assert summary.final_variance().variance == pytest.approx(variance(distribution(coherent[-1])), abs=1e-10)

    def test_homogeneous_forces_one_realization(self):
        """Test extra realizations of a deterministic walk are dropped."""
        config = ScenarioConfig(disorder=DisorderSpec(variant="homogeneous"), n_steps=4, n_realizations=50)
        assert config.n_realizations == 1

    def test_zero_realizations_rejected(self):
        with pytest.raises(ValidationError):
            ScenarioConfig(disorder=DisorderSpec(variant="static"), n_steps=4, n_realizations=0)

    def test_normalized_means(self, static_config):
        """Test every mean distribution sums to one."""
        summary = run_ensemble(static_config, workers=1)
        for dist in summary.mean_distributions:
            assert abs(dist.total() - 1.0) < 1e-9

    def test_linearity(self, static_config):
        """Test the streamed mean equals the plain mean of per-realization walks."""
        config = static_config.model_copy(update={"n_realizations": 25})
        summary = run_ensemble(config, workers=1)

        half_width = config.lattice_half_width
        finals, member_variances = [], []
        for r in range(config.n_realizations):
            pattern = sample_static_pattern(config.disorder, r, half_width)
            field = coin_field_for(config.disorder, pattern)
            final = distribution(evolve(initial_state(0, 1, 0, half_width), config.n_steps, field)[-1])
            finals.append(final.p_total)
            member_variances.append(variance(final))

        expected = np.mean(finals, axis=0)
        assert np.max(np.abs(summary.final_distribution().p_total - expected)) < 1e-12
        assert np.allclose(summary.member_variances[:, -1], member_variances, rtol=0, atol=1e-10)

        stderr = np.std(member_variances, ddof=1) / math.sqrt(len(member_variances))
        assert summary.final_variance().stderr == pytest.approx(stderr, rel=1e-9)

    def test_worker_count_does_not_matter(self, static_config, small_chunks):
        """Test one and several workers give bit-identical summaries."""
        single = run_ensemble(static_config, workers=1)
        parallel = run_ensemble(static_config, workers=3)

        for a, b in zip(single.mean_distributions, parallel.mean_distributions):
            assert np.array_equal(a.p_h, b.p_h)
            assert np.array_equal(a.p_v, b.p_v)
        assert single.variance_per_step == parallel.variance_per_step
        assert np.array_equal(single.member_variances, parallel.member_variances)

    def test_variance_modes(self, static_config):
        """Test per-realization mode averages member variances."""
        mean_mode = run_ensemble(static_config, workers=1)
        per_member = run_ensemble(
            static_config.model_copy(update={"variance_mode": VarianceMode.PER_REALIZATION}), workers=1
        )
        expected = per_member.member_variances.mean(axis=0)
        assert np.allclose([p.variance for p in per_member.variance_per_step], expected)
        # the mean distribution is at least as wide as its members on average
        assert mean_mode.final_variance().variance >= per_member.final_variance().variance - 1e-12

    def test_final_step_only(self, static_config):
        """Test record_every_step = false keeps the last step only."""
        config = static_config.model_copy(update={"record_every_step": False})
        summary = run_ensemble(config, workers=1)
        assert summary.steps == [6]
        assert len(summary.mean_distributions) == 1
        with pytest.raises(InvalidArgumentError):
            variance_trend(config, workers=1)

    def test_overflow_propagates(self, small_chunks):
        """Test an undersized lattice surfaces as a lattice overflow."""
        config = ScenarioConfig(
            disorder=DisorderSpec(variant="dynamic", phi_max="pi"),
            n_steps=5,
            n_realizations=80,
            half_width=2,
        )
        with pytest.raises(LatticeOverflowError):
            run_ensemble(config, workers=1)
        with pytest.raises(LatticeOverflowError):
            run_ensemble(config, workers=2)

    def test_standard_error_shrinks(self):
        """Test doubling realizations shrinks the standard error by about 1/sqrt(2)."""
        ratios = []
        for seed in range(6):
            base = ScenarioConfig(
                disorder=DisorderSpec(variant="static", phi_max="pi", seed=seed),
                n_steps=6,
                n_realizations=300,
                record_every_step=False,
            )
            doubled = base.model_copy(update={"n_realizations": 600})
            small = run_ensemble(base, workers=1).final_variance().stderr
            large = run_ensemble(doubled, workers=1).final_variance().stderr
            ratios.append(large / small)
        assert 1 / math.sqrt(2) - 0.1 <= np.mean(ratios) <= 1 / math.sqrt(2) + 0.1


class TestSlowAverage:
    """Test averaging over coin angles."""

    def test_single_member_is_hadamard(self, homogeneous_config):
        """Test a one-point grid at pi/8 reproduces the Hadamard walk."""
        config = ScenarioConfig(
            name="slow",
            disorder=DisorderSpec(variant="slow", theta_grid=["pi/8"]),
            initial=InitialCondition.symmetric(),
            n_steps=28,
        )
        slow = run_slow_average(config, workers=1)
        coherent = run_ensemble(homogeneous_config, workers=1)
        assert slow.n_realizations == 1
        assert np.allclose(slow.final_distribution().p_total, coherent.final_distribution().p_total, atol=1e-15)

    def test_zero_angle_member_reaches_edges(self):
        """Test the theta = 0 member sends its share of mass to x = +-n."""
        grid = ["0", "pi/16", "pi/8", "3pi/16"]
        config = ScenarioConfig(
            disorder=DisorderSpec(variant="slow", theta_grid=grid),
            initial=InitialCondition.symmetric(),
            n_steps=8,
        )
        summary = run_ensemble(config, workers=1)
        final = summary.final_distribution()
        assert summary.n_realizations == 4
        assert final.value_at(8) + final.value_at(-8) >= 1 / len(grid) - 1e-9

    def test_variance_of_average(self):
        """Test the variance is taken on the averaged distribution."""
        config = ScenarioConfig(
            disorder=DisorderSpec(variant="slow", theta_grid=["0", "pi/4"]),
            initial=InitialCondition.symmetric(),
            n_steps=4,
        )
        summary = run_slow_average(config, workers=1)
        # half the mass at +-4 (theta = 0), half back at the origin (theta = pi/4)
        assert summary.final_distribution().value_at(0) == pytest.approx(0.5, abs=1e-12)
        assert summary.final_variance().variance == pytest.approx(8.0, abs=1e-12)
        assert list(summary.member_variances[:, -1]) == pytest.approx([16.0, 0.0], abs=1e-12)
        assert summary.final_variance().stderr == pytest.approx(8.0, abs=1e-12)

    def test_wrong_variant(self, static_config):
        with pytest.raises(InvalidArgumentError):
            run_slow_average(static_config, workers=1)


class TestTrendsAndSweeps:
    """Test variance trends and disorder sweeps."""

    def test_trend_matches_summary(self, homogeneous_config):
        trend = variance_trend(homogeneous_config, workers=1)
        assert [step for step, _ in trend] == list(range(29))
        assert trend[0] == (0, 0.0)
        assert trend[2][1] == pytest.approx(2.0, abs=1e-12)

    def test_sweep_zero_strength_is_homogeneous(self):
        """Test phi_max = 0 reproduces the clean walk with no spread across members."""
        base = ScenarioConfig(
            disorder=DisorderSpec(variant="static", seed=1),
            n_steps=6,
            n_realizations=30,
        )
        clean = ScenarioConfig(disorder=DisorderSpec(variant="homogeneous"), n_steps=6)
        points = sweep_disorder(base, [0.0, math.pi], workers=1)

        assert [(p.variant, p.phi_max) for p in points] == [
            (DisorderVariant.STATIC, 0.0),
            (DisorderVariant.STATIC, math.pi),
            (DisorderVariant.DYNAMIC, 0.0),
            (DisorderVariant.DYNAMIC, math.pi),
        ]
        reference = run_ensemble(clean, workers=1).final_variance().variance
        for point in points:
            if point.phi_max == 0.0:
                assert point.variance == pytest.approx(reference, abs=1e-12)
                assert point.stderr < 1e-12
            assert point.n_steps == 6

    def test_sweep_rejects_slow(self, static_config):
        with pytest.raises(InvalidArgumentError):
            sweep_disorder(static_config, [0.0], variants=[DisorderVariant.SLOW], workers=1)
