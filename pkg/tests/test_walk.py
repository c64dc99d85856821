"""Walk generation: stream discipline, scaling, and ensemble determinism."""

import math

import numpy as np
import pytest

from rpswalk import (
    LengthKind,
    RngStream,
    WalkConfig,
    WalkPath,
    generate_ensemble,
    generate_walk,
    mixture_step_variance,
    predicted_component_variance,
    scaled_walk,
    step_variance,
)
from rpswalk.rvg import direction_table
from rpswalk.walk import generate_lengths


class TestWalkConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            WalkConfig(steps=0, max_length=6)
        with pytest.raises(ValueError):
            WalkConfig(steps=10, max_length=1)
        with pytest.raises(ValueError):
            WalkConfig(steps=10, max_length=6, rho=0.0)

    def test_default_variance_control_factor(self):
        from rpswalk import DEFAULT_RHO

        assert DEFAULT_RHO == 24.0
        assert WalkConfig(steps=1, max_length=6).rho == 24.0

    def test_length_distribution_dispatch(self):
        rps = WalkConfig(steps=1, max_length=6).length_distribution()
        per = WalkConfig(
            steps=1, max_length=6, dist_kind=LengthKind.PER
        ).length_distribution()
        assert rps.kind is LengthKind.RPS
        assert per.kind is LengthKind.PER
        assert rps.probability(6) > per.probability(6)


class TestWalkPathValidation:
    def test_must_start_at_origin(self):
        with pytest.raises(ValueError, match="origin"):
            WalkPath(
                times=np.arange(3.0),
                positions=np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]),
                step_lengths=np.array([2, 2]),
            )

    def test_shape_consistency(self):
        with pytest.raises(ValueError):
            WalkPath(
                times=np.arange(3.0),
                positions=np.zeros((2, 2)),
                step_lengths=np.array([2, 2]),
            )


class TestGenerateLengths:
    def test_rejects_nonpositive_count(self):
        dist = WalkConfig(steps=1, max_length=6).length_distribution()
        with pytest.raises(ValueError):
            generate_lengths(dist, 0, RngStream(seed=0))

    def test_deterministic(self):
        dist = WalkConfig(steps=1, max_length=6).length_distribution()
        a = generate_lengths(dist, 100, RngStream(seed=4))
        b = generate_lengths(dist, 100, RngStream(seed=4))
        assert np.array_equal(a, b)

    def test_two_length_frame_support(self):
        dist = WalkConfig(steps=1, max_length=2).length_distribution()
        draws = generate_lengths(dist, 500, RngStream(seed=1))
        assert set(np.unique(draws).tolist()) <= {1, 2}

    def test_large_sample_frequency(self):
        dist = WalkConfig(steps=1, max_length=10).length_distribution()
        draws = generate_lengths(dist, 100_000, RngStream(seed=13))
        assert abs(float(np.mean(draws == 10)) - 0.90433) <= 0.006


class TestGenerateWalk:
    def test_shapes_and_grids(self):
        config = WalkConfig(steps=50, max_length=6, seed=2)
        path = generate_walk(config, RngStream(config.seed))
        assert path.positions.shape == (51, 2)
        assert path.times.shape == (51,)
        assert np.array_equal(path.times, np.arange(51, dtype=float))
        assert path.positions[0].tolist() == [0.0, 0.0]
        assert path.step_lengths.min() >= 1 and path.step_lengths.max() <= 6

    def test_scaled_time_grid(self):
        config = WalkConfig(steps=40, max_length=6, seed=2, scaled=True)
        path = generate_walk(config, RngStream(config.seed))
        assert np.array_equal(path.times, np.arange(41) / 40)
        assert path.times[-1] == 1.0

    def test_single_step_walk(self):
        path = generate_walk(WalkConfig(steps=1, max_length=2), RngStream(seed=0))
        assert path.positions.shape == (2, 2)

    def test_increments_reconstruct_from_the_stream(self):
        # The walk consumes its stream as: all lengths first, then one
        # permutation per step.  Replaying that protocol by hand must
        # reproduce every increment, including the scaling factor.
        config = WalkConfig(steps=30, max_length=6, seed=9, rho=3.0, scaled=True)
        path = generate_walk(config, RngStream(config.seed))

        replay = RngStream(config.seed)
        dist = config.length_distribution()
        lengths = generate_lengths(dist, config.steps, replay)
        assert np.array_equal(lengths, path.step_lengths)
        factor = math.sqrt(config.rho) / (
            config.max_length * math.sqrt(config.max_length) * math.sqrt(config.steps)
        )
        diffs = np.diff(path.positions, axis=0)
        for i, n in enumerate(lengths):
            expected = factor * (
                replay.permutation(int(n)).astype(float) @ direction_table(int(n))
            )
            assert np.all(np.abs(diffs[i] - expected) <= 1e-12)

    def test_two_length_frame_stays_on_the_axis(self):
        config = WalkConfig(steps=200, max_length=2, seed=6)
        path = generate_walk(config, RngStream(config.seed))
        assert float(np.abs(path.positions[:, 1]).max()) <= 1e-12

    def test_output_arrays_are_frozen(self):
        path = generate_walk(WalkConfig(steps=5, max_length=6), RngStream(seed=0))
        with pytest.raises(ValueError):
            path.positions[0, 0] = 5.0


class TestScaledWalk:
    def test_requires_scaled_config(self):
        with pytest.raises(ValueError, match="scaled"):
            scaled_walk(WalkConfig(steps=10, max_length=6), RngStream(seed=0))

    def test_matches_generate_walk_on_equal_stream(self):
        config = WalkConfig(steps=20, max_length=6, seed=3, scaled=True)
        a = scaled_walk(config, RngStream(config.seed))
        b = generate_walk(config, RngStream(config.seed))
        assert np.array_equal(a.positions, b.positions)


class TestGenerateEnsemble:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            generate_ensemble(WalkConfig(steps=5, max_length=6), 0)

    def test_single_path_uses_stream_zero(self):
        config = WalkConfig(steps=25, max_length=6, seed=8)
        only = generate_ensemble(config, 1)[0]
        direct = generate_walk(config, RngStream(config.seed, 0))
        assert np.array_equal(only.positions, direct.positions)

    def test_paths_do_not_depend_on_ensemble_size(self):
        config = WalkConfig(steps=25, max_length=6, seed=8)
        small = generate_ensemble(config, 3)
        large = generate_ensemble(config, 5)
        for j in range(3):
            assert np.array_equal(small[j].positions, large[j].positions)

    def test_master_seed_overrides_config_seed(self):
        config = WalkConfig(steps=25, max_length=6, seed=8)
        override = generate_ensemble(config, 2, master_seed=99)
        fresh = generate_ensemble(
            WalkConfig(steps=25, max_length=6, seed=99), 2
        )
        assert np.array_equal(override[0].positions, fresh[0].positions)
        assert not np.array_equal(
            override[0].positions, generate_ensemble(config, 1)[0].positions
        )


class TestVariancePrediction:
    def test_mixture_variance_known_values(self):
        assert mixture_step_variance(10) == pytest.approx(44.62446729672696, rel=1e-12)
        assert mixture_step_variance(30) == pytest.approx(1158.791616942752, rel=1e-12)

    def test_mixture_is_a_convex_combination(self):
        v = mixture_step_variance(10)
        assert step_variance(1) < v < step_variance(10)

    def test_predicted_endpoint_variance(self):
        assert predicted_component_variance(30) == pytest.approx(
            1.0300369928380018, rel=1e-12
        )
        assert predicted_component_variance(30, 1.0) == pytest.approx(
            1.0300369928380018 / 24.0, rel=1e-12
        )

    def test_prediction_validation(self):
        with pytest.raises(ValueError):
            predicted_component_variance(1)
        with pytest.raises(ValueError):
            predicted_component_variance(30, 0.0)

    def test_unscaled_variance_grows_at_the_mixture_rate(self):
        from rpswalk.stats import moment_series, variance_linearity

        ensemble = generate_ensemble(WalkConfig(steps=100, max_length=10, seed=3), 400)
        fit = variance_linearity(moment_series(ensemble))
        v = mixture_step_variance(10)
        assert 0.85 * v <= fit.slope_x <= 1.15 * v
        assert 0.85 * v <= fit.slope_y <= 1.15 * v
        assert min(fit.r2_x, fit.r2_y) >= 0.97
