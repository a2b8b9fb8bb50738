"""Tests for factor, loading and idiosyncratic samplers."""

import numpy as np
import pytest

from weakfactor.config import IdiosyncraticSpec, LoadingSpec, SvFactorParams
from weakfactor.errors import ParameterError, ShapeError
from weakfactor.processes import (
    assemble_observations,
    generate_loadings,
    idiosyncratic_increments,
    simulate_sv_factors,
    simulate_sv_paths,
    toeplitz_correlation,
    toeplitz_mix,
    wiener_increments,
)
from weakfactor.random import make_stream
from weakfactor.spectra import realized_spectrum


class TestSvFactors:
    """Tests for the log-volatility OU factor model."""

    @pytest.fixture
    def many(self):
        """Many independent factors on one day; statistics across factors are tight."""
        return SvFactorParams(r=20_000)

    def test_shapes(self):
        path = simulate_sv_paths(SvFactorParams(), 26, 3, make_stream(1))
        assert path.increments.shape == (9, 26)
        assert path.log_vol_state.shape == (9, 26 * 3 + 1)
        assert path.initial_state.shape == (9,)

    def test_stationary_state(self, many):
        path = simulate_sv_paths(many, 26, 1, make_stream(2))
        variance = 1.0 / (2.0 * many.kappa)
        assert np.var(path.initial_state) == pytest.approx(variance, rel=0.05)
        assert np.var(path.log_vol_state[:, -1]) == pytest.approx(variance, rel=0.05)

    def test_unit_expected_quadratic_variation(self, many):
        """E[sigma_t^2] = exp(2a + 2 b^2 / (2 kappa)) = 1 for the default parameters."""
        increments = simulate_sv_factors(many, 78, 1, make_stream(3))
        realized = np.sum(increments**2, axis=1)
        assert np.mean(realized) == pytest.approx(1.0 + many.mu**2 / 78, abs=0.06)

    def test_drift(self, many):
        increments = simulate_sv_factors(many, 26, 1, make_stream(4))
        assert np.mean(increments.sum(axis=1)) == pytest.approx(many.mu, abs=0.05)

    def test_leverage(self, many):
        """Daily return and state change are negatively correlated when rho < 0."""
        path = simulate_sv_paths(many, 26, 1, make_stream(5))
        state_change = path.log_vol_state[:, -1] - path.initial_state
        corr = np.corrcoef(path.increments.sum(axis=1), state_change)[0, 1]
        assert corr < -0.1

    def test_refinement_preserves_scale(self, many):
        """A finer Euler grid from the same initial state leaves the mean realized variance."""
        coarse = simulate_sv_paths(many, 26, 1, make_stream(6))
        fine = simulate_sv_paths(
            many, 26, 8, make_stream(7), initial_state=coarse.initial_state
        )
        np.testing.assert_array_equal(fine.initial_state, coarse.initial_state)
        gap = np.mean(np.sum(fine.increments**2, axis=1)) - np.mean(
            np.sum(coarse.increments**2, axis=1)
        )
        assert abs(gap) < 0.03

    def test_initial_state_shape_checked(self):
        with pytest.raises(ShapeError):
            simulate_sv_paths(SvFactorParams(), 26, 1, make_stream(0), initial_state=np.zeros(3))

    def test_rejects_bad_grid(self):
        with pytest.raises(ParameterError):
            simulate_sv_paths(SvFactorParams(), 26, 0, make_stream(0))


class TestLoadings:
    """Tests for sparse loading matrices."""

    def test_column_supports(self):
        spec = LoadingSpec(d=500)
        beta = generate_loadings(spec, make_stream(8))
        assert beta.shape == (500, 9)
        assert np.count_nonzero(beta, axis=0).tolist() == spec.column_sizes()

    def test_supports_are_random(self):
        spec = LoadingSpec(d=500)
        a = generate_loadings(spec, make_stream(9))
        b = generate_loadings(spec, make_stream(10))
        assert not np.array_equal(a != 0, b != 0)

    def test_entry_distribution(self):
        spec = LoadingSpec(d=2000, exponents=(1.0,), entry_mean=1.0, entry_sd=1.0)
        beta = generate_loadings(spec, make_stream(11))
        assert np.mean(beta) == pytest.approx(1.0, abs=0.1)
        assert np.std(beta) == pytest.approx(1.0, abs=0.1)

    def test_oversized_column_rejected(self):
        spec = LoadingSpec(d=3, exponents=(1.5,))
        with pytest.raises(ParameterError):
            generate_loadings(spec, make_stream(0))


class TestIdiosyncratic:
    """Tests for the Toeplitz-correlated idiosyncratic process."""

    def test_toeplitz_correlation(self):
        np.testing.assert_allclose(
            toeplitz_correlation(3, 0.5),
            [[1.0, 0.5, 0.25], [0.5, 1.0, 0.5], [0.25, 0.5, 1.0]],
        )

    def test_mix_has_toeplitz_covariance(self):
        base = make_stream(12).standard_normal((4, 200_000))
        mixed = toeplitz_mix(base, 0.6)
        empirical = mixed @ mixed.T / base.shape[1]
        np.testing.assert_allclose(empirical, toeplitz_correlation(4, 0.6), atol=0.02)

    def test_mix_recursion(self):
        base = np.array([[1.0], [2.0], [-1.0]])
        phi = 0.5
        s = np.sqrt(1 - phi**2)
        expected = [1.0, phi * 1.0 + s * 2.0, phi * (phi + s * 2.0) - s]
        np.testing.assert_allclose(toeplitz_mix(base, phi)[:, 0], expected)

    def test_zero_phi_is_identity(self):
        base = make_stream(13).standard_normal((5, 7))
        mixed = toeplitz_mix(base, 0.0)
        np.testing.assert_array_equal(mixed, base)
        assert mixed is not base

    def test_rejects_phi_one(self):
        with pytest.raises(ParameterError):
            toeplitz_mix(np.ones((2, 2)), 1.0)

    def test_theta_scales_wiener_quadratic_variation(self):
        spec = IdiosyncraticSpec(kind="wiener", theta=2.0, phi=0.3)
        increments = idiosyncratic_increments(spec, 390, 300, make_stream(14))
        assert increments.shape == (300, 390)
        assert np.mean(np.sum(increments**2, axis=1)) == pytest.approx(2.0, rel=0.05)

    @pytest.mark.parametrize("kind, alpha", [("wiener", None), ("nts", 0.5)])
    def test_theta_is_a_pure_scale(self, kind, alpha):
        unit = IdiosyncraticSpec(kind=kind, alpha=alpha, theta=1.0, phi=0.3)
        scaled = unit.model_copy(update={"theta": 3.0})
        np.testing.assert_allclose(
            idiosyncratic_increments(scaled, 26, 40, make_stream(17)),
            np.sqrt(3.0) * idiosyncratic_increments(unit, 26, 40, make_stream(17)),
        )

    def test_independent_jumps_stay_off_the_common_direction(self):
        """With one NTS process per asset a single large V_i cannot load every asset at once."""
        spec = IdiosyncraticSpec(kind="nts", alpha=0.75, theta=1.0, phi=0.0)
        shared = spec.model_copy(update={"subordinator": "shared"})
        d, n = 400, 78
        independent_top = realized_spectrum(
            idiosyncratic_increments(spec, n, d, make_stream(18))
        ).eigenvalue(1)
        shared_top = realized_spectrum(
            idiosyncratic_increments(shared, n, d, make_stream(18))
        ).eigenvalue(1)
        assert independent_top < shared_top


def test_wiener_increments_scale():
    increments = wiener_increments(1000, 100, make_stream(15))
    assert increments.shape == (1000, 100)
    assert np.mean(np.sum(increments**2, axis=1)) == pytest.approx(1.0, abs=0.02)


def test_wiener_rejects_empty_grid():
    with pytest.raises(ParameterError):
        wiener_increments(0, 10, make_stream(0))


class TestObservations:
    """Tests for assembling Y = beta F + Z."""

    def test_assembly(self):
        rng = make_stream(16)
        beta = rng.standard_normal((6, 2))
        factors = rng.standard_normal((2, 5))
        noise = rng.standard_normal((6, 5))
        np.testing.assert_allclose(
            assemble_observations(beta, factors, noise), beta @ factors + noise
        )

    def test_factor_rows_must_match_loadings(self):
        with pytest.raises(ShapeError):
            assemble_observations(np.ones((6, 2)), np.ones((3, 5)), np.ones((6, 5)))

    def test_noise_shape_checked(self):
        with pytest.raises(ShapeError):
            assemble_observations(np.ones((6, 2)), np.ones((2, 5)), np.ones((6, 4)))
