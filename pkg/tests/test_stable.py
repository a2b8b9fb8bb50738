"""Tests for the stable and tempered stable samplers."""

import numpy as np
import pytest
from scipy import stats

from weakfactor.config import PtsParams
from weakfactor.errors import ParameterError
from weakfactor.processes import (
    nts_increments,
    nts_subordinator,
    sample_one_sided_stable,
    sample_pts,
)
from weakfactor.processes.stable import tilted_proposals
from weakfactor.random import make_stream


class TestOneSidedStable:
    """Tests for the Chambers-Mallows-Stuck sampler."""

    def test_half_stable_is_levy(self):
        """exp(-sqrt(u)) is the Laplace transform of the Levy law with scale 1/2."""
        draws = sample_one_sided_stable(0.5, make_stream(11), size=20_000)
        result = stats.kstest(draws, stats.levy(scale=0.5).cdf)
        assert result.pvalue > 1e-3

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_laplace_transform(self, alpha):
        draws = sample_one_sided_stable(alpha, make_stream(12), size=20_000)
        assert np.all(draws > 0)
        for u in (0.5, 1.0, 2.0):
            assert np.mean(np.exp(-u * draws)) == pytest.approx(np.exp(-(u**alpha)), abs=0.015)

    def test_scalar_draw(self):
        assert isinstance(sample_one_sided_stable(0.5, make_stream(0)), float)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, 1.5])
    def test_rejects_alpha_outside_unit_interval(self, alpha):
        with pytest.raises(ParameterError):
            sample_one_sided_stable(alpha, make_stream(0), size=3)


class TestPts:
    """Tests for the exponential-tilting PTS sampler."""

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_unit_moments(self, alpha):
        draws = sample_pts(PtsParams.unit_moment(alpha), make_stream(21), size=20_000)
        assert draws.shape == (20_000,)
        assert np.mean(draws) == pytest.approx(1.0, abs=0.05)
        assert np.var(draws) == pytest.approx(1.0, abs=0.25)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_laplace_transform(self, alpha):
        params = PtsParams.unit_moment(alpha)
        draws = sample_pts(params, make_stream(22), size=20_000)
        for u in (0.5, 1.0):
            expected = np.exp(params.log_laplace(u))
            assert np.mean(np.exp(-u * draws)) == pytest.approx(expected, abs=0.015)

    def test_time_scaled_mean(self):
        params = PtsParams.unit_moment(0.5).scaled(1 / 78)
        draws = sample_pts(params, make_stream(23), size=50_000)
        assert np.mean(draws) == pytest.approx(1 / 78, rel=0.2)

    @pytest.mark.parametrize("scale", [1.0, 1 / 78, 1 / 390])
    def test_acceptance_rate(self, scale):
        """Tilting rejection accepts at rate exp(c*Gamma(-alpha)*lambda^alpha)."""
        params = PtsParams.unit_moment(0.5).scaled(scale)
        _, accept = tilted_proposals(params, make_stream(26), 50_000)
        assert np.mean(accept) == pytest.approx(params.acceptance_rate, abs=0.02)

    def test_scalar_draw(self):
        value = sample_pts(PtsParams.unit_moment(0.5), make_stream(0))
        assert isinstance(value, float)
        assert value > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_moments_at_scale(self, alpha):
        params = PtsParams.unit_moment(alpha)
        draws = sample_pts(params, make_stream(24), size=100_000)
        assert np.mean(draws) == pytest.approx(1.0, abs=0.02)
        assert np.var(draws) == pytest.approx(1.0, abs=0.1)
        for u in (0.25, 1.0, 4.0):
            assert np.mean(np.exp(-u * draws)) == pytest.approx(
                np.exp(params.log_laplace(u)), abs=0.006
            )

    @pytest.mark.slow
    def test_half_stable_ks_at_scale(self):
        draws = sample_one_sided_stable(0.5, make_stream(25), size=100_000)
        assert stats.kstest(draws, stats.levy(scale=0.5).cdf).statistic < 0.01


class TestNts:
    """Tests for normal tempered stable increments."""

    def test_shape(self):
        increments = nts_increments(0.5, 50, 400, make_stream(31))
        assert increments.shape == (400, 50)

    def test_deterministic_subordinator_gives_brownian_scale(self):
        n = 50
        increments = nts_increments(0.5, n, 400, make_stream(31), subordinator=np.full(n, 1 / n))
        assert np.mean(np.sum(increments**2, axis=1)) == pytest.approx(1.0, rel=0.05)

    def test_shared_subordinator_couples_squares(self):
        """Squared increments of two components in one interval have correlation 1/(3 + 2/n)."""
        n = 5
        count = 100_000
        subordinator = np.asarray(
            sample_pts(PtsParams.unit_moment(0.5).scaled(1 / n), make_stream(32), size=count)
        )
        increments = nts_increments(
            0.5, count, 2, make_stream(33), subordinator=subordinator, mode="shared"
        )
        corr = np.corrcoef(increments[0] ** 2, increments[1] ** 2)[0, 1]
        assert corr == pytest.approx(1 / (3 + 2 / n), abs=0.05)

    def test_zero_subordinator_gives_zero_column(self):
        subordinator = np.full(6, 0.2)
        subordinator[3] = 0.0
        increments = nts_increments(0.5, 6, 10, make_stream(35), subordinator=subordinator)
        np.testing.assert_array_equal(increments[:, 3], 0.0)
        assert np.all(increments[:, [0, 1, 2, 4, 5]] != 0.0)

    @pytest.mark.parametrize("mode", ["shared", "independent"])
    def test_components_are_uncorrelated(self, mode):
        """Cross-component increment covariance is zero within 4 standard errors."""
        count = 50_000
        params = PtsParams.unit_moment(0.5).scaled(1 / 5)
        shape = (count,) if mode == "shared" else (2, count)
        subordinator = np.asarray(sample_pts(params, make_stream(36), size=2 * count))
        subordinator = subordinator[: np.prod(shape)].reshape(shape)
        increments = nts_increments(
            0.5, count, 2, make_stream(37), subordinator=subordinator, mode=mode
        )
        products = increments[0] * increments[1]
        standard_error = products.std() / np.sqrt(count)
        assert abs(products.mean()) < 4 * standard_error

    def test_independent_subordinators_decouple_squares(self):
        """Per-entry draws make the two components independent: joint exceedance is 1/4."""
        count = 100_000
        params = PtsParams.unit_moment(0.5).scaled(1 / 5)
        draws = np.asarray(sample_pts(params, make_stream(38), size=2 * count))
        increments = nts_increments(
            0.5, count, 2, make_stream(40), subordinator=draws.reshape(2, count), mode="independent"
        )
        big = increments**2 > np.median(increments**2, axis=1, keepdims=True)
        assert np.mean(big[0] & big[1]) == pytest.approx(0.25, abs=0.01)

    def test_independent_subordinator_shape(self):
        draws = nts_subordinator(0.75, 26, make_stream(39), rows=4)
        assert draws.shape == (4, 26)
        assert np.all(draws > 0)
        with pytest.raises(ValueError):
            nts_increments(0.5, 10, 3, make_stream(0), subordinator=np.ones(10), mode="independent")

    def test_subordinator_draws(self):
        draws = nts_subordinator(0.75, 26, make_stream(34))
        assert draws.shape == (26,)
        assert np.all(draws > 0)

    def test_subordinator_shape_checked(self):
        with pytest.raises(ValueError):
            nts_increments(0.5, 10, 3, make_stream(0), subordinator=np.ones(9))

    def test_rejects_bad_alpha(self):
        with pytest.raises(ParameterError):
            nts_increments(1.0, 10, 3, make_stream(0))
