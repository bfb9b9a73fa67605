"""FGM model, C* coefficient, concomitant laws, and samplers."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concomitant_measures.empirical import ks_critical_value, ks_statistic, spearman_rho
from concomitant_measures.fgm import (
    FgmModel,
    GosParams,
    _invert_tilted_uniform,
    c_star,
    concomitant_cdf,
    concomitant_pdf,
    extremes_coefficient,
    extremes_pdf,
    format_gos,
    order_statistics,
    parse_gos,
    record_value,
    sample_concomitant,
    sample_joint,
)
from concomitant_measures.marginals import Exponential, SpecFormatError, Uniform
from concomitant_measures.numerics import RngStream, integrate


class TestCStar:
    def test_spot_values(self):
        assert c_star(order_statistics(1, 1)) == pytest.approx(0.0, abs=1e-15)
        assert c_star(order_statistics(1, 3)) == pytest.approx(0.5, abs=1e-15)
        assert c_star(GosParams(3, 10, -1.0, 1.0)) == pytest.approx(-0.75, abs=1e-15)

    def test_order_statistics_reduction(self):
        # product form == (n - 2r + 1)/(n + 1) for m=0, k=1
        for n in range(1, 31):
            for r in range(1, n + 1):
                expected = (n - 2 * r + 1) / (n + 1)
                assert c_star(order_statistics(r, n)) == pytest.approx(expected, abs=1e-12)

    def test_record_reduction(self):
        for r in range(1, 31):
            assert c_star(record_value(r)) == pytest.approx(2.0 ** (1 - r) - 1.0, abs=1e-12)

    def test_bounded_and_decreasing_in_r(self):
        for m in (-1.0, -0.5, 0.0, 1.0, 2.0):
            for k in (0.5, 1.0, 2.0):
                for n in (1, 4, 9, 20):
                    try:
                        values = [c_star(GosParams(r, n, m, k)) for r in range(1, n + 1)]
                    except ValueError:
                        continue
                    assert all(abs(v) <= 1.0 for v in values)
                    assert all(a >= b - 1e-14 for a, b in zip(values, values[1:]))

    def test_invalid_gamma_rejected(self):
        with pytest.raises(ValueError, match="gamma"):
            GosParams(1, 3, -2.0, 1.0)

    def test_gos_params_validation(self):
        with pytest.raises(ValueError):
            GosParams(0, 3)
        with pytest.raises(ValueError):
            GosParams(4, 3)
        with pytest.raises(ValueError):
            GosParams(1, 3, 0.0, 0.0)
        with pytest.raises(ValueError):
            GosParams(1.5, 3)  # type: ignore[arg-type]


class TestFgmModel:
    def test_alpha_bound(self):
        with pytest.raises(ValueError):
            FgmModel(Uniform(1.0), Uniform(1.0), 1.5)

    def test_joint_pdf_nonnegative_on_grid(self):
        for alpha in (-1.0, -0.3, 0.7, 1.0):
            model = FgmModel(Exponential(1.0), Uniform(2.0), alpha)
            x = np.linspace(0.01, 5.0, 40)
            y = np.linspace(0.01, 1.99, 40)
            vals = model.joint_pdf(x[:, None], y[None, :])
            assert np.all(vals >= 0.0)

    def test_joint_pdf_integrates_to_one(self):
        model = FgmModel(Exponential(1.0), Exponential(2.0), 0.8)

        def outer(xs):
            return np.array([
                integrate(lambda y: model.joint_pdf(x, y), 0.0, math.inf, rel_tol=1e-9).value
                for x in np.atleast_1d(xs)
            ])

        total = integrate(outer, 0.0, math.inf, rel_tol=1e-7, abs_tol=1e-9)
        assert total.value == pytest.approx(1.0, abs=1e-6)


class TestConcomitantLaws:
    def test_alpha_zero_is_marginal(self):
        m = Exponential(1.3)
        model = FgmModel(m, m, 0.0)
        p = order_statistics(2, 7)
        y = np.linspace(0.0, 6.0, 50)
        np.testing.assert_allclose(concomitant_pdf(model, p, y), m.pdf(y), atol=1e-14)

    def test_c_star_zero_is_marginal(self):
        m = Exponential(1.0)
        model = FgmModel(m, m, 1.0)
        assert concomitant_pdf(model, order_statistics(1, 1), 1.0) == pytest.approx(math.exp(-1.0))

    def test_spot_value(self):
        m = Exponential(1.0)
        model = FgmModel(m, m, 1.0)
        assert concomitant_pdf(model, order_statistics(1, 3), 0.0) == pytest.approx(1.5)

    def test_cdf_spot_value(self):
        u = Uniform(1.0)
        model = FgmModel(u, u, 1.0)
        assert concomitant_cdf(model, order_statistics(1, 3), 0.5) == pytest.approx(0.625)

    def test_cdf_limits_and_monotonicity(self):
        m = Exponential(0.7)
        for alpha, p in [(-1.0, order_statistics(1, 4)), (1.0, record_value(3))]:
            model = FgmModel(m, m, alpha)
            y = np.linspace(0.0, 15.0, 400)
            G = concomitant_cdf(model, p, y)
            assert G[0] == pytest.approx(0.0, abs=1e-12)
            assert G[-1] == pytest.approx(1.0, abs=1e-6)
            assert np.all(np.diff(G) >= -1e-12)
            assert concomitant_cdf(model, p, 1e9) == pytest.approx(1.0, abs=1e-12)

    def test_pdf_nonnegative_at_extreme_alpha(self):
        m = Uniform(1.0)
        for p in [order_statistics(1, 9), record_value(6)]:
            for alpha in (-1.0, 1.0):
                model = FgmModel(m, m, alpha)
                y = np.linspace(0.0, 1.0, 201)
                assert np.all(concomitant_pdf(model, p, y) >= 0.0)

    def test_pdf_integrates_to_one(self):
        for m in (Exponential(1.3), Uniform(2.0)):
            hi = m.support()[1]
            for alpha, p in [(1.0, order_statistics(1, 5)), (-0.6, record_value(4))]:
                model = FgmModel(m, m, alpha)
                res = integrate(lambda y: concomitant_pdf(model, p, y), 0.0, hi)
                assert res.value == pytest.approx(1.0, abs=1e-8)

    def test_cdf_matches_pdf_by_finite_differences(self):
        m = Exponential(1.0)
        model = FgmModel(m, m, 0.8)
        p = order_statistics(1, 5)
        for y in (0.2, 0.9, 2.1):
            h = 1e-6
            numeric = (concomitant_cdf(model, p, y + h) - concomitant_cdf(model, p, y - h)) / (2 * h)
            assert numeric == pytest.approx(concomitant_pdf(model, p, y), rel=1e-6)

    def test_mixture_identity(self):
        # averaging over r = 1..n at (m=0, k=1) recovers the marginal exactly
        m = Exponential(1.0)
        model = FgmModel(m, m, 1.0)
        y = np.linspace(0.0, 8.0, 101)
        for n in (2, 5, 8):
            avg = np.mean(
                [concomitant_pdf(model, order_statistics(r, n), y) for r in range(1, n + 1)],
                axis=0,
            )
            np.testing.assert_allclose(avg, m.pdf(y), atol=1e-12)


class TestTiltedInversion:
    @settings(max_examples=200, deadline=None)
    @given(
        a=st.floats(-1.0, 1.0, allow_nan=False),
        u=st.floats(1e-12, 1.0 - 1e-12, allow_nan=False),
    )
    def test_round_trip(self, a, u):
        v = float(_invert_tilted_uniform(a, u))
        assert 0.0 <= v <= 1.0
        assert v * (1.0 + a * (1.0 - v)) == pytest.approx(u, abs=1e-9)


class TestSamplers:
    def test_independence_at_alpha_zero(self):
        m = Uniform(1.0)
        model = FgmModel(m, m, 0.0)
        x, y = sample_joint(model, RngStream(5), size=100_000)
        assert abs(np.corrcoef(x, y)[0, 1]) < 0.01

    def test_spearman_matches_alpha_over_3(self):
        m = Uniform(1.0)
        for alpha in (-1.0, 0.5, 1.0):
            model = FgmModel(m, m, alpha)
            x, y = sample_joint(model, RngStream(42, 1), size=50_000)
            assert spearman_rho(x, y) == pytest.approx(alpha / 3.0, abs=0.02)

    def test_marginals_pass_ks(self):
        model = FgmModel(Exponential(2.0), Uniform(1.0), 0.9)
        x, y = sample_joint(model, RngStream(7), size=100_000)
        crit = ks_critical_value(100_000)
        assert ks_statistic(x, Exponential(2.0).cdf) < crit
        assert ks_statistic(y, Uniform(1.0).cdf) < crit

    def test_scalar_draw(self):
        model = FgmModel(Uniform(1.0), Uniform(1.0), 0.5)
        x, y = sample_joint(model, RngStream(0))
        assert 0.0 < x < 1.0 and 0.0 < y < 1.0

    def test_concomitant_alpha_zero_ks(self):
        m = Exponential(1.0)
        model = FgmModel(m, m, 0.0)
        y = sample_concomitant(model, order_statistics(2, 6), RngStream(11), size=100_000)
        assert ks_statistic(y, m.cdf) < ks_critical_value(100_000)

    def test_concomitant_ecdf_matches_cdf(self):
        u = Uniform(1.0)
        model = FgmModel(u, u, 1.0)
        p = order_statistics(1, 3)
        y = sample_concomitant(model, p, RngStream(3), size=100_000)
        assert np.mean(y <= 0.5) == pytest.approx(0.625, abs=0.01)
        assert ks_statistic(y, lambda t: concomitant_cdf(model, p, t)) < ks_critical_value(100_000)

    def test_concomitant_record_mean_matches_quadrature(self):
        m = Exponential(1.0)
        model = FgmModel(m, m, -1.0)
        p = record_value(2)
        n = 100_000
        y = sample_concomitant(model, p, RngStream(17), size=n)
        mean = integrate(lambda t: t * concomitant_pdf(model, p, t), 0.0, math.inf).value
        second = integrate(lambda t: t * t * concomitant_pdf(model, p, t), 0.0, math.inf).value
        sd = math.sqrt(second - mean**2)
        assert y.mean() == pytest.approx(mean, abs=3.0 * sd / math.sqrt(n))

    def test_unsupported_configuration(self):
        m = Uniform(1.0)
        model = FgmModel(m, m, 0.5)
        with pytest.raises(ValueError, match="order statistics.*records"):
            sample_concomitant(model, GosParams(2, 5, 1.0, 2.0), RngStream(0))


class TestExtremes:
    def test_single_pair_is_marginal(self):
        m = Exponential(1.0)
        y = np.linspace(0.0, 5.0, 50)
        for which in ("min", "max"):
            np.testing.assert_allclose(extremes_pdf(m, [0.7], which, y), m.pdf(y), atol=1e-15)

    def test_zero_alpha_sum_is_marginal(self):
        m = Exponential(1.0)
        y = np.linspace(0.0, 5.0, 50)
        np.testing.assert_allclose(
            extremes_pdf(m, [0.5, -0.5, 0.8, -0.8], "min", y), m.pdf(y), atol=1e-15
        )

    def test_homogeneous_matches_concomitant(self):
        m = Exponential(1.0)
        n, alpha = 5, 0.8
        model = FgmModel(m, m, alpha)
        y = np.linspace(0.0, 6.0, 80)
        np.testing.assert_allclose(
            extremes_pdf(m, [alpha] * n, "min", y),
            concomitant_pdf(model, order_statistics(1, n), y),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            extremes_pdf(m, [alpha] * n, "max", y),
            concomitant_pdf(model, order_statistics(n, n), y),
            atol=1e-12,
        )

    def test_integrates_to_one(self):
        m = Exponential(1.0)
        res = integrate(lambda y: extremes_pdf(m, [0.9, -0.2, 0.4], "max", y), 0.0, math.inf)
        assert res.value == pytest.approx(1.0, abs=1e-8)

    def test_coefficient_validation(self):
        with pytest.raises(ValueError):
            extremes_coefficient([], "min")
        with pytest.raises(ValueError):
            extremes_coefficient([1.2], "min")
        with pytest.raises(ValueError):
            extremes_coefficient([0.5], "median")


class TestGosSpecStrings:
    def test_parse(self):
        assert parse_gos("os:r=2,n=5") == order_statistics(2, 5)
        assert parse_gos("record:r=3") == record_value(3)
        assert parse_gos("r=2,n=5,m=1,k=2") == GosParams(2, 5, 1.0, 2.0)
        assert parse_gos("r=2,n=5") == order_statistics(2, 5)

    def test_round_trip(self):
        for p in (order_statistics(2, 5), record_value(3), GosParams(1, 4, 2.0, 0.5)):
            assert parse_gos(format_gos(p)) == p

    def test_canonical_shorthands(self):
        assert format_gos(GosParams(2, 5, 0.0, 1.0)) == "os:r=2,n=5"
        assert format_gos(GosParams(3, 3, -1.0, 1.0)) == "record:r=3"

    def test_errors(self):
        with pytest.raises(SpecFormatError, match="unknown GOS shorthand"):
            parse_gos("quantile:r=1")
        with pytest.raises(SpecFormatError, match="missing fields"):
            parse_gos("r=2")
        with pytest.raises(SpecFormatError, match="non-numeric"):
            parse_gos("r=x,n=3")
        with pytest.raises(SpecFormatError, match="must be an integer"):
            parse_gos("r=1.5,n=3")
