"""Spacings estimators, exact moments, CLT diagnostics, Monte Carlo harness."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concomitant_measures.empirical import (
    clt_zscore,
    empirical_cpi,
    empirical_cpi_record,
    empirical_cumulative_entropy,
    empirical_cumulative_entropy_max2,
    ks_critical_value,
    ks_statistic,
    lyapunov_ratio,
    mc_validate,
    moments_mtbged,
    moments_mtbud,
    spacings,
    spearman_rho,
    standard_normal_cdf,
    study,
    theoretical_moments,
)
from concomitant_measures.fgm import order_statistics, record_value
from concomitant_measures.marginals import (
    Exponential,
    GeneralizedExponential,
    Rayleigh,
    Uniform,
)
from concomitant_measures.numerics import RngStream

samples = st.lists(
    st.floats(-100.0, 100.0, allow_nan=False, allow_infinity=False), min_size=2, max_size=40
)


class TestEstimator:
    def test_spacings(self):
        np.testing.assert_allclose(spacings([3.0, 1.0, 2.0]), [1.0, 1.0])
        with pytest.raises(ValueError):
            spacings([1.0])

    def test_constant_sample_is_zero(self):
        assert empirical_cpi([2.0, 2.0, 2.0, 2.0], 0.7, order_statistics(1, 3)) == 0.0

    def test_hand_evaluated_sum(self):
        # n=3, unit spacings: (1/3) log 3 + (2/3) log(3/2)
        expected = (1.0 / 3.0) * math.log(3.0) + (2.0 / 3.0) * math.log(1.5)
        assert empirical_cpi([1.0, 2.0, 3.0], 0.0, order_statistics(1, 3)) == pytest.approx(
            expected, abs=1e-15
        )

    def test_record_hand_evaluated_sum(self):
        # r=2 tilts by [1 - (1 - j/3)/2]: factors 2/3 and 5/6
        expected = (1.0 / 3.0) * math.log(3.0) * (2.0 / 3.0) + (2.0 / 3.0) * math.log(1.5) * (
            5.0 / 6.0
        )
        assert empirical_cpi_record([1.0, 2.0, 3.0], 1.0, 2) == pytest.approx(expected, abs=1e-15)

    def test_record_r1_is_alpha_free(self):
        vals = [1.0, 1.7, 2.2, 5.0]
        base = empirical_cpi_record(vals, 0.0, 1)
        for alpha in (-1.0, 0.3, 1.0):
            assert empirical_cpi_record(vals, alpha, 1) == pytest.approx(base, abs=1e-15)

    def test_unsorted_input_sorted_internally(self):
        p = order_statistics(2, 5)
        assert empirical_cpi([3.0, 1.0, 2.0], 0.5, p) == empirical_cpi([1.0, 2.0, 3.0], 0.5, p)

    def test_alpha_bound(self):
        with pytest.raises(ValueError):
            empirical_cpi([1.0, 2.0], 1.5, order_statistics(1, 2))

    @settings(max_examples=60, deadline=None)
    @given(values=samples, c=st.floats(0.01, 50.0))
    def test_scaling_in_spacings(self, values, c):
        p = order_statistics(1, 3)
        base = empirical_cpi(values, 0.0, p)
        scaled = empirical_cpi([c * v for v in values], 0.0, p)
        assert scaled == pytest.approx(c * base, rel=1e-12, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(values=samples)
    def test_linear_in_alpha(self, values):
        # the +/-1 average collapses to the alpha = 0 value
        plus = empirical_cpi_record(values, 1.0, 2)
        minus = empirical_cpi_record(values, -1.0, 2)
        mid = empirical_cpi_record(values, 0.0, 2)
        assert 0.5 * (plus + minus) == pytest.approx(mid, rel=1e-12, abs=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(values=samples, alpha=st.floats(-1.0, 1.0), r=st.integers(1, 8))
    def test_decomposes_into_empirical_entropies(self, values, alpha, r):
        c = 2.0 ** (1 - r) - 1.0
        lhs = empirical_cpi_record(values, alpha, r)
        rhs = (1.0 + alpha * c) * empirical_cumulative_entropy(values) - (
            alpha / 2.0
        ) * c * empirical_cumulative_entropy_max2(values)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestMoments:
    def test_mtbged_reference_cells(self):
        # printed reference values carry the 3rd decimal with mixed
        # rounding/truncation, hence the one-ulp-of-print tolerance
        for (n, theta2, alpha, r), (mean_ref, var_ref) in {
            (10, 0.5, -1.0, 2): (1.429, 0.241),
            (20, 2.0, 1.0, 2): (0.247, 0.004),
            (15, 1.0, 0.5, 2): (0.548, 0.025),
        }.items():
            mean, var = moments_mtbged(n, theta2, alpha, r)
            assert mean == pytest.approx(mean_ref, abs=1e-3)
            assert var == pytest.approx(var_ref, abs=1e-3)

    def test_mtbud_reference_cells(self):
        for (n, alpha, r), (mean_ref, var_ref) in {
            (10, -1.0, 2): (0.285, 0.008),
            (20, 1.0, 2): (0.171, 0.001),
            (15, 0.5, 2): (0.200, 0.003),
        }.items():
            mean, var = moments_mtbud(n, alpha, r)
            assert mean == pytest.approx(mean_ref, abs=1e-3)
            assert var == pytest.approx(var_ref, abs=1e-3)

    def test_mtbged_scale_laws_exact(self):
        for n, alpha in [(10, -1.0), (20, 0.5)]:
            m1, v1 = moments_mtbged(n, 1.0, alpha, 2)
            m2, v2 = moments_mtbged(n, 2.0, alpha, 2)
            assert m2 == pytest.approx(m1 / 2.0, abs=1e-12)
            assert v2 == pytest.approx(v1 / 4.0, abs=1e-12)

    def test_decreasing_in_alpha_for_r2(self):
        grid = (-1.0, -0.5, 0.5, 1.0)
        for n in (10, 15, 20):
            means = [moments_mtbged(n, 1.0, a, 2)[0] for a in grid]
            vars_ = [moments_mtbged(n, 1.0, a, 2)[1] for a in grid]
            assert all(x > y for x, y in zip(means, means[1:]))
            assert all(x > y for x, y in zip(vars_, vars_[1:]))
            means = [moments_mtbud(n, a, 2)[0] for a in grid]
            vars_ = [moments_mtbud(n, a, 2)[1] for a in grid]
            assert all(x > y for x, y in zip(means, means[1:]))
            assert all(x > y for x, y in zip(vars_, vars_[1:]))

    def test_mtbged_decreasing_in_theta(self):
        for n in (10, 15, 20):
            for alpha in (-1.0, 0.5):
                means = [moments_mtbged(n, t, alpha, 2)[0] for t in (0.5, 1.0, 2.0)]
                assert all(x > y for x, y in zip(means, means[1:]))

    def test_variance_vanishes_with_n(self):
        v10 = moments_mtbud(10, -1.0, 2)[1]
        v100 = moments_mtbud(100, -1.0, 2)[1]
        v10000 = moments_mtbud(10_000, -1.0, 2)[1]
        assert v10000 < v100 < v10
        assert v10000 < 1e-3

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            moments_mtbged(1, 1.0, 0.5, 2)
        with pytest.raises(ValueError):
            moments_mtbged(10, 0.0, 0.5, 2)
        with pytest.raises(ValueError):
            moments_mtbud(1, 0.5, 2)

    def test_theoretical_moments_dispatch(self):
        p = record_value(2)
        # scale-theta exponential == rate-1/theta model
        a = theoretical_moments(Exponential(2.0), p, 0.5, 12)
        b = moments_mtbged(12, 0.5, 0.5, 2)
        assert a == pytest.approx(b, abs=1e-12)
        # lam = 1 generalized exponential carries its rate directly
        c = theoretical_moments(GeneralizedExponential(0.5, 1.0), p, 0.5, 12)
        assert c == pytest.approx(b, abs=1e-12)
        assert theoretical_moments(GeneralizedExponential(0.5, 2.0), p, 0.5, 12) is None
        assert theoretical_moments(Rayleigh(1.0), p, 0.5, 12) is None
        # uniform scale enters linearly in the mean, quadratically in the var
        u1 = theoretical_moments(Uniform(1.0), p, -1.0, 10)
        u3 = theoretical_moments(Uniform(3.0), p, -1.0, 10)
        assert u3[0] == pytest.approx(3.0 * u1[0], abs=1e-12)
        assert u3[1] == pytest.approx(9.0 * u1[1], abs=1e-12)
        assert u1 == pytest.approx(moments_mtbud(10, -1.0, 2), abs=1e-15)


class TestCltDiagnostics:
    def test_zscore_trivials(self):
        assert clt_zscore(1.0, 1.0, 4.0) == 0.0
        assert clt_zscore(3.0, 1.0, 4.0) == 1.0
        with pytest.raises(ValueError):
            clt_zscore(1.0, 0.0, 0.0)

    def test_zscore_reference_arithmetic(self):
        # (0.499 - 0.469)/sqrt(0.030) = 0.1732...
        assert clt_zscore(0.499, 0.469, 0.030) == pytest.approx(0.173, abs=5e-4)

    def test_lyapunov_positive(self):
        for n in (2, 10, 100):
            assert lyapunov_ratio(n, 1.0, 0.5, 2) > 0.0

    def test_lyapunov_monotone_decreasing(self):
        ns = [10 * 2**k for k in range(11)]  # 10 .. 10240
        vals = [lyapunov_ratio(n, 1.0, 0.5, 2) for n in ns]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_lyapunov_rate(self):
        ratio = lyapunov_ratio(1000, 1.0, 0.5, 2) / lyapunov_ratio(10, 1.0, 0.5, 2)
        target = 100.0 ** (-1.0 / 6.0)
        assert abs(ratio - target) / target < 0.20

    def test_normal_cdf(self):
        assert standard_normal_cdf(0.0) == pytest.approx(0.5)
        assert standard_normal_cdf(1.959964) == pytest.approx(0.975, abs=1e-6)

    def test_ks_statistic_exact_fit(self):
        u = np.linspace(0.005, 0.995, 100)
        assert ks_statistic(u, lambda x: x) < 0.01
        assert ks_critical_value(100) == pytest.approx(1.6276 / 10.0, abs=1e-3)

    def test_spearman_perfect_rank_agreement(self):
        x = np.array([0.3, 1.2, 5.0, 2.2])
        assert spearman_rho(x, 10.0 * x) == pytest.approx(1.0)
        assert spearman_rho(x, -x) == pytest.approx(-1.0)


class TestStudy:
    def test_study_attaches_diagnostics(self):
        vals = RngStream(1).uniforms(50)
        s = study(vals, -1.0, record_value(2), marginal=Uniform(1.0))
        assert s.sample_size == 50
        assert s.value == pytest.approx(empirical_cpi_record(vals, -1.0, 2))
        assert s.theoretical_mean is not None and s.theoretical_var is not None
        assert s.z_score == pytest.approx(
            (s.value - s.theoretical_mean) / math.sqrt(s.theoretical_var)
        )

    def test_study_without_known_moments(self):
        s = study([1.0, 2.0, 4.0], 0.5, order_statistics(1, 2), marginal=Rayleigh(1.0))
        assert s.theoretical_mean is None and s.z_score is None


class TestMcValidate:
    def test_replicate_minimum(self):
        with pytest.raises(ValueError, match="replicates"):
            mc_validate(Uniform(1.0), record_value(2), -1.0, 10, 50, RngStream(0))

    def test_determinism(self):
        a = mc_validate(Uniform(1.0), record_value(2), -1.0, 10, 200, RngStream(4))
        b = mc_validate(Uniform(1.0), record_value(2), -1.0, 10, 200, RngStream(4))
        assert a == b

    def test_mtbud_mean_matches_reference(self):
        report = mc_validate(Uniform(1.0), record_value(2), -1.0, 10, 10_000, RngStream(7))
        assert abs(report.empirical_mean - 0.285) < 3.0 * math.sqrt(0.008 / 10_000)
        assert report.theoretical_mean == pytest.approx(moments_mtbud(10, -1.0, 2)[0])
        assert report.ks_normality is not None

    def test_mtbged_variance_matches_reference(self):
        report = mc_validate(
            GeneralizedExponential(1.0, 1.0), record_value(2), 1.0, 20, 10_000, RngStream(123)
        )
        assert abs(report.empirical_variance - 0.016) / 0.016 < 0.10
        assert report.theoretical_variance == pytest.approx(moments_mtbged(20, 1.0, 1.0, 2)[1])

    def test_bias_against_theoretical_mean(self):
        report = mc_validate(Uniform(1.0), record_value(2), 0.5, 15, 500, RngStream(9))
        assert report.bias == pytest.approx(
            report.empirical_mean - report.theoretical_mean, abs=1e-15
        )

    def test_report_without_known_moments(self):
        report = mc_validate(Rayleigh(1.0), record_value(2), 0.5, 12, 150, RngStream(2))
        assert report.theoretical_mean is None
        assert report.ks_normality is None
        assert report.bias == pytest.approx(report.empirical_mean - report.analytic_cpi, abs=1e-15)

    def test_general_gos_configuration_accepted(self):
        report = mc_validate(Uniform(1.0), order_statistics(2, 6), 0.8, 10, 150, RngStream(3))
        assert math.isfinite(report.empirical_mean)
        assert report.theoretical_mean is not None  # uniform spacing law covers any C*
