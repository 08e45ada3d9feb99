import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.special import gamma as scipy_gamma

from abeljac import specfun
from abeljac.errors import DomainError


class TestLogGamma:
    def test_at_one(self):
        assert specfun.log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_at_half(self):
        assert specfun.log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)

    def test_at_ten(self):
        assert specfun.log_gamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-13)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            specfun.log_gamma(0.0)
        with pytest.raises(DomainError):
            specfun.log_gamma(-2.5)

    def test_kernel_accuracy_sweep(self):
        xs = np.logspace(-6, 6, 400)
        ours = specfun.log_gamma(xs)
        import mpmath as mp

        for x, v in zip(xs[::37], ours[::37]):
            ref = float(mp.loggamma(mp.mpf(float(x))))
            assert abs(v - ref) <= 1e-13 * max(1.0, abs(ref))


class TestReciprocalGamma:
    @pytest.mark.parametrize("x,expected", [(0.0, 0.0), (-3.0, 0.0), (2.0, 1.0)])
    def test_spec_values(self, x, expected):
        assert specfun.reciprocal_gamma(x) == pytest.approx(expected, abs=1e-15)

    def test_zero_at_all_nonpositive_integers(self):
        for k in range(0, 40):
            assert specfun.reciprocal_gamma(-float(k)) == 0.0

    def test_inverse_identity(self):
        xs = np.linspace(0.1, 100.0, 313)
        vals = specfun.reciprocal_gamma(xs) * np.exp(specfun.log_gamma(xs))
        assert_allclose(vals, 1.0, rtol=1e-12)

    def test_log_abs_form_matches(self):
        for x in (-0.5, -1.5, -7.3, 0.25, 3.0):
            lg, sg = specfun.log_abs_reciprocal_gamma(x)
            assert sg * math.exp(lg) == pytest.approx(1.0 / scipy_gamma(x), rel=1e-12)

    def test_log_abs_form_at_pole(self):
        lg, sg = specfun.log_abs_reciprocal_gamma(-4.0)
        assert sg == 0.0 and lg == -math.inf


class TestBeta:
    @pytest.mark.parametrize(
        "x,y,expected",
        [(1.0, 1.0, 1.0), (0.5, 0.5, math.pi), (0.5, 1.0, 2.0)],
    )
    def test_spec_values(self, x, y, expected):
        assert specfun.beta(x, y) == pytest.approx(expected, rel=1e-13)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            specfun.beta(-1.0, 2.0)
        with pytest.raises(DomainError):
            specfun.beta(1.0, 0.0)

    @given(
        st.floats(min_value=0.01, max_value=50.0),
        st.floats(min_value=0.01, max_value=50.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, x, y):
        assert specfun.beta(x, y) == pytest.approx(specfun.beta(y, x), rel=1e-13)

    @given(
        st.floats(min_value=0.05, max_value=40.0),
        st.floats(min_value=0.05, max_value=40.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_recurrence(self, x, y):
        lhs = specfun.beta(x + 1.0, y)
        rhs = specfun.beta(x, y) * x / (x + y)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestGammaRatio:
    def test_shift_by_one(self):
        assert specfun.gamma_ratio(5.0, 1.0) == pytest.approx(5.0, rel=1e-13)

    def test_half_cases(self):
        assert specfun.gamma_ratio(0.5, 0.5) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-13)

    def test_large_argument_asymptote(self):
        x = 1e6
        assert specfun.gamma_ratio(x, 0.7) / x**0.7 == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("delta", [-0.5, 0.3, 1.7])
    def test_asymptote_at_1e5(self, delta):
        x = 1e5
        assert specfun.gamma_ratio(x, delta) / x**delta == pytest.approx(1.0, abs=1e-4)

    def test_rejects_pole(self):
        with pytest.raises(DomainError):
            specfun.gamma_ratio(-1.0, 0.5)
        with pytest.raises(DomainError):
            specfun.gamma_ratio(0.5, -0.5)

    def test_certified_window(self):
        asym = specfun.certify_gamma_ratio_asymptote(0.3, rtol=1e-6)
        assert asym.scale_window > 1.0
        assert asym.deviation(asym.scale_window) <= 1e-6
        assert asym.deviation(4.0 * asym.scale_window) <= 1e-6


class TestLiBounds:
    def test_bracket_at_two(self):
        lo, hi = specfun.li_gamma_bounds(2.0)
        assert lo < 1.0 < hi
        assert lo == pytest.approx(2.0 ** (2.0 - specfun.MASCHERONI) / math.e, rel=1e-12)
        assert hi == pytest.approx(2.0**1.5 / math.e, rel=1e-12)

    def test_bracket_at_five(self):
        lo, hi = specfun.li_gamma_bounds(5.0)
        assert lo < 24.0 < hi

    def test_bracket_near_one(self):
        lo, hi = specfun.li_gamma_bounds(1.000001)
        g = scipy_gamma(1.000001)
        assert lo < g < hi

    def test_bracket_sweep(self):
        xs = np.linspace(1.0001, 50.0, 997)
        for x in xs:
            lo, hi = specfun.li_gamma_bounds(float(x))
            g = math.exp(specfun.log_gamma(float(x)))
            assert lo < g < hi

    def test_rejects_x_below_one(self):
        with pytest.raises(DomainError):
            specfun.li_gamma_bounds(1.0)
