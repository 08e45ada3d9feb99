import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from abeljac import accum

finite = st.floats(min_value=-1e100, max_value=1e100, allow_nan=False)


@given(finite, finite)
@settings(max_examples=100, deadline=None)
def test_two_sum_exact(a, b):
    s, e = accum.two_sum(a, b)
    # the pair represents a+b exactly; verify against extended precision
    from fractions import Fraction

    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@given(
    st.floats(min_value=-1e120, max_value=1e120, allow_nan=False),
    st.floats(min_value=-1e120, max_value=1e120, allow_nan=False),
)
@settings(max_examples=100, deadline=None)
def test_two_prod_exact(a, b):
    p, e = accum.two_prod(a, b)
    from fractions import Fraction

    if math.isinf(p) or math.isinf(e):
        return
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def test_neumaier_cancellation():
    vals = [1e16, 1.0, -1e16]
    assert accum.neumaier_sum(vals) == 1.0


def test_dd_mul_div_roundtrip():
    xh, xl = 1.0 + 2**-30, 2**-80
    yh, yl = accum.dd_mul(xh, xl, 3.0, 1e-20)
    zh, zl = accum.dd_div(yh, yl, 3.0, 1e-20)
    assert abs((zh - xh) + (zl - xl)) < 1e-30


def test_dd_vectorized_matches_scalar():
    rng = np.random.default_rng(5)
    a = rng.uniform(-2, 2, 16)
    b = rng.uniform(0.5, 2, 16)
    hv, lv = accum.dd_mul(a, np.zeros(16), b, np.zeros(16))
    for i in range(16):
        hs, ls = accum.dd_mul(float(a[i]), 0.0, float(b[i]), 0.0)
        assert hv[i] == hs and lv[i] == ls


def test_log_abs_bigint():
    import pytest

    n = 12345 * 10**300
    assert accum.log_abs_bigint(n) == pytest.approx(np.log(12345.0) + 300 * np.log(10.0), rel=1e-14)
    big = 1 << 5000
    assert accum.log_abs_bigint(big) == pytest.approx(np.log(2.0) * 5000, rel=1e-14)
    assert accum.log_abs_bigint(-7) == pytest.approx(np.log(7.0), rel=1e-15)
