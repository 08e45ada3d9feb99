"""Compensated and extended-precision accumulation primitives.

Three levels, used by the coupling-matrix evaluator in order of escalation:

* Neumaier-compensated summation of float64 terms.
* Double-double (pairs of floats, ~31 significant digits) arithmetic built on
  error-free transforms; works elementwise on numpy arrays as well as scalars.
* Helpers for an exact scaled-big-integer path (the caller drives the loop).

All functions are pure.
"""

from __future__ import annotations

import math

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a, b):
    """Error-free transform: a + b = s + e with s = fl(a + b)."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def two_prod(a, b):
    """Error-free transform: a * b = p + e with p = fl(a * b)."""
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLIT * b
    bh = bh - (bh - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def neumaier_sum(values):
    """Compensated sum of an iterable of floats (Neumaier variant of Kahan)."""
    s = 0.0
    c = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


# -- double-double -----------------------------------------------------------
# A double-double value is a pair (hi, lo) with |lo| <= ulp(hi)/2.
# The operations below accept scalars or numpy arrays (elementwise).

def dd_add(xh, xl, yh, yl):
    sh, se = two_sum(xh, yh)
    te = xl + yl + se
    return two_sum(sh, te)


def dd_add_f(xh, xl, y):
    sh, se = two_sum(xh, y)
    return two_sum(sh, xl + se)


def dd_mul(xh, xl, yh, yl):
    ph, pe = two_prod(xh, yh)
    pe = pe + (xh * yl + xl * yh)
    return two_sum(ph, pe)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, te = two_prod(q1, yh)
    rh, rl = dd_add(xh, xl, -th, -(te + q1 * yl))
    q2 = (rh + rl) / yh
    return two_sum(q1, q2)


def log_abs_bigint(n):
    """Natural log of |n| for an arbitrarily large nonzero integer."""
    if n == 0:
        raise ValueError("log of zero")
    n = abs(n)
    bl = n.bit_length()
    if bl <= 960:
        return math.log(n)
    shift = bl - 960
    return math.log(n >> shift) + shift * math.log(2.0)
