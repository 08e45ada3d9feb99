"""Shared independent oracles for the test suite.

These deliberately avoid the package's own computational paths: rational
arithmetic via fractions.Fraction, high-precision arithmetic via mpmath, and
plain finite differences.
"""

from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest


def frac_binom(x: Fraction, j: int) -> Fraction:
    """binom(x, j) for rational x and integer j >= 0, exactly."""
    out = Fraction(1)
    for i in range(j):
        out *= (x - i) / (j - i)
    return out


def taylor_weight_exact(n, k, beta, gamma):
    """Rational brute force of the combinatorial Taylor weight
    n! k! sum_i binom(n+beta, n-i) binom(n+gamma, i) binom(n-i, k-i)."""
    beta = Fraction(beta)
    gamma = Fraction(gamma)
    s = Fraction(0)
    for i in range(k + 1):
        s += (
            frac_binom(n + beta, n - i)
            * frac_binom(n + gamma, i)
            * frac_binom(Fraction(n - i), k - i)
        )
    f = Fraction(1)
    for j in range(2, n + 1):
        f *= j
    g = Fraction(1)
    for j in range(2, k + 1):
        g *= j
    return s * f * g


def mp_norm_factor(n, beta, gamma):
    return mp.sqrt(
        (beta + gamma + 2 * n + 1)
        * mp.gamma(beta + gamma + n + 1)
        / (mp.factorial(n) * mp.gamma(beta + n + 1) * mp.gamma(gamma + n + 1))
    )


def mp_taylor_weight(n, k, beta, gamma):
    def binom(x, j):
        return mp.gamma(x + 1) / (mp.gamma(j + 1) * mp.gamma(x - j + 1))

    s = mp.mpf(0)
    for i in range(k + 1):
        s += binom(n + beta, n - i) * binom(n + gamma, i) * binom(mp.mpf(n - i), k - i)
    return mp.factorial(n) * mp.factorial(k) * s


def mp_rgamma(z):
    if z <= 0 and mp.isint(z):
        return mp.mpf(0)
    return 1 / mp.gamma(z)


def mp_coupling_entry(alpha, beta, gamma, m, n, orientation, interval_length=1.0, dps=80):
    """High-precision reference for the coupling value, including the
    interval scale factor."""
    with mp.workdps(dps + 2 * n):
        al = mp.mpf(alpha)
        be = mp.mpf(beta)
        ga = mp.mpf(gamma)
        B, G = (be, ga) if orientation == "a_plus" else (ga, be)
        s = mp.mpf(0)
        for k in range(n + 1):
            s += (
                (-1) ** k
                * mp_taylor_weight(n, k, B, G)
                * mp.gamma(al + B + k + 1)
                * mp.gamma(G + m + 1)
                / mp.gamma(al + B + G + k + m + 2)
                * mp_rgamma(k + al - m + 1)
            )
        val = (
            mp_norm_factor(m, be, ga)
            * mp_norm_factor(n, be, ga)
            * s
            * mp.power(mp.mpf(interval_length), al)
        )
        return float(val)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
