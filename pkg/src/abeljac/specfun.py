"""Stable special-function kernel: log-Gamma, reciprocal Gamma, Beta,
Gamma ratios and their power-law asymptotics, and Li's two-sided Gamma bounds.

Everything Gamma-laden elsewhere in the package is assembled in log space and
exponentiated once at the end; these are the primitives that make that safe.
All operations are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

from .errors import DomainError

#: Euler-Mascheroni constant, the exponent correction in Li's lower bound.
MASCHERONI = float(np.euler_gamma)

#: Relative tolerance guaranteed by the kernel primitives.
KERNEL_RTOL = 1e-13

#: Relative tolerance for identities derived from the primitives.
DERIVED_RTOL = 1e-12


def log_gamma(x):
    """ln Gamma(x) for x > 0, relative error below 1e-13 on [1e-6, 1e6].

    Negative arguments are deliberately rejected; the only sanctioned way to
    evaluate 1/Gamma at or across the poles is ``reciprocal_gamma``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0.0):
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    out = sc.gammaln(xa)
    return float(out) if np.ndim(x) == 0 else out


def reciprocal_gamma(x):
    """1/Gamma(x), entire in x; exactly 0 at x in {0, -1, -2, ...}."""
    xa = np.asarray(x, dtype=float)
    out = sc.rgamma(xa)
    if np.ndim(x) == 0:
        return float(out)
    return out


def log_abs_reciprocal_gamma(x):
    """(log|1/Gamma(x)|, sign) for scalar x, valid on both sides of the poles.

    At a pole the sign is 0 and the log is -inf. Uses the reflection
    Gamma(x)Gamma(1-x) = pi/sin(pi x) for x <= 0.
    """
    x = float(x)
    if x > 0.0:
        return -float(sc.gammaln(x)), 1.0
    if x == math.floor(x):
        return -math.inf, 0.0
    s = math.sin(math.pi * x)
    return float(sc.gammaln(1.0 - x)) + math.log(abs(s) / math.pi), math.copysign(1.0, s)


def beta(x, y):
    """Euler Beta B(x, y) for x, y > 0, via log-Gamma with one exponentiation."""
    if x <= 0.0 or y <= 0.0:
        raise DomainError(f"beta requires positive arguments, got ({x}, {y})")
    return math.exp(sc.gammaln(x) + sc.gammaln(y) - sc.gammaln(x + y))


def log_beta(x, y):
    """ln B(x, y) for x, y > 0."""
    if x <= 0.0 or y <= 0.0:
        raise DomainError(f"log_beta requires positive arguments, got ({x}, {y})")
    return float(sc.gammaln(x) + sc.gammaln(y) - sc.gammaln(x + y))


def gamma_ratio(x, delta):
    """Gamma(x + delta)/Gamma(x) for x > 0 and x + delta > 0.

    Computed as exp(log_gamma(x+delta) - log_gamma(x)); approaches x**delta
    as x grows.
    """
    if x <= 0.0 or x + delta <= 0.0:
        raise DomainError(
            f"gamma_ratio requires x > 0 and x + delta > 0, got x={x}, delta={delta}"
        )
    return math.exp(sc.gammaln(x + delta) - sc.gammaln(x))


def li_gamma_bounds(x):
    """Li's two-sided bounds (lower, upper) with
    x**(x-xi)/e**(x-1) < Gamma(x) < x**(x-1/2)/e**(x-1) for x > 1,
    xi the Euler-Mascheroni constant."""
    if x <= 1.0:
        raise DomainError(f"li_gamma_bounds requires x > 1, got {x}")
    lower = math.exp((x - MASCHERONI) * math.log(x) + (1.0 - x))
    upper = math.exp((x - 0.5) * math.log(x) + (1.0 - x))
    return lower, upper


@dataclass(frozen=True)
class GammaRatioAsymptote:
    """Certified power-law window for Gamma(x+delta)/Gamma(x) ~ x**delta.

    ``scale_window`` is an x beyond which the relative deviation of the ratio
    from x**exponent stays below ``rtol`` (certified by evaluation at the
    window point).
    """

    exponent: float
    scale_window: float
    rtol: float = 1e-6

    def __post_init__(self):
        if self.scale_window <= 1.0:
            raise DomainError("scale_window must exceed 1")

    def deviation(self, x):
        """|ratio/x**exponent - 1| at a point x."""
        return abs(gamma_ratio(x, self.exponent) / x**self.exponent - 1.0)


def certify_gamma_ratio_asymptote(delta, rtol=1e-6, x_start=4.0, x_max=1e12):
    """Find a window beyond which Gamma(x+delta)/Gamma(x) tracks x**delta.

    Scans x geometrically from ``x_start`` and returns the first
    GammaRatioAsymptote whose window point meets ``rtol``.
    """
    x = max(x_start, 1.0 + abs(delta) + 1e-6)
    while x <= x_max:
        cand = GammaRatioAsymptote(exponent=delta, scale_window=x, rtol=rtol)
        if cand.deviation(x) <= rtol:
            return cand
        x *= 2.0
    raise DomainError(f"no certified window below {x_max} for delta={delta}")
