"""Orthonormal Jacobi polynomials on (a, b) for the weight
(x-a)**beta * (b-x)**gamma, with the signed normalization that makes the
Rodrigues form, endpoint-derivative closed forms, and Taylor expansions of the
family hold verbatim.

Evaluation goes through the three-term recurrence (numerically stable); the
Taylor/endpoint closed forms are kept as verification paths because the
coupling-matrix algebra rests on them. High-degree Taylor sums are
catastrophically cancellative and are never used for evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sc
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ContractError, DomainError, InputError
from .specfun import log_beta

__all__ = [
    "JacobiBasis",
    "CoefficientSequence",
    "norm_factor",
    "log_norm_factor",
    "rodrigues_multiplier",
    "taylor_weight",
    "log_taylor_weight",
    "evaluate",
    "evaluate_table",
    "endpoint_derivative",
    "taylor_coefficients",
    "gauss_jacobi",
    "project",
]


@dataclass(frozen=True)
class JacobiBasis:
    """Interval (a, b) and weight exponents (beta at a, gamma at b)."""

    a: float
    b: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (self.a < self.b):
            raise DomainError(f"need a < b, got a={self.a}, b={self.b}")
        if self.beta <= -1.0 or self.gamma <= -1.0:
            raise DomainError(
                f"weight exponents must exceed -1, got beta={self.beta}, gamma={self.gamma}"
            )

    @property
    def length(self):
        return self.b - self.a

    @property
    def theorem_scope(self):
        """True when beta, gamma lie in [-1/2, 1/2], the mapping-theorem range."""
        return -0.5 <= self.beta <= 0.5 and -0.5 <= self.gamma <= 0.5

    def weight(self, x):
        """omega(x) = (x-a)**beta * (b-x)**gamma, for x strictly inside (a, b)."""
        x = np.asarray(x, dtype=float)
        return (x - self.a) ** self.beta * (self.b - x) ** self.gamma

    def to_reference(self, x):
        """Affine map of x in [a, b] to t in [-1, 1]."""
        return 2.0 * (np.asarray(x, dtype=float) - self.a) / self.length - 1.0


@dataclass
class CoefficientSequence:
    """Finite truncated sequence of real coefficients against a basis."""

    basis: JacobiBasis
    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=float))
        if v.ndim != 1 or v.size < 1:
            raise InputError("coefficient sequence must be a nonempty 1-d array")
        if not np.all(np.isfinite(v)):
            bad = int(np.flatnonzero(~np.isfinite(v))[0])
            raise InputError(f"non-finite coefficient at index {bad}")
        self.values = v

    def __len__(self):
        return self.values.size

    def padded(self, n):
        """Values zero-padded (or truncated) to length n."""
        out = np.zeros(n)
        m = min(n, self.values.size)
        out[:m] = self.values[:m]
        return out


def log_norm_factor(basis, n):
    """ln of the positive normalization factor
    sqrt((beta+gamma+2n+1) Gamma(beta+gamma+n+1) / (n! Gamma(beta+n+1) Gamma(gamma+n+1))).

    Accepts scalar or integer-array n. The n = 0 case folds the leading factor
    into the Gamma argument so beta+gamma+1 = 0 needs no special handling.
    """
    bg = basis.beta + basis.gamma
    n = np.asarray(n)
    if np.any(n < 0):
        raise ContractError("degree must be nonnegative")
    nf = n.astype(float)
    with np.errstate(divide="ignore"):
        general = 0.5 * (
            np.log(bg + 2.0 * nf + 1.0)
            + sc.gammaln(bg + nf + 1.0)
            - sc.gammaln(nf + 1.0)
            - sc.gammaln(basis.beta + nf + 1.0)
            - sc.gammaln(basis.gamma + nf + 1.0)
        )
    zero_case = 0.5 * (
        sc.gammaln(bg + 2.0) - sc.gammaln(basis.beta + 1.0) - sc.gammaln(basis.gamma + 1.0)
    )
    out = np.where(n == 0, zero_case, general)
    return float(out) if out.ndim == 0 else out


def norm_factor(basis, n):
    """The positive normalization factor itself (see ``log_norm_factor``)."""
    return math.exp(log_norm_factor(basis, int(n)))


def rodrigues_multiplier(basis, n):
    """Signed multiplier turning the n-th Rodrigues derivative form into the
    orthonormal polynomial: (-1)**n * norm_factor / (b-a)**(n+(beta+gamma+1)/2).

    When beta+gamma+1 = 0 and n = 0 this reduces to
    1/sqrt(Gamma(beta+1)Gamma(gamma+1)) with no interval power.
    """
    if n < 0:
        raise ContractError("degree must be nonnegative")
    bg1 = basis.beta + basis.gamma + 1.0
    if n == 0 and bg1 == 0.0:
        return math.exp(-0.5 * (sc.gammaln(basis.beta + 1.0) + sc.gammaln(basis.gamma + 1.0)))
    sign = -1.0 if n % 2 else 1.0
    return sign * math.exp(log_norm_factor(basis, n) - (n + bg1 / 2.0) * math.log(basis.length))


def _log_binom(x, j):
    """ln binom(x, j) with binom(x, j) = Gamma(x+1)/(Gamma(j+1)Gamma(x-j+1));
    requires every Gamma argument positive."""
    return sc.gammaln(x + 1.0) - sc.gammaln(j + 1.0) - sc.gammaln(x - j + 1.0)


def log_taylor_weight(n, k, beta, gamma):
    """ln of the (always positive) combinatorial weight

        n! k! sum_{i=0}^{k} binom(n+beta, n-i) binom(n+gamma, i) binom(n-i, k-i)

    appearing in the endpoint derivatives and Taylor coefficients of the
    orthonormal family. Single-signed, so a plain log-sum-exp is exact enough.
    """
    if not 0 <= k <= n:
        raise ContractError(f"need 0 <= k <= n, got n={n}, k={k}")
    i = np.arange(k + 1, dtype=float)
    logs = (
        _log_binom(n + beta, n - i)
        + _log_binom(n + gamma, i)
        + _log_binom(float(n) - i, k - i)
    )
    return float(
        sc.gammaln(n + 1.0) + sc.gammaln(k + 1.0) + sc.logsumexp(logs)
    )


def taylor_weight(n, k, beta, gamma):
    """The combinatorial endpoint/Taylor weight itself (see ``log_taylor_weight``).

    Exact in rational arithmetic for integer beta, gamma; here evaluated in
    log space. Equals n! * Gamma(n+beta+gamma+1+k)/Gamma(n+beta+gamma+1)
    * binom(n+beta, n-k) by a Vandermonde-type identity.
    """
    return math.exp(log_taylor_weight(n, k, beta, gamma))


def recurrence_coefficients(basis, nmax):
    """Monic three-term recurrence data for the reference weight
    (1-t)**gamma (1+t)**beta on (-1, 1).

    Returns (alpha, sqrt_beta, mu0): alpha[k] and beta[k] are the standard
    monic recurrence coefficients (beta[0] = mu0 the total weight mass);
    sqrt_beta[k] = sqrt(beta[k]) for k >= 1 is what the orthonormal
    recurrence and the Golub-Welsch matrix need.
    """
    A = basis.gamma  # exponent at t = +1  (x = b)
    B = basis.beta   # exponent at t = -1  (x = a)
    k = np.arange(nmax + 1, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        alpha = (B * B - A * A) / ((2 * k + A + B) * (2 * k + A + B + 2))
    alpha[0] = (B - A) / (A + B + 2.0)
    bcoef = np.empty(nmax + 1)
    mu0 = math.exp((A + B + 1.0) * math.log(2.0) + log_beta(A + 1.0, B + 1.0))
    bcoef[0] = mu0
    if nmax >= 1:
        bcoef[1] = 4.0 * (A + 1.0) * (B + 1.0) / ((A + B + 2.0) ** 2 * (A + B + 3.0))
    if nmax >= 2:
        kk = k[2:]
        bcoef[2:] = (
            4.0 * kk * (kk + A) * (kk + B) * (kk + A + B)
            / ((2 * kk + A + B) ** 2 * (2 * kk + A + B + 1.0) * (2 * kk + A + B - 1.0))
        )
    sqrt_beta = np.sqrt(bcoef)
    return alpha, sqrt_beta, mu0


def evaluate_table(basis, nmax, x):
    """Matrix P with P[n, q] = p_n(x[q]) for n = 0..nmax, by the orthonormal
    three-term recurrence mapped to (a, b).

    Sign and magnitude match the signed Rodrigues normalization (positive
    leading coefficients, p_n(a) carrying sign (-1)**n).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < basis.a) or np.any(x > basis.b):
        raise DomainError("evaluation point outside [a, b]; extrapolation refused")
    t = basis.to_reference(x)
    alpha, sb, mu0 = recurrence_coefficients(basis, nmax + 1)
    scale = (basis.length / 2.0) ** (-(basis.beta + basis.gamma + 1.0) / 2.0)
    P = np.empty((nmax + 1, x.size))
    P[0] = 1.0 / math.sqrt(mu0)
    if nmax >= 1:
        P[1] = (t - alpha[0]) * P[0] / sb[1]
    for n in range(1, nmax):
        P[n + 1] = ((t - alpha[n]) * P[n] - sb[n] * P[n - 1]) / sb[n + 1]
    return scale * P


def evaluate(basis, n, x):
    """Value of the n-th orthonormal polynomial at x in [a, b]."""
    if n < 0:
        raise ContractError("degree must be nonnegative")
    table = evaluate_table(basis, n, x)
    out = table[n]
    return float(out[0]) if np.ndim(x) == 0 else out


def endpoint_derivative(basis, n, k, end):
    """k-th derivative of p_n at an endpoint, by the closed forms

        p_n^(k)(a) = (-1)**(n+k) (b-a)**(-k-(beta+gamma+1)/2) * nf_n * W_n^k(beta, gamma)
        p_n^(k)(b) =             (b-a)**(-k-(beta+gamma+1)/2) * nf_n * W_n^k(gamma, beta)

    with nf_n the normalization factor and W the Taylor weight. Both carry the
    negative interval exponent (the right-endpoint scaling mirrors the left).
    """
    if not 0 <= k <= n:
        raise ContractError(f"need 0 <= k <= n, got n={n}, k={k}")
    if end not in ("left", "right"):
        raise ContractError(f"end must be 'left' or 'right', got {end!r}")
    lw = (
        log_taylor_weight(n, k, basis.beta, basis.gamma)
        if end == "left"
        else log_taylor_weight(n, k, basis.gamma, basis.beta)
    )
    mag = math.exp(
        log_norm_factor(basis, n)
        + lw
        - (k + (basis.beta + basis.gamma + 1.0) / 2.0) * math.log(basis.length)
    )
    if end == "left" and (n + k) % 2:
        return -mag
    return mag


def taylor_coefficients(basis, n, about="left"):
    """Coefficients c_0..c_n of p_n as a series in (x-a) (about='left') or
    (b-x) (about='right'); Sum_k c_k (x-a)**k reproduces evaluate().

    Verification path only: the alternating sum is unstable for large n.
    """
    if n < 0:
        raise ContractError("degree must be nonnegative")
    out = np.empty(n + 1)
    for k in range(n + 1):
        d = endpoint_derivative(basis, n, k, "left" if about == "left" else "right")
        c = d / math.factorial(k)
        if about == "right" and k % 2:
            c = -c
        out[k] = c
    return out


def gauss_jacobi(basis, num_nodes):
    """num_nodes-point Gauss rule for the weight omega on (a, b).

    Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal
    recurrence matrix; weights come from the Christoffel function evaluated by
    the orthonormal recurrence (all positive by construction). Exact for
    polynomials of degree <= 2*num_nodes - 1 against omega; the weight's
    endpoint singularities live entirely in the weights.
    """
    if num_nodes < 1:
        raise ContractError("need at least one node")
    alpha, sb, mu0 = recurrence_coefficients(basis, num_nodes)
    t = eigvalsh_tridiagonal(alpha[:num_nodes], sb[1:num_nodes])
    # Christoffel weights: 1 / sum_j ptilde_j(t)^2 over j < num_nodes.
    pm1 = np.zeros_like(t)
    p0 = np.full_like(t, 1.0 / math.sqrt(mu0))
    acc = p0 * p0
    for j in range(num_nodes - 1):
        p1 = ((t - alpha[j]) * p0 - (sb[j] * pm1 if j > 0 else 0.0)) / sb[j + 1]
        acc += p1 * p1
        pm1, p0 = p0, p1
    w_ref = 1.0 / acc
    x = basis.a + basis.length * (t + 1.0) / 2.0
    w = w_ref * (basis.length / 2.0) ** (basis.beta + basis.gamma + 1.0)
    order = np.argsort(x)
    return x[order], w[order]


def project(basis, f, cutoff, num_nodes=None):
    """Coefficients (f, p_n) for n = 0..cutoff by Gauss-Jacobi quadrature.

    The default node count 2*(cutoff+1) + 32 leaves margin for smooth
    non-polynomial integrands; pass num_nodes to override.
    """
    if cutoff < 0:
        raise ContractError("cutoff must be nonnegative")
    q = num_nodes if num_nodes is not None else 2 * (cutoff + 1) + 32
    x, w = gauss_jacobi(basis, q)
    try:
        fx = np.asarray(f(x), dtype=float)
        if fx.shape != x.shape:
            raise TypeError("not vectorized")
    except (TypeError, ValueError):
        fx = np.asarray([float(f(xi)) for xi in x])
    if not np.all(np.isfinite(fx)):
        bad = int(np.flatnonzero(~np.isfinite(fx))[0])
        raise InputError(f"integrand not finite at node x={x[bad]!r} (index {bad})")
    table = evaluate_table(basis, cutoff, x)
    coeffs = table @ (w * fx)
    return CoefficientSequence(basis=basis, values=coeffs)
