"""The Galerkin coupling matrix of the fractional operator in the orthonormal
Jacobi basis, its quadrature oracle, and the auxiliary row-decay quantities.

The closed-form entry is a finite alternating sum of Beta/Gamma terms that is
exact but catastrophically cancellative: the largest term exceeds the sum by
roughly 10**(0.75*(n-m)) when n > m. Entries are therefore evaluated in three
escalating tiers, each with an a-posteriori error test:

1. compensated float64 in log space (fine while cancellation is mild),
2. a double-double term-ratio recurrence sharing one log-space scale anchor,
3. an exact scaled-big-integer recurrence (parameters treated as the exact
   rationals their floats denote) with a rigorous propagated-rounding bound.

All tiers share the same anchor term, so the common scale factor carries an
ordinary ~1e-15 relative error while the cancellation structure is resolved
exactly. Evaluation order is fixed, so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as sc

from . import jacobi as jac
from .accum import (
    dd_add,
    dd_add_f,
    dd_div,
    dd_mul,
    log_abs_bigint,
    neumaier_sum,
    two_sum,
)
from .errors import ContractError, DomainError, InputError
from .fracops import FracOrder, evaluate_power_terms, frac_jacobi
from .specfun import log_abs_reciprocal_gamma

__all__ = [
    "CouplingMatrix",
    "DecayDiagnostic",
    "entry",
    "oracle_entry",
    "assemble",
    "row_decay_factor",
    "tail_majorant",
    "decrease_onset",
    "convergence_weight",
    "decay_fit",
]

_ORIENTATIONS = ("a_plus", "b_minus")

_TIER1_RTOL = 1e-11
_TIER2_RTOL = 5e-13
_DD_EPS = 1e-31
_F64_EPS = 2.2e-16
_LN2 = math.log(2.0)


# -- closed-form entry --------------------------------------------------------

def _side_exponents(basis, orientation):
    """(B, G) exponent pair entering the closed form for this orientation."""
    if orientation == "a_plus":
        return basis.beta, basis.gamma
    if orientation == "b_minus":
        return basis.gamma, basis.beta
    raise ContractError(f"orientation must be one of {_ORIENTATIONS}, got {orientation!r}")


def _check_preconditions(order, basis, orientation):
    B, _ = _side_exponents(basis, orientation)
    if order.alpha + B + 1.0 <= 0.0:
        raise DomainError(
            f"Beta argument alpha+B+k+1 nonpositive at k=0 "
            f"(alpha={order.alpha}, side exponent B={B}); "
            "the defining inner product is not integrable"
        )


def _term_log_sign(alpha, B, G, m, n, k):
    """(log|t_k|, sign) of the k-th closed-form term for one cell."""
    lw = jac.log_taylor_weight(n, k, B, G)
    lb = (
        sc.gammaln(alpha + B + k + 1.0)
        + sc.gammaln(G + m + 1.0)
        - sc.gammaln(alpha + B + G + k + m + 2.0)
    )
    lrg, srg = log_abs_reciprocal_gamma(k + alpha - m + 1.0)
    sign = srg * (-1.0 if k % 2 else 1.0)
    return lw + lb + lrg, sign


def _dd_ratio_constants(alpha, B, G, m, n):
    """Double-double constants of the exact term ratio

        t_{k+1}/t_k = -(c1+k)(n-k)(c3+k) / ((d1+k)(d2+k)(d3+k))

    assembled by error-free transforms, hence exact for the given floats.
    Works elementwise when m, n are arrays.
    """
    c1 = dd_add_f(*two_sum(B, G), 1.0 + np.asarray(n, dtype=float))
    c3 = dd_add_f(*two_sum(alpha, B), 1.0)
    d1 = two_sum(B, 1.0)
    d2 = dd_add(*two_sum(alpha, B), *two_sum(G, np.asarray(m, dtype=float) + 2.0))
    d3 = dd_add_f(alpha, 0.0, 1.0 - np.asarray(m, dtype=float))
    return c1, c3, d1, d2, d3


def _tier2_scalar(alpha, B, G, m, n, k0):
    """Double-double running-product sum of t_k / t_{k0}, k = k0..n.

    Returns (sum, peak magnitude, term count).
    """
    (c1h, c1l), (c3h, c3l), (d1h, d1l), (d2h, d2l), (d3h, d3l) = _dd_ratio_constants(
        alpha, B, G, m, n
    )
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    peak = 1.0
    for k in range(k0, n):
        kf = float(k)
        nh, nl = dd_mul(*dd_add_f(c1h, c1l, kf), float(n - k), 0.0)
        nh, nl = dd_mul(nh, nl, *dd_add_f(c3h, c3l, kf))
        eh, el = dd_mul(*dd_add_f(d1h, d1l, kf), *dd_add_f(d2h, d2l, kf))
        eh, el = dd_mul(eh, el, *dd_add_f(d3h, d3l, kf))
        rh, rl = dd_div(nh, nl, eh, el)
        th, tl = dd_mul(th, tl, -rh, -rl)
        sh, sl = dd_add(sh, sl, th, tl)
        peak = max(peak, abs(th))
    return sh + sl, peak, n - k0 + 1


def _tier3_scalar(alpha, B, G, m, n, k0, scale_bits):
    """Exact scaled-big-integer version of the tier-2 sum.

    Every parameter is the exact rational its float denotes; each step does a
    single round-half division, so the error introduced at step k is at most
    half a scaled unit of the running term. Returns
    (acc, peak, min_term, count): all integers in units of 2**-scale_bits
    relative to t_{k0}.
    """
    fa, fB, fG = Fraction(alpha), Fraction(B), Fraction(G)
    c1 = fB + fG + 1 + n
    c3 = fa + fB + 1
    d1 = fB + 1
    d2 = fa + fB + fG + m + 2
    d3 = fa - m + 1
    D = 1
    for fr in (c1, c3, d1, d2, d3):
        D = D * fr.denominator // math.gcd(D, fr.denominator)
    C1, C3 = int(c1 * D), int(c3 * D)
    D1, D2, D3 = int(d1 * D), int(d2 * D), int(d3 * D)
    t = 1 << scale_bits
    acc = t
    peak = t
    min_term = t
    for k in range(k0, n):
        num = (n - k) * (C1 + k * D) * (C3 + k * D) * D
        den = (D1 + k * D) * (D2 + k * D) * (D3 + k * D)
        p = -t * num
        if den < 0:
            p, den = -p, -den
        t = (2 * p + den) // (2 * den) if p >= 0 else -((2 * (-p) + den) // (2 * den))
        acc += t
        at = abs(t)
        if at > peak:
            peak = at
        if at < min_term:
            min_term = at
    return acc, peak, min_term, n - k0 + 1


def _cell_eps(alpha, B, G, m, n):
    """Per-term relative error floor of the tier-1 log-space evaluation,
    driven by the magnitude of the largest log-Gamma in play."""
    big = abs(sc.gammaln(abs(alpha) + abs(B) + abs(G) + m + n + 4.0))
    return _F64_EPS * (8.0 + 6.0 * big)


def entry(order, basis, m, n, orientation="b_minus"):
    """Closed-form coupling value A_mn for the given orientation, scaled by
    (b-a)**alpha so the Galerkin identities

        (p_m, I^alpha_{a+} p_n)_omega = (-1)**n * entry(..., "a_plus")
        (p_m, I^alpha_{b-} p_n)_omega = (-1)**m * entry(..., "b_minus")

    hold on arbitrary intervals (on unit intervals this is the plain
    Beta/Gamma sum). Escalates through the precision tiers until an
    a-posteriori error bound certifies the cancellation was resolved.
    """
    if m < 0 or n < 0:
        raise ContractError("indices must be nonnegative")
    _check_preconditions(order, basis, orientation)
    alpha = order.alpha
    B, G = _side_exponents(basis, orientation)
    k0 = m if alpha == 0.0 else 0
    if k0 > n:
        return 0.0
    log_scale = (
        jac.log_norm_factor(basis, m)
        + jac.log_norm_factor(basis, n)
        + alpha * math.log(basis.length)
    )
    cnt = n - k0 + 1
    logs = np.empty(cnt)
    signs = np.empty(cnt)
    for k in range(k0, n + 1):
        logs[k - k0], signs[k - k0] = _term_log_sign(alpha, B, G, m, n, k)
    mx = float(np.max(logs))
    s1 = neumaier_sum(signs * np.exp(logs - mx))
    err1 = _cell_eps(alpha, B, G, m, n) * (cnt + 2)
    if abs(s1) > 0.0 and err1 <= _TIER1_RTOL * abs(s1):
        return _signed_exp(s1, mx + log_scale)
    anchor_log, anchor_sign = _term_log_sign(alpha, B, G, m, n, k0)
    peak_rel_log = mx - anchor_log
    with np.errstate(over="ignore", invalid="ignore"):
        s2, peak2, _ = _tier2_scalar(alpha, B, G, m, n, k0)
    if math.isfinite(s2) and math.isfinite(peak2):
        err2 = _DD_EPS * peak2 * (cnt + 2)
        if abs(s2) > 0.0 and err2 <= _TIER2_RTOL * abs(s2):
            return _signed_exp(anchor_sign * s2, anchor_log + log_scale)
    return _tier3_value(
        alpha, B, G, m, n, k0, peak_rel_log, anchor_log, anchor_sign, log_scale
    )


def _tier3_value(alpha, B, G, m, n, k0, peak_rel_log, anchor_log, anchor_sign, log_scale):
    cnt = n - k0 + 1
    sbits = max(160, int(max(peak_rel_log, 0.0) / _LN2) + 220)
    for _ in range(4):
        acc, peak3, min_t, _ = _tier3_scalar(alpha, B, G, m, n, k0, sbits)
        if min_t > 0:
            log_err = (
                math.log(0.5 * (cnt + 2) ** 2)
                + log_abs_bigint(peak3)
                - log_abs_bigint(min_t)
            )
            log_acc = log_abs_bigint(acc) if acc != 0 else -math.inf
            if acc != 0 and log_err <= math.log(_TIER2_RTOL) + log_acc:
                val = math.exp(log_acc - sbits * _LN2 + anchor_log + log_scale)
                return math.copysign(val, anchor_sign * (1.0 if acc > 0 else -1.0))
            # certified-tiny branch: |sum| provably below 1e-22 of the peak term
            log_env = np.logaddexp(log_acc, log_err) - log_abs_bigint(peak3)
            if log_env <= math.log(1e-22):
                if acc == 0:
                    return 0.0
                val = math.exp(log_acc - sbits * _LN2 + anchor_log + log_scale)
                return math.copysign(val, anchor_sign * (1.0 if acc > 0 else -1.0))
        sbits += 260
    raise ArithmeticError(
        f"coupling entry (m={m}, n={n}, alpha={alpha}) failed to certify; "
        "cancellation exceeds the configured precision budget"
    )


def _signed_exp(s, log_mag):
    if s == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(s)) + log_mag), s)


# -- quadrature oracle --------------------------------------------------------

def oracle_entry(order, basis, m, n, orientation="b_minus", extra_nodes=6):
    """Independent computation of the same coupling value through the
    weighted inner product: the fractional image of p_n comes from its
    power-term closed form, the endpoint power (distance)**alpha is absorbed
    into a modified Gauss-Jacobi weight, and the remaining integrand is a
    polynomial integrated exactly.
    """
    if m < 0 or n < 0:
        raise ContractError("indices must be nonnegative")
    _check_preconditions(order, basis, orientation)
    alpha = order.alpha
    side = "left" if orientation == "a_plus" else "right"
    terms = frac_jacobi(basis, n, FracOrder(alpha, side) if alpha != 0.0 else FracOrder(0.0, side))
    if orientation == "a_plus":
        mod = jac.JacobiBasis(basis.a, basis.b, basis.beta + alpha, basis.gamma)
    else:
        mod = jac.JacobiBasis(basis.a, basis.b, basis.beta, basis.gamma + alpha)
    q = (m + n) // 2 + 1 + extra_nodes
    x, w = jac.gauss_jacobi(mod, q)
    pm = jac.evaluate_table(basis, m, x)[m]
    # strip the (distance)**alpha factor absorbed by the modified weight
    dist = (x - basis.a) if side == "left" else (basis.b - x)
    poly = np.zeros_like(x)
    for t in terms:
        base = (x - basis.a) if t.anchor == "left" else (basis.b - x)
        poly += t.coefficient * base ** (t.exponent - alpha)
    ip = neumaier_sum(w * pm * poly)
    sign = (-1.0) ** n if orientation == "a_plus" else (-1.0) ** m
    return ip * sign


# -- dense assembly -----------------------------------------------------------

@dataclass
class CouplingMatrix:
    """Dense block A[m, n] for m < rows, n < cols, one orientation."""

    order: FracOrder
    basis: jac.JacobiBasis
    rows: int
    cols: int
    orientation: str
    values: np.ndarray

    def identity_deviation(self):
        """Max |A - signed identity| over the block; meaningful at alpha = 0."""
        tgt = np.zeros((self.rows, self.cols))
        d = np.arange(min(self.rows, self.cols))
        tgt[d, d] = (-1.0) ** d
        return float(np.abs(self.values - tgt).max())

    def to_csv(self, path):
        """Row-major full-precision CSV with header m,n,value."""
        with open(path, "w") as fh:
            fh.write("m,n,value\n")
            for i in range(self.rows):
                for j in range(self.cols):
                    fh.write(f"{i},{j},{self.values[i, j]:.17e}\n")


def assemble(order, basis, rows, cols, orientation="b_minus", col_abs_tol=None):
    """Dense coupling block of entry values (counts, indices from 0).

    ``col_abs_tol`` optionally supplies a per-column absolute error budget
    (length ``cols``); cells whose certified error already meets the budget
    skip further escalation. Cells are evaluated in a fixed order and are
    independent, so the result is deterministic.
    """
    if rows < 1 or cols < 1:
        raise ContractError("rows and cols must be at least 1")
    _check_preconditions(order, basis, orientation)
    if col_abs_tol is not None:
        col_abs_tol = np.asarray(col_abs_tol, dtype=float)
        if col_abs_tol.shape != (cols,):
            raise ContractError("col_abs_tol must have one budget per column")
    if rows * cols <= 2048:
        vals = np.empty((rows, cols))
        for i in range(rows):
            for j in range(cols):
                vals[i, j] = entry(order, basis, i, j, orientation)
        return CouplingMatrix(order, basis, rows, cols, orientation, vals)
    vals = _assemble_bulk(order, basis, rows, cols, orientation, col_abs_tol)
    return CouplingMatrix(order, basis, rows, cols, orientation, vals)


def _assemble_bulk(order, basis, rows, cols, orientation, col_abs_tol):
    alpha = order.alpha
    B, G = _side_exponents(basis, orientation)
    M, N = rows, cols
    K = cols  # k runs over 0..n <= N-1; allow index n+k up to 2N
    j_big = 2 * N + M + 4
    jj = np.arange(j_big, dtype=float)
    lgf = sc.gammaln(jj + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        tBG = sc.gammaln(B + G + 1.0 + jj)
    tB1 = sc.gammaln(B + 1.0 + jj)
    taB = sc.gammaln(alpha + B + 1.0 + jj)
    tG1 = sc.gammaln(G + 1.0 + jj)
    taBG = sc.gammaln(alpha + B + G + 2.0 + jj)
    ta1 = sc.gammaln(alpha + 1.0 + jj)
    tnA = sc.gammaln(-alpha + jj) if alpha < 0.0 else None
    lsin = math.log(math.sin(math.pi * (alpha + 1.0)) / math.pi) if alpha < 0.0 else 0.0

    marr = np.arange(M)
    narr = np.arange(N)
    ldp = jac.log_norm_factor(basis, np.arange(max(M, N)))
    log_scale = ldp[marr][:, None] + ldp[narr][None, :] + alpha * math.log(basis.length)

    def row_col_parts(k):
        # column part over n (valid for n >= k), row part over m
        col = lgf[narr] + tB1[narr] - lgf[np.maximum(narr - k, 0)] - tB1[k]
        if k > 0:
            col = col + (tBG[narr + k] - tBG[narr])
        row = taB[k] + tG1[marr] - taBG[marr + k]
        if alpha < 0.0:
            zpos = k >= marr
            r_rg = np.where(
                zpos,
                -ta1[np.maximum(k - marr, 0)],
                tnA[np.maximum(marr - k, 1)] + lsin,
            )
            srow = np.where(zpos, (-1.0) ** k, (-1.0) ** marr)
        else:
            zpos = k >= marr
            r_rg = np.where(zpos, -ta1[np.maximum(k - marr, 0)], -np.inf)
            srow = np.full(M, (-1.0) ** k)
        return col, row + r_rg, srow

    neg_inf = -np.inf
    mx = np.full((M, N), neg_inf)
    for k in range(N):
        col, rowp, _ = row_col_parts(k)
        lt = rowp[:, None] + col[None, :]
        lt[:, :k] = neg_inf  # k <= n only
        np.maximum(mx, lt, out=mx)
    s = np.zeros((M, N))
    comp = np.zeros((M, N))
    safe_mx = np.where(np.isfinite(mx), mx, 0.0)
    for k in range(N):
        col, rowp, srow = row_col_parts(k)
        lt = rowp[:, None] + col[None, :]
        lt[:, :k] = neg_inf
        term = srow[:, None] * np.exp(lt - safe_mx)
        t = s + term
        comp += np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
        s = t
    s += comp

    if alpha == 0.0:
        cnt = np.maximum(narr[None, :] - marr[:, None] + 1, 0).astype(float)
    else:
        cnt = np.broadcast_to((narr + 1).astype(float), (M, N))
    big = np.abs(
        sc.gammaln(abs(alpha) + abs(B) + abs(G) + marr[:, None] + narr[None, :] + 4.0)
    )
    err1 = _F64_EPS * (8.0 + 6.0 * big) * (cnt + 2)
    ok = (np.abs(s) > 0.0) & (err1 <= _TIER1_RTOL * np.abs(s))
    ok |= ~np.isfinite(mx)  # empty cells are exact zeros
    if col_abs_tol is not None:
        with np.errstate(over="ignore"):
            abs_err = err1 * np.exp(np.clip(safe_mx + log_scale, -745.0, 709.0))
        ok |= np.isfinite(mx) & (abs_err <= col_abs_tol[None, :])

    with np.errstate(invalid="ignore"):
        lv = np.where(np.abs(s) > 0, np.log(np.abs(np.where(np.abs(s) > 0, s, 1.0))), neg_inf)
    vals = np.sign(s) * np.exp(np.clip(lv + safe_mx + log_scale, -745.0, 709.0))
    vals[~np.isfinite(mx)] = 0.0

    hard = np.argwhere(~ok)
    if hard.size:
        if alpha < 0.0:
            hm = hard[:, 0].astype(int)
            hn = hard[:, 1].astype(int)
            vals[hm, hn] = _tier2_block(
                order, basis, alpha, B, G, hm, hn, safe_mx[hm, hn], log_scale, col_abs_tol
            )
        else:
            for i, j in hard:
                vals[int(i), int(j)] = entry(order, basis, int(i), int(j), orientation)
    return vals


def _tier2_block(order, basis, alpha, B, G, mlist, nlist, mx_cells, log_scale, col_abs_tol):
    """Vectorized double-double sums for a list of hard cells (alpha < 0,
    k0 = 0); cells the double-double bound cannot certify fall through to the
    exact big-integer tier."""
    C = mlist.size
    (c1h, c1l), (c3h, c3l), (d1h, d1l), (d2h, d2l), (d3h, d3l) = _dd_ratio_constants(
        alpha, B, G, mlist, nlist
    )
    c3h, c3l = np.full(C, c3h), np.full(C, c3l)
    d1h, d1l = np.full(C, d1h), np.full(C, d1l)
    th = np.ones(C)
    tl = np.zeros(C)
    sh = np.ones(C)
    sl = np.zeros(C)
    peak = np.ones(C)
    kmax = int(nlist.max())
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(kmax):
            active = k < nlist
            kf = float(k)
            nh, nl = dd_mul(*dd_add_f(c1h, c1l, kf), (nlist - k).astype(float), 0.0)
            nh, nl = dd_mul(nh, nl, *dd_add_f(c3h, c3l, kf))
            eh, el = dd_mul(*dd_add_f(d1h, d1l, kf), *dd_add_f(d2h, d2l, kf))
            eh, el = dd_mul(eh, el, *dd_add_f(d3h, d3l, kf))
            rh, rl = dd_div(nh, nl, eh, el)
            uh, ul = dd_mul(th, tl, -rh, -rl)
            th = np.where(active, uh, th)
            tl = np.where(active, ul, tl)
            vh, vl = dd_add(sh, sl, th, tl)
            sh = np.where(active, vh, sh)
            sl = np.where(active, vl, sl)
            peak = np.where(active, np.maximum(peak, np.abs(th)), peak)
        s2 = sh + sl
    out = np.empty(C)
    anchor = np.empty(C)
    asign = np.empty(C)
    for i in range(C):
        anchor[i], asign[i] = _term_log_sign(alpha, B, G, int(mlist[i]), int(nlist[i]), 0)
    with np.errstate(over="ignore", invalid="ignore"):
        err2 = _DD_EPS * peak * (nlist + 3)
        ok = np.isfinite(s2) & (np.abs(s2) > 0.0) & (err2 <= _TIER2_RTOL * np.abs(s2))
        if col_abs_tol is not None:
            abs_err = err2 * np.exp(np.clip(anchor + log_scale[mlist, nlist], -745.0, 709.0))
            ok |= np.isfinite(s2) & (abs_err <= col_abs_tol[nlist])
    for i in range(C):
        ls = log_scale[mlist[i], nlist[i]]
        if ok[i]:
            out[i] = _signed_exp(asign[i] * s2[i], anchor[i] + ls)
        else:
            out[i] = _tier3_value(
                alpha, B, G, int(mlist[i]), int(nlist[i]), 0,
                float(mx_cells[i] - anchor[i]), float(anchor[i]), float(asign[i]), float(ls),
            )
    return out


# -- auxiliary decay quantities ----------------------------------------------

def row_decay_factor(order, basis, m, k):
    """Positive magnitude factor of the k-th low-block term of row m,

        nf_m * Gamma(beta+m+1) * prod_{i=1}^{m-k}(m-k-alpha-i)
             / Gamma(alpha+beta+k+gamma+m+2),

    defined for 0 <= k < m and alpha in (-1, 0]; identically zero at
    alpha = 0 (the product contains the factor i = m-k).
    """
    if not 0 <= k <= m - 1:
        raise ContractError(f"need 0 <= k < m, got m={m}, k={k}")
    alpha = order.alpha
    if not -1.0 < alpha <= 0.0:
        raise DomainError(f"row decay factor needs alpha in (-1, 0], got {alpha}")
    if alpha == 0.0:
        return 0.0
    lg = (
        jac.log_norm_factor(basis, m)
        + sc.gammaln(basis.beta + m + 1.0)
        + sc.gammaln(m - k - alpha)
        - sc.gammaln(-alpha)
        - sc.gammaln(alpha + basis.beta + k + basis.gamma + m + 2.0)
    )
    return math.exp(lg)


def tail_majorant(k, eta, gamma):
    """The positive weight eta**k * sum_{i=0}^k 2**i / (i! (k-i)! Gamma(gamma+i+1)),
    evaluated through logs; decreasing in k from some onset for every eta."""
    return math.exp(log_tail_majorant(k, eta, gamma))


def log_tail_majorant(k, eta, gamma):
    if k < 0:
        raise ContractError("k must be nonnegative")
    if eta < 1 or int(eta) != eta:
        raise DomainError(f"eta must be a positive integer, got {eta}")
    if gamma <= -1.0:
        raise DomainError("gamma must exceed -1")
    i = np.arange(k + 1, dtype=float)
    logs = i * _LN2 - sc.gammaln(i + 1.0) - sc.gammaln(k - i + 1.0) - sc.gammaln(gamma + i + 1.0)
    return float(k * math.log(eta) + sc.logsumexp(logs))


def decrease_onset(eta, gamma, k_max=256):
    """Smallest N such that the majorant strictly decreases at every step
    k -> k+1 for N < k <= k_max (0 when it decreases throughout)."""
    logs = [log_tail_majorant(k, eta, gamma) for k in range(k_max + 2)]
    onset = 0
    for k in range(1, k_max + 1):
        if not logs[k + 1] < logs[k]:
            onset = k
    return onset


def convergence_weight(basis, n):
    """(value, log value) of the absolute-convergence weight

        nf_n * n! * Gamma(n+beta+1) * Gamma(n+gamma+1) / 4**n,

    which grows superexponentially; the log is the usable form for large n
    and the value overflows to inf past the double range.
    """
    if n < 0:
        raise ContractError("n must be nonnegative")
    lg = (
        jac.log_norm_factor(basis, n)
        + sc.gammaln(n + 1.0)
        + sc.gammaln(n + basis.beta + 1.0)
        + sc.gammaln(n + basis.gamma + 1.0)
        - n * math.log(4.0)
    )
    with np.errstate(over="ignore"):
        val = float(np.exp(lg))
    return val, float(lg)


@dataclass(frozen=True)
class DecayDiagnostic:
    """Least-squares power-law fit of magnitudes against index."""

    exponent_fit: float
    constant_fit: float
    fit_window: tuple
    residual: float


def decay_fit(indices, magnitudes, window=None):
    """Fit magnitudes ~ C * index**(-exponent) by least squares on logs.

    ``window`` is an (inclusive) index-position pair into the arrays; by
    default the upper half is used, where asymptotic statements live.
    Nonpositive magnitudes in the window are an input error (callers filter
    exact zeros beforehand).
    """
    idx = np.asarray(indices, dtype=float)
    mag = np.asarray(magnitudes, dtype=float)
    if idx.shape != mag.shape or idx.ndim != 1:
        raise ContractError("indices and magnitudes must be 1-d arrays of equal length")
    if window is None:
        lo = idx.size // 2
        hi = idx.size - 1
    else:
        lo, hi = window
    if hi - lo + 1 < 8:
        raise InputError("fit window must contain at least 8 points")
    xi = idx[lo : hi + 1]
    yi = mag[lo : hi + 1]
    if np.any(yi <= 0.0) or np.any(xi <= 0.0):
        raise InputError("fit window contains nonpositive magnitudes or indices")
    lx = np.log(xi)
    ly = np.log(yi)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.abs(ly - (slope * lx + intercept)).max())
    return DecayDiagnostic(
        exponent_fit=float(-slope),
        constant_fit=float(np.exp(intercept)),
        fit_window=(int(lo), int(hi)),
        residual=resid,
    )
