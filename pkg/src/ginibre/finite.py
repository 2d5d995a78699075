"""Finite-size matrix kernel of the real Ginibre ensemble with N = 2M.

Two independent evaluations are provided:

* ``kernel_closed_form`` uses the closed forms in terms of truncated
  exponential sums (gauge-reduced kernel K~, where the phase
  psi(z) = exp((z^2 - zbar^2)/4) has been stripped from complex arguments);
* ``kernel_skew_sum`` sums the skew-orthogonal polynomial expansion term by
  term and returns the kernel K itself.

The two are related by K(g, g2) = D(g) K~(g, g2) D(g2) with
D(g) = diag(psi(g), psi(conj g)), which has unit determinant, so every
Pfaffian built from them agrees.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .special import (
    MAX_ORDER,
    DomainError,
    log_erfc_real,
    log_exp_partial_sum,
    log_regularized_gamma_p,
    regularized_gamma_p,
)

__all__ = [
    "REAL_TOL",
    "KernelBlock",
    "classify_point",
    "gauge_phase",
    "weight_phi",
    "kernel_closed_form",
    "kernel_skew_sum",
    "partition_function",
    "r_correction",
    "skew_norm_log",
    "skew_polynomials",
]

REAL_TOL = 1e-12
SKEW_SUM_MAX_ORDER = 60

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class KernelBlock:
    """One 2x2 block of the matrix kernel at an argument pair (g, g2).

    The block is [[ds, s], [-s_swapped, is_plus_e]] with ds = DS(g, g2),
    s = S(g, g2), s_swapped = S(g2, g) and is_plus_e = IS(g, g2) + E(g, g2).
    """

    ds: complex
    s: complex
    s_swapped: complex
    is_plus_e: complex

    def matrix(self):
        return np.array([[self.ds, self.s], [-self.s_swapped, self.is_plus_e]], dtype=complex)

    @classmethod
    def from_matrix(cls, m):
        return cls(complex(m[0][0]), complex(m[0][1]), complex(-m[1][0]), complex(m[1][1]))

    def transposed(self):
        """Block for the swapped argument pair, -(this block)^T."""
        return KernelBlock(-self.ds, self.s_swapped, self.s, -self.is_plus_e)


def classify_point(g):
    """Return (value, is_real).  Reals come back as float, others as complex.

    Points within 1e-12 of the real axis count as real; points below it are
    rejected.
    """
    g = complex(g)
    if not (math.isfinite(g.real) and math.isfinite(g.imag)):
        raise DomainError("point must be finite")
    if abs(g.imag) <= REAL_TOL:
        return g.real, True
    if g.imag < 0:
        raise DomainError("point %r lies in the lower half plane" % (g,))
    return g, False


def _check_order(M, cap=MAX_ORDER):
    if int(M) != M or M < 1:
        raise DomainError("M must be a positive integer")
    if M > cap:
        raise DomainError("M = %d exceeds the supported maximum %d" % (M, cap))
    return int(M)


def gauge_phase(g):
    """psi(g) = exp((g^2 - conj(g)^2)/4), a unit-modulus phase (1 on the real line)."""
    g = complex(g)
    return cmath.exp(1j * g.real * g.imag)


def weight_phi(g):
    """phi(g) = exp(-g^2/4 - conj(g)^2/4) sqrt(erfc(sqrt2 |Im g|))."""
    g = complex(g)
    return math.exp(-0.5 * (g.real ** 2 - g.imag ** 2) + 0.5 * log_erfc_real(_SQRT2 * abs(g.imag)))


def _half_log_erfc(y):
    return 0.5 * log_erfc_real(_SQRT2 * abs(y))


def _log_core(n, a, b):
    # log of exp(-(a-b)^2/2) exp(-ab) e_M(ab) / sqrt(2 pi), with n = 2M-1 terms
    a = complex(a)
    b = complex(b)
    return -0.5 * (a - b) ** 2 - _LOG_SQRT_2PI + log_exp_partial_sum(n, a * b)


def _exp(lv):
    if lv.real == -math.inf:
        return 0j
    return cmath.exp(lv)


def r_correction(M, z, x):
    """Correction term r_M(z, x) of the finite kernel.

    r_M(z, x) = exp(-z^2/2)/sqrt(2 pi) sqrt(erfc(sqrt2 |Im z|))
                * 2^(M-3/2)/(2M-2)! sgn(x) z^(2M-1) lowergamma(M-1/2, x^2/2),
    assembled in log space.  Zero for x = 0 or z = 0.
    """
    M = _check_order(M)
    z = complex(z)
    x = float(x)
    if x == 0.0 or z == 0:
        return 0j
    lv = (
        -0.5 * z * z
        - _LOG_SQRT_2PI
        + _half_log_erfc(z.imag)
        + (M - 1.5) * math.log(2.0)
        - math.lgamma(2 * M - 1)
        + (2 * M - 1) * cmath.log(z)
        + math.lgamma(M - 0.5)
        + log_regularized_gamma_p(M - 0.5, 0.5 * x * x)
    )
    return math.copysign(1.0, x) * _exp(lv)


def _poisson_p_sum(M, p, q):
    """sum_{m<M} Poisson_m(p^2/2) * P(m + 1/2, q^2/2)."""
    lam = 0.5 * p * p
    mu = 0.5 * q * q
    if mu == 0.0:
        return 0.0
    m = np.arange(M, dtype=float)
    if lam == 0.0:
        logpois = np.where(m == 0, 0.0, -np.inf)
    else:
        logpois = -lam + m * math.log(lam) - gammaln(m + 1.0)
    # P(a, mu) = P(a+1, mu) + mu^a e^-mu / Gamma(a+1): add positive terms downward
    ptop = regularized_gamma_p(M - 0.5, mu)
    if M > 1:
        a = m[:-1] + 0.5
        inc = np.exp(a * math.log(mu) - mu - gammaln(a + 1.0))
        pvals = np.append(ptop + np.cumsum(inc[::-1])[::-1], ptop)
    else:
        pvals = np.array([ptop])
    return float(np.sum(np.exp(logpois) * pvals))


def _sgn(x):
    return (x > 0) - (x < 0)


def _real_real(M, x, x2):
    n = 2 * M - 1
    s = _exp(_log_core(n, x, x2)) + r_correction(M, x, x2)
    s_sw = _exp(_log_core(n, x2, x)) + r_correction(M, x2, x)
    ds = (x2 - x) * _exp(_log_core(n, x, x2))
    is_ = 0.5 * (_sgn(x2) * _poisson_p_sum(M, x, x2) - _sgn(x) * _poisson_p_sum(M, x2, x))
    e = 0.5 * _sgn(x - x2)
    return KernelBlock(complex(ds), complex(s), complex(s_sw), complex(is_ + e))


def _complex_complex(M, z, z2):
    n = 2 * M - 1
    h = _half_log_erfc(z.imag) + _half_log_erfc(z2.imag)
    zc, z2c = z.conjugate(), z2.conjugate()
    s = 1j * (z2c - z) * _exp(_log_core(n, z, z2c) + h)
    s_sw = 1j * (zc - z2) * _exp(_log_core(n, z2, zc) + h)
    ds = (z2 - z) * _exp(_log_core(n, z, z2) + h)
    is_ = -(z2c - zc) * _exp(_log_core(n, zc, z2c) + h)
    return KernelBlock(ds, s, s_sw, is_)


def _real_complex(M, x, z):
    n = 2 * M - 1
    h = _half_log_erfc(z.imag)
    zc = z.conjugate()
    s = 1j * (zc - x) * _exp(_log_core(n, x, zc) + h)
    s_sw = _exp(_log_core(n, x, z) + h) + r_correction(M, z, x)
    ds = (z - x) * _exp(_log_core(n, x, z) + h)
    is_ = -1j * _exp(_log_core(n, x, zc) + h) - 1j * r_correction(M, zc, x)
    return KernelBlock(ds, s, s_sw, is_)


def kernel_closed_form(M, g, g2):
    """Gauge-reduced finite kernel block K~_{2M}(g, g2) from the closed forms.

    Arguments are real numbers or points of the upper half plane.
    """
    M = _check_order(M)
    a, ra = classify_point(g)
    b, rb = classify_point(g2)
    if ra and rb:
        return _real_real(M, a, b)
    if not ra and not rb:
        return _complex_complex(M, a, b)
    if ra:
        return _real_complex(M, a, b)
    return _real_complex(M, b, a).transposed()


def skew_polynomials(m, g):
    """(pi_{2m}(g), pi_{2m+1}(g)) for the Ginibre skew-orthogonal family."""
    g = complex(g)
    even = g ** (2 * m)
    odd = g ** (2 * m + 1) - (2 * m * g ** (2 * m - 1) if m > 0 else 0.0)
    return even, odd


def skew_norm_log(m):
    """log of the skew norm <pi_2m | pi_2m+1> = 2 sqrt(2 pi) (2m)!."""
    return math.log(2.0) + _LOG_SQRT_2PI + math.lgamma(2 * m + 1)


def _skew_vectors(M, g):
    """Per-m vectors (pi~_{2m}, pi~_{2m+1}, eps pi~_{2m}, eps pi~_{2m+1}) / sqrt((2m)!).

    Each of the two factors in a summand carries 1/sqrt((2m)!) so that the
    products reproduce the 1/(2m)! weight without forming huge powers.
    """
    val, real = classify_point(g)
    out = np.zeros((4, M), dtype=complex)
    if real:
        x = val
        lam = 0.5 * x * x
        for m in range(M):
            half = 0.5 * math.lgamma(2 * m + 1)
            if x == 0.0:
                p_even = 1.0 if m == 0 else 0.0
                p_odd = 0.0
            else:
                lx = math.log(abs(x))
                sx = _sgn(x)
                p_even = math.exp(2 * m * lx - half)
                p_odd = sx * math.exp((2 * m + 1) * lx - half)
                if m > 0:
                    p_odd -= 2 * m * sx * math.exp((2 * m - 1) * lx - half)
            w = math.exp(-lam)
            out[0, m] = p_even * w
            out[1, m] = p_odd * w
            # eps pi~_2m = -2^(m-1/2) sgn(x) lowergamma(m+1/2, x^2/2)
            if x != 0.0:
                lg = (m - 0.5) * math.log(2.0) + math.lgamma(m + 0.5) + log_regularized_gamma_p(m + 0.5, lam)
                out[2, m] = -_sgn(x) * math.exp(lg - half)
            # eps pi~_{2m+1} = x^{2m} e^{-x^2/2}
            out[3, m] = p_even * w
        return out
    z = val
    phi = weight_phi(z)
    zc = z.conjugate()
    for m in range(M):
        half = 0.5 * math.lgamma(2 * m + 1)
        lz = cmath.log(z)
        lzc = cmath.log(zc)
        p_even = cmath.exp(2 * m * lz - half)
        p_odd = cmath.exp((2 * m + 1) * lz - half)
        c_even = cmath.exp(2 * m * lzc - half)
        c_odd = cmath.exp((2 * m + 1) * lzc - half)
        if m > 0:
            p_odd -= 2 * m * cmath.exp((2 * m - 1) * lz - half)
            c_odd -= 2 * m * cmath.exp((2 * m - 1) * lzc - half)
        # pi~_n(z) = pi_n(z) phi(z) and eps pi~_n(z) = i pi_n(zbar) phi(z)
        out[0, m] = p_even * phi
        out[1, m] = p_odd * phi
        out[2, m] = 1j * c_even * phi
        out[3, m] = 1j * c_odd * phi
    return out


def kernel_skew_sum(M, g, g2):
    """Kernel block K_{2M}(g, g2) by summing over the skew-orthogonal pairs.

    Returns the un-reduced kernel, including the gauge phases for complex
    arguments.  Limited to M <= 60.
    """
    M = _check_order(M, SKEW_SUM_MAX_ORDER)
    a = _skew_vectors(M, g)
    b = _skew_vectors(M, g2)
    c = 1.0 / math.sqrt(2.0 * math.pi)

    def pair(u_even, u_odd, v_even, v_odd):
        return c * complex(np.sum(u_even * v_odd - u_odd * v_even))

    s = pair(a[0], a[1], b[2], b[3])
    s_sw = pair(b[0], b[1], a[2], a[3])
    ds = pair(a[0], a[1], b[0], b[1])
    is_ = pair(a[2], a[3], b[2], b[3])
    va, ra = classify_point(g)
    vb, rb = classify_point(g2)
    if ra and rb:
        is_ += 0.5 * _sgn(va - vb)
    return KernelBlock(ds, s, s_sw, is_)


def partition_function(M):
    """log Z for N = 2M: sum over m < M of log(2 sqrt(2 pi) (2m)!)."""
    M = int(M)
    if M < 1:
        raise DomainError("M must be a positive integer")
    return math.fsum(skew_norm_log(m) for m in range(M))
