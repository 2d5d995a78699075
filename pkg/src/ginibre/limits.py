"""Limiting kernels of the real Ginibre ensemble and the complex Ginibre kernels.

Real-line regimes (origin/real bulk and real edge) are exposed as 2x2
kernel blocks.  The complex bulk and complex edge are exposed through
their determinantal densities, since those limits are scalar kernels.

Normalization of the complex-edge kernel: the factor in front of the erfc
is 1/(2 pi), so that far inside the disk the density tends to the bulk
value 1/pi.  This agrees with the finite-M real Ginibre kernel and with
Monte Carlo samples of both real and complex Gaussian matrices.
"""

import cmath
import math

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtr

from .finite import KernelBlock, classify_point
from .special import (
    erfc_real,
    log_erfc_complex,
    log_erfc_real,
    log_exp_partial_sum,
)

__all__ = [
    "BULK_DENSITY",
    "EDGE_PREFACTOR",
    "limit_kernel_origin",
    "limit_kernel_real_edge",
    "edge_is_real_real",
    "limit_density_complex_bulk",
    "limit_density_complex_edge",
    "complex_bulk_kernel",
    "complex_edge_kernel",
    "complex_ginibre_kernel",
    "complex_ginibre_density",
    "determinant_density",
]

BULK_DENSITY = 1.0 / math.pi
EDGE_PREFACTOR = 1.0 / (2.0 * math.pi)

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_LOG_INV_SQRT_2PI = -0.5 * math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)


def _sgn(x):
    return (x > 0) - (x < 0)


def _half_log_erfc(y):
    return 0.5 * log_erfc_real(_SQRT2 * abs(y))


def _origin_real_real(x, x2):
    g = _INV_SQRT_2PI * math.exp(-0.5 * (x - x2) ** 2)
    is_ = 0.5 * _sgn(x - x2) * erfc_real(abs(x - x2) / _SQRT2)
    return KernelBlock(complex((x2 - x) * g), complex(g), complex(g), complex(is_))


def _origin_complex_complex(z, z2):
    h = _LOG_INV_SQRT_2PI + _half_log_erfc(z.imag) + _half_log_erfc(z2.imag)
    zc, z2c = z.conjugate(), z2.conjugate()
    ds = (z2 - z) * cmath.exp(h - 0.5 * (z - z2) ** 2)
    s = 1j * (z2c - z) * cmath.exp(h - 0.5 * (z - z2c) ** 2)
    s_sw = 1j * (zc - z2) * cmath.exp(h - 0.5 * (z2 - zc) ** 2)
    is_ = -(z2c - zc) * cmath.exp(h - 0.5 * (zc - z2c) ** 2)
    return KernelBlock(ds, s, s_sw, is_)


def _origin_real_complex(x, z):
    h = _LOG_INV_SQRT_2PI + _half_log_erfc(z.imag)
    zc = z.conjugate()
    ds = (z - x) * cmath.exp(h - 0.5 * (x - z) ** 2)
    s = 1j * (zc - x) * cmath.exp(h - 0.5 * (x - zc) ** 2)
    s_sw = cmath.exp(h - 0.5 * (x - z) ** 2)
    is_ = -1j * cmath.exp(h - 0.5 * (x - zc) ** 2)
    return KernelBlock(ds, s, s_sw, is_)


def _dispatch(g, g2, rr, cc, rc):
    a, ra = classify_point(g)
    b, rb = classify_point(g2)
    if ra and rb:
        return rr(a, b)
    if not ra and not rb:
        return cc(a, b)
    if ra:
        return rc(a, b)
    return rc(b, a).transposed()


def limit_kernel_origin(g, g2):
    """Limit kernel at the origin (and anywhere in the real bulk)."""
    return _dispatch(g, g2, _origin_real_real, _origin_complex_complex, _origin_real_complex)


def _edge_factor(u, w):
    # log erfc(u w / sqrt 2)
    return log_erfc_complex(u * w / _SQRT2)


def _normal_wedge(a, b):
    """P(X < a, X + Y <= b) for independent standard normals X, Y."""
    if a == -math.inf:
        return 0.0
    lo = min(a, b) - 40.0
    val, _ = quad(lambda t: math.exp(-0.5 * t * t) * ndtr(b - t), lo, a, epsabs=1e-15, epsrel=1e-13, limit=200)
    return val / math.sqrt(2.0 * math.pi)


def edge_is_real_real(u, r, r2):
    """IS + E entry of the real-edge kernel for two real arguments.

    The finite-M entry is a truncated Poisson mixture of incomplete gamma
    functions; at the edge the truncation cuts the Poisson mass in half and
    a central-limit argument gives

        1/2 sgn(r - r2) + (u/2) [F(r, r2) - F(r2, r)],
        F(r, r2) = P(X < -sqrt2 u r, X + Y <= sqrt2 u (r2 - r)).

    Without the truncation this would reduce to the bulk value
    1/2 sgn(r - r2) erfc(|r - r2|/sqrt 2).
    """
    f12 = _normal_wedge(-_SQRT2 * u * r, _SQRT2 * u * (r2 - r))
    f21 = _normal_wedge(-_SQRT2 * u * r2, _SQRT2 * u * (r - r2))
    return 0.5 * _sgn(r - r2) + 0.5 * u * (f12 - f21)


def _edge_real_real(u, r, r2):
    lg = math.log(0.5) + _LOG_INV_SQRT_2PI - 0.5 * (r - r2) ** 2
    base = cmath.exp(lg + _edge_factor(u, r + r2)).real
    corr = math.exp(-r * r) * erfc_real(-u * r2) / (4.0 * math.sqrt(math.pi))
    corr2 = math.exp(-r2 * r2) * erfc_real(-u * r) / (4.0 * math.sqrt(math.pi))
    is_ = edge_is_real_real(u, r, r2) if r != r2 else 0.0
    return KernelBlock(complex((r2 - r) * base), complex(base + corr), complex(base + corr2), complex(is_))


def _edge_complex_complex(u, s, s2):
    h = math.log(0.5) + _LOG_INV_SQRT_2PI + _half_log_erfc(s.imag) + _half_log_erfc(s2.imag)
    sc, s2c = s.conjugate(), s2.conjugate()
    ds = (s2 - s) * cmath.exp(h - 0.5 * (s - s2) ** 2 + _edge_factor(u, s + s2))
    st = 1j * (s2c - s) * cmath.exp(h - 0.5 * (s - s2c) ** 2 + _edge_factor(u, s + s2c))
    st_sw = 1j * (sc - s2) * cmath.exp(h - 0.5 * (s2 - sc) ** 2 + _edge_factor(u, s2 + sc))
    is_ = -(s2c - sc) * cmath.exp(h - 0.5 * (sc - s2c) ** 2 + _edge_factor(u, sc + s2c))
    return KernelBlock(ds, st, st_sw, is_)


def _edge_real_complex(u, r, s):
    h = math.log(0.5) + _LOG_INV_SQRT_2PI + _half_log_erfc(s.imag)
    sc = s.conjugate()
    lc = math.log(0.25 / math.sqrt(math.pi)) + _half_log_erfc(s.imag) + log_erfc_real(-u * r)
    ds = (s - r) * cmath.exp(h - 0.5 * (r - s) ** 2 + _edge_factor(u, r + s))
    st = 1j * (sc - r) * cmath.exp(h - 0.5 * (r - sc) ** 2 + _edge_factor(u, r + sc))
    st_sw = cmath.exp(h - 0.5 * (r - s) ** 2 + _edge_factor(u, r + s)) + cmath.exp(lc - s * s)
    is_ = -1j * cmath.exp(h - 0.5 * (r - sc) ** 2 + _edge_factor(u, r + sc)) - 1j * cmath.exp(lc - sc * sc)
    return KernelBlock(ds, st, st_sw, is_)


def limit_kernel_real_edge(u, g, g2):
    """Limit kernel at the real edge u = +1 or u = -1.

    The correction terms (1/(4 sqrt(pi))) e^{-s^2} erfc(-u r) carry the same
    sqrt(erfc(sqrt2 Im s)) weight as the rest of the entry; on the real line
    that weight is 1.  The real/real IS entry is ``edge_is_real_real``.
    """
    if u not in (1, -1):
        raise ValueError("u must be +1 or -1")
    return _dispatch(
        g,
        g2,
        lambda a, b: _edge_real_real(u, a, b),
        lambda a, b: _edge_complex_complex(u, a, b),
        lambda a, b: _edge_real_complex(u, a, b),
    )


def determinant_density(kernel, points):
    """det[kernel(p_k, p_k')] for a scalar Hermitian kernel, as a real number."""
    pts = [complex(p) for p in points]
    if not pts:
        return 1.0
    mat = np.array([[kernel(a, b) for b in pts] for a in pts], dtype=complex)
    return float(np.linalg.det(mat).real)


def complex_bulk_kernel(s, s2):
    """(1/pi) exp(-|s|^2/2 - |s2|^2/2 + s conj(s2))."""
    s = complex(s)
    s2 = complex(s2)
    return BULK_DENSITY * cmath.exp(-0.5 * abs(s) ** 2 - 0.5 * abs(s2) ** 2 + s * s2.conjugate())


def complex_edge_kernel(u, s, s2):
    """(1/(2 pi)) exp(-|s|^2/2 - |s2|^2/2 + s conj(s2)) erfc((s conj(u) + conj(s2) u)/sqrt 2)."""
    u = complex(u)
    s = complex(s)
    s2 = complex(s2)
    w = (s * u.conjugate() + s2.conjugate() * u) / _SQRT2
    lv = -0.5 * abs(s) ** 2 - 0.5 * abs(s2) ** 2 + s * s2.conjugate() + log_erfc_complex(w)
    return EDGE_PREFACTOR * cmath.exp(lv)


def limit_density_complex_bulk(s_points):
    """Correlation of m complex eigenvalues in the complex bulk (m >= 1)."""
    if len(s_points) < 1:
        raise ValueError("need at least one point")
    return determinant_density(complex_bulk_kernel, s_points)


def limit_density_complex_edge(u, s_points):
    """Correlation of m complex eigenvalues near the edge point u, |u| = 1."""
    u = complex(u)
    if abs(abs(u) - 1.0) > 1e-12:
        raise ValueError("edge direction must have modulus 1")
    if len(s_points) < 1:
        raise ValueError("need at least one point")
    return determinant_density(lambda a, b: complex_edge_kernel(u, a, b), s_points)


def complex_ginibre_kernel(N, z, z2):
    """Finite-N kernel of N x N complex Gaussian matrices (E|Y_ij|^2 = 1).

    K_N(z, z2) = (1/pi) exp(-|z|^2/2 - |z2|^2/2) sum_{k<N} (z conj(z2))^k / k!
    """
    N = int(N)
    if N < 1:
        raise ValueError("N must be positive")
    z = complex(z)
    z2 = complex(z2)
    t = z * z2.conjugate()
    lv = -0.5 * abs(z) ** 2 - 0.5 * abs(z2) ** 2 + t + log_exp_partial_sum(N, t)
    if lv.real == -math.inf:
        return 0j
    return BULK_DENSITY * cmath.exp(lv)


def complex_ginibre_density(N, points):
    """m-point correlation of the finite complex Ginibre ensemble."""
    return determinant_density(lambda a, b: complex_ginibre_kernel(N, a, b), points)
