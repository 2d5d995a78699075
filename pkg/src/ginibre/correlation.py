"""Correlation functions R_{l,m} assembled from kernel blocks."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import limits
from .finite import kernel_closed_form, r_correction
from .pfaffian import pfaffian
from .regimes import (
    ComplexBulk,
    ComplexEdge,
    ComplexGinibreBulk,
    ComplexGinibreEdge,
    ComplexGinibreFinite,
    FiniteN,
    OriginBulk,
    RealEdge,
)
from .special import log_erfc_real, log_exp_partial_sum

__all__ = [
    "SpectralConfiguration",
    "ImaginaryResidue",
    "DimensionError",
    "QuadratureNonconvergence",
    "kernel_function",
    "correlation_matrix",
    "correlation",
    "real_density",
    "complex_density",
    "integrated_counts",
]

IMAG_RTOL = 1e-6


class ImaginaryResidue(ArithmeticError):
    pass


class DimensionError(ValueError):
    pass


class QuadratureNonconvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpectralConfiguration:
    """l real points followed by m points off the real axis.

    For the real Ginibre regimes the complex points must lie in the open
    upper half plane; the complex-bulk/edge regimes and the complex Ginibre
    regimes accept any complex offsets.
    """

    reals: tuple = field(default_factory=tuple)
    uppers: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "reals", tuple(float(x) for x in self.reals))
        object.__setattr__(self, "uppers", tuple(complex(z) for z in self.uppers))
        for x in self.reals:
            if not math.isfinite(x):
                raise ValueError("real points must be finite")

    @property
    def points(self):
        return self.reals + self.uppers


def kernel_function(regime):
    """Map (g, g2) -> KernelBlock for the Pfaffian regimes."""
    if isinstance(regime, FiniteN):
        M = regime.M
        return lambda g, g2: kernel_closed_form(M, g, g2)
    if isinstance(regime, OriginBulk):
        return limits.limit_kernel_origin
    if isinstance(regime, RealEdge):
        u = regime.u
        return lambda g, g2: limits.limit_kernel_real_edge(u, g, g2)
    raise TypeError("%r has no matrix kernel" % (regime,))


def correlation_matrix(kernel, points):
    """Antisymmetric 2n x 2n matrix of kernel blocks over the point list."""
    n = len(points)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            blk = kernel(points[i], points[j]).matrix()
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = blk
            if j != i:
                out[2 * j:2 * j + 2, 2 * i:2 * i + 2] = -blk.T
    return out


def _check_uppers(cfg):
    for z in cfg.uppers:
        if not z.imag > 0:
            raise ValueError("complex points must lie in the open upper half plane, got %r" % (z,))


def _real_part(value, scale):
    value = complex(value)
    if abs(value.imag) > IMAG_RTOL * abs(value) + 1e-13 * scale:
        raise ImaginaryResidue("Pfaffian has imaginary part %.3g (value %.3g)" % (value.imag, abs(value)))
    return value.real


def correlation(regime, cfg):
    """R_{l,m}(reals, uppers) in the given regime."""
    if isinstance(regime, (ComplexBulk, ComplexEdge, ComplexGinibreBulk, ComplexGinibreEdge, ComplexGinibreFinite)):
        if cfg.reals:
            raise ValueError("regime %r has no real eigenvalues" % (regime,))
        pts = cfg.uppers
        if not pts:
            return 1.0
        if isinstance(regime, (ComplexBulk, ComplexGinibreBulk)):
            return limits.limit_density_complex_bulk(pts)
        if isinstance(regime, (ComplexEdge, ComplexGinibreEdge)):
            return limits.limit_density_complex_edge(regime.u, pts)
        return limits.complex_ginibre_density(regime.N, pts)
    _check_uppers(cfg)
    if isinstance(regime, FiniteN) and len(cfg.reals) + 2 * len(cfg.uppers) > 2 * regime.M:
        raise DimensionError("l + 2m = %d exceeds N = %d" % (len(cfg.reals) + 2 * len(cfg.uppers), 2 * regime.M))
    pts = cfg.points
    if not pts:
        return 1.0
    mat = correlation_matrix(kernel_function(regime), pts)
    scale = float(np.max(np.abs(mat))) ** len(pts)
    return _real_part(pfaffian(mat), scale)


# One-point densities only need the S entry on the diagonal; these avoid
# building the whole block.

_LOG_INV_SQRT_2PI = -0.5 * math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)


def real_density(regime, x):
    """R_{1,0}(x): density of real eigenvalues."""
    x = float(x)
    if isinstance(regime, FiniteN):
        M = regime.M
        lv = _LOG_INV_SQRT_2PI + log_exp_partial_sum(2 * M - 1, x * x)
        return math.exp(lv.real) + r_correction(M, x, x).real
    return correlation(regime, SpectralConfiguration(reals=(x,)))


def complex_density(regime, z):
    """R_{0,1}(z): density of complex eigenvalues at z (upper half plane)."""
    z = complex(z)
    if isinstance(regime, FiniteN):
        if not z.imag > 0:
            raise ValueError("z must lie in the open upper half plane")
        y = z.imag
        # S~(z, z) = 2y e^{2y^2} erfc(sqrt2 y) e^{-|z|^2} e_M(|z|^2) / sqrt(2 pi)
        t = abs(z) ** 2
        lv = (
            math.log(2.0 * y)
            + _LOG_INV_SQRT_2PI
            + 2.0 * y * y
            + log_erfc_real(_SQRT2 * y)
            + log_exp_partial_sum(2 * regime.M - 1, t).real
        )
        return math.exp(lv)
    return correlation(regime, SpectralConfiguration(uppers=(z,)))


def integrated_counts(M, epsabs=1e-11, epsrel=1e-10):
    """(expected # real eigenvalues, expected # complex eigenvalues) for N = 2M.

    Both come from integrating the one-point densities over a box of
    half-width sqrt(4M) + 8, outside of which the weight is negligible.
    """
    M = int(M)
    if not 1 <= M <= 8:
        raise ValueError("integrated_counts supports 1 <= M <= 8")
    regime = FiniteN(M)
    box = math.sqrt(4.0 * M) + 8.0
    real_count, err1 = integrate.quad(lambda x: real_density(regime, x), -box, box, epsabs=epsabs, epsrel=epsrel, limit=400)

    def inner(x):
        val, err = integrate.quad(
            lambda y: complex_density(regime, complex(x, y)), 0.0, box, epsabs=epsabs, epsrel=epsrel, limit=400
        )
        return val

    complex_half, err2 = integrate.quad(inner, -box, box, epsabs=epsabs, epsrel=epsrel, limit=400)
    if err1 > 1e-6 or err2 > 1e-6:
        raise QuadratureNonconvergence("quadrature error estimates %.3g, %.3g" % (err1, err2))
    return real_count, 2.0 * complex_half
