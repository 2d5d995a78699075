"""Distance between the finite-N kernel and its scaling limits.

For the origin (real bulk) the finite kernel differs from the limit by
quantities such as exp(-t) sum_{k >= 2M-1} t^k/k!, which drop far below
double precision once M is moderately large.  Subtracting two doubles
would then only measure rounding, so the real/real deviations are
computed directly from their tail representations with mpmath and
returned through ``log10_distance`` (the plain distance underflows to 0.0
when it is smaller than the smallest double).

Other regimes are compared in double precision:

* real edge, real/real pairs: entrywise on the gauge-reduced kernel;
* any pair with a non-real point in a Pfaffian regime: the gauge
  invariant correlations R(a), R(b) and R(a, b);
* complex and complex-Ginibre regimes: one- and two-point densities.
"""

import math

import mpmath

from . import limits
from .correlation import SpectralConfiguration, correlation
from .finite import classify_point, kernel_closed_form
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
from .special import MAX_ORDER

__all__ = ["finite_to_limit_distance", "log10_distance", "centre"]

_DPS = 40


def centre(regime, M, u=None):
    """Point u sqrt(N) around which the finite ensemble is zoomed."""
    if isinstance(regime, (RealEdge, ComplexEdge, ComplexGinibreEdge)):
        if u is not None and complex(u) != complex(regime.u):
            raise ValueError("u disagrees with the regime's edge direction")
        u = regime.u
    if u is None:
        u = 0.0
    u = complex(u)
    if isinstance(regime, OriginBulk):
        if u.imag != 0 or not -1 < u.real < 1:
            raise ValueError("origin/real bulk needs real -1 < u < 1")
    if isinstance(regime, ComplexBulk):
        if not (abs(u) < 1 and u.imag > 0):
            raise ValueError("complex bulk needs |u| < 1 and Im u > 0")
    if isinstance(regime, ComplexGinibreBulk) and not abs(u) < 1:
        raise ValueError("complex Ginibre bulk needs |u| < 1")
    return u * math.sqrt(2.0 * M)


# -- origin: exact deviations through tail sums ------------------------------


def _mp_exp_tail(n, t):
    """exp(-t) sum_{k>=n} t^k / k!  as an mpf."""
    t = mpmath.mpf(t)
    if t == 0:
        return mpmath.mpf(0)
    lead = mpmath.exp(-t) * t ** n / mpmath.factorial(n)
    total = mpmath.mpf(1)
    term = mpmath.mpf(1)
    j = 0
    eps = mpmath.mpf(10) ** (-_DPS)
    while True:
        j += 1
        term *= t / (n + j)
        total += term
        if abs(term) < eps * abs(total) and j > abs(t) - n:
            break
    return lead * total


def _mp_r(M, x, x2):
    # r_M(x, x2) for real arguments
    if x == 0 or x2 == 0:
        return mpmath.mpf(0)
    x = mpmath.mpf(x)
    x2 = mpmath.mpf(x2)
    val = (
        mpmath.exp(-x * x / 2)
        / mpmath.sqrt(2 * mpmath.pi)
        * mpmath.power(2, M - mpmath.mpf(1.5))
        / mpmath.factorial(2 * M - 2)
        * x ** (2 * M - 1)
        * mpmath.gammainc(M - mpmath.mpf(0.5), 0, x2 * x2 / 2)
    )
    return mpmath.sign(x2) * val


def _mp_poisson_p_tail(M, p, q):
    """sum_{m>=M} Poisson_m(p^2/2) P(m + 1/2, q^2/2)."""
    lam = mpmath.mpf(p) ** 2 / 2
    mu = mpmath.mpf(q) ** 2 / 2
    if lam == 0 or mu == 0:
        return mpmath.mpf(0)
    total = mpmath.mpf(0)
    m = M
    eps = mpmath.mpf(10) ** (-_DPS)
    while True:
        pois = mpmath.exp(-lam + m * mpmath.log(lam) - mpmath.loggamma(m + 1))
        term = pois * mpmath.gammainc(m + mpmath.mpf(0.5), 0, mu, regularized=True)
        total += term
        # both factors decrease once m > lam
        if m > lam and term < eps * total:
            return total
        m += 1


def _origin_deviation(M, x, x2):
    """Largest entry of |K~_{2M}(x, x2) - K_origin(x - x2)| for real points."""
    n = 2 * M - 1
    gauss = mpmath.exp(-(mpmath.mpf(x) - x2) ** 2 / 2) / mpmath.sqrt(2 * mpmath.pi)
    d_s = -gauss * _mp_exp_tail(n, mpmath.mpf(x) * x2) + _mp_r(M, x, x2)
    d_s2 = -gauss * _mp_exp_tail(n, mpmath.mpf(x) * x2) + _mp_r(M, x2, x)
    d_ds = (mpmath.mpf(x2) - x) * gauss * -_mp_exp_tail(n, mpmath.mpf(x) * x2)
    d_is = -(
        mpmath.sign(x2) * _mp_poisson_p_tail(M, x, x2) - mpmath.sign(x) * _mp_poisson_p_tail(M, x2, x)
    ) / 2
    return max(abs(d_s), abs(d_s2), abs(d_ds), abs(d_is))


# -- double precision comparisons ---------------------------------------------


def _block_distance(a, b):
    return max(abs(p - q) for p, q in zip((a.ds, a.s, a.s_swapped, a.is_plus_e), (b.ds, b.s, b.s_swapped, b.is_plus_e)))


def _pair_points(pair):
    a, b = pair
    return complex(a), complex(b)


def _cfg(points):
    if any(complex(p).imag < 0 for p in points):
        raise ValueError("points below the real axis")
    reals = []
    uppers = []
    for p in points:
        v, is_real = classify_point(p)
        if is_real:
            reals.append(v)
        else:
            uppers.append(v)
    return SpectralConfiguration(reals=reals, uppers=uppers)


def _correlation_distance(finite, limit, c, a, b):
    out = 0.0
    for pts in ((a,), (b,), (a, b)):
        if len(pts) == 2 and a == b:
            continue
        shifted = [c + p for p in pts]
        if isinstance(finite, ComplexGinibreFinite):
            fin = correlation(finite, SpectralConfiguration(uppers=shifted))
        else:
            fin = correlation(finite, _cfg(shifted))
        if isinstance(limit, (OriginBulk, RealEdge)):
            lim = correlation(limit, _cfg(pts))
        else:
            # determinantal limits take plain complex offsets
            lim = correlation(limit, SpectralConfiguration(uppers=pts))
        out = max(out, abs(fin - lim))
    return out


def _pair_log10(regime, M, c, a, b):
    finite = FiniteN(M)
    if isinstance(regime, (OriginBulk, RealEdge)):
        _, ra = classify_point(a)
        _, rb = classify_point(b)
        if ra and rb:
            if isinstance(regime, OriginBulk):
                with mpmath.workdps(_DPS):
                    d = _origin_deviation(M, c.real + a.real, c.real + b.real)
                    return float(mpmath.log10(d)) if d > 0 else -math.inf
            fin = kernel_closed_form(M, c.real + a.real, c.real + b.real)
            lim = limits.limit_kernel_real_edge(regime.u, a.real, b.real)
            d = _block_distance(fin, lim)
        else:
            d = _correlation_distance(finite, regime, c, a, b)
    elif isinstance(regime, (ComplexBulk, ComplexEdge)):
        d = _correlation_distance(finite, regime, c, a, b)
    elif isinstance(regime, (ComplexGinibreBulk, ComplexGinibreEdge)):
        d = _correlation_distance(ComplexGinibreFinite(2 * M), regime, c, a, b)
    else:
        raise TypeError("%r is not a limit regime" % (regime,))
    return math.log10(d) if d > 0 else -math.inf


def log10_distance(regime, M, grid, u=None):
    """log10 of ``finite_to_limit_distance``; finite even when that underflows."""
    M = int(M)
    if not 1 <= M <= MAX_ORDER:
        raise ValueError("need 1 <= M <= %d" % MAX_ORDER)
    if not grid:
        raise ValueError("empty grid")
    c = centre(regime, M, u)
    return max(_pair_log10(regime, M, c, *_pair_points(p)) for p in grid)


def finite_to_limit_distance(regime, M, grid, u=None):
    """sup over grid pairs (a, b) of the finite-vs-limit discrepancy.

    Points are offsets from the centre u sqrt(2M) (u is taken from the
    regime for the edges, and is a real in (-1, 1) for the origin regime).
    """
    lg = log10_distance(regime, M, grid, u)
    return 0.0 if lg == -math.inf else 10.0 ** lg
