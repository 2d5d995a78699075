"""Special functions used by the kernels.

Everything here is a pure scalar function.  Quantities that overflow or
underflow double precision for large orders are exposed in log form as
well (``log_*``); the complex logs returned there are only meaningful
modulo ``2*pi*i`` in the imaginary part.
"""

import cmath
import math
import warnings

import numpy as np
from scipy import special as _sp

__all__ = [
    "DomainError",
    "OverflowDomain",
    "PrecisionLoss",
    "MAX_ORDER",
    "erfc_real",
    "log_erfc_real",
    "erfc_complex",
    "log_erfc_complex",
    "log_gamma",
    "regularized_gamma_p",
    "regularized_gamma_q",
    "log_regularized_gamma_p",
    "log_exp_partial_sum",
    "scaled_partial_exp",
    "log_scaled_partial_exp",
]

MAX_ORDER = 512

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAXIT = 100000
_CANCEL = 1e-12


class DomainError(ValueError):
    pass


class OverflowDomain(OverflowError):
    pass


class PrecisionLoss(RuntimeWarning):
    """Issued when a result lost most of its significant digits to cancellation."""


def erfc_real(x):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("erfc_real needs a finite argument")
    return math.erfc(x)


def log_erfc_real(x):
    """log(erfc(x)), finite for every real x (uses erfcx for x > 0)."""
    x = float(x)
    if x > 0.5:
        return math.log(_sp.erfcx(x)) - x * x
    return math.log(math.erfc(x))


def erfc_complex(w):
    """erfc of a complex argument through the Faddeeva function.

    erfc(w) = exp(-w^2) * wofz(i w) for Re w >= 0, and the reflection
    erfc(-w) = 2 - erfc(w) otherwise.
    """
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError("erfc_complex needs a finite argument")
    if w.imag == 0.0:
        return complex(math.erfc(w.real), 0.0)
    if w.real < 0.0:
        return 2.0 - erfc_complex(-w)
    e = -w * w
    if e.real > 700.0:
        raise OverflowDomain("exp(-w^2) overflows for w = %r" % (w,))
    return cmath.exp(e) * complex(_sp.wofz(1j * w))


def log_erfc_complex(w):
    """Complex log of erfc(w); stays finite where erfc itself would overflow."""
    w = complex(w)
    if w.imag == 0.0:
        return complex(log_erfc_real(w.real), 0.0)
    if w.real >= 0.0:
        return -w * w + cmath.log(complex(_sp.wofz(1j * w)))
    # erfc(w) = 2 - erfc(-w)
    big = -w * w + cmath.log(complex(_sp.wofz(-1j * w)))
    if big.real > 40.0:
        return big + 1j * math.pi - 2.0 * cmath.exp(-big)
    return cmath.log(2.0 - cmath.exp(big))


def log_gamma(a):
    a = float(a)
    if not a > 0:
        raise DomainError("log_gamma needs a > 0, got %r" % a)
    return math.lgamma(a)


def _gamma_series(a, x):
    # sum_k x^k / ((a+1)...(a+k)), the series part of P(a, x)
    term = 1.0
    total = 1.0
    ap = a
    for _ in range(_MAXIT):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _EPS:
            return total
    raise ArithmeticError("incomplete gamma series did not converge")


def _log_gamma_q_cf(a, x):
    # modified Lentz evaluation of the continued fraction for Gamma(a, x)
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAXIT):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return a * math.log(x) - x - math.lgamma(a) + math.log(h)
    raise ArithmeticError("incomplete gamma continued fraction did not converge")


def _check_gamma_args(a, x):
    a = float(a)
    x = float(x)
    if not a > 0:
        raise DomainError("incomplete gamma needs a > 0, got %r" % a)
    if not x >= 0:
        raise DomainError("incomplete gamma needs x >= 0, got %r" % x)
    return a, x


def log_regularized_gamma_p(a, x):
    a, x = _check_gamma_args(a, x)
    if x == 0.0:
        return -math.inf
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return a * math.log(x) - x - math.lgamma(a + 1.0) + math.log(_gamma_series(a, x))
    return math.log1p(-math.exp(_log_gamma_q_cf(a, x)))


def regularized_gamma_p(a, x):
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a)."""
    return math.exp(log_regularized_gamma_p(a, x))


def regularized_gamma_q(a, x):
    a, x = _check_gamma_args(a, x)
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return -math.expm1(log_regularized_gamma_p(a, x))
    return math.exp(_log_gamma_q_cf(a, x))


def _clog(z):
    z = complex(z)
    if z == 0:
        return complex(-math.inf, 0.0)
    return cmath.log(z)


def _log_add(la, lb):
    # log(exp(la) + exp(lb)) for complex logs
    if la.real == -math.inf:
        return lb
    if lb.real == -math.inf:
        return la
    if lb.real > la.real:
        la, lb = lb, la
    return la + _clog(1.0 + cmath.exp(lb - la))


def _log_sub(la, lb):
    # log(exp(la) - exp(lb)), warning on heavy cancellation
    if lb.real == -math.inf:
        return la
    if la.real == -math.inf:
        return lb + 1j * math.pi
    sign = 1.0
    if lb.real > la.real:
        la, lb = lb, la
        sign = -1.0
    r = 1.0 - cmath.exp(lb - la)
    if abs(r) < _CANCEL:
        warnings.warn("cancellation in difference of partial sums", PrecisionLoss, stacklevel=3)
    out = la + _clog(r)
    if sign < 0:
        out += 1j * math.pi
    return out


def log_exp_partial_sum(n, t):
    """log of exp(-t) * sum_{k<n} t^k/k!  (n terms, complex t).

    For |t| < n the sum is written as 1 minus its tail, which is short and
    made of terms that decrease from the start; otherwise the terms are
    accumulated backwards from k = n-1, where the largest one sits.
    """
    n = int(n)
    if n < 1:
        raise DomainError("need at least one term")
    t = complex(t)
    if t == 0:
        return 0j
    lt = cmath.log(t)
    if abs(t) < n:
        length = int(10 * math.sqrt(n)) + 40
        ratios = t / (n + 1.0 + np.arange(length))
        tail = 1.0 + complex(np.sum(np.cumprod(ratios)))
        log_tail = -t + n * lt - math.lgamma(n + 1.0) + cmath.log(tail)
        if log_tail.real < -40.0:
            return -cmath.exp(log_tail)
        if log_tail.real > 40.0:
            # tail dominates: log(-T) + log(1 - 1/T)
            return log_tail + 1j * math.pi - cmath.exp(-log_tail)
        big = cmath.exp(log_tail)
        val = 1.0 - big
        if abs(val) < _CANCEL * max(1.0, abs(big)):
            warnings.warn("cancellation in truncated exponential sum", PrecisionLoss, stacklevel=2)
        return _clog(val)
    if n == 1:
        return -t
    ratios = (n - 1.0 - np.arange(n - 1)) / t
    head = 1.0 + complex(np.sum(np.cumprod(ratios)))
    return -t + (n - 1) * lt - math.lgamma(n) + cmath.log(head)


def log_scaled_partial_exp(kind, M, t, scale=None):
    """Complex log of exp(-scale) times e_M(t), c_M(t) or s_M(t).

    e_M has the Taylor terms of exp up to degree 2M-2, c_M the even ones
    and s_M the odd ones (up to 2M-3).  ``scale`` defaults to ``t``.
    """
    M = int(M)
    if M < 1:
        raise DomainError("M must be a positive integer")
    if kind not in ("e", "c", "s"):
        raise DomainError("kind must be 'e', 'c' or 's'")
    t = complex(t)
    scale = t if scale is None else complex(scale)
    n = 2 * M - 1
    plus = (t - scale) + log_exp_partial_sum(n, t)
    if kind == "e":
        return plus
    if kind == "s" and M == 1:
        return complex(-math.inf, 0.0)
    minus = (-t - scale) + log_exp_partial_sum(n, -t)
    if kind == "c":
        return _log_add(plus, minus) - math.log(2.0)
    return _log_sub(plus, minus) - math.log(2.0)


def scaled_partial_exp(kind, M, t, scale=None):
    """exp(-scale) * kind_M(t) as a complex number."""
    lv = log_scaled_partial_exp(kind, M, t, scale)
    if lv.real == -math.inf:
        return 0j
    if lv.real > 709.0:
        raise OverflowDomain("scaled partial sum overflows; use log_scaled_partial_exp")
    return cmath.exp(lv)
