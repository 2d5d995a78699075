import cmath
import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginibre.special import (
    DomainError,
    OverflowDomain,
    PrecisionLoss,
    erfc_complex,
    erfc_real,
    log_erfc_complex,
    log_exp_partial_sum,
    log_gamma,
    log_scaled_partial_exp,
    regularized_gamma_p,
    regularized_gamma_q,
    scaled_partial_exp,
)


def test_erfc_real_basics():
    assert erfc_real(0.0) == 1.0
    assert erfc_real(30.0) < 1e-300
    assert erfc_real(-1.3) == pytest.approx(2.0 - erfc_real(1.3), rel=1e-15)
    with pytest.raises(DomainError):
        erfc_real(math.inf)


def test_erfc_real_trapezoid_oracle():
    t = np.linspace(1.0, 40.0, 1_000_001)
    f = 2.0 / math.sqrt(math.pi) * np.exp(-t * t)
    ref = np.trapezoid(f, t)
    assert erfc_real(1.0) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("x", [-5.0, -1.0, 0.0, 0.3, 2.0, 10.0, 26.0])
def test_erfc_real_relative_accuracy(x):
    with mpmath.workdps(30):
        ref = float(mpmath.erfc(x))
    assert erfc_real(x) == pytest.approx(ref, rel=1e-14)


def test_erfc_complex_high_precision():
    with mpmath.workdps(50):
        ref = complex(mpmath.erfc(mpmath.mpc(1, 1)))
    assert abs(erfc_complex(1 + 1j) - ref) <= 1e-12 * abs(ref)
    assert erfc_complex(0) == 1


@pytest.mark.parametrize("w", [0.5 + 3j, -2 + 0.7j, -4.5 - 1j, 3 - 3j, 0.1j, -0.01 + 9j])
def test_erfc_complex_against_mpmath(w):
    with mpmath.workdps(40):
        ref = complex(mpmath.erfc(mpmath.mpc(w.real, w.imag)))
    assert abs(erfc_complex(w) - ref) <= 1e-12 * abs(ref)


@given(st.floats(-8, 8), st.floats(-8, 8))
@settings(max_examples=100, deadline=None)
def test_erfc_complex_conjugation(a, b):
    w = complex(a, b)
    try:
        v = erfc_complex(w)
    except OverflowDomain:
        return
    assert abs(erfc_complex(w.conjugate()) - v.conjugate()) <= 1e-13 * max(1.0, abs(v))


@given(st.floats(-20, 20))
def test_erfc_complex_on_reals(x):
    assert abs(erfc_complex(complex(x, 0)) - erfc_real(x)) <= 1e-13 * max(erfc_real(x), 1e-300)


def test_erfc_complex_overflow_and_log_form():
    w = 2.0 + 40.0j
    with pytest.raises(OverflowDomain):
        erfc_complex(w)
    with mpmath.workdps(40):
        ref = mpmath.log(mpmath.erfc(mpmath.mpc(w.real, w.imag)))
    got = log_erfc_complex(w)
    assert abs(got.real - float(ref.real)) < 1e-10 * abs(float(ref.real))
    assert abs(cmath.exp(1j * (got.imag - float(ref.imag))) - 1) < 1e-9


def test_log_gamma_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
    assert log_gamma(21) == pytest.approx(math.log(math.factorial(20)), rel=1e-14)
    with pytest.raises(DomainError):
        log_gamma(0.0)


def test_regularized_gamma_examples():
    assert regularized_gamma_p(3.0, 0.0) == 0.0
    for x in (0.1, 0.7, 2.0, 5.0):
        assert regularized_gamma_p(0.5, x * x) == pytest.approx(1.0 - erfc_real(x), rel=1e-13)
    with mpmath.workdps(40):
        ref = float(mpmath.gammainc(99.5, 0, 100, regularized=True))
    assert regularized_gamma_p(99.5, 100.0) == pytest.approx(ref, rel=1e-12)
    with pytest.raises(DomainError):
        regularized_gamma_p(0.0, 1.0)


@given(st.floats(0.1, 300), st.floats(0, 400))
@settings(max_examples=150, deadline=None)
def test_regularized_gamma_complement_and_range(a, x):
    p = regularized_gamma_p(a, x)
    q = regularized_gamma_q(a, x)
    assert 0.0 <= p <= 1.0
    assert p + q == pytest.approx(1.0, abs=1e-12)


@given(st.floats(0.5, 50), st.floats(0, 100), st.floats(0, 5))
@settings(max_examples=100, deadline=None)
def test_regularized_gamma_monotone(a, x, dx):
    assert regularized_gamma_p(a, x + dx) >= regularized_gamma_p(a, x) - 1e-15


def _mp_scaled_sum(n, t, dps=700):
    with mpmath.workdps(dps):
        t = mpmath.mpc(t.real, t.imag)
        s = mpmath.mpf(0)
        term = mpmath.mpf(1)
        for k in range(n):
            if k:
                term *= t / k
            s += term
        return complex(mpmath.exp(-t) * s)


@pytest.mark.parametrize(
    "M,t",
    [(1, 3.0), (3, 2.5 + 1j), (20, 30.0), (20, -12.0 + 4j), (100, 150 + 60j), (250, 400.0), (512, 2048.0), (512, -300 + 200j)],
)
def test_scaled_partial_exp_against_exact_sum(M, t):
    t = complex(t)
    ref = _mp_scaled_sum(2 * M - 1, t)
    got = scaled_partial_exp("e", M, t)
    assert abs(got - ref) <= 1e-10 * abs(ref)


def test_scaled_partial_exp_log_form_beyond_overflow():
    t = -900 + 300j
    with pytest.raises(OverflowDomain):
        scaled_partial_exp("e", 512, t)
    with mpmath.workdps(700):
        tt = mpmath.mpc(t.real, t.imag)
        s = mpmath.mpf(0)
        term = mpmath.mpf(1)
        for k in range(2 * 512 - 1):
            if k:
                term *= tt / k
            s += term
        ref = mpmath.log(mpmath.exp(-tt) * s)
    got = log_scaled_partial_exp("e", 512, t)
    assert got.real == pytest.approx(float(ref.real), rel=1e-12)
    assert abs(cmath.exp(1j * (got.imag - float(ref.imag))) - 1) < 1e-9


def test_scaled_partial_exp_examples():
    assert scaled_partial_exp("e", 1, 7.3 + 2j, 0.0) == 1
    assert scaled_partial_exp("e", 5, 0.0) == 1
    u = 0.5
    assert abs(scaled_partial_exp("e", 200, 2 * 200 * u * u) - 1) <= 1e-6


def test_scaled_sum_matches_upper_gamma():
    for M in (1, 5, 40, 100):
        for t in (0.5, 10.0, 150.0, 300.0):
            q = regularized_gamma_q(2 * M - 1, t)
            got = scaled_partial_exp("e", M, t).real
            assert got == pytest.approx(q, rel=1e-9, abs=1e-300)


@given(st.integers(1, 80), st.floats(-60, 60), st.floats(-60, 60))
@settings(max_examples=100, deadline=None)
def test_even_plus_odd_is_full(M, a, b):
    t = complex(a, b)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionLoss)
        e = scaled_partial_exp("e", M, t, 0.5 * abs(t))
        c = scaled_partial_exp("c", M, t, 0.5 * abs(t))
        s = scaled_partial_exp("s", M, t, 0.5 * abs(t))
    assert abs(c + s - e) <= 1e-12 * max(abs(c), abs(s), abs(e)) + 1e-300


@given(st.integers(1, 60), st.floats(-40, 40), st.floats(0.1, 40))
@settings(max_examples=100, deadline=None)
def test_partial_exp_conjugation(M, a, b):
    t = complex(a, b)
    for kind in ("e", "c", "s"):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PrecisionLoss)
            v = log_scaled_partial_exp(kind, M, t, 0.0)
            w = log_scaled_partial_exp(kind, M, t.conjugate(), 0.0)
        if v.real == -math.inf:
            assert w.real == -math.inf
            continue
        assert w.real == pytest.approx(v.real, rel=1e-12, abs=1e-12)
        assert abs(cmath.exp(1j * (w.imag + v.imag)) - 1) < 1e-9


def test_sinh_part_cancellation_warns():
    # s_M at tiny argument is dominated by its first term but the two
    # exponential halves cancel almost completely
    with pytest.warns(PrecisionLoss):
        log_scaled_partial_exp("s", 3, 1e-14, 0.0)


def test_log_exp_partial_sum_domain():
    with pytest.raises(DomainError):
        log_exp_partial_sum(0, 1.0)
    assert log_exp_partial_sum(4, 0.0) == 0
