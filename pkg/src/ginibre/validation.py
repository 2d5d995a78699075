"""Named validation suites used by ``ginibre validate``.

Each check returns a record {check, target, measured, tolerance, pass}.
"""

import math
import time

import numpy as np

from . import limits, montecarlo, oracle
from .correlation import SpectralConfiguration, complex_density, correlation, integrated_counts, real_density
from .finite import partition_function
from .pfaffian import (
    cauchy_binet_residual,
    fredholm_expansion_residual,
    pfaffian,
    pfaffian_matchings,
    pfaffian_scaling_check,
)
from .regimes import ComplexBulk, FiniteN, OriginBulk, RealEdge
from .special import scaled_partial_exp

__all__ = ["SUITES", "BudgetExhausted", "run_suite"]


class BudgetExhausted(RuntimeError):
    pass


def _record(name, target, measured, tol, ok=None):
    if ok is None:
        ok = abs(measured - target) <= tol
    return {"check": name, "target": float(target), "measured": float(measured), "tolerance": float(tol), "pass": bool(ok)}


def _random_antisymmetric(rng, dim, complex_entries):
    a = rng.standard_normal((dim, dim))
    if complex_entries:
        a = a + 1j * rng.standard_normal((dim, dim))
    return a - a.T


def suite_pfaffian(seed, samples):
    rng = np.random.default_rng(seed)
    worst = 0.0
    sign_worst = 0.0
    for k in range(100):
        dim = 2 * (1 + k % 10)
        a = _random_antisymmetric(rng, dim, k % 2 == 1)
        pf = pfaffian(a)
        det = np.linalg.det(a)
        worst = max(worst, abs(pf * pf - det) / abs(det))
        if dim <= 8:
            sign_worst = max(sign_worst, abs(pf - pfaffian_matchings(a)) / max(1.0, abs(pf)))
    out = [
        _record("Pf^2 = det, 100 random matrices", 0.0, worst, 1e-9),
        _record("Pf agrees with matching expansion (dim <= 8)", 0.0, sign_worst, 1e-9),
    ]
    cb = 0.0
    done = 0
    while done < 50:
        J = 1 + int(rng.integers(0, 3))
        K = 1 + int(rng.integers(0, 3))
        a = rng.standard_normal((2 * J, 2 * K))
        b = _random_antisymmetric(rng, 2 * J, False)
        c = _random_antisymmetric(rng, 2 * K, False)
        cb = max(cb, cauchy_binet_residual(a, b, c))
        done += 1
    out.append(_record("Cauchy-Binet residual, 50 instances", 0.0, cb, 1e-9))
    fr = max(fredholm_expansion_residual(0.5 * _random_antisymmetric(rng, 2 * t, False)) for t in (1, 2, 3))
    out.append(_record("Fredholm expansion residual, T <= 3", 0.0, fr, 1e-10))
    sc = 0.0
    for _ in range(10):
        a = _random_antisymmetric(rng, 6, True)
        d = rng.standard_normal((6, 6))
        lhs, rhs = pfaffian_scaling_check(a, d)
        sc = max(sc, abs(lhs - rhs) / max(1.0, abs(rhs)))
    out.append(_record("Pf(D A D^T) = det(D) Pf(A)", 0.0, sc, 1e-10))
    return out


def suite_oracle(seed, samples):
    rng = np.random.default_rng(seed)
    Z = oracle.partition_oracle(2)
    z_exact = 2.0 * math.sqrt(2.0 * math.pi)
    out = [
        _record("N=2 partition function", z_exact, Z, 1e-6 * z_exact),
        _record("N=2 partition function vs closed form", math.exp(partition_function(1)), Z, 1e-6 * z_exact),
    ]
    r = FiniteN(1)
    worst = 0.0
    for _ in range(20):
        x1, x2 = rng.uniform(-2.5, 2.5, 2)
        z = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.05, 2.0))
        pairs = [
            (oracle.correlation_oracle(2, 2, 0, (x1, x2), Z), correlation(r, SpectralConfiguration(reals=(x1, x2)))),
            (oracle.correlation_oracle(2, 0, 1, (z,), Z), complex_density(r, z)),
            (oracle.correlation_oracle(2, 1, 0, (x1,), Z), real_density(r, x1)),
        ]
        for ref, val in pairs:
            worst = max(worst, abs(val - ref) / abs(ref))
    out.append(_record("N=2 R_20, R_01, R_10 vs quadrature (relative)", 0.0, worst, 1e-6))
    return out


def suite_montecarlo(seed, samples):
    n_samples = int(samples)
    if n_samples < 1000:
        raise BudgetExhausted("the Monte Carlo suite needs a budget of at least 1000 samples")
    M = 4
    S = list(montecarlo.sample_ginoe(2 * M, n_samples, seed))
    mean, se, _ = montecarlo.real_count_stats(S)
    expected, _ = integrated_counts(M)
    out = [_record("mean # real eigenvalues, n=8", expected, mean, 3.0 * se)]
    regime = FiniteN(M)
    h = montecarlo.accumulate_density(S, (-4.0, 4.0), 32, "real")
    e = montecarlo.expected_bins_1d(lambda x: real_density(regime, x), h.edges[0])
    z = montecarlo.z_scores(h, e)
    frac = float(np.mean(np.abs(z) <= 4.0))
    out.append(_record("real-axis bins within 4 standard errors (fraction)", 1.0, frac, 0.1, frac >= 0.9))
    h2 = montecarlo.accumulate_density(S, ((-4.0, 4.0), (0.0, 4.0)), (16, 10), "upper")
    e2 = montecarlo.expected_bins_2d(lambda w: complex_density(regime, w), *h2.edges)
    z2 = montecarlo.z_scores(h2, e2)
    frac2 = float(np.mean(np.abs(z2) <= 4.0))
    out.append(_record("upper-half bins within 4 standard errors (fraction)", 1.0, frac2, 0.1, frac2 >= 0.9))
    return out


def suite_limits(seed, samples):
    out = []
    origin = OriginBulk()
    out.append(_record("origin R_20 at separation 6", 1.0 / (2.0 * math.pi),
                       correlation(origin, SpectralConfiguration(reals=(6.0, 0.0))), 1e-3))
    out.append(_record("origin R_10", 1.0 / math.sqrt(2.0 * math.pi), real_density(origin, 0.3), 1e-12))
    edge = RealEdge(1)
    out.append(_record("real edge R_10(-4)", 1.0 / math.sqrt(2.0 * math.pi), real_density(edge, -4.0), 1e-3))
    out.append(_record("real edge R_10(+4)", 0.0, real_density(edge, 4.0), 1e-3))
    d = limits.limit_density_complex_bulk([0.0, 1.0])
    out.append(_record("complex bulk R_02 at separation 1", (1.0 - math.exp(-1.0)) / math.pi ** 2, d, 1e-10))
    c = 0.3 + 0.4j
    M = 400
    out.append(_record("finite R_01 in the complex bulk, M=400", 1.0 / math.pi,
                       complex_density(FiniteN(M), c * math.sqrt(2 * M)), 1e-3))
    v = scaled_partial_exp("e", 200, 2 * 200 * 0.25).real
    out.append(_record("exp(-t) e_M(t), t = 2M u^2, u = 0.5, M = 200", 1.0, v, 1e-6))
    far = correlation(ComplexBulk(), SpectralConfiguration(uppers=(0.0, 6.0)))
    out.append(_record("complex bulk R_02 at separation 6", 1.0 / math.pi ** 2, far, 1e-3))
    return out


SUITES = {
    "pfaffian": suite_pfaffian,
    "oracle": suite_oracle,
    "montecarlo": suite_montecarlo,
    "limits": suite_limits,
}


def run_suite(name, seed=42, samples=10000, time_limit=None):
    """Run one suite (or 'all'); returns the list of records.

    Raises BudgetExhausted when ``time_limit`` seconds pass before all
    suites have run, or when the sample budget is too small.
    """
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise ValueError("unknown suite %r (choose from %s, all)" % (n, ", ".join(SUITES)))
    start = time.monotonic()
    records = []
    for n in names:
        if time_limit is not None and time.monotonic() - start > time_limit:
            raise BudgetExhausted("time limit reached before suite %r" % n)
        for rec in SUITES[n](seed, samples):
            rec["suite"] = n
            records.append(rec)
    return records
