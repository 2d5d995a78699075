"""Acceptance criteria 1-12.  Each test prints one PASS/FAIL line with the
measured values; the lines are collected again at the end of the run."""

import math
import time

import numpy as np

from ginibre import montecarlo as mc
from ginibre import oracle
from ginibre.cli import main as cli_main
from ginibre.convergence import finite_to_limit_distance, log10_distance
from ginibre.correlation import (
    SpectralConfiguration,
    complex_density,
    correlation,
    correlation_matrix,
    integrated_counts,
    real_density,
)
from ginibre.finite import kernel_closed_form, kernel_skew_sum, partition_function, r_correction
from ginibre.limits import complex_ginibre_kernel, limit_density_complex_bulk
from ginibre.pfaffian import (
    cauchy_binet_residual,
    fredholm_expansion_residual,
    pfaffian,
    pfaffian_matchings,
    pfaffian_scaling_check,
)
from ginibre.regimes import FiniteN, OriginBulk, RealEdge
from ginibre.special import erfc_real, scaled_partial_exp

SQ2PI = math.sqrt(2.0 * math.pi)


def skew(rng, dim, cplx):
    a = rng.standard_normal((dim, dim))
    if cplx:
        a = a + 1j * rng.standard_normal((dim, dim))
    return a - a.T


def test_criterion_01_pfaffian_engine(record):
    t0 = time.monotonic()
    rng = np.random.default_rng(101)
    worst = 0.0
    sign = 0.0
    for k in range(100):
        dim = 2 * (1 + k % 10)
        a = skew(rng, dim, k % 2 == 1)
        pf = pfaffian(a)
        det = np.linalg.det(a)
        worst = max(worst, abs(pf * pf - det) / abs(det))
        if dim <= 8:
            sign = max(sign, abs(pf - pfaffian_matchings(a)) / abs(pf))
    dt = time.monotonic() - t0
    ok = worst <= 1e-9 and sign <= 1e-9 and dt < 5
    record(1, "Pfaffian engine", ok, "max |Pf^2-det|/|det| = %.2e, matching-expansion diff %.2e" % (worst, sign), dt)
    assert worst <= 1e-9
    assert sign <= 1e-9
    assert dt < 5


def test_criterion_02_identities(record):
    t0 = time.monotonic()
    rng = np.random.default_rng(102)
    cb = 0.0
    for _ in range(50):
        J, K = (int(v) for v in rng.integers(1, 4, 2))
        cb = max(cb, cauchy_binet_residual(rng.standard_normal((2 * J, 2 * K)),
                                           skew(rng, 2 * J, False), skew(rng, 2 * K, False)))
    fr = max(fredholm_expansion_residual(0.5 * skew(rng, 2 * t, t == 2)) for t in (1, 2, 3))
    sc = 0.0
    for _ in range(20):
        a = skew(rng, 6, True)
        lhs, rhs = pfaffian_scaling_check(a, rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
        sc = max(sc, abs(lhs - rhs) / max(1.0, abs(rhs)))
    dt = time.monotonic() - t0
    ok = cb <= 1e-9 and fr <= 1e-10 and sc <= 1e-10 and dt < 5
    record(2, "identity suite", ok, "Cauchy-Binet %.2e, Fredholm %.2e, scaling %.2e" % (cb, fr, sc), dt)
    assert cb <= 1e-9
    assert fr <= 1e-10
    assert sc <= 1e-10
    assert dt < 5


def random_point(rng, real):
    if real:
        return float(rng.uniform(-2.5, 2.5))
    return complex(rng.uniform(-2.5, 2.5), rng.uniform(0.05, 2.0))


def test_criterion_03_two_path_kernel(record):
    t0 = time.monotonic()
    rng = np.random.default_rng(103)
    shapes = [(2, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 1), (3, 1), (1, 2)]
    worst = 0.0
    for M in (1, 2, 5, 10, 20):
        usable = [s for s in shapes if s[0] + 2 * s[1] <= 2 * M]
        for k in range(50):
            l, m = usable[k % len(usable)]
            pts = [random_point(rng, True) for _ in range(l)] + [random_point(rng, False) for _ in range(m)]
            a = pfaffian(correlation_matrix(lambda g, g2: kernel_closed_form(M, g, g2), pts))
            b = pfaffian(correlation_matrix(lambda g, g2: kernel_skew_sum(M, g, g2), pts))
            worst = max(worst, abs(a - b) / abs(b))
    dt = time.monotonic() - t0
    ok = worst <= 1e-8 and dt < 30
    record(3, "two-path kernel equality", ok, "max relative diff %.2e over 250 configurations" % worst, dt)
    assert worst <= 1e-8
    assert dt < 30


def test_criterion_04_n2_exactness(record):
    t0 = time.monotonic()
    rng = np.random.default_rng(104)
    Z2 = oracle.partition_oracle(2)
    z_err = abs(Z2 - 2.0 * SQ2PI) / (2.0 * SQ2PI)
    r = FiniteN(1)
    worst = 0.0
    for _ in range(20):
        x1, x2 = rng.uniform(-2.5, 2.5, 2)
        z = random_point(rng, False)
        for ref, val in (
            (oracle.correlation_oracle(2, 2, 0, (x1, x2), Z2), correlation(r, SpectralConfiguration(reals=(x1, x2)))),
            (oracle.correlation_oracle(2, 0, 1, (z,), Z2), complex_density(r, z)),
            (oracle.correlation_oracle(2, 1, 0, (x1,), Z2), real_density(r, x1)),
        ):
            worst = max(worst, abs(val - ref) / abs(ref))
    Z4 = oracle.partition_oracle(4)
    z4_err = abs(Z4 / math.exp(partition_function(2)) - 1.0)
    dt = time.monotonic() - t0
    ok = z_err <= 1e-6 and worst <= 1e-6 and z4_err <= 1e-3 and dt < 120
    record(4, "N=2 exactness", ok, "Z2 rel err %.2e, R vs oracle %.2e, Z4 rel err %.2e" % (z_err, worst, z4_err), dt)
    assert z_err <= 1e-6
    assert worst <= 1e-6
    assert z4_err <= 1e-3
    assert dt < 120


def test_criterion_05_sum_rule(record):
    t0 = time.monotonic()
    errs = []
    for M in (1, 2, 4):
        nr, nc = integrated_counts(M)
        errs.append(abs(nr + nc - 2 * M) / (2 * M))
    dt = time.monotonic() - t0
    ok = max(errs) <= 1e-4 and dt < 120
    record(5, "sum rule", ok, "relative errors %s" % ", ".join("%.1e" % e for e in errs), dt)
    assert max(errs) <= 1e-4
    assert dt < 120


def test_criterion_06_monte_carlo(record):
    t0 = time.monotonic()
    M = 4
    S = list(mc.sample_ginoe(2 * M, 10_000, seed=42))
    mean, se, _ = mc.real_count_stats(S)
    expected, _ = integrated_counts(M)
    regime = FiniteN(M)
    h = mc.accumulate_density(S, (-4.0, 4.0), 32, "real")
    z1 = mc.z_scores(h, mc.expected_bins_1d(lambda x: real_density(regime, x), h.edges[0]))
    h2 = mc.accumulate_density(S, ((-4.0, 4.0), (0.0, 4.0)), (16, 10), "upper")
    z2 = mc.z_scores(h2, mc.expected_bins_2d(lambda w: complex_density(regime, w), *h2.edges))
    f1 = float(np.mean(np.abs(z1) <= 4.0))
    f2 = float(np.mean(np.abs(z2) <= 4.0))
    dt = time.monotonic() - t0
    count_ok = abs(mean - expected) <= 3 * se
    ok = count_ok and f1 >= 0.9 and f2 >= 0.9 and dt < 180
    record(6, "Monte Carlo concordance", ok,
           "mean #real %.4f vs %.4f (%.2f sigma); bins within 4 se: real %.0f%%, upper %.0f%%"
           % (mean, expected, (mean - expected) / se, 100 * f1, 100 * f2), dt)
    assert count_ok
    assert f1 >= 0.9 and f2 >= 0.9
    assert dt < 180


NINE_PAIRS = list(zip([-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0],
                      [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, -2.0]))


def test_criterion_07_bulk_limit(record):
    t0 = time.monotonic()
    detail = []
    ok = True
    for u in (0.0, 0.5):
        lg = [log10_distance(OriginBulk(), M, NINE_PAIRS, u) for M in (25, 100, 400)]
        d400 = finite_to_limit_distance(OriginBulk(), 400, NINE_PAIRS, u)
        ok = ok and lg[0] > lg[1] > lg[2] and d400 <= 0.02
        detail.append("u=%g log10 d = %s" % (u, ", ".join("%.1f" % v for v in lg)))
    dt = time.monotonic() - t0
    ok = ok and dt < 60
    record(7, "bulk limit", ok, "; ".join(detail), dt)
    assert ok


def test_criterion_08_complex_bulk(record):
    t0 = time.monotonic()
    M = 400
    u = 0.3 + 0.4j
    d1 = abs(complex_density(FiniteN(M), u * math.sqrt(2 * M)) - 1.0 / math.pi)
    d2 = abs(limit_density_complex_bulk([0.0, 1.0]) - (1.0 - math.exp(-1.0)) / math.pi ** 2)
    dt = time.monotonic() - t0
    ok = d1 <= 1e-3 and d2 <= 1e-10 and dt < 60
    record(8, "complex bulk", ok, "|R_01 - 1/pi| = %.2e at M=400; two-point diff %.1e" % (d1, d2), dt)
    assert d1 <= 1e-3
    assert d2 <= 1e-10
    assert dt < 60


def test_criterion_09_real_edge(record):
    t0 = time.monotonic()
    edge = RealEdge(1)
    left = abs(real_density(edge, -4.0) - 1.0 / SQ2PI)
    right = real_density(edge, 4.0)
    grid = [(-1.0, 0.5), (0.0, 0.0), (-2.0, -0.5), (0.5, -1.5), (-0.5, 0.3 + 0.6j), (0.2 + 0.4j, -1.0 + 1.1j)]
    d50 = finite_to_limit_distance(edge, 50, grid)
    d200 = finite_to_limit_distance(edge, 200, grid)
    dt = time.monotonic() - t0
    ok = left <= 1e-3 and right <= 1e-3 and d200 < d50 and dt < 60
    record(9, "real edge", ok, "|R(-4) - 1/sqrt(2pi)| = %.1e, R(4) = %.1e, distance M=50 %.4f -> M=200 %.4f"
           % (left, right, d50, d200), dt)
    assert left <= 1e-3
    assert right <= 1e-3
    assert d200 < d50
    assert dt < 60


def test_criterion_10_asymptotic_limits(record):
    t0 = time.monotonic()
    M = 200
    t = 2 * M * 0.25
    l7 = abs(scaled_partial_exp("e", M, t).real - 1.0)
    l9 = abs(scaled_partial_exp("e", 400, 800).real - 0.5)
    # r_M(u sqrt(2M) + s, u sqrt(2M) + r) vs (1/(4 sqrt pi)) e^{-s^2} erfc(-u r)
    s, r = 0.5j, 0.3
    c = math.sqrt(2 * M)
    val = r_correction(M, c + s, c + r)
    target = complex(np.exp(-s * s)) * erfc_real(-r) / (4.0 * math.sqrt(math.pi))
    l10 = abs(val - target)
    dt = time.monotonic() - t0
    ok = l7 <= 1e-6 and l9 <= 0.01 and l10 <= 0.02 and dt < 10
    record(10, "asymptotic limits", ok, "uniform limit %.1e (tol 1e-6); edge sum %.4f (tol 0.01); r_M edge %.4f (tol 0.02)"
           % (l7, l9, l10), dt)
    assert l7 <= 1e-6
    assert l9 <= 0.01
    assert l10 <= 0.02
    assert dt < 10


def test_criterion_11_complex_ginibre(record):
    t0 = time.monotonic()
    n = 16
    S = list(mc.sample_ginue(n, 100_000, seed=42))
    # origin: disk of radius 1, counts per unit area
    counts = np.array([np.sum(np.abs(np.asarray(s.eigenvalues)) <= 1.0) for s in S], dtype=float)
    area = math.pi
    dens = counts.mean() / area
    se = counts.std(ddof=1) / math.sqrt(counts.size) / area
    origin_sigma = (dens - 1.0 / math.pi) / se
    # normalization question: the 1/pi kernel, not 1/(2 pi), matches
    k0 = complex_ginibre_kernel(n, 0.0, 0.0).real
    norm_ok = abs(k0 - 1.0 / math.pi) < abs(k0 - 0.5 / math.pi) and abs(dens - k0) <= 3 * se
    # edge profile: annuli around |z| = sqrt(n) against (1/(2 pi)) erfc(sqrt2 (r - sqrt n))
    h = mc.accumulate_radial(S, (math.sqrt(n) - 1.5, math.sqrt(n) + 1.5), 24)
    expected = mc.expected_bins_radial(lambda rr: erfc_real(math.sqrt(2.0) * (rr - math.sqrt(n))) / (2 * math.pi), h.edges[0])
    z = mc.z_scores(h, expected)
    edge_ok = bool(np.all(np.abs(z) <= 3.0))
    dt = time.monotonic() - t0
    ok = abs(origin_sigma) <= 3 and norm_ok and edge_ok and dt < 180
    record(11, "complex Ginibre", ok, "origin density %.5f vs 1/pi (%.2f sigma), kernel at 0 = %.5f; edge profile max |z| = %.1f (tol 3)"
           % (dens, origin_sigma, k0, float(np.max(np.abs(z)))), dt)
    assert abs(origin_sigma) <= 3
    assert norm_ok
    assert edge_ok
    assert dt < 180


def read_rows(path):
    with open(path) as fh:
        return [tuple(float(v) for v in line.split(",")) for line in fh.read().splitlines()[1:]]


def test_criterion_12_figures(record, tmp_path):
    t0 = time.monotonic()
    assert cli_main(["figures", "--out", str(tmp_path)]) == 0
    names = ["fig%d" % k for k in range(1, 9)]
    present = all((tmp_path / (nm + ".csv")).exists() for nm in names)
    f1 = read_rows(tmp_path / "fig1.csv")
    a1 = abs(f1[-1][1] - 1.0 / (2.0 * math.pi))
    f4 = read_rows(tmp_path / "fig4.csv")
    a4 = abs(f4[-1][2] - 1.0 / math.pi ** 2)
    f8 = read_rows(tmp_path / "fig8.csv")
    a8 = abs(f8[0][1] - 2.0 / math.pi)
    dt = time.monotonic() - t0
    ok = present and a1 <= 1e-3 and a4 <= 1e-3 and a8 <= 5e-3 and dt < 120
    record(12, "figure reproduction", ok, "fig1 %.1e, fig4 %.1e, fig8 left value %.5f vs 2/pi (diff %.3f, tol 5e-3)"
           % (a1, a4, f8[0][1], a8), dt)
    assert present
    assert a1 <= 1e-3
    assert a4 <= 1e-3
    assert a8 <= 5e-3
    assert dt < 120
