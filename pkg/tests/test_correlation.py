import itertools
import math

import numpy as np
import pytest

from ginibre.correlation import (
    DimensionError,
    SpectralConfiguration,
    complex_density,
    correlation,
    integrated_counts,
    real_density,
)
from ginibre.regimes import ComplexBulk, FiniteN, OriginBulk, RealEdge

SQ2PI = math.sqrt(2.0 * math.pi)
PFAFFIAN = [FiniteN(1), FiniteN(4), FiniteN(30), OriginBulk(), RealEdge(1), RealEdge(-1)]


def random_cfg(rng, l, m):
    return SpectralConfiguration(
        reals=rng.uniform(-2.5, 2.5, l),
        uppers=rng.uniform(-2.5, 2.5, m) + 1j * rng.uniform(0.05, 2.0, m),
    )


@pytest.mark.parametrize("regime", PFAFFIAN + [ComplexBulk()])
def test_empty_configuration(regime):
    assert correlation(regime, SpectralConfiguration()) == 1.0


@pytest.mark.parametrize("regime", PFAFFIAN)
def test_coincident_reals_vanish(regime):
    assert abs(correlation(regime, SpectralConfiguration(reals=(0.3, 0.3)))) <= 1e-14


@pytest.mark.parametrize("regime", [FiniteN(4), OriginBulk(), RealEdge(1)])
def test_permutation_invariance(regime):
    rng = np.random.default_rng(21)
    cfg = random_cfg(rng, 2, 2)
    base = correlation(regime, cfg)
    for pr in itertools.permutations(cfg.reals):
        for pu in itertools.permutations(cfg.uppers):
            val = correlation(regime, SpectralConfiguration(reals=pr, uppers=pu))
            assert abs(val - base) <= 1e-12 * abs(base)


@pytest.mark.parametrize("regime", PFAFFIAN)
def test_nonnegative(regime):
    rng = np.random.default_rng(22)
    for k in range(200):
        l, m = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1)][k % 6]
        if isinstance(regime, FiniteN) and l + 2 * m > 2 * regime.M:
            continue
        assert correlation(regime, random_cfg(rng, l, m)) >= -1e-8


def test_origin_examples():
    assert real_density(OriginBulk(), 1.7) == pytest.approx(1.0 / SQ2PI, rel=1e-13)
    assert abs(correlation(OriginBulk(), SpectralConfiguration(reals=(0.0, 6.0))) - 1.0 / (2.0 * math.pi)) <= 1e-4
    assert correlation(OriginBulk(), SpectralConfiguration(reals=(0.0, 0.0))) == 0.0


def test_far_field_product_at_im5():
    # stated tolerance; the one-point density itself is still 1% below 1/pi here
    far = correlation(OriginBulk(), SpectralConfiguration(reals=(0.2,), uppers=(0.1 + 5j,)))
    assert abs(far - 1.0 / (SQ2PI * math.pi)) <= 1e-3


def test_far_field_factorizes():
    for y in (5.0, 10.0):
        z = 0.1 + 1j * y
        far = correlation(OriginBulk(), SpectralConfiguration(reals=(0.2,), uppers=(z,)))
        prod = real_density(OriginBulk(), 0.2) * complex_density(OriginBulk(), z)
        assert abs(far - prod) <= 1e-10
    far = correlation(OriginBulk(), SpectralConfiguration(reals=(0.2,), uppers=(0.1 + 20j,)))
    assert abs(far - 1.0 / (SQ2PI * math.pi)) <= 1e-4


def test_complex_bulk_density():
    assert complex_density(ComplexBulk(), 0.4 + 0.2j) == pytest.approx(1.0 / math.pi)


def test_axis_repulsion():
    assert complex_density(FiniteN(4), 0.3 + 1e-4j) <= 1e-3
    assert complex_density(FiniteN(4), 0.3 + 1e-4j) > 0


def test_one_point_shortcuts_match_pfaffian():
    r = FiniteN(6)
    for x in (-1.5, 0.0, 2.2):
        assert real_density(r, x) == pytest.approx(correlation(r, SpectralConfiguration(reals=(x,))), rel=1e-12)
    for z in (0.5 + 0.8j, -2 + 0.1j):
        assert complex_density(r, z) == pytest.approx(correlation(r, SpectralConfiguration(uppers=(z,))), rel=1e-12)


def test_dimension_and_domain_errors():
    with pytest.raises(DimensionError):
        correlation(FiniteN(1), SpectralConfiguration(reals=(0.1, 0.2, 0.3)))
    with pytest.raises(DimensionError):
        correlation(FiniteN(1), SpectralConfiguration(reals=(0.1,), uppers=(1j,)))
    with pytest.raises(ValueError):
        correlation(FiniteN(2), SpectralConfiguration(uppers=(1 - 1j,)))
    with pytest.raises(ValueError):
        correlation(ComplexBulk(), SpectralConfiguration(reals=(0.0,)))


@pytest.mark.parametrize("M", [1, 2])
def test_sum_rule(M):
    nr, nc = integrated_counts(M)
    assert abs(nr + nc - 2 * M) <= 1e-4


def test_expected_real_count_n2():
    # E[# real] = sqrt(2) for 2x2 real Gaussian matrices
    nr, _ = integrated_counts(1)
    assert nr == pytest.approx(math.sqrt(2.0), rel=1e-8)
