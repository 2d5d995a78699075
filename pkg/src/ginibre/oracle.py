"""Brute-force partial densities and correlations for N = 2 and N = 4.

Nothing here uses the kernel or Pfaffian code: the Vandermonde
determinant, the weight and the sector bookkeeping are written out from
the joint density of the eigenvalues.  A configuration with L real
eigenvalues alpha and M conjugate pairs represented by betas in the upper
half plane has partial density

    Omega_{L,M}(alpha, beta) = 2^M prod w(alpha) prod w(beta) |Delta|,

with w(x) = exp(-x^2/2) on the line, w(b) = exp(-(b^2 + conj(b)^2)/2)
erfc(sqrt2 |Im b|) off it, and Delta the Vandermonde determinant of
(alpha_1, ..., alpha_L, beta_1, conj beta_1, ..., beta_M, conj beta_M).
The mass of the sector is

    P_{L,M} = 1/(L! M! 2^M) int_{R^L} int_{C^M} Omega_{L,M}.

The integrand is symmetric under permutations of the alphas and under
conjugating any beta, so the integral is L! 2^M times the integral over
ordered reals and upper half planes.  On that domain |Delta| is smooth
once the reals are written as a start point plus positive gaps.
"""

import math

import numpy as np
from scipy import integrate
from scipy.special import erfc

__all__ = [
    "QuadratureNonconvergence",
    "omega",
    "sectors",
    "sector_mass",
    "partition_oracle",
    "correlation_oracle",
]

BOX = 8.0
N2_TOL = 1e-10
N4_TOL = 1e-3


class QuadratureNonconvergence(ArithmeticError):
    pass


def _weight_real(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x)


def _weight_complex(b):
    b = np.asarray(b, dtype=complex)
    return np.exp(-0.5 * (b * b + np.conj(b) * np.conj(b)).real) * erfc(math.sqrt(2.0) * np.abs(b.imag))


def _abs_vandermonde(gammas):
    # gammas: (..., N) -> |det V| with V[j, k] = gamma_k^j
    g = np.asarray(gammas, dtype=complex)
    n = g.shape[-1]
    powers = g[..., None, :] ** np.arange(n)[:, None]
    return np.abs(np.linalg.det(powers))


def _omega_batch(alphas, betas):
    """Vectorised Omega; alphas (K, L) real, betas (K, M) complex."""
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=complex)
    K = alphas.shape[0] if alphas.ndim == 2 else betas.shape[0]
    L = alphas.shape[1] if alphas.ndim == 2 else 0
    M = betas.shape[1] if betas.ndim == 2 else 0
    parts = [alphas.reshape(K, L).astype(complex)]
    if M:
        pairs = np.empty((K, 2 * M), dtype=complex)
        pairs[:, 0::2] = betas
        pairs[:, 1::2] = np.conj(betas)
        parts.append(pairs)
    gam = np.concatenate(parts, axis=1)
    val = np.full(K, 2.0 ** M)
    if L:
        val = val * np.prod(_weight_real(alphas.reshape(K, L)), axis=1)
    if M:
        val = val * np.prod(_weight_complex(betas), axis=1)
    return val * _abs_vandermonde(gam)


def omega(L, M, alphas, betas):
    """Partial joint density Omega_{L,M} at one configuration (L + 2M <= 4)."""
    L = int(L)
    M = int(M)
    if L < 0 or M < 0 or L + 2 * M > 4 or L + 2 * M == 0:
        raise ValueError("need 1 <= L + 2M <= 4")
    alphas = np.asarray(alphas, dtype=float).reshape(1, L)
    betas = np.asarray(betas, dtype=complex).reshape(1, M)
    return float(_omega_batch(alphas, betas)[0])


def sectors(N):
    return [(N - 2 * M, M) for M in range(N // 2 + 1)]


# -- N = 2: adaptive quadrature ------------------------------------------------


def _quad2(f, a, b, c, d, tol):
    val, err = integrate.dblquad(lambda y, x: f(x, y), a, b, c, d, epsabs=tol, epsrel=tol)
    if not err <= 1e3 * tol * max(1.0, abs(val)):
        raise QuadratureNonconvergence("error estimate %.3g" % err)
    return val


def _sector_mass_n2(L, M, tol):
    if (L, M) == (2, 0):
        # x1 = t, x2 = t + g
        f = lambda t, g: omega(2, 0, (t, t + g), ())
        raw = _quad2(f, -BOX - 4.0, BOX, 0.0, 2.0 * BOX, tol)
    else:
        f = lambda x, y: omega(0, 1, (), (complex(x, y),))
        raw = _quad2(f, -BOX, BOX, 0.0, BOX, tol)
    # L! orderings of the reals and 2^M choices of conjugates
    return raw * math.factorial(L) * 2 ** M / (math.factorial(L) * math.factorial(M) * 2 ** M)


# -- N = 4: tensor Gauss-Legendre ----------------------------------------------


def _gl(lo, hi, n, panels):
    x, w = np.polynomial.legendre.leggauss(n)
    edges = np.linspace(lo, hi, panels + 1)
    xs = []
    ws = []
    for a, b in zip(edges[:-1], edges[1:]):
        xs.append(0.5 * (b - a) * x + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)


def _sector_axes(L, M):
    # start point, L-1 gaps, then (Re, Im) per beta
    axes = []
    if L:
        axes.append((-BOX - 2.0, BOX))
        axes.extend([(0.0, 2.0 * BOX)] * (L - 1))
    for _ in range(M):
        axes.append((-BOX, BOX))
        axes.append((0.0, BOX))
    return axes


def _tensor_sector(L, M, n, panels, perm=None):
    axes = _sector_axes(L, M)
    dim = len(axes)
    perm = list(range(dim)) if perm is None else list(perm)
    if sorted(perm) != list(range(dim)):
        raise ValueError("perm must be a permutation of the axes")
    # rules are generated in permuted order, then mapped back to variables
    rules = [_gl(*axes[p], n, panels) for p in perm]
    first_x, first_w = rules[0]
    rest = rules[1:]
    grids = np.meshgrid(*[r[0] for r in rest], indexing="ij")
    wgrids = np.meshgrid(*[r[1] for r in rest], indexing="ij")
    rest_pts = np.stack([g.ravel() for g in grids], axis=1) if rest else np.zeros((1, 0))
    rest_w = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1) if rest else np.ones(1)
    total = 0.0
    for x0, w0 in zip(first_x, first_w):
        pts_perm = np.concatenate([np.full((rest_pts.shape[0], 1), x0), rest_pts], axis=1)
        pts = np.empty_like(pts_perm)
        pts[:, perm] = pts_perm
        col = 0
        alphas = np.zeros((pts.shape[0], L))
        if L:
            alphas[:, 0] = pts[:, 0]
            for k in range(1, L):
                alphas[:, k] = alphas[:, k - 1] + pts[:, k]
            col = L
        betas = np.zeros((pts.shape[0], M), dtype=complex)
        for k in range(M):
            betas[:, k] = pts[:, col + 2 * k] + 1j * pts[:, col + 2 * k + 1]
        total += w0 * float(np.dot(rest_w, _omega_batch(alphas, betas)))
    return total


def _sector_mass_n4(L, M, n=12, panels=2, perm=None):
    coarse = _tensor_sector(L, M, n, panels, perm)
    fine = _tensor_sector(L, M, n + 4, panels, perm)
    if abs(fine - coarse) > 0.1 * N4_TOL * abs(fine):
        raise QuadratureNonconvergence("tensor rule not converged: %.6g vs %.6g" % (coarse, fine))
    return fine * math.factorial(L) * 2 ** M / (math.factorial(L) * math.factorial(M) * 2 ** M)


def sector_mass(N, L, M, **kw):
    """P_{L,M}: total weight of configurations with L real eigenvalues."""
    if (L, M) not in sectors(N):
        raise ValueError("L + 2M must equal N")
    if N == 2:
        return _sector_mass_n2(L, M, kw.get("tol", N2_TOL))
    if N == 4:
        return _sector_mass_n4(L, M, **kw)
    raise ValueError("oracle supports N = 2 and N = 4 only")


def partition_oracle(N, **kw):
    """Z = sum over sectors of P_{L,M}."""
    return sum(sector_mass(N, L, M, **kw) for L, M in sectors(N))


def correlation_oracle(N, l, m, cfg, Z=None):
    """R_{l,m} for N = 2 from the partial densities.

    (2,0) and (0,1) need no integration; R_{1,0}(x) integrates the second
    real eigenvalue out of Omega_{2,0}.  ``cfg`` is the tuple of arguments:
    reals first, then upper half plane points.
    """
    if N != 2:
        raise ValueError("correlation oracle is only available for N = 2")
    if Z is None:
        Z = partition_oracle(2)
    cfg = tuple(cfg)
    if (l, m) == (2, 0):
        x1, x2 = (float(v) for v in cfg)
        return omega(2, 0, (x1, x2), ()) / Z
    if (l, m) == (0, 1):
        (z,) = cfg
        z = complex(z)
        if not z.imag > 0:
            raise ValueError("complex argument must lie in the upper half plane")
        return omega(0, 1, (), (z,)) / Z
    if (l, m) == (1, 0):
        (x,) = cfg
        x = float(x)
        f = lambda a: omega(2, 0, (x, a), ())
        left, e1 = integrate.quad(f, x - 2.0 * BOX, x, epsabs=1e-13, epsrel=1e-12, limit=200)
        right, e2 = integrate.quad(f, x, x + 2.0 * BOX, epsabs=1e-13, epsrel=1e-12, limit=200)
        if e1 + e2 > 1e-9:
            raise QuadratureNonconvergence("error estimate %.3g" % (e1 + e2))
        return (left + right) / Z
    raise ValueError("(l, m) must be one of (1,0), (2,0), (0,1)")
