"""Monte Carlo sampling of real and complex Gaussian matrices.

Every sample draws from its own generator seeded by (seed, index), so a
stream is reproducible and any sub-range can be regenerated or computed
in parallel.  Eigenvalues come from LAPACK's nonsymmetric solver (numpy
``eigvals``), applied to stacked batches.

Histograms keep, per bin, the sum of the per-sample counts and the sum
of their squares, so each bin carries a standard error estimated from
the sample-to-sample spread.
"""

import csv
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

__all__ = [
    "EigenSample",
    "ComplexSample",
    "DensityHistogram",
    "EmptyWindow",
    "EigensolverFailure",
    "classify_eigenvalues",
    "sample_ginoe",
    "sample_ginue",
    "accumulate_density",
    "accumulate_radial",
    "real_count_stats",
    "expected_bins_1d",
    "expected_bins_2d",
    "expected_bins_radial",
    "z_scores",
]

log = logging.getLogger(__name__)

REAL_TOL = 1e-7
MAX_N = 64
MAX_COUNT = 10 ** 6
FAILURE_CAP = 1e-4
BATCH = 2000


class EmptyWindow(ValueError):
    pass


class EigensolverFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenSample:
    """Eigenvalues of one real matrix: real ones and upper-half representatives."""

    n: int
    reals: tuple
    pairs: tuple
    seed: int
    index: int

    def __post_init__(self):
        if len(self.reals) + 2 * len(self.pairs) != self.n:
            raise ValueError("eigenvalue count does not match n")
        if any(not p.imag > 0 for p in self.pairs):
            raise ValueError("pair representatives must lie in the upper half plane")


@dataclass(frozen=True)
class ComplexSample:
    n: int
    eigenvalues: tuple
    seed: int
    index: int


def _rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def classify_eigenvalues(lams, scale, tol=REAL_TOL):
    """Split the spectrum of a real n x n matrix into reals and conjugate pairs.

    An eigenvalue counts as real when |Im| <= tol sqrt(n) scale.  The
    others are paired greedily: sorted by real part (ties by |Im|), each
    upper-half value takes the nearest unused conjugate of a lower-half one.
    """
    lams = np.asarray(lams, dtype=complex)
    n = lams.size
    cut = tol * math.sqrt(n) * scale
    real_mask = np.abs(lams.imag) <= cut
    rest = lams[~real_mask]
    if rest.size % 2:
        # an odd leftover means one near-real value was misjudged
        k = int(np.argmin(np.abs(rest.imag)))
        real_mask[np.flatnonzero(~real_mask)[k]] = True
        rest = lams[~real_mask]
    reals = np.sort(lams[real_mask].real)
    order = np.lexsort((np.abs(rest.imag), rest.real))
    rest = rest[order]
    upper = [z for z in rest if z.imag > 0]
    lower = [z for z in rest if z.imag < 0]
    if len(upper) != len(lower):
        raise EigensolverFailure("unbalanced conjugate pairs")
    used = [False] * len(lower)
    pairs = []
    for z in upper:
        best = None
        for j, w in enumerate(lower):
            if used[j]:
                continue
            d = abs(z - w.conjugate())
            if best is None or d < best[0]:
                best = (d, j)
        used[best[1]] = True
        w = lower[best[1]]
        # average the pair so that the representative is exactly conjugate-consistent
        pairs.append(complex(0.5 * (z.real + w.real), 0.5 * (z.imag - w.imag)))
    return tuple(float(x) for x in reals), tuple(pairs)


def _check_sizes(n, count):
    n = int(n)
    count = int(count)
    if not 1 <= n <= MAX_N:
        raise ValueError("matrix size must be between 1 and %d" % MAX_N)
    if not 0 <= count <= MAX_COUNT:
        raise ValueError("sample count must be between 0 and %d" % MAX_COUNT)
    return n, count


def _eigvals_batch(mats):
    try:
        return [np.asarray(v) for v in np.linalg.eigvals(mats)]
    except np.linalg.LinAlgError:
        out = []
        for m in mats:
            try:
                out.append(np.linalg.eigvals(m))
            except np.linalg.LinAlgError:
                out.append(None)
        return out


def _stream(n, count, seed, draw, start):
    failures = 0
    for lo in range(start, start + count, BATCH):
        hi = min(lo + BATCH, start + count)
        mats = np.stack([draw(_rng(seed, i)) for i in range(lo, hi)])
        for i, (m, lams) in enumerate(zip(mats, _eigvals_batch(mats)), start=lo):
            if lams is None:
                failures += 1
                log.warning("eigensolver failed on sample %d (seed %d); discarded", i, seed)
                if failures > FAILURE_CAP * max(count, 1):
                    raise EigensolverFailure("too many eigensolver failures (%d)" % failures)
                continue
            yield i, m, lams


def sample_ginoe(n, count, seed, start=0, tol=REAL_TOL):
    """Iterate over EigenSamples of n x n matrices with i.i.d. N(0, 1) entries."""
    n, count = _check_sizes(n, count)

    def draw(rng):
        return rng.standard_normal((n, n))

    for i, m, lams in _stream(n, count, seed, draw, start):
        reals, pairs = classify_eigenvalues(lams, np.linalg.norm(m), tol)
        yield EigenSample(n, reals, pairs, int(seed), i)


def sample_ginue(n, count, seed, start=0):
    """Iterate over eigenvalues of complex Gaussian matrices, E|Y_ij|^2 = 1.

    Real and imaginary parts of each entry are independent N(0, 1/2), so a
    1 x 1 sample has density exp(-|z|^2)/pi.
    """
    n, count = _check_sizes(n, count)
    s = math.sqrt(0.5)

    def draw(rng):
        g = rng.standard_normal((2, n, n))
        return s * (g[0] + 1j * g[1])

    for i, m, lams in _stream(n, count, seed, draw, start):
        yield ComplexSample(n, tuple(complex(z) for z in lams), int(seed), i)


def real_count_stats(samples):
    """(mean, standard error, number of samples) of the number of real eigenvalues."""
    counts = np.array([len(s.reals) for s in samples], dtype=float)
    if counts.size < 2:
        raise ValueError("need at least two samples")
    return float(counts.mean()), float(counts.std(ddof=1) / math.sqrt(counts.size)), int(counts.size)


@dataclass
class DensityHistogram:
    """Per-bin sums of per-sample counts, normalized to a correlation density.

    ``mode`` is 'length' (real line), 'area' (2-d plane region) or 'radial'
    (annuli: the density is per unit area of the annulus).
    """

    edges: tuple
    mode: str
    sums: np.ndarray
    sumsq: np.ndarray
    samples: int = 0
    window_total: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def volumes(self):
        if self.mode == "length":
            return np.diff(self.edges[0])
        if self.mode == "radial":
            r = self.edges[0]
            return math.pi * (r[1:] ** 2 - r[:-1] ** 2)
        return np.outer(np.diff(self.edges[0]), np.diff(self.edges[1]))

    @property
    def centers(self):
        return tuple(0.5 * (e[1:] + e[:-1]) for e in self.edges)

    @property
    def counts(self):
        return self.sums

    def density(self):
        return self.sums / (self.samples * self.volumes)

    def stderr(self):
        S = self.samples
        mean = self.sums / S
        var = np.maximum(self.sumsq / S - mean * mean, 0.0) * S / max(S - 1, 1)
        return np.sqrt(var / S) / self.volumes

    def merge(self, other):
        if self.mode != other.mode or any(not np.array_equal(a, b) for a, b in zip(self.edges, other.edges)):
            raise ValueError("histograms have different bins")
        return DensityHistogram(
            self.edges,
            self.mode,
            self.sums + other.sums,
            self.sumsq + other.sumsq,
            self.samples + other.samples,
            self.window_total + other.window_total,
            dict(self.meta),
        )

    def rows(self):
        dens = self.density()
        err = self.stderr()
        if len(self.edges) == 1:
            for c, k, d, e in zip(self.centers[0], self.sums, dens, err):
                yield (float(c), int(k), float(d), float(e))
        else:
            cx, cy = self.centers
            for i, x in enumerate(cx):
                for j, y in enumerate(cy):
                    yield (float(x), float(y), int(self.sums[i, j]), float(dens[i, j]), float(err[i, j]))

    def to_csv(self, path):
        header = ["center", "count", "density", "stderr"]
        if len(self.edges) == 2:
            header = ["center_x", "center_y", "count", "density", "stderr"]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in self.rows():
                w.writerow([repr(v) for v in row])


def _edges(window, bins):
    lo, hi = (float(v) for v in window)
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise ValueError("window must be a finite interval with hi > lo")
    bins = int(bins)
    if bins < 10:
        raise ValueError("need at least 10 bins")
    return np.linspace(lo, hi, bins + 1)


def _points_of(sample, kind, scale):
    if kind == "real":
        return np.asarray(sample.reals, dtype=float) * scale
    if kind == "upper":
        if isinstance(sample, ComplexSample):
            vals = np.asarray(sample.eigenvalues)
            return vals[vals.imag > 0] * scale
        return np.asarray(sample.pairs, dtype=complex) * scale
    if kind == "complex":
        if isinstance(sample, ComplexSample):
            return np.asarray(sample.eigenvalues) * scale
        p = np.asarray(sample.pairs, dtype=complex)
        return np.concatenate([p, p.conjugate()]) * scale
    raise ValueError("kind must be 'real', 'upper' or 'complex'")


def accumulate_density(samples, window, bins, kind="real", scale=1.0):
    """Histogram estimating R_{1,0} (kind='real', per unit length) or the
    density of non-real eigenvalues (per unit area).

    For kind='upper' each conjugate pair counts once through its upper
    representative, which estimates R_{0,1}; window is then
    ((xlo, xhi), (ylo, yhi)) and bins an int or a pair of ints.
    Points are multiplied by ``scale`` first (e.g. 1/sqrt(n)).
    """
    if kind == "real":
        edges = (_edges(window, bins),)
        shape = (len(edges[0]) - 1,)
        mode = "length"
    else:
        bx, by = (bins, bins) if np.isscalar(bins) else bins
        edges = (_edges(window[0], bx), _edges(window[1], by))
        shape = (len(edges[0]) - 1, len(edges[1]) - 1)
        mode = "area"
    sums = np.zeros(shape)
    sumsq = np.zeros(shape)
    S = 0
    for sample in samples:
        pts = _points_of(sample, kind, scale)
        if kind == "real":
            c, _ = np.histogram(pts, bins=edges[0])
        else:
            c, _, _ = np.histogram2d(pts.real, pts.imag, bins=edges)
        sums += c
        sumsq += c * c
        S += 1
    total = int(sums.sum())
    if S == 0 or total == 0:
        raise EmptyWindow("no eigenvalues fell inside the window")
    return DensityHistogram(edges, mode, sums, sumsq, S, total, {"kind": kind, "scale": scale})


def accumulate_radial(samples, window, bins, kind="complex", scale=1.0):
    """Histogram of |eigenvalue| in annuli, normalized per unit area."""
    edges = (_edges(window, bins),)
    if edges[0][0] < 0:
        raise ValueError("radial window must start at r >= 0")
    shape = (len(edges[0]) - 1,)
    sums = np.zeros(shape)
    sumsq = np.zeros(shape)
    S = 0
    for sample in samples:
        pts = _points_of(sample, kind, scale)
        c, _ = np.histogram(np.abs(pts), bins=edges[0])
        sums += c
        sumsq += c * c
        S += 1
    if S == 0 or sums.sum() == 0:
        raise EmptyWindow("no eigenvalues fell inside the window")
    return DensityHistogram(edges, "radial", sums, sumsq, S, int(sums.sum()), {"kind": kind, "scale": scale})


def expected_bins_1d(f, edges):
    """Average of f over each interval [e_k, e_{k+1}]."""
    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        v, _ = integrate.quad(f, a, b, epsabs=1e-12, epsrel=1e-10)
        out.append(v / (b - a))
    return np.array(out)


def expected_bins_2d(f, xedges, yedges, order=6):
    """Average of f(x + iy) over each rectangle, by a Gauss-Legendre product rule."""
    t, w = np.polynomial.legendre.leggauss(order)
    out = np.zeros((len(xedges) - 1, len(yedges) - 1))
    for i, (xa, xb) in enumerate(zip(xedges[:-1], xedges[1:])):
        xs = 0.5 * (xb - xa) * t + 0.5 * (xa + xb)
        for j, (ya, yb) in enumerate(zip(yedges[:-1], yedges[1:])):
            ys = 0.5 * (yb - ya) * t + 0.5 * (ya + yb)
            vals = np.array([[f(complex(x, y)) for y in ys] for x in xs])
            out[i, j] = 0.25 * float(w @ vals @ w)
    return out


def expected_bins_radial(f, edges):
    """Area average of a radial density f(r) over each annulus."""
    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        v, _ = integrate.quad(lambda r: 2.0 * math.pi * r * f(r), a, b, epsabs=1e-12, epsrel=1e-10)
        out.append(v / (math.pi * (b * b - a * a)))
    return np.array(out)


def z_scores(hist, expected):
    """(density - expected)/stderr on occupied bins, flattened."""
    dens = hist.density()
    err = hist.stderr()
    mask = hist.sums > 0
    return ((dens - expected) / np.where(err > 0, err, np.inf))[mask]
