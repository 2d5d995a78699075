"""Pfaffians of antisymmetric matrices and the identities built on them."""

import itertools

import numpy as np

__all__ = [
    "SingularInput",
    "antisymmetric",
    "pfaffian",
    "pfaffian_matchings",
    "pfaffian_scaling_check",
    "cauchy_binet_residual",
    "fredholm_expansion_residual",
    "block_matrix",
    "symplectic_unit",
]

ANTISYM_TOL = 1e-12
PIVOT_RTOL = 1e-13
MAX_DIM = 2048


class SingularInput(ValueError):
    pass


def antisymmetric(a):
    """Validate an antisymmetric matrix and return a cleaned copy.

    Violations up to 1e-12 are absorbed by taking (A - A^T)/2; anything
    larger is rejected.
    """
    a = np.array(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (a.shape,))
    if a.shape[0] % 2:
        raise ValueError("Pfaffian needs an even dimension, got %d" % a.shape[0])
    if a.shape[0] > MAX_DIM:
        raise ValueError("dimension %d exceeds %d" % (a.shape[0], MAX_DIM))
    if not np.iscomplexobj(a):
        a = a.astype(float)
    if a.size and np.max(np.abs(a + a.T)) > ANTISYM_TOL:
        raise ValueError("matrix is not antisymmetric (violation %.3g)" % np.max(np.abs(a + a.T)))
    return 0.5 * (a - a.T)


def pfaffian(a, check=True):
    """Pfaffian by Parlett-Reid elimination with partial pivoting.

    Each step moves the largest entry of the current column into the pivot
    position (one row/column swap, sign flip) and eliminates with a skew
    rank-2 update.  A pivot below 1e-13 times the largest entry of the input
    means the Pfaffian is structurally zero and 0 is returned.
    """
    A = antisymmetric(a) if check else np.array(a, copy=True)
    n = A.shape[0]
    if n == 0:
        return 1.0
    scale = np.max(np.abs(A))
    if scale == 0:
        return A.dtype.type(0)
    thresh = PIVOT_RTOL * scale
    pf = A.dtype.type(1)
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if kp != k + 1:
            A[[k + 1, kp], k:] = A[[kp, k + 1], k:]
            A[k:, [k + 1, kp]] = A[k:, [kp, k + 1]]
            pf = -pf
        piv = A[k, k + 1]
        if abs(piv) <= thresh:
            return A.dtype.type(0)
        pf = pf * piv
        if k + 2 < n:
            tau = A[k, k + 2:] / piv
            col = A[k + 2:, k + 1]
            A[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return pf


def pfaffian_matchings(a):
    """Pfaffian as the signed sum over perfect matchings (small matrices only)."""
    a = np.asarray(a)
    n = a.shape[0]
    if n % 2:
        raise ValueError("odd dimension")
    if n > 12:
        raise ValueError("matching expansion is limited to dimension 12")

    def rec(idx):
        if not idx:
            return 1.0
        first, rest = idx[0], idx[1:]
        total = 0.0
        for j, other in enumerate(rest):
            if a[first, other] == 0:
                continue
            sign = -1.0 if j % 2 else 1.0
            total = total + sign * a[first, other] * rec(rest[:j] + rest[j + 1:])
        return total

    return rec(tuple(range(n)))


def pfaffian_scaling_check(a, d):
    """Return (Pf(D A D^T), Pf(A) det(D)) for a diagonal (or square) D."""
    a = antisymmetric(a)
    d = np.asarray(d)
    if d.ndim == 1:
        d = np.diag(d)
    if d.shape != a.shape:
        raise ValueError("dimension mismatch")
    return pfaffian(d @ a @ d.T), pfaffian(a) * np.linalg.det(d)


def cauchy_binet_residual(a, b, c):
    """Residual of the Pfaffian Cauchy-Binet identity.

    With A of shape (2J, 2K), B antisymmetric 2J and C antisymmetric 2K:
    Pf(C^{-T} - A^T B A)/Pf(C^{-T}) equals Pf(B^{-T} - A C A^T)/Pf(B^{-T}).
    """
    a = np.asarray(a)
    b = antisymmetric(b)
    c = antisymmetric(c)
    if a.shape != (b.shape[0], c.shape[0]):
        raise ValueError("A must be 2J x 2K with B of size 2J and C of size 2K")
    try:
        bit = np.linalg.inv(b).T
        cit = np.linalg.inv(c).T
    except np.linalg.LinAlgError as exc:
        raise SingularInput(str(exc)) from None
    pb = pfaffian(bit, check=False)
    pc = pfaffian(cit, check=False)
    if pb == 0 or pc == 0:
        raise SingularInput("B or C is singular")
    lhs = pfaffian(_skew(cit - a.T @ b @ a)) / pc
    rhs = pfaffian(_skew(bit - a @ c @ a.T)) / pb
    return float(abs(lhs - rhs))


def _skew(m):
    return 0.5 * (m - m.T)


def symplectic_unit(t):
    """Block diagonal J made of t copies of [[0, 1], [-1, 0]]."""
    j = np.zeros((2 * t, 2 * t))
    for i in range(t):
        j[2 * i, 2 * i + 1] = 1.0
        j[2 * i + 1, 2 * i] = -1.0
    return j


def block_matrix(blocks):
    """Flatten a T x T nested list of 2x2 blocks into a 2T x 2T array."""
    t = len(blocks)
    out = np.zeros((2 * t, 2 * t), dtype=complex)
    for i in range(t):
        for j in range(t):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = blocks[i][j]
    return out


def fredholm_expansion_residual(k):
    """|Pf(J + K) - (1 + sum over nonempty index subsets t of Pf K_t)|.

    ``k`` is a 2T x 2T antisymmetric matrix viewed as T x T blocks of size 2;
    K_t keeps the blocks whose row and column indices both lie in t.
    Returns the residual relative to max(1, |Pf(J + K)|).
    """
    k = antisymmetric(k)
    t = k.shape[0] // 2
    if t > 6:
        raise ValueError("expansion limited to T <= 6")
    full = pfaffian(symplectic_unit(t) + k)
    total = 1.0
    for size in range(1, t + 1):
        for sub in itertools.combinations(range(t), size):
            idx = [2 * i + r for i in sub for r in (0, 1)]
            total = total + pfaffian(k[np.ix_(idx, idx)])
    return float(abs(full - total) / max(1.0, abs(full)))
