"""Dense real linear algebra: validated carriers, products, SVD, SPD solves.

Matrices and vectors are plain float64 numpy arrays. The ``as_matrix`` and
``as_vector`` constructors are the only gate: they copy, check shape and
reject non-finite entries, and hand back read-only arrays so values can be
shared freely.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import NonFiniteError, NotPositiveDefiniteError, ShapeError, SvdConvergenceError

EPS = np.finfo(np.float64).eps
MAX_SWEEPS = 100


def _freeze(arr):
    arr.setflags(write=False)
    return arr


def as_matrix(a, name="matrix"):
    """Return ``a`` as a read-only 2-D float64 array with finite entries.

    Zero rows or columns are allowed; an ``m x 0`` matrix is how an empty
    direction block is spelled.
    """
    arr = np.array(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeError(f"{name}: expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name}: non-finite entries are not allowed")
    return _freeze(arr)


def as_vector(x, name="vector"):
    arr = np.array(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeError(f"{name}: expected a 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name}: non-finite entries are not allowed")
    return _freeze(arr)


def fro(a):
    """Frobenius norm (Euclidean norm for vectors); 0.0 for empty input."""
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        return 0.0
    big = float(np.max(np.abs(a)))
    if big == 0.0 or not np.isfinite(big):
        return big
    # scale first so squares neither underflow nor overflow
    a = a / big
    return big * float(np.sqrt(np.sum(a * a)))


def matmul(a, b):
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return _freeze(a @ b)


@dataclass(frozen=True)
class SvdFactors:
    """Full SVD ``a = u @ diag(s) @ v.T`` with square orthogonal ``u`` and ``v``."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    def reconstruct(self):
        m, n = self.u.shape[0], self.v.shape[0]
        k = self.s.size
        return (self.u[:, :k] * self.s) @ self.v[:, :k].T if k else np.zeros((m, n))


def _round_robin(n):
    """Rounds of disjoint column pairs covering every pair exactly once."""
    players = list(range(n + (n % 2)))
    half = len(players) // 2
    rounds = []
    for _ in range(len(players) - 1):
        pairs = [(players[i], players[-1 - i]) for i in range(half)]
        pairs = [(min(p), max(p)) for p in pairs if max(p) < n]
        if pairs:
            p, q = np.array(pairs).T
            rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


# Columns shorter than this (on the unit-norm scaled matrix) are rounding
# debris of a rank-deficient input; rotating them further only drives them
# towards underflow.
NEGLIGIBLE = EPS * EPS


def _jacobi_tall(a):
    """One-sided Jacobi on a tall matrix (rows >= cols) with ``||a||_F ~ 1``.

    Returns the orthogonalised working matrix ``w = a @ v`` and ``v``.
    """
    m, n = a.shape
    w = a.copy()
    v = np.eye(n)
    tol = EPS * max(m, 1)
    floor = NEGLIGIBLE * NEGLIGIBLE
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            wp, wq = w[:, p], w[:, q]
            alpha = np.einsum("ij,ij->j", wp, wp)
            beta = np.einsum("ij,ij->j", wq, wq)
            gamma = np.einsum("ij,ij->j", wp, wq)
            active = (np.abs(gamma) > tol * np.sqrt(alpha * beta)) & (np.minimum(alpha, beta) > floor)
            if not active.any():
                continue
            # tan of the rotation angle, written without (beta - alpha) / gamma
            delta = beta - alpha
            sgn = np.where(delta >= 0, 1.0, -1.0) * np.where(gamma >= 0, 1.0, -1.0)
            denom = np.abs(delta) + np.hypot(delta, 2.0 * gamma)
            t = np.divide(sgn * np.abs(2.0 * gamma), denom, out=np.zeros_like(denom), where=active)
            active &= t != 0
            if not active.any():
                continue
            rotated = True
            c = np.where(active, 1.0 / np.sqrt(1.0 + t * t), 1.0)
            s = np.where(active, c * t, 0.0)
            w[:, p], w[:, q] = c * wp - s * wq, s * wp + c * wq
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
        if not rotated:
            return w, v
    raise SvdConvergenceError(MAX_SWEEPS)


def _complete_basis(q, m):
    """Extend orthonormal columns ``q`` (m x k) to an m x m orthogonal matrix."""
    basis = [q[:, j] for j in range(q.shape[1])]
    while len(basis) < m:
        cur = np.column_stack(basis) if basis else np.zeros((m, 0))
        # residual of every coordinate axis against the current basis
        resid = np.eye(m) - cur @ cur.T
        k = int(np.argmax(np.einsum("ij,ij->j", resid, resid)))
        x = resid[:, k]
        x = x - cur @ (cur.T @ x)
        basis.append(x / np.linalg.norm(x))
    return np.column_stack(basis) if basis else np.zeros((m, 0))


def svd(a):
    """Full singular value decomposition by one-sided (Hestenes) Jacobi.

    Singular values come back non-increasing. Raises
    :class:`SvdConvergenceError` after ``MAX_SWEEPS`` sweeps.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        f = svd(a.T)
        return SvdFactors(u=f.v, s=f.s, v=f.u)
    norm = fro(a)
    if norm == 0:
        return SvdFactors(u=_freeze(np.eye(m)), s=_freeze(np.zeros(n)), v=_freeze(np.eye(n)))
    # power-of-two scaling is exact and keeps squared norms away from under/overflow
    _, exp = np.frexp(norm)
    w, v = _jacobi_tall(np.ldexp(a, -exp))
    s = np.sqrt(np.einsum("ij,ij->j", w, w))
    s[s <= NEGLIGIBLE] = 0.0
    order = np.argsort(-s, kind="stable")
    s, w, v = s[order], w[:, order], v[:, order]
    nz = s > 0
    u = _complete_basis(w[:, nz] / s[nz], m)
    return SvdFactors(u=_freeze(u), s=_freeze(np.ldexp(s, exp)), v=_freeze(v))


def solve_spd(a, rhs):
    """Solve ``a @ x = rhs`` for symmetric positive definite ``a`` via Cholesky.

    ``rhs`` may be a vector or a matrix; the result has the same shape.
    """
    a = as_matrix(a, "coefficient matrix")
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeError(f"SPD solve needs a square matrix, got {a.shape[0]}x{a.shape[1]}")
    if fro(a - a.T) > 1e-12 * max(1.0, fro(a)):
        raise NotPositiveDefiniteError("coefficient matrix is not symmetric")
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape[0] != n:
        raise ShapeError(f"right-hand side has {rhs.shape[0]} rows, expected {n}")
    if n == 0:
        return _freeze(np.zeros(rhs.shape))
    try:
        factor = cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from None
    return _freeze(cho_solve(factor, rhs, check_finite=False))
