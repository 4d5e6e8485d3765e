"""Independent cross-checks for the pseudoinverse distance machinery.

Nothing here touches the SVD or either pseudoinverse route. The objective is
evaluated straight from the varieties' own points, ``v1.at(u) - v2.at(v)``,
so a sign slip in system assembly shows up as a disagreement.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ShapeError
from .linalg import as_matrix, as_vector, fro, solve_spd

ORACLE_RTOL = 1e-6


@dataclass(frozen=True)
class OracleReport:
    method_value: float
    oracle_value: float
    absolute_gap: float
    relative_gap: float
    tolerance: float
    passed: bool
    gradient: Optional[np.ndarray] = None

    @classmethod
    def compare(cls, method_value, oracle_value, tolerance=ORACLE_RTOL):
        gap = abs(method_value - oracle_value)
        rel = gap / max(1.0, abs(oracle_value))
        return cls(float(method_value), float(oracle_value), gap, rel, tolerance, rel <= tolerance)


def tikhonov_solve(a, d, lam):
    """Ridge solution ``(A^T A + lam I)^{-1} A^T d``.

    Tends to the least-norm least-squares solution as ``lam -> 0+``.

    Wide systems use the equal form ``A^T (A A^T + lam I)^{-1} d`` so the SPD
    system stays as small as possible. For rank-deficient ``A`` either form
    carries a rounding floor of roughly ``eps * ||A||^2 / lam`` relative to
    the solution.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    a = as_matrix(a)
    d = as_vector(d, "rhs")
    m, n = a.shape
    if d.size != m:
        raise ShapeError(f"rhs has length {d.size}, matrix has {m} rows")
    if m < n:
        gram = a @ a.T
        gram = 0.5 * (gram + gram.T) + lam * np.eye(m)
        return a.T @ solve_spd(gram, d)
    normal = a.T @ a
    normal = 0.5 * (normal + normal.T) + lam * np.eye(n)
    return solve_spd(normal, a.T @ d)


def line_distance_r3(p1, dir1, p2, dir2):
    """Distance between the lines ``p1 + s dir1`` and ``p2 + t dir2`` in R^3."""
    p1, dir1, p2, dir2 = (as_vector(x) for x in (p1, dir1, p2, dir2))
    if any(x.size != 3 for x in (p1, dir1, p2, dir2)):
        raise ShapeError("line_distance_r3 works in R^3 only")
    n1, n2 = np.linalg.norm(dir1), np.linalg.norm(dir2)
    if n1 == 0 or n2 == 0:
        raise ValueError("direction vectors must be nonzero")
    gap = p2 - p1
    cross = np.cross(dir1, dir2)
    nc = np.linalg.norm(cross)
    if nc <= 1e-12 * n1 * n2:
        # parallel: distance from p2 to the first line
        return float(np.linalg.norm(gap - (gap @ dir1) / (n1 * n1) * dir1))
    return float(abs(gap @ cross) / nc)


def _gap(v1, v2, x):
    l1 = v1.n_params
    return v1.at(x[:l1]) - v2.at(x[l1:])


def _objective_sq(v1, v2, x):
    r = _gap(v1, v2, x)
    return float(r @ r)


def random_restart_minimize(v1, v2, restarts=10, steps=50, seed=0, scale=10.0):
    """Best value of ``f(u, v) = ||v1.at(u) - v2.at(v)||`` over random starts.

    Each start runs conjugate-gradient descent on ``f^2``, restarted every
    ``n`` steps, for ``steps`` iterations. The objective is a convex
    quadratic, so every start heads to the same minimum value.
    """
    if restarts < 1 or steps < 1:
        raise ValueError("restarts and steps must be at least 1")
    if v1.dim != v2.dim:
        raise ShapeError(f"varieties live in R^{v1.dim} and R^{v2.dim}")
    n = v1.n_params + v2.n_params
    if n == 0:
        return float(np.linalg.norm(_gap(v1, v2, np.zeros(0))))
    rng = np.random.default_rng(seed)
    # the gap is affine in x: gap(x) = jac @ x + gap(0)
    g0 = _gap(v1, v2, np.zeros(n))
    jac = np.column_stack([_gap(v1, v2, e) - g0 for e in np.eye(n)])
    best = np.inf
    for _ in range(restarts):
        x = rng.normal(scale=scale, size=n)
        gg_prev = 1.0
        for it in range(steps):
            if it % n == 0:
                p = None
            r = jac @ x + g0
            grad = jac.T @ r
            gg = grad @ grad
            if gg == 0:
                break
            p = -grad if p is None else -grad + (gg / gg_prev) * p
            jp = jac @ p
            denom = jp @ jp
            if denom == 0:
                break
            x = x - (r @ jp) / denom * p
            gg_prev = gg
        best = min(best, _objective_sq(v1, v2, x))
    return float(np.sqrt(best))


def central_difference_gradient(v1, v2, params, epsilon):
    """Central-difference gradient of ``f^2`` at the stacked parameters."""
    x = np.asarray(params, dtype=np.float64)
    grad = np.empty_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = epsilon
        grad[i] = (_objective_sq(v1, v2, x + step) - _objective_sq(v1, v2, x - step)) / (2 * epsilon)
    return grad


def finite_diff_gradient_check(v1, v2, pair, epsilon=1e-6, tol=ORACLE_RTOL):
    """Check first-order optimality of ``pair`` by finite differences.

    Passes when the gradient norm of ``f^2`` is at most ``tol * max(1, f^2)``.
    """
    if not 1e-8 <= epsilon <= 1e-4:
        raise ValueError("epsilon must lie in [1e-8, 1e-4]")
    x = np.concatenate([pair.params_first, pair.params_second])
    grad = central_difference_gradient(v1, v2, x, epsilon)
    fsq = _objective_sq(v1, v2, x)
    gnorm = fro(grad)
    bound = tol * max(1.0, fsq)
    return OracleReport(
        method_value=gnorm,
        oracle_value=0.0,
        absolute_gap=gnorm,
        relative_gap=gnorm,
        tolerance=bound,
        passed=gnorm <= bound,
        gradient=grad,
    )
