import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linvar.errors import NonFiniteError, NotPositiveDefiniteError, ShapeError, SvdConvergenceError
from linvar import linalg
from linvar.linalg import as_matrix, fro, matmul, solve_spd, svd


def triple_loop(a, b):
    out = [[0.0] * len(b[0]) for _ in a]
    for i in range(len(a)):
        for j in range(len(b[0])):
            for k in range(len(b)):
                out[i][j] += a[i][k] * b[k][j]
    return out


def test_matmul_identity(rng):
    m = rng.standard_normal((3, 3))
    np.testing.assert_array_equal(matmul(np.eye(3), m), m)


def test_matmul_hand_example():
    np.testing.assert_array_equal(matmul([[1, 2], [3, 4]], [[0], [1]]), [[2], [4]])


def test_matmul_matches_triple_loop(rng):
    a, b = rng.standard_normal((5, 4)), rng.standard_normal((4, 3))
    np.testing.assert_allclose(matmul(a, b), triple_loop(a.tolist(), b.tolist()), rtol=1e-14, atol=1e-14)


def test_matmul_shape_error_names_both_shapes():
    with pytest.raises(ShapeError, match=r"2x3 by 2x2"):
        matmul(np.ones((2, 3)), np.ones((2, 2)))


def test_constructors_reject_non_finite():
    with pytest.raises(NonFiniteError):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(NonFiniteError):
        linalg.as_vector([np.inf])


def test_values_are_read_only():
    m = as_matrix([[1.0]])
    with pytest.raises(ValueError):
        m[0, 0] = 2.0


@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_matmul_associative(seed, p, q, r, s):
    rng = np.random.default_rng(seed)
    a, b, c = rng.standard_normal((p, q)), rng.standard_normal((q, r)), rng.standard_normal((r, s))
    left, right = matmul(matmul(a, b), c), matmul(a, matmul(b, c))
    assert fro(left - right) <= 1e-12 * max(1.0, fro(left))


# --- svd ---------------------------------------------------------------------


def check_factors(a, f):
    m, n = a.shape
    assert f.u.shape == (m, m) and f.v.shape == (n, n) and f.s.shape == (min(m, n),)
    assert np.all(f.s >= 0) and np.all(np.diff(f.s) <= 0)
    assert fro(f.u.T @ f.u - np.eye(m)) <= 1e-12 * m
    assert fro(f.v.T @ f.v - np.eye(n)) <= 1e-12 * n
    assert fro(f.reconstruct() - a) <= 1e-12 * max(1.0, fro(a))


def test_svd_diagonal():
    f = svd(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(f.s, [3.0, 1.0], rtol=1e-15)


def test_svd_zero_matrix():
    f = svd(np.zeros((2, 3)))
    np.testing.assert_array_equal(f.s, [0.0, 0.0])
    check_factors(np.zeros((2, 3)), f)


def test_svd_reconstructs_random(rng):
    a = rng.standard_normal((6, 4))
    check_factors(a, svd(a))


@pytest.mark.parametrize("shape", [(1, 1), (1, 7), (7, 1), (5, 5), (12, 3), (3, 12), (4, 0), (0, 3)])
def test_svd_shapes(rng, shape):
    a = rng.standard_normal(shape)
    check_factors(a, svd(a))


def test_svd_matches_lapack_singular_values(rng):
    for _ in range(20):
        m, n = rng.integers(1, 30, size=2)
        a = rng.standard_normal((m, n))
        np.testing.assert_allclose(svd(a).s, np.linalg.svd(a, compute_uv=False), rtol=0, atol=1e-13 * fro(a))


def test_svd_rank_deficient_columns_and_scaling(rng):
    # repeated columns drive the redundant ones to rounding noise
    base = rng.standard_normal((9, 3))
    a = np.hstack([base, base, np.zeros((9, 2)), base[:, :1]])
    for scale in (1e-200, 1.0, 1e200):
        f = svd(scale * a)
        check_factors(scale * a, f)
        assert np.count_nonzero(f.s > 1e-10 * f.s[0]) == 3


@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.integers(1, 12))
@settings(max_examples=50, deadline=None)
def test_svd_transpose_has_same_singular_values(seed, m, n):
    a = np.random.default_rng(seed).standard_normal((m, n))
    assert np.max(np.abs(svd(a).s - svd(a.T).s)) <= 1e-12 * max(1.0, fro(a))


def test_svd_non_convergence_reports_sweeps(monkeypatch, rng):
    monkeypatch.setattr(linalg, "MAX_SWEEPS", 1)
    with pytest.raises(SvdConvergenceError) as info:
        svd(rng.standard_normal((8, 8)))
    assert info.value.sweeps == 1


# --- solve_spd ---------------------------------------------------------------


def test_solve_spd_identity(rng):
    r = rng.standard_normal((4, 2))
    np.testing.assert_allclose(solve_spd(np.eye(4), r), r)


def test_solve_spd_diagonal():
    np.testing.assert_allclose(solve_spd([[2.0, 0.0], [0.0, 4.0]], [[2.0], [8.0]]), [[1.0], [2.0]])


def test_solve_spd_residual_random(rng):
    for _ in range(25):
        n, k = rng.integers(1, 15, size=2)
        el = rng.standard_normal((n, k))
        a = np.eye(n) + el @ el.T
        rhs = rng.standard_normal((n, 3))
        x = solve_spd(a, rhs)
        assert fro(a @ x - rhs) <= 1e-10 * max(1.0, fro(rhs))


@given(st.integers(0, 2**32 - 1), st.integers(1, 10), st.integers(1, 10), st.floats(1e-3, 1e3))
@settings(max_examples=50, deadline=None)
def test_solve_spd_never_fails_on_identity_plus_gram(seed, n, k, scale):
    el = scale * np.random.default_rng(seed).standard_normal((n, k))
    solve_spd(np.eye(n) + el @ el.T, np.ones(n))


def test_solve_spd_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        solve_spd([[1.0, 0.0], [0.0, -1.0]], [1.0, 1.0])
    with pytest.raises(NotPositiveDefiniteError):
        solve_spd([[1.0, 2.0], [0.0, 1.0]], [1.0, 1.0])
