"""Seeded random instances and fixed fixtures for tests and the self-check."""
import numpy as np

from .varieties import LinearVariety


def axis_lines():
    """The lines ``y=0, z=1`` and ``x=0, z=0`` in R^3.

    Closest points are (0,0,1) and (0,0,0), distance 1, yet the least-norm
    parameters are zero, so the distance is not the parameter norm.
    """
    first = LinearVariety([0.0, 0.0, 1.0], [[1.0], [0.0], [0.0]], "plus")
    second = LinearVariety([0.0, 0.0, 0.0], [[0.0], [1.0], [0.0]], "minus")
    return first, second


def shifted_axis_lines():
    """Same two lines, with offsets moved along each line.

    The optimal parameters become u* = -3, v* = 5, so any sign mistake in the
    second block moves the returned points.
    """
    first = LinearVariety([3.0, 0.0, 1.0], [[1.0], [0.0], [0.0]], "plus")
    second = LinearVariety([0.0, 5.0, 0.0], [[0.0], [1.0], [0.0]], "minus")
    return first, second


def low_rank(rng, m, n, r):
    return rng.standard_normal((m, r)) @ rng.standard_normal((r, n))


MATRIX_KINDS = ("gaussian", "low_rank", "zero_columns", "scaled", "zero")


def random_matrix(rng, max_dim=50, kind=None):
    """A random ``m x n`` matrix, ``1 <= m, n <= max_dim``.

    Low-rank kinds are exact products of thin Gaussian factors.
    """
    m, n = (int(x) for x in rng.integers(1, max_dim + 1, size=2))
    kind = kind or MATRIX_KINDS[rng.integers(len(MATRIX_KINDS))]
    if kind == "gaussian":
        return rng.standard_normal((m, n))
    if kind == "low_rank":
        r = int(rng.integers(1, min(m, n) + 1))
        return low_rank(rng, m, n, r)
    if kind == "zero_columns":
        a = rng.standard_normal((m, n))
        a[:, rng.random(n) < 0.3] = 0.0
        return a
    if kind == "scaled":
        return 10.0 ** rng.uniform(-6, 6) * rng.standard_normal((m, n))
    return np.zeros((m, n))


BLOCK_KINDS = ("generic", "c_in_range_b", "b_zero", "low_rank_b", "partial_overlap", "c_zero")


def random_blocks(rng, max_rows=30, kind=None):
    """A random ``(B, C)`` pair with the same number of rows.

    ``c_in_range_b`` makes ``G`` vanish, ``b_zero`` makes ``B^+`` vanish,
    ``partial_overlap`` shares one direction between the blocks.
    """
    m = int(rng.integers(1, max_rows + 1))
    l1, l2 = (int(x) for x in rng.integers(1, 9, size=2))
    kind = kind or BLOCK_KINDS[rng.integers(len(BLOCK_KINDS))]
    if kind == "generic":
        b, c = rng.standard_normal((m, l1)), rng.standard_normal((m, l2))
    elif kind == "c_in_range_b":
        b = rng.standard_normal((m, l1))
        c = b @ rng.standard_normal((l1, l2))
    elif kind == "b_zero":
        b, c = np.zeros((m, l1)), rng.standard_normal((m, l2))
    elif kind == "low_rank_b":
        b = low_rank(rng, m, l1, 1)
        c = rng.standard_normal((m, l2))
    elif kind == "partial_overlap":
        b = rng.standard_normal((m, l1))
        c = np.hstack([b @ rng.standard_normal((l1, 1)), rng.standard_normal((m, l2 - 1))])
    else:
        b, c = rng.standard_normal((m, l1)), np.zeros((m, l2))
    return b, c, kind


def random_line_pair(rng, scale=5.0):
    """Two lines in R^3 as ``(p1, d1, p2, d2)``."""
    return tuple(scale * rng.standard_normal(3) for _ in range(4))


def lines_as_varieties(p1, d1, p2, d2, second_sign="minus"):
    return (
        LinearVariety(p1, d1.reshape(3, 1), "plus"),
        LinearVariety(p2, d2.reshape(3, 1), second_sign),
    )


def random_variety_pair(rng, max_dim=8, generic=True):
    """Two varieties in R^m with random offsets.

    With ``generic`` the direction counts satisfy ``l1 + l2 <= m`` so the
    direction spaces meet only in zero and the closest pair is unique.
    """
    m = int(rng.integers(2, max_dim + 1))
    if generic:
        l1 = int(rng.integers(0, m))
        l2 = int(rng.integers(0, m - l1 + 1))
    else:
        l1, l2 = (int(x) for x in rng.integers(0, m + 1, size=2))
    signs = ("plus", "minus")
    return (
        LinearVariety(3 * rng.standard_normal(m), rng.standard_normal((m, l1)), signs[rng.integers(2)]),
        LinearVariety(3 * rng.standard_normal(m), rng.standard_normal((m, l2)), signs[rng.integers(2)]),
    )
