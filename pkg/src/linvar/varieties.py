"""Linear varieties, their best approximation pair, and pair classification.

A variety is ``{offset + sign * directions @ t}``. For a pair (first, second)
the distance problem is rewritten as the least-squares system

    minimize || A x - d ||,   A = [B  C],  d = c - b,  x = [u; v]

with ``B`` the first direction block taken with a plus sign and ``C`` the
second taken with a minus sign, so that ``A x - d = (b + B u) - (c - C v)``.
The least-norm solution ``x* = A^+ d`` gives the pair of closest points.
"""
import enum
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .errors import PartitionBreakdownError, ShapeError
from .linalg import _freeze, as_matrix, as_vector, fro
from .pinv import AUTOMATIC, PenroseResiduals, pinv_direct, pinv_partitioned, relative_penrose

CONTAINMENT_RTOL = 1e-9
CLASSIFY_RTOL = 1e-8


@dataclass(frozen=True)
class LinearVariety:
    """Affine subspace ``offset + s * directions @ t`` with ``s`` = +1 or -1.

    ``directions`` holds one direction per column and may have zero columns,
    in which case the variety is the single point ``offset``.
    """

    offset: np.ndarray
    directions: np.ndarray
    sign: Literal["plus", "minus"] = "plus"

    def __post_init__(self):
        offset = as_vector(self.offset, "offset")
        dirs = np.asarray(self.directions, dtype=np.float64)
        if dirs.size == 0:
            dirs = np.zeros((offset.size, 0))
        dirs = as_matrix(dirs, "directions")
        if dirs.shape[0] != offset.size:
            raise ShapeError(
                f"offset has dimension {offset.size} but directions have {dirs.shape[0]} rows"
            )
        if self.sign not in ("plus", "minus"):
            raise ValueError(f"sign must be 'plus' or 'minus', got {self.sign!r}")
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def point(cls, p):
        p = as_vector(p, "point")
        return cls(p, np.zeros((p.size, 0)))

    @property
    def dim(self):
        return self.offset.size

    @property
    def n_params(self):
        return self.directions.shape[1]

    @property
    def signed_directions(self):
        """Directions with the sign folded in, so points are ``offset + D t``."""
        return self.directions if self.sign == "plus" else -self.directions

    def at(self, t):
        """The point with parameters ``t``."""
        t = np.asarray(t, dtype=np.float64)
        return self.offset + self.signed_directions @ t

    def translated(self, shift):
        return LinearVariety(self.offset + np.asarray(shift), self.directions, self.sign)


def _same_dim(v1, v2):
    if v1.dim != v2.dim:
        raise ShapeError(f"varieties live in R^{v1.dim} and R^{v2.dim}")


def assemble_system(v1, v2):
    """Return ``(A, d)`` with ``A = [B C]`` and ``d = c - b``.

    Signs are normalised so that ``A @ [u; v] - d`` equals the gap
    ``v1.at(u) - v2.at(v)`` for the caller's own parameters.
    """
    _same_dim(v1, v2)
    a = np.hstack([v1.signed_directions, -v2.signed_directions])
    d = v2.offset - v1.offset
    return _freeze(a), _freeze(d)


@dataclass(frozen=True)
class BestPair:
    point_on_first: np.ndarray
    point_on_second: np.ndarray
    params_first: np.ndarray
    params_second: np.ndarray
    distance: float
    residual: np.ndarray
    param_norm: float
    method: str = "direct"
    fallback: bool = False
    penrose_residuals: Optional[PenroseResiduals] = None
    # ||B^T r||, ||C^T r|| for r = b* - c*
    orthogonality: tuple = field(default=(0.0, 0.0))


def best_pair(v1, v2, method="direct", tol_policy=AUTOMATIC, allow_fallback=True):
    """Closest points ``(b*, c*)`` of two varieties and their distance.

    ``method="partitioned"`` builds ``A^+`` blockwise; if that route fails its
    Penrose check the direct route is used instead and ``fallback`` is set,
    unless ``allow_fallback`` is false, in which case the
    :class:`PartitionBreakdownError` propagates.

    The pair is unique only when the direction spaces meet trivially; in the
    other cases the least-norm parameters pick one representative.
    """
    if method not in ("direct", "partitioned"):
        raise ValueError(f"unknown method {method!r}")
    a, d = assemble_system(v1, v2)
    l1 = v1.n_params
    fallback = False
    penrose = None
    if method == "partitioned":
        try:
            res, _ = pinv_partitioned(a[:, :l1], a[:, l1:], tol_policy)
            penrose = relative_penrose(a, res.pinv)
        except PartitionBreakdownError as exc:
            if not allow_fallback:
                raise
            fallback = True
            penrose = PenroseResiduals(*exc.residuals)
            res = pinv_direct(a, tol_policy)
    else:
        res = pinv_direct(a, tol_policy)

    x = res.pinv @ d
    u, v = x[:l1], x[l1:]
    b_star = v1.at(u)
    c_star = v2.at(v)
    r = b_star - c_star
    orth = (fro(v1.directions.T @ r), fro(v2.directions.T @ r))
    return BestPair(
        point_on_first=_freeze(b_star),
        point_on_second=_freeze(c_star),
        params_first=_freeze(u),
        params_second=_freeze(v),
        distance=fro(r),
        residual=_freeze(r),
        param_norm=fro(x),
        method=method,
        fallback=fallback,
        penrose_residuals=penrose,
        orthogonality=orth,
    )


def distance(v1, v2, tol_policy=AUTOMATIC):
    return best_pair(v1, v2, "direct", tol_policy).distance


class Relation(str, enum.Enum):
    INTERSECTING = "intersecting"
    PARALLEL = "parallel"
    SKEW = "skew"
    MIXED = "mixed"


@dataclass(frozen=True)
class VarietyRelation:
    """Relative position of two varieties.

    ``parallel`` means one direction space contains the other (a point's
    empty direction space is contained in every other), ``skew`` means the
    direction spaces meet only in zero, ``mixed`` is what is left over.
    ``containment`` is the relative residual of the smaller direction space
    against the projector onto the larger one.
    """

    tag: Relation
    distance: float
    ranks: tuple
    containment: float
    tolerance: float


def _containment(inner, outer, tol_policy):
    if inner.shape[1] == 0:
        return 0.0
    if outer.shape[1] == 0:
        return fro(inner) / max(1.0, fro(inner))
    p = pinv_direct(outer, tol_policy).pinv
    leak = inner - outer @ (p @ inner)
    return fro(leak) / max(1.0, fro(inner))


def classify(v1, v2, tol=None, tol_policy=AUTOMATIC):
    """Tag the pair as intersecting, parallel, skew or mixed.

    ``tol`` is the distance at or below which the varieties count as
    intersecting; it defaults to ``1e-8 * max(1, ||c - b||)``.
    """
    a, d = assemble_system(v1, v2)
    if tol is None:
        tol = CLASSIFY_RTOL * max(1.0, fro(d))
    dist = best_pair(v1, v2, "direct", tol_policy).distance
    bdir, cdir = v1.directions, v2.directions
    r1 = pinv_direct(bdir, tol_policy).numerical_rank
    r2 = pinv_direct(cdir, tol_policy).numerical_rank
    ra = pinv_direct(a, tol_policy).numerical_rank
    if r1 <= r2:
        contain = _containment(bdir, cdir, tol_policy)
    else:
        contain = _containment(cdir, bdir, tol_policy)

    if dist <= tol:
        tag = Relation.INTERSECTING
    elif contain <= CONTAINMENT_RTOL:
        tag = Relation.PARALLEL
    elif ra == r1 + r2:
        tag = Relation.SKEW
    else:
        tag = Relation.MIXED
    return VarietyRelation(tag=tag, distance=dist, ranks=(r1, r2), containment=contain, tolerance=tol)
