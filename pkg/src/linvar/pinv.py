"""Moore-Penrose pseudoinverse: direct SVD route and column-partitioned route.

The partitioned route assembles ``[B C]^+`` from ``B^+`` and ``G^+`` where
``G = (I - B B^+) C`` is the part of ``C`` outside the range of ``B`` and
``H = B^+ C (I - G^+ G)`` is the part of ``C`` that ``G`` cannot see::

    K   = (I + H H^T)^{-1} (B^+ - B^+ C G^+)
    [B C]^+ = [ K ; H^T K + G^+ ]

Every rank decision inside one call uses a single cutoff scaled to the whole
system, so a ``G`` made of rounding noise is treated as zero rather than
inverted.
"""
from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional

import numpy as np

from .errors import PartitionBreakdownError, ShapeError
from .linalg import EPS, _freeze, as_matrix, fro, solve_spd, svd

PENROSE_RTOL = 1e-9


@dataclass(frozen=True)
class TolerancePolicy:
    """How singular values are judged to be zero.

    ``automatic`` uses ``max(m, n) * eps * sigma_max``; ``explicit`` uses
    ``explicit_cutoff`` verbatim.
    """

    mode: Literal["automatic", "explicit"] = "automatic"
    explicit_cutoff: Optional[float] = None

    def __post_init__(self):
        if self.mode not in ("automatic", "explicit"):
            raise ValueError(f"unknown tolerance mode {self.mode!r}")
        if self.mode == "explicit":
            if self.explicit_cutoff is None or not self.explicit_cutoff > 0:
                raise ValueError("explicit mode needs a positive cutoff")

    @classmethod
    def explicit(cls, cutoff):
        return cls("explicit", float(cutoff))

    def cutoff(self, shape, scale):
        """Cutoff for a matrix of ``shape`` whose largest singular value is ``scale``."""
        if self.mode == "explicit":
            return float(self.explicit_cutoff)
        # floor keeps the cutoff positive for the zero matrix
        return float(max(max(shape) * EPS * scale, np.finfo(np.float64).tiny))


AUTOMATIC = TolerancePolicy()


@dataclass(frozen=True)
class PinvResult:
    pinv: np.ndarray
    numerical_rank: int
    tolerance_used: float


class PenroseResiduals(NamedTuple):
    """Frobenius residuals of the four Penrose equations."""

    axa: float
    xax: float
    ax_sym: float
    xa_sym: float

    def within(self, bound):
        return max(self) <= bound


@dataclass(frozen=True)
class PartitionIntermediates:
    g: np.ndarray
    h: np.ndarray
    g_pinv: np.ndarray
    b_pinv: np.ndarray


def _truncated(a, cutoff):
    """Leading singular triplets of ``a`` strictly above ``cutoff``."""
    f = svd(a)
    r = int(np.count_nonzero(f.s > cutoff))
    return f.u[:, :r], f.s[:r], f.v[:, :r]


def _assemble(u, s, v):
    return _freeze((v / s) @ u.T if s.size else np.zeros((v.shape[0], u.shape[0])))


def pinv_direct(a, tol_policy=AUTOMATIC):
    """Pseudoinverse ``V diag(1/s) U^T`` over singular values above the cutoff."""
    a = as_matrix(a)
    f = svd(a)
    smax = float(f.s[0]) if f.s.size else 0.0
    cutoff = tol_policy.cutoff(a.shape, smax)
    r = int(np.count_nonzero(f.s > cutoff))
    x = _assemble(f.u[:, :r], f.s[:r], f.v[:, :r])
    return PinvResult(pinv=x, numerical_rank=r, tolerance_used=cutoff)


def check_penrose(a, candidate):
    a = as_matrix(a)
    x = as_matrix(candidate, "candidate")
    if x.shape != a.shape[::-1]:
        raise ShapeError(
            f"candidate is {x.shape[0]}x{x.shape[1]}, expected {a.shape[1]}x{a.shape[0]}"
        )
    ax = a @ x
    xa = x @ a
    return PenroseResiduals(
        axa=fro(ax @ a - a),
        xax=fro(xa @ x - x),
        ax_sym=fro(ax.T - ax),
        xa_sym=fro(xa.T - xa),
    )


def relative_penrose(a, candidate):
    """Penrose residuals, each divided by ``max(1, ||T||_F)`` for the term
    ``T`` it measures (``A``, ``X``, ``AX``, ``XA`` respectively).

    Residual 2 grows like ``||X||``, so a bound scaled by ``||A||`` alone
    would fail every small-scale input.
    """
    raw = check_penrose(a, candidate)
    a = np.asarray(a, dtype=np.float64)
    x = np.asarray(candidate, dtype=np.float64)
    scales = (fro(a), fro(x), fro(a @ x), fro(x @ a))
    return PenroseResiduals(*(r / max(1.0, sc) for r, sc in zip(raw, scales)))


def _orth_complement_apply(q, x):
    # twice is enough: one pass leaves O(eps * kappa) leakage, two leave O(eps)
    for _ in range(2):
        x = x - q @ (q.T @ x)
    return x


def pinv_partitioned(b, c, tol_policy=AUTOMATIC, check=True):
    """Pseudoinverse of ``[b c]`` built from the pseudoinverses of its blocks.

    Returns ``(PinvResult, PartitionIntermediates)``. With ``check`` set, the
    assembled matrix is verified against the four Penrose equations for
    ``[b c]`` and :class:`PartitionBreakdownError` is raised if any residual
    exceeds ``1e-9`` in the relative sense of :func:`relative_penrose`.

    In automatic mode the shared cutoff is ``max(m, n) * eps * ||[b c]||_F``;
    the Frobenius norm bounds ``sigma_max([b c])`` without factoring it.
    """
    b = as_matrix(b, "first block")
    c = as_matrix(c, "second block")
    if b.shape[0] != c.shape[0]:
        raise ShapeError(
            f"blocks have {b.shape[0]} and {c.shape[0]} rows; cannot place side by side"
        )
    m, l1 = b.shape
    l2 = c.shape[1]
    a = np.hstack([b, c])
    cutoff = tol_policy.cutoff(a.shape, fro(a))

    ub, sb, vb = _truncated(b, cutoff)
    b_pinv = _assemble(ub, sb, vb)
    if l1 == 0 or l2 == 0:
        g = c if l1 == 0 else np.zeros((m, 0))
        ug, sg, vg = _truncated(g, cutoff)
        g_pinv = _assemble(ug, sg, vg)
        h = np.zeros((l1, l2))
        x = np.vstack([b_pinv, g_pinv])
    else:
        g = _orth_complement_apply(ub, c)
        ug, sg, vg = _truncated(g, cutoff)
        g_pinv = _assemble(ug, sg, vg)
        # C (I - G^+ G) with G^+ G = vg vg^T
        h = b_pinv @ _orth_complement_apply(vg, c.T).T
        top = b_pinv - b_pinv @ c @ g_pinv
        k = solve_spd(np.eye(l1) + h @ h.T, top)
        x = np.vstack([k, h.T @ k + g_pinv])

    result = PinvResult(pinv=_freeze(x), numerical_rank=sb.size + sg.size, tolerance_used=cutoff)
    inter = PartitionIntermediates(
        g=_freeze(np.array(g)), h=_freeze(h), g_pinv=g_pinv, b_pinv=b_pinv
    )
    if check:
        res = relative_penrose(a, result.pinv)
        if not res.within(PENROSE_RTOL):
            raise PartitionBreakdownError(res, PENROSE_RTOL)
    return result, inter
