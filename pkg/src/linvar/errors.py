"""Exception hierarchy shared across the package."""


class LinvarError(Exception):
    """Base class for every error raised by linvar."""


class ShapeError(LinvarError, ValueError):
    """Operands have incompatible dimensions."""


class NonFiniteError(LinvarError, ValueError):
    """A NaN or infinity reached a constructor."""


class SvdConvergenceError(LinvarError, ArithmeticError):
    def __init__(self, sweeps):
        super().__init__(f"Jacobi SVD did not converge after {sweeps} sweeps")
        self.sweeps = sweeps


class NotPositiveDefiniteError(LinvarError, ArithmeticError):
    """Cholesky met a non-positive pivot."""


class PartitionBreakdownError(LinvarError, ArithmeticError):
    """The partitioned pseudoinverse failed its Penrose check.

    ``residuals`` holds the four Penrose residuals of the assembled matrix
    and ``bound`` the tolerance they were judged against.
    """

    def __init__(self, residuals, bound):
        worst = max(residuals)
        super().__init__(
            f"partitioned pseudoinverse breakdown: max Penrose residual "
            f"{worst:.3e} exceeds {bound:.3e}"
        )
        self.residuals = tuple(residuals)
        self.bound = bound
