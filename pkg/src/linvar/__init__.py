"""Distance between linear varieties via the Moore-Penrose pseudoinverse."""
from .errors import (
    LinvarError,
    NonFiniteError,
    NotPositiveDefiniteError,
    PartitionBreakdownError,
    ShapeError,
    SvdConvergenceError,
)
from .linalg import SvdFactors, as_matrix, as_vector, matmul, solve_spd, svd
from .oracle import (
    OracleReport,
    finite_diff_gradient_check,
    line_distance_r3,
    random_restart_minimize,
    tikhonov_solve,
)
from .pinv import (
    PartitionIntermediates,
    PenroseResiduals,
    PinvResult,
    TolerancePolicy,
    check_penrose,
    pinv_direct,
    pinv_partitioned,
    relative_penrose,
)
from .varieties import (
    BestPair,
    LinearVariety,
    Relation,
    VarietyRelation,
    assemble_system,
    best_pair,
    classify,
    distance,
)

__version__ = "0.1.0"
