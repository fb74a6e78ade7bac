"""strata_opt: moment relaxations for polynomial optimization, applied to
distances from constitutive tensors to closed isotropy strata.

The package layers as follows: ``poly`` (sparse polynomials, graded index
sets) feeds ``moment`` (moment/localizing matrices, LMI assembly), solved by
``sdp`` (dense primal-dual interior point) and driven by ``hierarchy``
(relaxation loop, rank certification, atom extraction).  ``mech`` holds the
constitutive-tensor algebra and reduces stratum distances to small
polynomial problems; ``datasets``, ``popfile``, ``reports`` and ``cli``
provide the data and user-facing plumbing.
"""

from .hierarchy import (
    HierarchyOptions,
    HierarchyResult,
    add_ball_constraint,
    check_rank_condition,
    extract_minimizers,
    numerical_rank,
    run_hierarchy,
)
from .moment import (
    EQ,
    GE,
    MomentVector,
    RelaxationProblem,
    assemble_relaxation,
    localizing_matrix,
    minimal_order,
    moment_matrix,
    shift_vector,
)
from .poly import IndexSet, Polynomial, lambda_set, poly_add, poly_eval, poly_mul, poly_scale
from .sdp import SdpSolution, SolverOptions, solve_sdp

__all__ = [
    "EQ",
    "GE",
    "HierarchyOptions",
    "HierarchyResult",
    "IndexSet",
    "MomentVector",
    "Polynomial",
    "RelaxationProblem",
    "SdpSolution",
    "SolverOptions",
    "add_ball_constraint",
    "assemble_relaxation",
    "check_rank_condition",
    "extract_minimizers",
    "lambda_set",
    "localizing_matrix",
    "minimal_order",
    "moment_matrix",
    "numerical_rank",
    "poly_add",
    "poly_eval",
    "poly_mul",
    "poly_scale",
    "run_hierarchy",
    "shift_vector",
    "solve_sdp",
]

__version__ = "0.1.0"
