"""Tour of the optimization layer: moment matrices, certified bounds, and
atom extraction, independent of any mechanics.

A polynomial minimum becomes a sequence of semidefinite programs over
truncated moment vectors; when the moment matrix of an optimal vector is
flat (rank stalls between two orders), the bound is exact and the optimal
points are literally the atoms of the measure behind the moments.
"""

import numpy as np

from strata_opt.hierarchy import HierarchyOptions, add_ball_constraint, run_hierarchy
from strata_opt.moment import GE, MomentVector, assemble_relaxation, moment_matrix
from strata_opt.poly import Polynomial
from strata_opt.sdp import solve_sdp

# --- moment matrices of simple measures --------------------------------
x_point = np.array([0.5, -1.0])
y = MomentVector.from_dirac(x_point, d=2)
M1 = moment_matrix(y, 1)
print("moment matrix of a point mass (rank 1):")
print(np.round(M1, 4))
print("rank:", np.linalg.matrix_rank(M1, tol=1e-9))

y2 = MomentVector.from_atoms([[1.0, 0.0], [-1.0, 0.0]], [0.5, 0.5], d=2)
print("\ntwo-atom mixture, order-2 moment matrix rank:",
      np.linalg.matrix_rank(moment_matrix(y2, 2), tol=1e-9))

# --- a single relaxation, assembled and solved directly ----------------
x1, x2 = Polynomial.variables(2)
f = (x1 * x1 - 1.0) ** 2 + (x2 - 0.5) ** 2
ball = Polynomial.constant(2, 9.0) - x1 * x1 - x2 * x2
relaxation = assemble_relaxation(f, [(ball, GE)], d=2)
print(f"\nassembled order-2 relaxation: {relaxation.num_moments} moments, "
      f"block sides {[b.side for b in relaxation.blocks]}")
solution = solve_sdp(relaxation)
print(f"solver: {solution.status} after {solution.iterations} iterations, "
      f"bound {solution.objective:.8f}, gap {solution.duality_gap:.1e}")

# --- the full loop with certification and extraction -------------------
result = run_hierarchy(f, [(ball, GE)], HierarchyOptions(d_max=4))
print(f"\nhierarchy: status {result.status_xi:+d}, bound {result.bound:.8f}, "
      f"order {result.order_reached}, {result.rank_s} atoms")
for point in result.minimizers:
    print("  minimizer:", np.round(point, 6), " f =", round(f.evaluate(point), 9))

# --- coercive objective with no constraints: add the ball trick --------
g = (x1 - 0.3) ** 2 + (x2 + 0.8) ** 2
constraints = add_ball_constraint(g, [], c=10.0, x_ref=np.zeros(2))
result = run_hierarchy(g, constraints, HierarchyOptions(d_max=2))
print(f"\nunconstrained coercive quadratic: bound {result.bound:.2e}, "
      f"minimizer {np.round(result.minimizers[0], 6)}")

# --- per-order diagnostics show how certification happens --------------
h = (x1 * x1 + x2 * x2 - 1.0) ** 2  # a whole circle of minimizers: never flat
constraints = add_ball_constraint(h, [], c=5.0, x_ref=np.zeros(2))
result = run_hierarchy(h, constraints, HierarchyOptions(d_max=3))
print(f"\ncircle of minimizers (no finite atom support), status {result.status_xi:+d}:")
for rec in result.diagnostics:
    print(f"  order {rec.d}: {rec.solver_status}, bound {rec.objective:.2e}, "
          f"ranks ({rec.rank_low}, {rec.rank_high})")
