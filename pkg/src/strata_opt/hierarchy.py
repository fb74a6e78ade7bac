"""Relaxation-order loop with rank certification and minimizer extraction.

The driver iterates relaxation orders d = d0, ..., d_max.  Each solved order
yields a lower bound rho_d; when the flatness condition

    rank M_{d-v}(y) = rank M_d(y),        v = max_i ceil(deg(g_i)/2),

holds for the optimal moment vector y, the bound is certified, the measure
behind y is atomic, and its atoms (the global minimizers) are extracted from
the moment matrix.  The overall status mirrors the classic three-valued
convention: -1 no order solved, 0 solved but not certified, +1 certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .moment import (
    EQ,
    GE,
    MomentVector,
    assemble_relaxation,
    minimal_order,
    moment_matrix,
)
from .poly import Polynomial, lambda_set
from .sdp import OPTIMAL, SdpSolution, SolverOptions, solve_sdp

__all__ = [
    "HierarchyOptions",
    "HierarchyResult",
    "OrderDiagnostics",
    "ExtractionFailure",
    "add_ball_constraint",
    "numerical_rank",
    "check_rank_condition",
    "extract_minimizers",
    "run_hierarchy",
]


class ExtractionFailure(RuntimeError):
    """Atom extraction could not complete (degenerate pivot or moment mismatch)."""


@dataclass(frozen=True)
class HierarchyOptions:
    d_max: int = 4
    rank_eps: float = 1e-6          # relative singular-value threshold
    extraction_tol: float = 1e-6
    feas_report_tol: float = 1e-6   # a-posteriori constraint check on atoms
    seed: int = 0                   # base seed for the extraction combination
    solver: SolverOptions = field(default_factory=SolverOptions)
    # Exact change of coordinates x = r * x~ applied before assembly: bounds
    # are unchanged, moment-matrix ranks are preserved (positive diagonal
    # congruence), and minimizers are mapped back by r.  Balancing the
    # optimizer magnitude to O(1) keeps the Newton systems well conditioned
    # regardless of the input units.
    coordinate_scale: float = 1.0


@dataclass
class OrderDiagnostics:
    d: int
    solver_status: str
    objective: float
    duality_gap: float
    iterations: int
    rank_low: int = -1
    rank_high: int = -1
    rank_satisfied: bool = False
    extraction_status: str = "not_attempted"
    extraction_seeds: list = field(default_factory=list)
    atom_count: int = 0
    max_constraint_violation: float = float("nan")
    max_objective_mismatch: float = float("nan")


@dataclass
class HierarchyResult:
    status_xi: int                  # -1, 0 or 1
    bound: float                    # rho, -inf when status_xi == -1
    order_reached: int
    minimizers: list = field(default_factory=list)
    rank_s: int = 0
    diagnostics: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status_xi == 1


def add_ball_constraint(f: Polynomial, constraints, c: float, x_ref=None):
    """Append the coercivity trick inequality c - f >= 0.

    Leaves the optimum unchanged for coercive f while making the constraint
    module Archimedean.  When a feasible reference point is supplied the
    hypothesis c > f(x_ref) is enforced.
    """
    if c <= 0:
        raise ValueError(f"ball constant must be positive, got c={c}")
    if x_ref is not None and f.evaluate(x_ref) >= c:
        raise ValueError(
            f"ball constant c={c} does not dominate f(x_ref)={f.evaluate(x_ref)}"
        )
    return list(constraints) + [(Polynomial.constant(f.n, c) - f, GE)]


def numerical_rank(M: np.ndarray, rank_eps: float) -> int:
    """Number of singular values above rank_eps * sigma_max; 0 for the zero matrix."""
    sv = np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rank_eps * sv[0]))


def check_rank_condition(y: MomentVector, d: int, v: int, rank_eps: float):
    """Flatness test rank M_{d-v}(y) == rank M_d(y); returns (satisfied, s, low)."""
    if d - v < 0:
        raise ValueError(f"d - v = {d - v} negative")
    low = numerical_rank(moment_matrix(y, d - v), rank_eps)
    high = numerical_rank(moment_matrix(y, d), rank_eps)
    return low == high, high, low


def _echelon_basis(V: np.ndarray, tol: float):
    """Greedy row selection of V (rows in graded-lex order) by modified
    Gram-Schmidt; returns the pivot row indices."""
    rows, s = V.shape
    scale = float(np.max(np.linalg.norm(V, axis=1), initial=0.0))
    if scale == 0.0:
        raise ExtractionFailure("zero moment-matrix factor")
    basis: list[np.ndarray] = []
    pivots: list[int] = []
    for ridx in range(rows):
        vec = V[ridx].copy()
        for b in basis:
            vec -= (vec @ b) * b
        nrm = np.linalg.norm(vec)
        if nrm > tol * scale:
            basis.append(vec / nrm)
            pivots.append(ridx)
            if len(pivots) == s:
                return pivots
    raise ExtractionFailure(
        f"only {len(pivots)} independent rows found for target rank {s}"
    )


def extract_minimizers(
    y: MomentVector,
    d: int,
    s: int,
    tol: float = 1e-6,
    rng: np.random.Generator | None = None,
):
    """Recover the s atoms of the measure behind a flat moment vector.

    Steps: rank-s eigenfactor of M_d(y); column-echelon pivot search for a
    monomial basis; per-variable multiplication matrices; simultaneous
    diagonalization through the real Schur form of a random convex
    combination; weights from the Vandermonde system against y.  Returns
    (points, weights); raises ExtractionFailure when any step degenerates.
    """
    rng = rng or np.random.default_rng(0)
    n = y.n
    M = moment_matrix(y, d)
    lam, vecs = np.linalg.eigh(M)
    order = np.argsort(lam)[::-1][:s]
    lam_top = lam[order]
    if lam_top[-1] <= 0:
        raise ExtractionFailure("moment matrix is not numerically PSD at target rank")
    V = vecs[:, order] * np.sqrt(lam_top)

    pivots = _echelon_basis(V, tol)
    idx_d = lambda_set(n, d)
    basis_monos = [idx_d.members[p] for p in pivots]
    if any(sum(b) >= d for b in basis_monos):
        raise ExtractionFailure("pivot monomial of top degree; cannot shift basis")

    # U expresses every monomial row in terms of the basis rows on the variety
    U = np.linalg.solve(V[pivots, :].T, V.T).T

    mult = []
    for k in range(n):
        rows = []
        for b in basis_monos:
            shifted = tuple(b[j] + (1 if j == k else 0) for j in range(n))
            rows.append(U[idx_d.position[shifted]])
        mult.append(np.array(rows))

    lam_mix = rng.random(n) + 0.1
    lam_mix /= lam_mix.sum()
    Nmix = sum(l * Nk for l, Nk in zip(lam_mix, mult))
    T, Q = sla.schur(Nmix, output="real")
    sub = np.max(np.abs(np.diag(T, -1))) if s > 1 else 0.0
    if sub > 1e-7 * (1.0 + np.max(np.abs(T))):
        raise ExtractionFailure("complex conjugate cluster in the Schur form")

    points = []
    for j in range(s):
        qj = Q[:, j]
        points.append(np.array([qj @ (Nk @ qj) for Nk in mult]))

    # weights from the Vandermonde system over Lambda(2d)
    idx_2d = y.index_set
    A = np.empty((len(idx_2d), s))
    for j, x in enumerate(points):
        col = np.empty(len(idx_2d))
        for pos, alpha in enumerate(idx_2d.members):
            m = 1.0
            for xi, ai in zip(x, alpha):
                if ai:
                    m *= xi**ai
            col[pos] = m
        A[:, j] = col
    w, *_ = np.linalg.lstsq(A, y.values, rcond=None)
    resid = float(np.max(np.abs(A @ w - y.values)))
    if resid > 100.0 * tol * max(1.0, float(np.max(np.abs(y.values)))):
        raise ExtractionFailure(f"atomic moments mismatch the input (residual {resid:.3e})")

    keep = [(x, float(wj)) for x, wj in zip(points, w) if wj >= tol]
    if not keep:
        raise ExtractionFailure("all recovered weights below tolerance")
    return [x for x, _ in keep], [wj for _, wj in keep]


def _constraint_violation(g: Polynomial, kind: str, x: np.ndarray) -> float:
    """Violation of g at x, relative to the magnitude of g's own terms."""
    val = g.evaluate(x)
    mag = 1.0
    for alpha, cc in g.terms.items():
        m = abs(cc)
        for xi, ai in zip(x, alpha):
            if ai:
                m *= abs(xi) ** ai
        mag += m
    raw = abs(val) if kind == EQ else max(0.0, -val)
    return raw / mag


def run_hierarchy(f: Polynomial, constraints, options: HierarchyOptions | None = None) -> HierarchyResult:
    """Run the relaxation loop; see module docstring for the status contract."""
    opts = options or HierarchyOptions()
    constraints = list(constraints)
    d0 = minimal_order(f, constraints)
    if opts.d_max < d0:
        raise ValueError(f"d_max={opts.d_max} below minimal order d0={d0}")
    r = float(opts.coordinate_scale)
    if not np.isfinite(r) or r <= 0.0:
        raise ValueError(f"coordinate_scale must be positive, got {r}")
    if r != 1.0:
        f_solve = f.dilate(r)
        cons_solve = [(g.dilate(r), kind) for g, kind in constraints]
    else:
        f_solve, cons_solve = f, constraints

    xi = -1
    rho = -np.inf
    minimizers: list[np.ndarray] = []
    rank_s = 0
    diags: list[OrderDiagnostics] = []
    order_reached = d0

    for d in range(d0, opts.d_max + 1):
        order_reached = d
        problem = assemble_relaxation(f_solve, cons_solve, d)
        sol: SdpSolution = solve_sdp(problem, opts.solver)
        rec = OrderDiagnostics(
            d=d,
            solver_status=sol.status,
            objective=sol.objective,
            duality_gap=sol.duality_gap,
            iterations=sol.iterations,
        )
        diags.append(rec)
        if sol.status != OPTIMAL:
            continue

        xi = 0
        rho = sol.objective
        satisfied, s_high, s_low = check_rank_condition(
            sol.y, d, problem.v_max, opts.rank_eps
        )
        rec.rank_low, rec.rank_high, rec.rank_satisfied = s_low, s_high, satisfied
        if not satisfied:
            continue

        atoms, accepted = _attempt_extraction(f, constraints, sol, d, s_high, opts, rec, r)
        if accepted:
            xi = 1
            minimizers = atoms
            rank_s = len(atoms)
            break

    return HierarchyResult(
        status_xi=xi,
        bound=rho,
        order_reached=order_reached,
        minimizers=minimizers,
        rank_s=rank_s,
        diagnostics=diags,
    )


def _attempt_extraction(f, constraints, sol, d, s, opts, rec, r=1.0):
    """Extraction with up to 3 reseeds plus a-posteriori atom validation.

    Atoms live in the (possibly dilated) solver coordinates; they are mapped
    back by r and validated against the original objective and constraints.
    """
    for attempt in range(4):  # initial draw + 3 reseeds
        seed = opts.seed + attempt
        rec.extraction_seeds.append(seed)
        try:
            points, _weights = extract_minimizers(
                sol.y, d, s, tol=opts.extraction_tol, rng=np.random.default_rng(seed)
            )
        except ExtractionFailure as exc:
            rec.extraction_status = f"failed: {exc}"
            continue

        points = [r * x for x in points]
        f_tol = max(1e-4 * (1.0 + abs(sol.objective)), 10.0 * sol.duality_gap)
        max_viol = 0.0
        max_fgap = 0.0
        good = []
        for x in points:
            viol = max(
                (_constraint_violation(g, kind, x) for g, kind in constraints),
                default=0.0,
            )
            fgap = abs(f.evaluate(x) - sol.objective)
            max_viol = max(max_viol, viol)
            max_fgap = max(max_fgap, fgap)
            if viol <= opts.feas_report_tol and fgap <= f_tol:
                good.append(x)
        rec.max_constraint_violation = max_viol
        rec.max_objective_mismatch = max_fgap
        if len(good) == len(points):
            rec.extraction_status = "ok"
            rec.atom_count = len(good)
            return good, True
        rec.extraction_status = (
            f"rejected: {len(points) - len(good)} atoms failed validation"
        )
    return [], False
