"""Dense primal-dual interior-point solver for block-LMI semidefinite programs.

Solves

    minimize  c_0 + <c, u>   s.t.   A_i(u) := A_i[0] + sum_k u_k A_i[k] >= 0

for every block i, which is the shape every moment relaxation assembles to
(the u_k are the moments y_alpha with alpha != 0; y_0 is pinned to 1 and
never solved for).

Algorithm: infeasible-start path following with Nesterov-Todd scaling and a
Mehrotra predictor-corrector step.  Per iteration the scaling point W_i of
each block is factored as W_i = G_i G_i^T, the constraint stack is congruence
transformed by G_i^{-1}, and the Schur complement

    M[k, j] = sum_i <G_i^{-1} A_i[k] G_i^{-T}, G_i^{-1} A_i[j] G_i^{-T}>

is formed densely and factored by Cholesky.  Everything is deterministic:
no randomization is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .moment import MomentVector, RelaxationProblem

__all__ = ["SolverOptions", "SdpSolution", "solve_sdp"]

OPTIMAL = "optimal"
MAX_ITERATIONS = "max_iterations"
NUMERICAL_FAILURE = "numerical_failure"
UNBOUNDED_SUSPECTED = "unbounded_suspected"


@dataclass(frozen=True)
class SolverOptions:
    gap_tol: float = 1e-8
    feas_tol: float = 1e-8
    max_iter: int = 200
    step_frac: float = 0.98
    objective_floor: float = -1e12  # scaled-objective divergence guard
    # Equality constraints arrive as paired blocks (+M, -M), which leaves the
    # primal without interior; eliminating them onto the affine subspace they
    # define restores strict feasibility.  Results agree either way, the pure
    # LMI path is kept for cross-checking.
    eliminate_equalities: bool = True


@dataclass
class SdpSolution:
    y: MomentVector
    objective: float
    duality_gap: float           # absolute, in problem units
    iterations: int
    status: str
    trace: list = field(default_factory=list)  # per-iteration diagnostics
    primal_residual: float = float("nan")
    dual_residual: float = float("nan")
    relative_gap: float = float("nan")  # the quantity gap_tol bounds


def _chol(mat: np.ndarray) -> np.ndarray | None:
    try:
        return np.linalg.cholesky(mat)
    except np.linalg.LinAlgError:
        return None


def _chol_regularized(mat: np.ndarray):
    """Cholesky with escalating diagonal regularization; None when hopeless."""
    L = _chol(mat)
    if L is not None:
        return L
    scale = max(np.trace(mat) / mat.shape[0], 1.0)
    for boost in (1e-14, 1e-11, 1e-8):
        L = _chol(mat + boost * scale * np.eye(mat.shape[0]))
        if L is not None:
            return L
    return None


def _max_step(chol_lower: np.ndarray, delta: np.ndarray) -> float:
    """Largest t with  X + t*Delta >= 0  given X = L L^T."""
    K = sla.solve_triangular(chol_lower, delta, lower=True)
    K = sla.solve_triangular(chol_lower, K.T, lower=True)
    lam = np.linalg.eigvalsh(0.5 * (K + K.T))[0]
    if lam >= 0.0:
        return np.inf
    return -1.0 / lam


def _find_negation_pairs(blocks) -> tuple[list[int], list[tuple[int, int]]]:
    """Partition block indices into LMI survivors and (i, j) pairs with
    A_j = -A_i (the compiled form of equality constraints)."""
    consumed = [False] * len(blocks)
    pairs = []
    for i in range(len(blocks)):
        if consumed[i]:
            continue
        for j in range(i + 1, len(blocks)):
            if consumed[j] or blocks[j].side != blocks[i].side:
                continue
            if np.array_equal(blocks[j].A, -blocks[i].A):
                pairs.append((i, j))
                consumed[i] = consumed[j] = True
                break
    survivors = [i for i in range(len(blocks)) if not consumed[i]]
    return survivors, pairs


def _equality_rows(blocks, pairs, N: int):
    """Stack the paired blocks into linear equations E u = e0 on the moments."""
    rows, rhs = [], []
    for i, _j in pairs:
        A = blocks[i].A
        s = blocks[i].side
        for a in range(s):
            for b in range(a, s):
                row = A[1:, a, b]
                if not np.any(row) and A[0, a, b] == 0.0:
                    continue
                rows.append(row)
                rhs.append(-A[0, a, b])
    if not rows:
        return np.zeros((0, N)), np.zeros(0)
    return np.array(rows), np.array(rhs)


def solve_sdp(problem: RelaxationProblem, options: SolverOptions | None = None) -> SdpSolution:
    opts = options or SolverOptions()
    L = problem.num_moments
    N = L - 1
    c_raw = problem.objective[1:].copy()
    c0 = float(problem.objective[0])

    def finish(u, status, iters, trace, gap_unscaled, pres, dres, rel_gap=float("nan")):
        values = np.concatenate(([1.0], u))
        y = MomentVector(n=problem.n, d=problem.d, values=values)
        return SdpSolution(
            y=y,
            objective=c0 + float(c_raw @ u),
            duality_gap=abs(float(gap_unscaled)),
            iterations=iters,
            status=status,
            trace=trace,
            primal_residual=pres,
            dual_residual=dres,
            relative_gap=rel_gap,
        )

    if N == 0:
        # no free moments: feasibility is a property of the constants alone
        ok = all(np.linalg.eigvalsh(b.A[0])[0] >= -opts.feas_tol for b in problem.blocks)
        return finish(np.zeros(0), OPTIMAL if ok else NUMERICAL_FAILURE, 0, [], 0.0, 0.0, 0.0, 0.0)

    # identically-zero blocks (vacuous constraints like 0 >= 0) would starve
    # the scaling; drop them up front (the moment block is never zero)
    blocks = [b for b in problem.blocks if np.any(b.A)]

    if opts.eliminate_equalities:
        survivors, pairs = _find_negation_pairs(blocks)
    else:
        survivors, pairs = list(range(len(blocks))), []

    if pairs:
        E, e0 = _equality_rows(blocks, pairs, N)
        row_scale = np.maximum(np.max(np.abs(E), axis=1), np.abs(e0))
        keep = row_scale > 0
        E, e0 = E[keep] / row_scale[keep, None], e0[keep] / row_scale[keep]
        u_part, *_ = np.linalg.lstsq(E, e0, rcond=None)
        if np.max(np.abs(E @ u_part - e0), initial=0.0) > 1e-8:
            return finish(u_part, NUMERICAL_FAILURE, 0, [], np.inf, np.inf, np.inf)
        # orthonormal basis of ker E via SVD
        _, sv, Vt = np.linalg.svd(E, full_matrices=True)
        rank = int(np.sum(sv > max(E.shape) * np.finfo(float).eps * (sv[0] if sv.size else 1.0)))
        B = Vt[rank:].T  # (N, N - rank)
        lmi_blocks = [blocks[i] for i in survivors]
        red_c = B.T @ c_raw
        red_A0 = [blk.A[0] + np.tensordot(u_part, blk.A[1:], axes=1) for blk in lmi_blocks]
        red_Avar = [np.tensordot(B.T, blk.A[1:], axes=([1], [0])) for blk in lmi_blocks]
        if B.shape[1] == 0:
            ok = all(np.linalg.eigvalsh(A)[0] >= -opts.feas_tol for A in red_A0)
            return finish(u_part, OPTIMAL if ok else NUMERICAL_FAILURE, 0, [], 0.0, 0.0, 0.0, 0.0)
        core = _ipm_lmi(red_c, red_A0, red_Avar, opts)
        u_full = u_part + B @ core.u
        return finish(u_full, core.status, core.iterations, core.trace,
                      core.gap, core.pres, core.dres, core.rel_gap)

    core = _ipm_lmi(c_raw, [b.A[0] for b in blocks],
                    [b.A[1:] for b in blocks], opts)
    return finish(core.u, core.status, core.iterations, core.trace,
                  core.gap, core.pres, core.dres, core.rel_gap)


@dataclass
class _CoreResult:
    u: np.ndarray
    status: str
    iterations: int
    trace: list
    gap: float
    pres: float
    dres: float
    rel_gap: float = float("nan")


def _ipm_lmi(c_raw: np.ndarray, A0_raw: list, Avar_raw: list, opts: SolverOptions) -> _CoreResult:
    """Path-following core on  min <c,u>  s.t.  A0_i + sum_k u_k Avar_i[k] >= 0."""
    N = c_raw.shape[0]

    # per-problem rescaling: largest absolute coefficient becomes 1
    s_obj = float(np.max(np.abs(c_raw))) if np.any(c_raw) else 1.0
    c = c_raw / s_obj
    A0, Avar, Aflat, sides = [], [], [], []
    for A0_i, Avar_i in zip(A0_raw, Avar_raw):
        s_blk = max(float(np.max(np.abs(A0_i))), float(np.max(np.abs(Avar_i)))) or 1.0
        A0.append(A0_i / s_blk)
        Avar.append(Avar_i / s_blk)
        Aflat.append(Avar[-1].reshape(N, -1))
        sides.append(A0_i.shape[0])
    nb = len(A0)
    n_total = float(sum(sides))
    c_norm = float(np.max(np.abs(c))) if np.any(c) else 1.0
    a0_norms = [np.linalg.norm(A0[i]) for i in range(nb)]

    # strictly interior start: u = 0, slack and dual multiplier proportional to I
    tau = 1.0 + max(a0_norms)
    u = np.zeros(N)
    S = [tau * np.eye(s) for s in sides]
    Z = [np.eye(s) for s in sides]

    trace: list[tuple] = []
    status = MAX_ITERATIONS
    iters = 0
    pobj = dobj = 0.0
    pres = dres = np.inf
    rel_gap = float("inf")
    best = None  # (merit, u, gap, pres, dres, rel_gap) of the best iterate seen
    stalled = 0

    for it in range(opts.max_iter):
        iters = it
        F = [A0[i] + (u @ Aflat[i]).reshape(sides[i], sides[i]) for i in range(nb)]
        R = [F[i] - S[i] for i in range(nb)]
        r = c.copy()
        for i in range(nb):
            r -= Aflat[i] @ Z[i].ravel()

        pobj = float(c @ u)
        dobj = -sum(float(np.vdot(A0[i], Z[i])) for i in range(nb))
        mu = sum(float(np.vdot(S[i], Z[i])) for i in range(nb)) / n_total
        gap = pobj - dobj
        rel_gap = abs(gap) / (1.0 + abs(pobj) + abs(dobj))
        pres = max(float(np.linalg.norm(R[i])) / (1.0 + a0_norms[i]) for i in range(nb))
        dres = float(np.max(np.abs(r))) / (1.0 + c_norm)
        trace.append((it, mu, pres, dres, pobj, dobj))

        if not np.isfinite(mu) or (mu <= 0.0 and it > 0):
            # S or Z lost positive definiteness to rounding: corrupted
            status = NUMERICAL_FAILURE
            break

        merit = max(rel_gap, pres, dres)
        if best is None or merit < 0.999 * best[0]:
            best = (merit, u.copy(), gap, pres, dres, rel_gap)
            stalled = 0
        else:
            stalled += 1
            if stalled >= 30:  # no progress in 30 iterations: give up cleanly
                status = NUMERICAL_FAILURE
                break

        if rel_gap <= opts.gap_tol and pres <= opts.feas_tol and dres <= opts.feas_tol:
            status = OPTIMAL
            break
        if pobj < opts.objective_floor and pres <= opts.feas_tol:
            status = UNBOUNDED_SUSPECTED
            break

        # Nesterov-Todd scaling per block: W = G G^T with G^{-1} S G^{-T} = G^T Z G = diag(dvec)
        Ls, Lz, G, Ginv, dvecs = [], [], [], [], []
        failed = False
        for i in range(nb):
            ls = _chol_regularized(S[i])
            lz = _chol_regularized(Z[i])
            if ls is None or lz is None:
                failed = True
                break
            U_, dv, Vt = np.linalg.svd(lz.T @ ls)
            dv = np.maximum(dv, 1e-150)
            G.append(ls @ Vt.T / np.sqrt(dv))
            Ginv.append((U_ / np.sqrt(dv)).T @ lz.T)
            dvecs.append(dv)
            Ls.append(ls)
            Lz.append(lz)
        if failed:
            status = NUMERICAL_FAILURE
            break

        Ahat, Rhat = [], []
        M = np.zeros((N, N))
        for i in range(nb):
            Ah = np.matmul(Ginv[i], np.matmul(Avar[i], Ginv[i].T))
            Ahat.append(Ah)
            Rhat.append(Ginv[i] @ R[i] @ Ginv[i].T)
            flat = Ah.reshape(N, -1)
            M += flat @ flat.T
        M = 0.5 * (M + M.T)
        LM = _chol_regularized(M)
        if LM is None:
            status = NUMERICAL_FAILURE
            break

        def schur_solve(rhs):
            w = sla.solve_triangular(LM, rhs, lower=True)
            return sla.solve_triangular(LM.T, w, lower=False)

        def direction(E):
            """Search direction for complementarity target E (scaled space)."""
            rhs = -r.copy()
            for i in range(nb):
                rhs += np.tensordot(Ahat[i], E[i] - Rhat[i], axes=([1, 2], [0, 1]))
            du = schur_solve(rhs)
            dS, dZ, dShat, dZhat = [], [], [], []
            for i in range(nb):
                ds = (du @ Aflat[i]).reshape(sides[i], sides[i]) + R[i]
                dsh = Ginv[i] @ ds @ Ginv[i].T
                dzh = E[i] - dsh
                dz = Ginv[i].T @ dzh @ Ginv[i]
                dS.append(ds)
                dZ.append(0.5 * (dz + dz.T))
                dShat.append(dsh)
                dZhat.append(dzh)
            return du, dS, dZ, dShat, dZhat

        def step_lengths(dS, dZ):
            ap = ad = 1.0
            for i in range(nb):
                ap = min(ap, opts.step_frac * _max_step(Ls[i], dS[i]))
                ad = min(ad, opts.step_frac * _max_step(Lz[i], dZ[i]))
            return min(ap, 1.0), min(ad, 1.0)

        # predictor (affine scaling: drive S Z -> 0)
        E_aff = [-np.diag(dvecs[i]) for i in range(nb)]
        du_a, dS_a, dZ_a, dSh_a, dZh_a = direction(E_aff)
        ap_a, ad_a = step_lengths(dS_a, dZ_a)
        mu_aff = sum(
            float(np.vdot(S[i] + ap_a * dS_a[i], Z[i] + ad_a * dZ_a[i])) for i in range(nb)
        ) / n_total
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0

        # corrector with Mehrotra second-order term
        E_cor = []
        for i in range(nb):
            dv = dvecs[i]
            cross = dSh_a[i] @ dZh_a[i]
            rhs_sym = sigma * mu * np.eye(sides[i]) - np.diag(dv**2) - 0.5 * (cross + cross.T)
            E_cor.append(2.0 * rhs_sym / np.add.outer(dv, dv))
        du, dS, dZ, _, _ = direction(E_cor)
        ap, ad = step_lengths(dS, dZ)
        if ap <= 1e-14 and ad <= 1e-14:
            status = NUMERICAL_FAILURE
            break

        u = u + ap * du
        for i in range(nb):
            S[i] = S[i] + ap * dS[i]
            Z[i] = Z[i] + ad * dZ[i]
        iters = it + 1

    if status == OPTIMAL or best is None:
        return _CoreResult(u, status, iters, trace, (pobj - dobj) * s_obj, pres, dres, rel_gap)
    # on failure report the best iterate seen, not the diverged last one
    _, u_b, gap_b, pres_b, dres_b, rg_b = best
    return _CoreResult(u_b, status, iters, trace, gap_b * s_obj, pres_b, dres_b, rg_b)
