"""Positive-semidefiniteness of a symbolic symmetric matrix as polynomial
inequalities: A >= 0 iff every elementary symmetric polynomial sigma_i of
its eigenvalues is nonnegative, and sigma_i equals the sum of the i x i
principal minors of A."""

from __future__ import annotations

import itertools

from ..poly import Polynomial

__all__ = ["psd_sigma_constraints"]


def _det(rows) -> Polynomial:
    """Determinant of a small matrix of polynomials by Leibniz expansion."""
    k = len(rows)
    acc = rows[0][0] * 0.0
    for perm in itertools.permutations(range(k)):
        sign = 1
        seen = list(perm)
        for i in range(k):
            for j in range(i + 1, k):
                if seen[i] > seen[j]:
                    sign = -sign
        term = rows[0][perm[0]]
        for i in range(1, k):
            term = term * rows[i][perm[i]]
        acc = acc + sign * term
    return acc


def psd_sigma_constraints(matrix, size: int) -> list[Polynomial]:
    """Return [sigma_1, ..., sigma_n] for an n x n symmetric matrix of
    polynomials (n <= 6); requiring all of them >= 0 encodes A >= 0."""
    if size > 6:
        raise ValueError("principal-minor expansion is limited to n <= 6")
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise ValueError(f"expected a {size}x{size} matrix")
    sigmas = []
    for k in range(1, size + 1):
        acc = matrix[0][0] * 0.0
        for subset in itertools.combinations(range(size), k):
            rows = [[matrix[i][j] for j in subset] for i in subset]
            acc = acc + _det(rows)
        sigmas.append(acc)
    return sigmas
