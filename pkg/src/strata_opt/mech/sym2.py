"""Symmetric second-order tensors and the transversely isotropic stratum.

The closed stratum of tensors with at least transverse isotropy ([O(2)]) is
the variety a^2 x a = 0, where x is the generalized cross product; three
equal eigenvalues (isotropy, [SO(3)]) is a' = 0, and the generic class is
orthotropy ([D2]).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..poly import Polynomial
from ..moment import EQ
from . import _tensalg as ta
from .problems import DistanceProblem

__all__ = [
    "Sym2Tensor",
    "Sym3Tensor",
    "cross_gen",
    "traceless",
    "classify_sym2",
    "Sym2Classification",
    "build_distance_problem_sym2",
]

ISOTROPIC = "isotropic"
TRANSVERSELY_ISOTROPIC = "transversely_isotropic"
ORTHOTROPIC = "orthotropic"


@dataclass(frozen=True)
class Sym2Tensor:
    """Symmetric 3x3 tensor; symmetry is exact by construction."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        object.__setattr__(self, "mat", 0.5 * (m + m.T))

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-9) -> "Sym2Tensor":
        m = np.asarray(m, dtype=float)
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.T)) > tol * scale:
            raise ValueError("matrix is not symmetric within tolerance")
        return cls(mat=m)

    @classmethod
    def from_components(cls, a11, a22, a33, a23, a13, a12) -> "Sym2Tensor":
        return cls(mat=np.array([[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]]))

    @property
    def components(self) -> np.ndarray:
        """(a11, a22, a33, a23, a13, a12) in Voigt pair order."""
        m = self.mat
        return np.array([m[0, 0], m[1, 1], m[2, 2], m[1, 2], m[0, 2], m[0, 1]])

    def trace(self) -> float:
        return float(np.trace(self.mat))

    def norm2(self) -> float:
        return float(np.einsum("ij,ij", self.mat, self.mat))

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))


@dataclass(frozen=True)
class Sym3Tensor:
    """Totally symmetric third-order tensor (10 independent components)."""

    full: np.ndarray

    def __post_init__(self):
        T = np.asarray(self.full, dtype=float)
        if T.shape != (3, 3, 3):
            raise ValueError(f"expected shape (3,3,3), got {T.shape}")
        object.__setattr__(self, "full", T)

    @classmethod
    def from_full(cls, T, tol: float = 1e-9) -> "Sym3Tensor":
        T = np.asarray(T, dtype=float)
        scale = max(1.0, float(np.max(np.abs(T))))
        for perm in ((0, 2, 1), (1, 0, 2), (2, 1, 0)):
            if np.max(np.abs(T - np.transpose(T, perm))) > tol * scale:
                raise ValueError("tensor is not totally symmetric within tolerance")
        return cls(full=T)

    @property
    def components(self) -> np.ndarray:
        """The 10 independent slots in lexicographic index order."""
        return np.array([self.full[s] for s in ta.SYM3_SLOTS])

    def norm2(self) -> float:
        return float(np.einsum("ijk,ijk", self.full, self.full))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.full)))


def cross_gen(a: Sym2Tensor, b: Sym2Tensor) -> Sym3Tensor:
    """Generalized cross product (a x b)_{ijk} = -(a_{il} eps_{ljs} b_{sk})^s."""
    return Sym3Tensor(full=ta.as_array(ta.cross_sym2_sym2(a.mat, b.mat)))


def traceless(a: Sym2Tensor) -> Sym2Tensor:
    """Deviatoric part a' = a - tr(a)/3 q."""
    return Sym2Tensor(mat=a.mat - np.trace(a.mat) / 3.0 * np.eye(3))


@dataclass(frozen=True)
class Sym2Classification:
    label: str
    isotropy_residual: float        # |a'| / |a|
    transverse_residual: float      # |a^2 x a| / |a|^3
    chain: tuple                    # closed-stratum memberships within 10x of tol

    def __str__(self):
        return self.label


def classify_sym2(a: Sym2Tensor, tol: float = 1e-6) -> Sym2Classification:
    """Detect the isotropy class of a symmetric second-order tensor.

    Residuals are relative; near-threshold cases (within 10x of tol) list
    the whole closed-stratum membership chain instead of a single class.
    """
    nrm = a.norm()
    if nrm == 0.0:
        return Sym2Classification(ISOTROPIC, 0.0, 0.0, (ISOTROPIC,))
    r_iso = traceless(a).norm() / nrm
    cross = cross_gen(Sym2Tensor(mat=a.mat @ a.mat), a)
    r_ti = cross.max_abs() / nrm**3
    if r_iso <= tol:
        label = ISOTROPIC
    elif r_ti <= tol:
        label = TRANSVERSELY_ISOTROPIC
    else:
        label = ORTHOTROPIC
    chain = [ORTHOTROPIC]
    if r_ti <= 10 * tol:
        chain.append(TRANSVERSELY_ISOTROPIC)
    if r_iso <= 10 * tol:
        chain.append(ISOTROPIC)
    return Sym2Classification(label, float(r_iso), float(r_ti), tuple(chain))


SYM2_VARS = ("a11", "a22", "a33", "a23", "a13", "a12")


def _symbolic_sym2():
    """The generic symmetric matrix over the 6 Voigt-ordered variables."""
    x = Polynomial.variables(6)
    a11, a22, a33, a23, a13, a12 = x
    return [[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]]


def build_distance_problem_sym2(a0: Sym2Tensor) -> DistanceProblem:
    """Distance from a0 to the transversely isotropic closed stratum.

    Minimizes |a0 - a|^2 over the 10 cubic equations (a^2 x a) = 0 in the
    six independent components of a.
    """
    A = _symbolic_sym2()
    f = Polynomial.zero(6)
    for i in range(3):
        for j in range(3):
            diff = A[i][j] - float(a0.mat[i, j])
            f = f + diff * diff
    cross = ta.cross_sym2_sym2(ta.mat_mul(A, A), A)
    constraints = [(cross[i][j][k], EQ) for (i, j, k) in ta.SYM3_SLOTS]

    def minimizer_voigt(x: np.ndarray) -> np.ndarray:
        return Sym2Tensor.from_components(*x).mat

    def tensor_distance(x: np.ndarray) -> float:
        return float(np.linalg.norm(a0.mat - minimizer_voigt(x)))

    return DistanceProblem(
        kind="sym2",
        objective=f,
        constraints=constraints,
        offset=0.0,
        var_names=SYM2_VARS,
        reference_voigt=a0.mat.copy(),
        minimizer_voigt=minimizer_voigt,
        tensor_distance=tensor_distance,
        natural_scale=float(np.max(np.abs(a0.mat))) or 1.0,
    )
