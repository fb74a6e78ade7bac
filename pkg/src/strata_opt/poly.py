"""Sparse multivariate polynomials and graded index sets.

A polynomial in ``n`` variables is a finite map from exponent vectors
(tuples of ``n`` nonnegative integers) to float coefficients.  Terms are
kept in canonical form (no zero coefficients) and every ordered traversal
uses graded lexicographic order, so that the monomials of degree <= k are
always a prefix of the monomials of degree <= k+1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "Polynomial",
    "IndexSet",
    "grlex_key",
    "lambda_set",
    "poly_eval",
    "poly_add",
    "poly_mul",
    "poly_scale",
]


def grlex_key(alpha: tuple[int, ...]) -> tuple:
    """Sort key realizing graded lexicographic order (x1 > x2 > ... within a grade)."""
    return (sum(alpha), tuple(-a for a in alpha))


@dataclass(frozen=True)
class IndexSet:
    """All exponent vectors of total degree <= k on n variables, graded-lex ordered."""

    n: int
    k: int
    members: tuple[tuple[int, ...], ...]
    position: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self.position


@lru_cache(maxsize=None)
def lambda_set(n: int, k: int) -> IndexSet:
    """Index set of the binomial(n+k, n) exponent vectors with |alpha| <= k."""
    if n < 1:
        raise ValueError(f"need at least one variable, got n={n}")
    if k < 0:
        raise ValueError(f"degree bound must be nonnegative, got k={k}")
    members = []
    for total in range(k + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            alpha = [0] * n
            for i in combo:
                alpha[i] += 1
            members.append(tuple(alpha))
    assert len(members) == math.comb(n + k, n)
    position = {alpha: i for i, alpha in enumerate(members)}
    return IndexSet(n=n, k=k, members=tuple(members), position=position)


class Polynomial:
    """Immutable sparse polynomial with float coefficients.

    Supports +, -, * (with scalars and polynomials) and ** by nonnegative
    integers.  Equality is exact on the canonical term map.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        clean: dict[tuple[int, ...], float] = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent vector {alpha} for n={n}")
            c = float(coeff)
            if c != 0.0:
                clean[alpha] = clean.get(alpha, 0.0) + c
                if clean[alpha] == 0.0:
                    del clean[alpha]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, n: int, c: float) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, i: int, n: int) -> "Polynomial":
        if not 0 <= i < n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        alpha = [0] * n
        alpha[i] = 1
        return cls(n, {tuple(alpha): 1.0})

    @classmethod
    def monomial(cls, alpha, c: float = 1.0) -> "Polynomial":
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: c})

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {})

    @classmethod
    def variables(cls, n: int) -> list["Polynomial"]:
        return [cls.variable(i, n) for i in range(n)]

    # -- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention."""
        if not self.terms:
            return 0
        return max(sum(a) for a in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], float]]:
        """Terms in ascending graded-lex order (deterministic traversal)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def coefficient(self, alpha) -> float:
        return self.terms.get(tuple(alpha), 0.0)

    def dilate(self, r: float) -> "Polynomial":
        """The polynomial x -> p(r * x): coefficients scale by r^|alpha|."""
        r = float(r)
        return Polynomial(self.n, {a: c * r ** sum(a) for a, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        return Polynomial.constant(self.n, float(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out.get(alpha, 0.0) + c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = float(other)
            return Polynomial(self.n, {a: c * s for a, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, ...], float] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(a1, a2))
                out[key] = out.get(key, 0.0) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Polynomial.constant(self.n, 1.0)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- evaluation ---------------------------------------------------
    def __call__(self, x) -> float:
        return self.evaluate(x)

    def evaluate(self, x) -> float:
        """Evaluate at a point; term accumulation follows graded-lex order."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"point has shape {x.shape}, expected ({self.n},)")
        total = 0.0
        for alpha, c in self.sorted_terms():
            m = c
            for xi, ai in zip(x, alpha):
                if ai:
                    m *= xi**ai
            total += m
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on an (m, n) array of points."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise ValueError(f"points have shape {pts.shape}, expected (m, {self.n})")
        out = np.zeros(pts.shape[0])
        for alpha, c in self.sorted_terms():
            mono = np.full(pts.shape[0], c)
            for i, ai in enumerate(alpha):
                if ai:
                    mono *= pts[:, i] ** ai
            out += mono
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return f"Polynomial({self.n}, 0)"
        bits = [f"{c:+g}*x^{a}" for a, c in self.sorted_terms()]
        return f"Polynomial({self.n}, {' '.join(bits)})"


# Free-function aliases for the core operations.

def poly_eval(p: Polynomial, x) -> float:
    return p.evaluate(x)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_scale(p: Polynomial, s: float) -> Polynomial:
    return p * float(s)
