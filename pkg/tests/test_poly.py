import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strata_opt.poly import Polynomial, grlex_key, lambda_set, poly_add, poly_eval, poly_mul, poly_scale


class TestLambdaSet:
    def test_univariate(self):
        idx = lambda_set(1, 1)
        assert idx.members == ((0,), (1,))
        assert len(idx) == 2

    def test_cardinalities(self):
        assert len(lambda_set(2, 2)) == 6
        assert len(lambda_set(9, 2)) == 55  # basis size of the 9-variable order-1 problem
        for n, k in [(3, 4), (6, 2), (4, 0)]:
            assert len(lambda_set(n, k)) == math.comb(n + k, n)

    def test_zero_vector_first(self):
        for n in (1, 3, 6):
            assert lambda_set(n, 3).members[0] == (0,) * n
            assert lambda_set(n, 3).position[(0,) * n] == 0

    def test_graded_lex_order(self):
        idx = lambda_set(3, 4)
        keys = [grlex_key(a) for a in idx.members]
        assert keys == sorted(keys)
        assert len(set(idx.members)) == len(idx)
        assert all(sum(a) <= 4 for a in idx.members)

    def test_prefix_nesting(self):
        for k in range(4):
            small = lambda_set(4, k).members
            big = lambda_set(4, k + 1).members
            assert big[: len(small)] == small

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            lambda_set(0, 2)
        with pytest.raises(ValueError):
            lambda_set(2, -1)


class TestPolynomialBasics:
    def test_zero_point(self):
        p = Polynomial.monomial((2, 0), 1.0) + 2.0 * Polynomial.variable(1, 2)
        assert poly_eval(p, [0.0, 0.0]) == 0.0

    def test_constant(self):
        p = Polynomial.constant(3, 5.0)
        assert poly_eval(p, [9.0, -2.0, 0.5]) == 5.0

    def test_no_zero_coeffs_stored(self):
        p = Polynomial(2, {(1, 0): 1.0, (0, 1): 0.0})
        assert (0, 1) not in p.terms
        q = p - p
        assert q.is_zero and q.terms == {}

    def test_mul_monomials(self):
        x = Polynomial.variable(0, 1)
        assert x * x == Polynomial.monomial((2,), 1.0)

    def test_add_cancel(self):
        p = Polynomial(3, {(1, 1, 0): 2.0, (0, 0, 2): -1.0})
        assert poly_add(p, poly_scale(p, -1.0)).is_zero

    def test_degree_additivity(self, rng):
        p = _random_poly(rng, 3, 3)
        q = _random_poly(rng, 3, 2)
        if not (p.is_zero or q.is_zero):
            assert poly_mul(p, q).degree == p.degree + q.degree

    def test_mul_matches_pointwise_products(self, rng):
        p = _random_poly(rng, 3, 3)
        q = _random_poly(rng, 3, 3)
        prod = poly_mul(p, q)
        for _ in range(20):
            x = rng.uniform(-2, 2, size=3)
            lhs = poly_eval(prod, x)
            rhs = poly_eval(p, x) * poly_eval(q, x)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_dimension_mismatch(self):
        p = Polynomial.variable(0, 2)
        q = Polynomial.variable(0, 3)
        with pytest.raises(ValueError):
            poly_add(p, q)
        with pytest.raises(ValueError):
            poly_eval(p, [1.0, 2.0, 3.0])

    def test_evaluate_many_matches_scalar(self, rng):
        p = _random_poly(rng, 2, 4)
        pts = rng.uniform(-1, 1, size=(50, 2))
        vec = p.evaluate_many(pts)
        for i in range(50):
            assert vec[i] == pytest.approx(p.evaluate(pts[i]), rel=1e-12, abs=1e-12)

    def test_power(self):
        x = Polynomial.variable(0, 2)
        y = Polynomial.variable(1, 2)
        assert (x + y) ** 2 == x * x + 2.0 * x * y + y * y
        with pytest.raises(ValueError):
            (x + y) ** (-1)

    def test_dilate_is_argument_scaling(self, rng):
        p = _random_poly(rng, 3, 4)
        r = 3.7
        q = p.dilate(r)
        for _ in range(10):
            x = rng.uniform(-1, 1, size=3)
            assert q.evaluate(x) == pytest.approx(p.evaluate(r * x), rel=1e-12, abs=1e-12)
        assert p.dilate(1.0) == p


def _random_poly(rng, n, deg):
    idx = lambda_set(n, deg)
    terms = {}
    for alpha in idx.members:
        if rng.random() < 0.4:
            terms[alpha] = float(rng.normal())
    return Polynomial(n, terms)


@st.composite
def polynomials(draw, n=2, max_deg=3):
    members = lambda_set(n, max_deg).members
    coeffs = draw(
        st.lists(
            st.floats(min_value=-8, max_value=8, allow_nan=False),
            min_size=len(members), max_size=len(members),
        )
    )
    return Polynomial(n, dict(zip(members, coeffs)))


@given(polynomials(), polynomials())
@settings(max_examples=60, deadline=None)
def test_product_evaluation_homomorphism(p, q):
    x = np.array([0.7, -1.3])
    lhs = poly_eval(poly_mul(p, q), x)
    rhs = poly_eval(p, x) * poly_eval(q, x)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)


@given(polynomials())
@settings(max_examples=60, deadline=None)
def test_additive_inverse(p):
    assert poly_add(p, poly_scale(p, -1.0)).is_zero
