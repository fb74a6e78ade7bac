import numpy as np
import pytest

from strata_opt.mech import (
    Sym2Tensor,
    Sym3Tensor,
    build_distance_problem_sym2,
    classify_sym2,
    cross_gen,
    traceless,
)


def _sym(rng):
    m = rng.normal(size=(3, 3))
    return Sym2Tensor(mat=0.5 * (m + m.T))


class TestCrossProduct:
    def test_metric_cross_metric_vanishes(self):
        q = Sym2Tensor(mat=np.eye(3))
        assert cross_gen(q, q).max_abs() == 0.0

    def test_transverse_isotropy_annihilation(self):
        b = Sym2Tensor(mat=np.diag([1.0, 1.0, -2.0]))
        b2 = Sym2Tensor(mat=b.mat @ b.mat)
        assert cross_gen(b2, b).max_abs() <= 1e-14

    def test_anticommutes(self, rng):
        # like the vector cross product: swapping arguments flips the sign
        a, b = _sym(rng), _sym(rng)
        np.testing.assert_allclose(cross_gen(a, b).full, -cross_gen(b, a).full, atol=1e-12)

    def test_totally_symmetric_output(self, rng):
        T = cross_gen(_sym(rng), _sym(rng)).full
        for p in ((0, 2, 1), (1, 0, 2), (2, 1, 0)):
            np.testing.assert_allclose(T, np.transpose(T, p), atol=1e-13)

    def test_bilinear(self, rng):
        a, b, c = _sym(rng), _sym(rng), _sym(rng)
        lhs = cross_gen(Sym2Tensor(mat=2.0 * a.mat + c.mat), b).full
        rhs = 2.0 * cross_gen(a, b).full + cross_gen(c, b).full
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_degree6_invariant_identity(self, rng):
        # 12 |a^2 x a|^2 = (tr a'^2)^3 - 6 (tr a'^3)^2
        for _ in range(10):
            a = _sym(rng)
            ap = traceless(a).mat
            lhs = 12.0 * cross_gen(Sym2Tensor(mat=a.mat @ a.mat), a).norm2()
            rhs = np.trace(ap @ ap) ** 3 - 6.0 * np.trace(ap @ ap @ ap) ** 2
            assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_degree6_identity_at_reference_tensor(self, a0):
        ap = traceless(a0).mat
        lhs = cross_gen(Sym2Tensor(mat=a0.mat @ a0.mat), a0).norm2()
        rhs = (np.trace(ap @ ap) ** 3 - 6.0 * np.trace(ap @ ap @ ap) ** 2) / 12.0
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestTraceless:
    def test_metric_maps_to_zero(self):
        q = Sym2Tensor(mat=np.eye(3))
        assert traceless(q).norm() == 0.0

    def test_idempotent(self, rng):
        a = _sym(rng)
        t1 = traceless(a)
        np.testing.assert_allclose(traceless(t1).mat, t1.mat, atol=1e-15)
        assert abs(t1.trace()) <= 1e-14

    def test_reference_tensor(self, a0):
        # tr a0 = 3, so the deviator subtracts the identity
        assert a0.trace() == pytest.approx(3.0)
        np.testing.assert_allclose(traceless(a0).mat, a0.mat - np.eye(3), atol=1e-14)


class TestClassification:
    def test_metric_isotropic(self):
        assert classify_sym2(Sym2Tensor(mat=np.eye(3))).label == "isotropic"

    def test_axisymmetric_tensor(self):
        cls = classify_sym2(Sym2Tensor(mat=np.diag([1.0, 1.0, -2.0])))
        assert cls.label == "transversely_isotropic"

    def test_reference_tensor_orthotropic(self, a0):
        cls = classify_sym2(a0)
        assert cls.label == "orthotropic"
        assert cls.transverse_residual > 1e-3

    def test_zero_tensor(self):
        assert classify_sym2(Sym2Tensor(mat=np.zeros((3, 3)))).label == "isotropic"

    def test_chain_near_threshold(self):
        # slightly perturbed axisymmetric tensor: chain keeps the TI stratum
        a = Sym2Tensor(mat=np.diag([1.0, 1.0 + 1e-7, -2.0]))
        cls = classify_sym2(a, tol=1e-8)
        assert "transversely_isotropic" in cls.chain


class TestDistanceProblem:
    def test_objective_vanishes_at_input(self, a0):
        prob = build_distance_problem_sym2(a0)
        assert prob.objective.evaluate(a0.components) == pytest.approx(0.0, abs=1e-12)

    def test_ten_cubic_equalities(self, a0):
        prob = build_distance_problem_sym2(a0)
        assert len(prob.constraints) == 10
        assert all(kind == "eq" and g.degree == 3 for g, kind in prob.constraints)

    def test_constraints_vanish_on_stratum(self):
        b = Sym2Tensor(mat=np.diag([1.0, 1.0, -2.0]))
        prob = build_distance_problem_sym2(b)
        for g, _ in prob.constraints:
            assert g.evaluate(b.components) == pytest.approx(0.0, abs=1e-12)

    def test_closed_form_minimizer_value(self, a0):
        prob = build_distance_problem_sym2(a0)
        astar = np.array([[-44.0, 20.0, -20.0], [20.0, 31.0, 5.0], [-20.0, 5.0, 31.0]]) / 6.0
        x = Sym2Tensor.from_matrix(astar).components
        assert prob.objective.evaluate(x) == pytest.approx(18.0, rel=1e-12)
        for g, _ in prob.constraints:
            assert abs(g.evaluate(x)) <= 1e-12

    def test_distance_helpers(self, a0):
        prob = build_distance_problem_sym2(a0)
        x = a0.components
        assert prob.tensor_distance(x) == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(prob.minimizer_voigt(x), a0.mat, atol=1e-14)

    def test_distance_to_own_stratum_is_zero(self):
        # a transversely isotropic input certifies 0 and recovers itself
        from strata_opt.hierarchy import HierarchyOptions, add_ball_constraint, run_hierarchy

        b = Sym2Tensor(mat=np.diag([1.0, 1.0, -2.0]))
        prob = build_distance_problem_sym2(b)
        cons = add_ball_constraint(prob.objective, prob.constraints, 50.0, b.components)
        res = run_hierarchy(prob.objective, cons, HierarchyOptions(d_max=2))
        assert res.status_xi == 1
        assert abs(res.bound) <= 1e-5
        np.testing.assert_allclose(prob.minimizer_voigt(res.minimizers[0]), b.mat, atol=1e-3)


class TestValidation:
    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            Sym2Tensor.from_matrix([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])

    def test_sym3_total_symmetry_enforced(self):
        T = np.zeros((3, 3, 3))
        T[0, 1, 2] = 1.0
        with pytest.raises(ValueError):
            Sym3Tensor.from_full(T)
