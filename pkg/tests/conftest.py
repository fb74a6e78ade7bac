import numpy as np
import pytest

from strata_opt.mech import ElasticityTensor, PiezoTensor, Sym2Tensor


@pytest.fixture
def rng():
    return np.random.default_rng(20230711)


@pytest.fixture
def a0():
    return Sym2Tensor.from_matrix([[-7.0, 4.0, -4.0], [4.0, 5.0, -2.0], [-4.0, -2.0, 5.0]])


@pytest.fixture
def E0():
    return ElasticityTensor.from_voigt(
        [
            [243.0, 136.0, 135.0, 22.0, 52.0, -17.0],
            [136.0, 239.0, 137.0, -28.0, 11.0, 16.0],
            [135.0, 137.0, 233.0, 29.0, -49.0, 3.0],
            [22.0, -28.0, 29.0, 133.0, -10.0, -4.0],
            [52.0, 11.0, -49.0, -10.0, 119.0, -2.0],
            [-17.0, 16.0, 3.0, -4.0, -2.0, 130.0],
        ]
    )


@pytest.fixture
def e0_aln():
    return PiezoTensor(
        voigt=np.array(
            [
                [0.0, 0.0, -0.0505, -0.0394, -0.2854, -0.0637],
                [-0.0637, -0.0042, 0.0332, -0.2818, -0.0058, 0.0185],
                [-0.5807, -0.5822, 1.4607, 0.0022, 0.0002, 0.0043],
            ]
        )
    )


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform-ish rotation from QR orthonormalization of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def poly_allclose(p, q, tol=1e-12):
    """Coefficient-wise comparison of two polynomials."""
    keys = set(p.terms) | set(q.terms)
    return all(abs(p.coefficient(a) - q.coefficient(a)) <= tol for a in keys)
