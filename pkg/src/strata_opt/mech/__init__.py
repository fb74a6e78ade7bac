"""Constitutive-tensor algebra: Voigt forms, harmonic decompositions,
covariants, isotropy-class tests and reduced stratum-distance problems."""

from .elasticity import (
    ElaHarmonic,
    ElasticityTensor,
    H4Params,
    build_distance_problem_ela,
    d2prime_ela,
    d2prime_ela_polynomials,
    ela_norm2_split,
    harmonic_decompose_ela,
    is_cubic_ela,
    recompose_ela,
    tensor_prod_4,
    tensor_prod_22,
)
from .piezo import (
    H3Params,
    PiezoSplit,
    PiezoTensor,
    build_distance_problem_piezo,
    d2prime_piezo,
    d2prime_piezo_polynomials,
    invariants_h3,
    is_cubic_piezo,
    piezo_harmonic_part,
)
from .problems import DistanceProblem
from .psd import psd_sigma_constraints
from .sym2 import (
    Sym2Classification,
    Sym2Tensor,
    Sym3Tensor,
    build_distance_problem_sym2,
    classify_sym2,
    cross_gen,
    traceless,
)

__all__ = [
    "DistanceProblem",
    "ElaHarmonic",
    "ElasticityTensor",
    "H3Params",
    "H4Params",
    "PiezoSplit",
    "PiezoTensor",
    "Sym2Classification",
    "Sym2Tensor",
    "Sym3Tensor",
    "build_distance_problem_ela",
    "build_distance_problem_piezo",
    "build_distance_problem_sym2",
    "classify_sym2",
    "cross_gen",
    "d2prime_ela",
    "d2prime_ela_polynomials",
    "d2prime_piezo",
    "d2prime_piezo_polynomials",
    "ela_norm2_split",
    "harmonic_decompose_ela",
    "invariants_h3",
    "is_cubic_ela",
    "is_cubic_piezo",
    "piezo_harmonic_part",
    "psd_sigma_constraints",
    "recompose_ela",
    "tensor_prod_4",
    "tensor_prod_22",
    "traceless",
]
