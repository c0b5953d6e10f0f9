"""Exact fermionic realization of U_q(su(N)) with coproduct reconstruction tools."""

from .clifford import (
    AlgebraElement,
    Monomial,
    alg_mul,
    grade,
    number_op,
    omega,
    omega_inv,
    omega_power,
    psi,
    psid,
    reversal,
    star,
    zeta,
)
from .scalar import ExactScalar, QISqrt2, gauss_binom, q_number
from .tensor import GradedTensor, tensor, tensor_mul, tensor_star, tensor_to_matrix

__all__ = [
    "AlgebraElement",
    "ExactScalar",
    "GradedTensor",
    "Monomial",
    "QISqrt2",
    "alg_mul",
    "gauss_binom",
    "grade",
    "number_op",
    "omega",
    "omega_inv",
    "omega_power",
    "psi",
    "psid",
    "q_number",
    "reversal",
    "star",
    "tensor",
    "tensor_mul",
    "tensor_star",
    "tensor_to_matrix",
    "zeta",
]

__version__ = "0.1.0"
