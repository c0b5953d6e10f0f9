import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qferm.clifford import AlgebraElement, omega, omega_inv, psi, psid
from qferm.fock import random_element, to_matrix
from qferm.scalar import Q, S
from qferm.tensor import (
    GradedTensor,
    flip_tau,
    map_Z,
    mult_m,
    reversal_Y_tensor,
    tensor,
    tensor_star,
    tensor_to_matrix,
)

N = 2


def rand_tensor(seed, n=N):
    rng = random.Random(seed)
    out = GradedTensor.zero(n, 2)
    for _ in range(2):
        out = out + tensor(random_element(n, rng, 2), random_element(n, rng, 2))
    return out


tensors = st.integers(0, 10**6).map(rand_tensor)


def test_koszul_sign():
    a, b = psi(N, 1), psid(N, 2)
    one = AlgebraElement.one(N)
    # (1 (x) a)(b (x) 1) = -(b (x) a) for odd a, b
    assert tensor(one, a) * tensor(b, one) == -tensor(b, a)
    assert tensor(b, one) * tensor(one, a) == tensor(b, a)


@given(tensors, tensors, tensors)
def test_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(tensors, tensors)
def test_matrix_embedding_multiplicative(x, y):
    assert tensor_to_matrix(x * y) == tensor_to_matrix(x) @ tensor_to_matrix(y)


@given(tensors, tensors)
def test_adjoint_star_is_conjugate_transpose(x, y):
    assert tensor_to_matrix(tensor_star(x)) == tensor_to_matrix(x).adjoint()
    assert tensor_star(x * y) == tensor_star(y) * tensor_star(x)
    assert tensor_star(tensor_star(x)) == x


def test_diagonal_grade_star_is_not_an_adjoint():
    x = tensor(psi(N, 1), psid(N, 2)) + tensor(psid(N, 1), AlgebraElement.one(N))
    assert tensor_to_matrix(tensor_star(x, "diagonal")) != tensor_to_matrix(x).adjoint()


def test_star_conventions_on_odd_pair():
    t = tensor(psi(N, 1), psid(N, 1))
    assert tensor_star(t) == -tensor(psid(N, 1), psi(N, 1))
    assert tensor_star(t, "diagonal") == tensor(psid(N, 1), psi(N, 1))
    with pytest.raises(ValueError):
        tensor_star(t, "other")


def test_reversal_Y():
    t = tensor(psi(N, 1), omega(N, 1))
    assert reversal_Y_tensor(t) == tensor(omega_inv(N, 1), psi(N, 1)).scale(Q.inverse())
    assert reversal_Y_tensor(reversal_Y_tensor(t)) == t


def test_flip_and_Z():
    t = tensor(psi(N, 1), psid(N, 2))
    assert flip_tau(t) == tensor(psid(N, 2), psi(N, 1))
    assert flip_tau(t, signed=True) == -tensor(psid(N, 2), psi(N, 1))
    assert map_Z(t) == reversal_Y_tensor(t)
    even = tensor(omega(N, 1), psi(N, 1))
    assert map_Z(even) == even


def test_mult_m():
    a, b = psi(N, 1), omega(N, 2).scale(S)
    assert mult_m(tensor(a, b)) == a * b
    assert mult_m(tensor(a, b, a)) == a * b * a


def test_arity_three_embedding():
    a, b, c = psi(N, 1), psid(N, 2), omega(N, 1)
    x, y = tensor(a, b, c), tensor(b, c, a)
    assert tensor_to_matrix(x * y) == tensor_to_matrix(x) @ tensor_to_matrix(y)
    assert tensor_to_matrix(x).dim == 2 ** (3 * N)


def test_json_roundtrip_and_str():
    t = tensor(psi(N, 1), omega(N, 2)) + tensor(psid(N, 2), psi(N, 1)).scale(S)
    assert GradedTensor.from_json(N, t.to_json()) == t
    assert "|" in str(t)


def test_dense_matches_kron_with_parity():
    a, b = psi(N, 1), psid(N, 2)
    par = np.diag([(-1) ** bin(k).count("1") for k in range(4)])
    want = np.kron(to_matrix(a).to_numpy() @ par, to_matrix(b).to_numpy())
    assert np.allclose(tensor_to_matrix(tensor(a, b)).to_numpy(), want)
