import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qferm.clifford import number_op, psi, psid, star
from qferm.fock import (
    FockMatrix,
    apply,
    basis_vector,
    check_invariance,
    index_of,
    occupation,
    parity_matrix,
    random_element,
    to_matrix,
    verify_representation,
    weight_decomposition,
)
from qferm.qgroup import build_generators


def test_index_roundtrip():
    for k in range(8):
        assert index_of(occupation(3, k)) == k


def test_jordan_wigner_sign():
    # psi_2^dag |1,0> = -|1,1>
    out = apply(psid(2, 2), basis_vector((1, 0)))
    assert {k: str(v) for k, v in out.items()} == {3: "-1"}
    assert apply(psi(2, 1), basis_vector((0, 1))) == {}


def test_number_operator_diagonal():
    m = to_matrix(number_op(3, 2)).to_numpy()
    assert np.allclose(np.diag(m), [occupation(3, k)[1] for k in range(8)])


@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_matrix_oracle(seed, n):
    rng = random.Random(seed)
    x, y = random_element(n, rng), random_element(n, rng)
    assert to_matrix(x * y) == to_matrix(x) @ to_matrix(y)
    assert to_matrix(star(x)) == to_matrix(x).adjoint()
    assert to_matrix(x + y) == to_matrix(x) + to_matrix(y)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_representation(n):
    assert verify_representation(n, pairs=200, seed=n).passed


def test_k_matrix_at_three_halves():
    g = build_generators(2)
    m = to_matrix(g.get("k", 1)).to_numpy(1.5)
    assert np.allclose(m, np.diag(np.diag(m)))
    # k_1 |m> = q^(m_2 - m_1) |m>
    assert np.allclose(np.diag(m), [1.5 ** (occupation(2, k)[1] - occupation(2, k)[0]) for k in range(4)])


def test_exact_evaluation_matches_float():
    g = build_generators(2)
    mat = to_matrix(g.get("k", 1))
    exact = mat.at_q(Fraction(3, 2))
    dense = mat.to_numpy(1.5)
    for (r, c), v in exact.items():
        assert complex(v) == pytest.approx(dense[r, c])


def test_parity_and_json():
    p = parity_matrix(2)
    assert p @ p == FockMatrix.identity(4)
    m = to_matrix(psi(2, 1) * psid(2, 2))
    assert FockMatrix.from_json(m.to_json()) == m


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weight_spaces(n):
    spaces = weight_decomposition(n)
    assert [len(s) for s in spaces] == [len(s) for s in spaces[::-1]]
    assert sum(map(len, spaces)) == 2**n
    rep = check_invariance(n)
    assert rep.passed, rep.to_text()
