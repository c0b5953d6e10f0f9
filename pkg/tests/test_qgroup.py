import pytest

from qferm.clifford import omega, omega_inv, psi, psid, star
from qferm.qgroup import (
    build_generators,
    cartan_matrix,
    coproduct_delta,
    verify_coproduct,
    verify_extra_relations,
    verify_qgroup,
    verify_star_structure,
    verify_uq_relations,
)
from qferm.tensor import tensor, tensor_star


def test_cartan():
    assert cartan_matrix(3) == [[2, -1], [-1, 2]]
    assert cartan_matrix(2) == [[2]]


def test_generators_are_spinor_bilinears():
    g = build_generators(3)
    assert g.get("e", 2) == psi(3, 2) * psid(3, 3)
    assert g.get("f", 1) == psi(3, 2) * psid(3, 1)
    assert g.get("k", 1) == omega(3, 1) * omega_inv(3, 2)
    assert star(g.get("e", 1)) == g.get("f", 1)
    with pytest.raises(IndexError):
        g.get("e", 3)
    with pytest.raises(ValueError):
        g.get("h", 1)
    with pytest.raises(ValueError):
        build_generators(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_defining_relations(n):
    g = build_generators(n)
    for fn in (verify_uq_relations, verify_extra_relations, verify_star_structure):
        rep = fn(g)
        assert rep.passed, rep.to_text()
    rels = {c.relation for c in verify_uq_relations(g).checks}
    assert {"uq.ef_commutator", "uq.k_conjugate_e"} <= rels
    if n >= 3:
        assert {"uq.serre_e", "uq.serre_f"} <= rels


def test_numeric_backend_agrees():
    assert verify_qgroup(3, backend="numeric").passed


def test_coproduct_formula_and_relations():
    g = build_generators(2)
    e, k, ki = g.get("e", 1), g.get("k", 1), g.get("kinv", 1)
    assert coproduct_delta(g, "e", 1) == tensor(k, e) + tensor(e, ki)
    assert coproduct_delta(g, "k", 1) == tensor(k, k)
    assert tensor_star(coproduct_delta(g, "e", 1)) == coproduct_delta(g, "f", 1)
    for n in (2, 3):
        rep = verify_coproduct(build_generators(n))
        assert rep.passed, rep.to_text()


def test_coproduct_square_nonzero():
    g = build_generators(2)
    de = coproduct_delta(g, "e", 1)
    assert (g.get("e", 1) ** 2).is_zero()
    assert not (de * de).is_zero()


def test_broken_relation_is_reported():
    g = build_generators(2)
    bad = type(g)(n=2, e=(g.e[0].scale(2),), f=g.f, k=g.k, k_inv=g.k_inv)
    rep = verify_uq_relations(bad)
    assert not rep.passed
    failed = rep.failures()[0]
    assert failed.relation == "uq.ef_commutator" and failed.counterexample
