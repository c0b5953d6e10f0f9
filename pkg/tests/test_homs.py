import pytest

from qferm.clifford import AlgebraElement, omega, omega_inv, psi, zeta
from qferm.homs import (
    HOM_TAGS,
    FermionHom,
    HomParams,
    big_fermions,
    check_constraints,
    coproduct_via_flip,
    coproduct_via_homs,
    delta_omega_identities,
    delta_tilde,
    hom_apply,
    scan_ansatz,
    verify_big_fermions,
    verify_coassociativity,
    verify_hom_axioms,
    verify_homs,
    verify_m_condition,
    verify_pseudo_coassoc,
    verify_reconstruction,
    verify_UW_homomorphism,
)
from qferm.qgroup import build_generators, coproduct_delta
from qferm.scalar import I, INV_SQRT2, Q, S
from qferm.tensor import tensor


def test_named_images():
    p = psi(2, 1)
    one, z = AlgebraElement.one(2), zeta(2, 1)
    d1, d2 = FermionHom.named("delta1"), FermionHom.named("delta2")
    assert d1(p) == (tensor(z, p) - tensor(p, z)).scale(I * INV_SQRT2)
    assert d2(p) == (tensor(one, p) + tensor(p, one)).scale(INV_SQRT2)
    assert FermionHom.named("trivialLeft")(p) == tensor(one, p)
    assert FermionHom.named("trivialRight")(p) == tensor(p, one)
    with pytest.raises(ValueError):
        FermionHom.named("delta3")


@pytest.mark.parametrize("tag", sorted(HOM_TAGS))
def test_constraints_hold_for_named(tag):
    ok, rep = check_constraints(HOM_TAGS[tag])
    assert ok, rep.to_text()


def test_constraints_reject_bad_tuple():
    bad = HomParams.of(1, 1, 1, 1)
    assert not check_constraints(bad)[0]
    with pytest.raises(ValueError):
        hom_apply(bad, psi(1, 1))
    with pytest.raises(ValueError):
        HomParams.of(Q, 0, 0, 0)


@pytest.mark.parametrize("tag", sorted(HOM_TAGS))
@pytest.mark.parametrize("n", [1, 2])
def test_hom_axioms(tag, n):
    for rep in (verify_hom_axioms(tag, n), verify_m_condition(tag, n)):
        assert rep.passed, rep.to_text()


def test_strict_coassociativity():
    for tag in ("delta1", "delta2"):
        rep = verify_coassociativity(tag, 2, expect="holds")
        assert not rep.passed
    for tag in ("trivialLeft", "trivialRight"):
        assert verify_coassociativity(tag, 2).passed


@pytest.mark.parametrize("k", [1, 2])
def test_pseudo_coassociativity_and_UW(k):
    assert verify_pseudo_coassoc(k, 2).passed
    assert verify_UW_homomorphism(k, 1).passed
    assert verify_UW_homomorphism(k, 2, pairs=32, seed=1).passed


def test_big_fermions_generic_pairs_and_mixed_same_mode():
    assert verify_big_fermions(2).passed
    ops = big_fermions(1)
    (a, _), (b, _) = ops
    # the delta1 and delta2 images of one mode do not anticommute
    assert a * b + b * a == tensor(psi(1, 1), psi(1, 1)).scale(-2 * I)


def test_omega_images():
    rep = delta_omega_identities(2)
    assert rep.passed, rep.to_text()
    swapped = rep.by_relation("omega_image.closed_form_swapped")
    assert swapped and all(c.expect == "fails" and c.residual_terms > 0 for c in swapped)


def test_delta_tilde_closed_form():
    p, w, wi = psi(2, 1), omega(2, 1), omega_inv(2, 1)
    want = (tensor(w, p).scale(S) + tensor(p, wi).scale(S.inverse())).scale(INV_SQRT2)
    assert delta_tilde(p) == want
    with pytest.raises(ValueError):
        delta_tilde(psi(2, 1) * psi(2, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_coproduct_reconstruction(n):
    g = build_generators(n)
    for i in range(1, n):
        de, df = coproduct_delta(g, "e", i), coproduct_delta(g, "f", i)
        assert coproduct_via_homs(n, i, "e") == de
        assert coproduct_via_flip(n, i, "e") == de
        assert coproduct_via_homs(n, i, "f", conjugate=True) == df
        assert coproduct_via_flip(n, i, "f", conjugate=True) == df


def test_literal_f_reconstruction_is_wrong():
    g = build_generators(2)
    df = coproduct_delta(g, "f", 1)
    got = coproduct_via_homs(2, 1, "f")
    k, ki, f = g.get("k", 1), g.get("kinv", 1), g.get("f", 1)
    assert got != df
    assert got == tensor(ki, f) + tensor(f, k)


def test_diagonal_grade_star_breaks_flip_route():
    g = build_generators(2)
    assert coproduct_via_flip(2, 1, "e", convention="diagonal") != coproduct_delta(g, "e", 1)


def test_reconstruction_report():
    rep = verify_reconstruction(2)
    assert rep.passed, rep.to_text()
    expected_false = {c.relation for c in rep.checks if c.expect == "fails"}
    assert expected_false == {"coproduct.via_Z", "coproduct.via_flip", "coproduct.via_flip_diagonal_star"}


def test_full_report_small():
    rep = verify_homs(1)
    assert rep.passed, rep.to_text()


def test_scan_finds_named_tuples():
    rows = scan_ansatz(n=1)
    known = {r["known"] for r in rows if r["known"]}
    assert known == set(HOM_TAGS)
    for r in rows:
        if r["known"]:
            assert r["m_condition"]
            assert r["coassociative"] == r["known"].startswith("trivial")
