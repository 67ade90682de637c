import json

import pytest

from artifact.coeffs import (CoeffHom, CoeffInvariant, InvariantError, build_invariant, default_support, fkey,
                             hkey, induce_hom, verify_invariant)
from artifact.fgab import ZERO, FgAbGroup, Z, compose, cyclic, is_surjective
from artifact.sixterm import CKInput, SixTerm, SixTermHom, ck_ktheory, ck_model, six_hom, suspend

import corpus


@pytest.fixture(scope="module")
def z2z_inv():
    return build_invariant(corpus.z2z(), [2])


def test_default_support():
    free = SixTerm.from_matrices([Z, Z, ZERO, ZERO, ZERO, ZERO], [[[1]], [], [], [], [], []])
    assert default_support(free) == []
    assert default_support(corpus.z2z()) == [2]
    s = SixTerm.from_matrices([ZERO, ZERO, FgAbGroup((2, 12)), ZERO, ZERO, ZERO], [[]] * 6)
    assert default_support(s) == [2, 3, 4]


def test_z2z_groups(z2z_inv):
    F = [z2z_inv.F(2, i) for i in range(6)]
    assert F == [cyclic(2), cyclic(2), cyclic(2), ZERO, ZERO, cyclic(2)]
    assert z2z_inv.H(2) == Z


def test_free_sequence_has_zero_beta():
    s = SixTerm.from_matrices([Z, FgAbGroup((), 2), Z, ZERO, ZERO, ZERO],
                              [[[1], [0]], [[0, 1]], [], [], [], []])
    inv = build_invariant(s, [2, 3])
    for n in (2, 3):
        for i in range(6):
            assert inv.F(n, i) == FgAbGroup((n,) * s.groups[i].free_rank)
            assert inv.beta(n, i).is_zero()


def test_h_group_of_identity_loop():
    s = SixTerm.from_matrices([ZERO, ZERO, ZERO, ZERO, Z, Z], [[], [], [], [], [[1]], []])
    assert build_invariant(s, [2]).H(2) == cyclic(2)


@pytest.mark.parametrize("label,src", corpus.corpus_sources()[::9])
def test_corpus_relations(label, src):
    s = src if isinstance(src, SixTerm) else SixTerm.from_model(src)
    rep = verify_invariant(build_invariant(src, corpus.with_two(default_support(s))))
    assert rep.ok, rep.first_failure()


def test_kappa_rho_identity_with_support_2_4():
    inv = build_invariant(corpus.four_eight(), [2, 4])
    for i in range(6):
        assert compose(inv.kappa(2, 4, i), inv.rho(4, i)) == inv.rho(2, i)
    names = [r.name for r in verify_invariant(inv).items]
    assert "kappa-rho square (n=2,m=2,i=0)" in names


def _corrupt_beta(inv, name):
    d = inv.to_json()
    d["maps"][name]["matrix"] = [[-x for x in row] for row in d["maps"][name]["matrix"]]
    return CoeffInvariant.from_json(d)


def test_negated_beta_is_named():
    # on a 2-group a negated beta is invisible (x = -x), so use the 3-primary instance
    inv = build_invariant(ck_model(CKInput(((4, 1), (0, 4)), (1,))), [3, 9])
    assert verify_invariant(inv).ok
    rep = verify_invariant(_corrupt_beta(inv, "beta[3,4]"))
    assert not rep.ok
    names = [r.name for r in rep.failures()]
    assert "beta-kappa square (n=3,m=3,i=4)" in names
    bad = next(r for r in rep.failures() if r.name.startswith("beta-kappa"))
    assert bad.witness and "generator" in bad.witness


def test_model_and_group_level_agree():
    c = CKInput(((3, 1), (0, 3)), (1,))
    a = build_invariant(ck_model(c))
    b = build_invariant(ck_ktheory(c))
    assert a.groups == b.groups
    assert a.support == b.support


def test_build_rejects_inexact():
    s = SixTerm.from_matrices([Z, Z, ZERO, ZERO, ZERO, ZERO], [[[0]], [], [], [], [], []])
    with pytest.raises(InvariantError):
        build_invariant(s, [2])


def test_json_round_trip_and_determinism(z2z_inv):
    d = z2z_inv.to_json()
    again = CoeffInvariant.from_json(json.loads(json.dumps(d)))
    assert json.dumps(again.to_json()) == json.dumps(d)
    assert json.dumps(build_invariant(corpus.z2z(), [2]).to_json()) == json.dumps(d)


def test_induce_identity_and_zero(z2z_inv):
    s = z2z_inv.base
    assert induce_hom(SixTermHom.identity(s), z2z_inv, z2z_inv) == CoeffHom.identity(z2z_inv)
    assert induce_hom(SixTermHom.zero(s, s), z2z_inv, z2z_inv).is_zero()


def test_induce_is_functorial(z2z_inv):
    s = z2z_inv.base
    three = six_hom(s, s, [[[3]], [[3]], [[1]], [], [], []])
    five = six_hom(s, s, [[[5]], [[5]], [[1]], [], [], []])
    fifteen = six_hom(s, s, [[[15]], [[15]], [[1]], [], [], []])
    f3, f5 = induce_hom(three, z2z_inv, z2z_inv), induce_hom(five, z2z_inv, z2z_inv)
    assert f3.is_valid() and f3.delta().maps == three.maps
    assert f3.compose(f5) == induce_hom(fifteen, z2z_inv, z2z_inv)
    assert not f3.is_isomorphism()
    neg = six_hom(s, s, [[[-1]], [[-1]], [[1]], [], [], []])
    assert induce_hom(neg, z2z_inv, z2z_inv).is_isomorphism()


def test_induce_across_instances():
    a = build_invariant(corpus.four_eight(), [2, 4])
    b = build_invariant(ck_ktheory(CKInput(((3, 1), (0, 3)), (1,))), [2, 4])
    phi = six_hom(a.base, b.base, [[[1]], [[1]], [[1]], [], [], []])
    h = induce_hom(phi, a, b)
    assert h.is_valid()
    assert h.comps[fkey(1, 1)].mat == [[1]]
    assert not h.is_zero() and not h.is_isomorphism()


def test_coeff_hom_arithmetic(z2z_inv):
    one = CoeffHom.identity(z2z_inv)
    assert (one + one) == one.scale(2)
    assert (one - one).is_zero()
    assert one.inverse() == one
    assert hkey(2) in one.to_json()


@pytest.mark.parametrize("name", sorted(corpus.HANDCRAFTED))
def test_suspension_shifts_coefficient_groups(name):
    s = corpus.HANDCRAFTED[name]()
    support = corpus.with_two(default_support(s))
    a, b = build_invariant(s, support), build_invariant(suspend(s), support)
    for n in support:
        for i in range(6):
            assert b.F(n, i) == a.F(n, i + 3)


@pytest.mark.parametrize("name", sorted(corpus.HANDCRAFTED))
def test_rho_onto_when_partner_torsion_free(name):
    s = corpus.HANDCRAFTED[name]()
    inv = build_invariant(s, corpus.with_two(default_support(s)))
    for n in inv.support:
        for i in range(6):
            if not s.groups[(i + 3) % 6].torsion:
                assert is_surjective(inv.rho(n, i))
