import pytest

from artifact.fgab import ZERO, FgAbGroup, GroupError, Z, cyclic
from artifact.sixterm import (CKInput, SixTerm, SixTermError, SixTermHom, check_exact, ck_ktheory, ck_model,
                              class_flags, six_hom, suspend)

import corpus


def test_z2z_is_exact():
    assert check_exact(corpus.z2z()).ok


def test_zero_sequence_is_exact():
    s = SixTerm.from_matrices([ZERO] * 6, [[]] * 6)
    assert check_exact(s).ok


def test_failure_is_located():
    s = SixTerm.from_matrices([Z, Z, ZERO, ZERO, ZERO, ZERO], [[[0]], [], [], [], [], []])
    rep = check_exact(s)
    assert not rep.ok
    failed = [n.index for n in rep.nodes if not n.ok]
    assert 1 in failed
    node = next(n for n in rep.nodes if n.index == 1)
    assert node.kind == "kernel not in image" and node.witness == [1]


def test_non_complex_detected():
    s = SixTerm.from_matrices([Z, Z, ZERO, ZERO, ZERO, Z], [[[1]], [], [], [], [], [[1]]])
    rep = check_exact(s)
    assert not rep.ok


def test_suspend():
    s = corpus.z2z()
    t = suspend(s)
    assert t.groups == (ZERO, ZERO, ZERO, Z, Z, cyclic(2))
    assert suspend(t) == s
    zero = SixTerm.from_matrices([ZERO] * 6, [[]] * 6)
    assert suspend(zero) == zero


@pytest.mark.parametrize("name", sorted(corpus.HANDCRAFTED))
def test_suspend_preserves_exactness(name):
    assert check_exact(suspend(corpus.HANDCRAFTED[name]())).ok


def test_class_flags():
    assert all(class_flags(corpus.z2z()).values())
    g5 = SixTerm.from_matrices([ZERO, ZERO, ZERO, ZERO, ZERO, cyclic(2)], [[]] * 6)
    assert not class_flags(g5)["quotient_K1_free"]
    assert not class_flags(corpus.index_loop())["zero_exponential"]


def test_ck_examples():
    s = ck_ktheory(CKInput(((3,),), ()))
    assert s.groups[2] == cyclic(2) and s.groups[5] == ZERO
    s = ck_ktheory(CKInput(((3, 1), (0, 3)), (1,)))
    assert s.groups == (cyclic(2), cyclic(4), cyclic(2), ZERO, ZERO, ZERO)
    assert s.maps[0].mat == [[2]]
    # A - I = -1 is invertible: everything vanishes
    assert all(g.is_trivial() for g in ck_ktheory(CKInput(((0,),), ())).groups)
    s = ck_ktheory(CKInput(((1,),), ()))
    assert s.groups == (ZERO, Z, Z, ZERO, Z, Z)


def test_ck_rejects_non_triangular():
    with pytest.raises(SixTermError):
        CKInput(((1, 1), (1, 1)), (1,))
    with pytest.raises(SixTermError):
        CKInput(((1, 1), (0,)), (1,))
    with pytest.raises(SixTermError):
        CKInput(((-1,),), ())


@pytest.mark.parametrize("ck", corpus.ck_corpus()[::7])
def test_ck_sequences_exact(ck):
    assert check_exact(SixTerm.from_model(ck_model(ck))).ok


def test_morphism_square_reported():
    s = corpus.z2z()
    with pytest.raises(SixTermError, match="square 0"):
        six_hom(s, s, [[[1]], [[2]], [[1]], [], [], []])
    ok = six_hom(s, s, [[[3]], [[3]], [[1]], [], [], []])
    assert isinstance(ok, SixTermHom)


def test_identity_and_zero_morphisms():
    s = corpus.nine_three()
    assert SixTermHom.identity(s).maps[1].mat == [[1, 0], [0, 1]]
    assert all(m.is_zero() for m in SixTermHom.zero(s, s).maps)


def test_json_round_trip():
    for make in corpus.HANDCRAFTED.values():
        s = make()
        assert SixTerm.from_json(s.to_json()) == s
    c = CKInput(((3, 1), (0, 3)), (1,))
    assert CKInput.from_json(c.to_json()) == c


def test_rejects_non_chain_shapes():
    with pytest.raises(GroupError):
        SixTerm.from_matrices([Z, FgAbGroup((), 2)] + [ZERO] * 4, [[[1]], [], [], [], [], []])
