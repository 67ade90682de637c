import pytest

from artifact.fgab import (ZERO, FgAbGroup, GroupError, Z, cokernel, compose, cyclic, direct_sum,
                           enumerate_homs, ext_group, from_presentation, hom, hom_group, identity_hom,
                           image, in_image, inverse, is_isomorphism, kernel, tensor_zn, torsion_n)


def test_canonical_form_rejects_bad_chain():
    with pytest.raises(GroupError):
        FgAbGroup((2, 3))
    with pytest.raises(GroupError):
        FgAbGroup((1,))


@pytest.mark.parametrize("k,rel,expected", [
    (1, [[0]], Z),
    (2, [[2, 0], [0, 3]], cyclic(6)),
    (2, [[2, 4], [6, 8]], FgAbGroup((2, 4))),
])
def test_presentations(k, rel, expected):
    assert from_presentation(k, rel)[0] == expected


def test_hom_examples():
    B = FgAbGroup((2,), 1)
    assert hom_group(Z, B).group == B
    assert hom_group(cyclic(2), Z).group == ZERO
    assert hom_group(cyclic(4), cyclic(6)).group == cyclic(2)


def test_ext_examples():
    assert ext_group(Z, cyclic(5)) == ZERO
    assert ext_group(cyclic(2), Z) == cyclic(2)
    assert ext_group(cyclic(4), cyclic(6)) == cyclic(2)


def test_tensor_examples():
    assert tensor_zn(Z, 2)[0] == cyclic(2)
    assert tensor_zn(cyclic(3), 2)[0] == ZERO
    assert tensor_zn(FgAbGroup((4,), 1), 2)[0] == FgAbGroup((2, 2))


def test_torsion_examples():
    assert torsion_n(Z, 5)[0] == ZERO
    T, incl = torsion_n(cyclic(4), 2)
    assert T == cyclic(2)
    assert incl.mat == [[2]]
    assert torsion_n(cyclic(6), 3)[0] == cyclic(3)


def test_kernel_image_cokernel():
    two = hom(Z, Z, [[2]])
    assert kernel(two)[0] == ZERO
    assert cokernel(two)[0] == cyclic(2)
    dbl = hom(cyclic(4), cyclic(4), [[2]])
    K, incl = kernel(dbl)
    assert K == cyclic(2)
    assert image(dbl)[0] == cyclic(2)


def test_isomorphisms():
    h = hom(cyclic(4), cyclic(6), [[3]])
    assert compose(identity_hom(cyclic(6)), h) == h
    assert is_isomorphism(hom(Z, Z, [[-1]]))
    three = hom(cyclic(4), cyclic(4), [[3]])
    assert is_isomorphism(three)
    assert compose(inverse(three), three) == identity_hom(cyclic(4))
    assert not is_isomorphism(hom(Z, Z, [[2]]))


def test_enumerate_counts():
    assert len(list(enumerate_homs(cyclic(2), cyclic(2)))) == 2
    assert len(list(enumerate_homs(cyclic(4), cyclic(6)))) == 2
    assert len(list(enumerate_homs(FgAbGroup((2, 2)), cyclic(2)))) == 4


def test_ill_defined_hom_rejected():
    with pytest.raises(GroupError):
        hom(cyclic(2), cyclic(3), [[1]])


def test_direct_sum_recanonicalizes():
    S, inj, proj = direct_sum([cyclic(2), cyclic(3)])
    assert S == cyclic(6)
    for i, p in zip(inj, proj):
        assert is_isomorphism(compose(p, i))


def test_in_image():
    h = hom(Z, cyclic(6), [[2]])
    assert in_image(h, [4]) is not None
    assert in_image(h, [1]) is None


def test_json_round_trip():
    G = FgAbGroup((2, 6), 3)
    assert FgAbGroup.from_json(G.to_json()) == G
