import pytest

from artifact.coeffs import build_invariant, default_support
from artifact.fgab import ZERO, FgAbGroup, Z, compose, cyclic, is_injective, is_surjective, kernel
from artifact.resolution import (ResolutionError, build_resolution, hom_sequence_report, kernel_formula,
                                 kernel_on_H, primary_decompose, primary_generators)
from artifact.sixterm import SixTerm, check_exact

import corpus

IN_CLASS = ["z2z", "two_four", "four_eight", "nine_three"]


def _free(r):
    return FgAbGroup((), r)


def test_primary_decomposition_examples():
    assert primary_decompose(cyclic(2)).to_json() == {
        "primes": [2], "exponents": [[1]], "multiplicities": [[1]], "free_rank": 0}
    d = primary_decompose(_free(2))
    assert not d.primes and d.free_rank == 2
    d = primary_decompose(FgAbGroup((2, 12)))
    assert d.to_json() == {"primes": [2, 3], "exponents": [[1, 2], [1]],
                           "multiplicities": [[1, 1], [1]], "free_rank": 0}
    assert d.reassemble() == FgAbGroup((2, 12))


def test_primary_generators_have_prime_power_order():
    G = FgAbGroup((6, 36))
    gens = primary_generators(G)
    assert sorted(q for q, _ in gens) == [2, 3, 4, 9]
    for q, v in gens:
        order = next(k for k in range(1, 37) if not any(G.reduce([k * c for c in v])))
        assert order == q


def test_z2z_resolution():
    res = build_resolution(corpus.z2z())
    assert res.F.groups == (Z, _free(2), Z, ZERO, ZERO, ZERO)
    assert res.H.groups[1] == Z and res.H.groups[2] == Z
    assert res.lambda2_diagonal() == [2]
    assert res.eta.maps[1].mat == [[2, 1]]
    assert res.F0tilde == Z


def test_zero_resolution():
    res = build_resolution(SixTerm.from_matrices([ZERO] * 6, [[]] * 6))
    assert all(g.is_trivial() for g in res.F.groups + res.H.groups)


def test_lambda_diagonal_mixed_primes():
    s = SixTerm.from_matrices([_free(2), _free(2), FgAbGroup((2, 12)), ZERO, ZERO, ZERO],
                              [[[2, 0], [0, 12]], [[1, 0], [0, 1]], [], [], [], []])
    res = build_resolution(s)
    assert sorted(res.lambda2_diagonal()) == [2, 3, 4]


@pytest.mark.parametrize("name", IN_CLASS)
def test_resolution_properties(name):
    G = corpus.HANDCRAFTED[name]()
    res = build_resolution(G)
    for i in range(6):
        assert res.F.groups[i].is_free and res.H.groups[i].is_free
        lam, eta = res.lam.maps[i], res.eta.maps[i]
        assert is_injective(lam) and is_surjective(eta)
        assert compose(eta, lam).is_zero()
        assert kernel(eta)[0] == res.H.groups[i]
    assert check_exact(res.F).ok and check_exact(res.H).ok


def test_outside_class_rejected():
    with pytest.raises(ResolutionError):
        build_resolution(corpus.z3_loop())
    with pytest.raises(ResolutionError):
        build_resolution(corpus.index_loop())


def test_kernel_single_prime():
    res = build_resolution(corpus.z2z())
    assert kernel_on_H(res, 2)[0] == cyclic(2)


def test_kernel_two_four():
    res = build_resolution(corpus.two_four())
    assert kernel_on_H(res, 2)[0] == FgAbGroup((2, 2))
    assert kernel_on_H(res, 4)[0] == FgAbGroup((2, 4))
    assert kernel_formula(res, 4) == FgAbGroup((2, 4))


def test_kernel_odd_prime():
    res = build_resolution(corpus.nine_three())
    assert kernel_on_H(res, 9)[0] == cyclic(9)


def test_kernel_rejects_foreign_n():
    res = build_resolution(corpus.z2z())
    with pytest.raises(ResolutionError):
        kernel_on_H(res, 3)


@pytest.mark.parametrize("src,tgt", [("z2z", "z2z"), ("two_four", "two_four"), ("z2z", "nine_three")])
def test_hom_sequence(src, tgt):
    G, T = corpus.HANDCRAFTED[src](), corpus.HANDCRAFTED[tgt]()
    res = build_resolution(G)
    target = build_invariant(T, corpus.with_two(default_support(G) + default_support(T)))
    rep = hom_sequence_report(res, target)
    assert rep.middle_exact and rep.continuation_exact
    assert set(rep.groups) == {"Hom(e',Se2)", "Hom(e'',Se2)", "Hom(Se1,Se2)", "Hom(e'[-1],Se2)"}


def test_hom_sequence_free_target():
    free = SixTerm.from_matrices([Z, _free(2), Z, ZERO, ZERO, ZERO], [[[1], [0]], [[0, 1]], [], [], [], []])
    res = build_resolution(corpus.z2z())
    rep = hom_sequence_report(res, build_invariant(free, [2]))
    assert rep.ok


def test_hom_sequence_rejects_target_outside_class():
    res = build_resolution(corpus.z2z())
    with pytest.raises(ResolutionError):
        hom_sequence_report(res, build_invariant(corpus.index_loop(), [2]))


def test_json_shape():
    out = build_resolution(corpus.two_four()).to_json()
    assert out["lambda2_diagonal"] == [2, 4]
    assert out["decomposition"]["primes"] == [2]
