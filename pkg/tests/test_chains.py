import numpy as np
import pytest

from artifact.chains import Complex, ExtModel, ModelError, zmat
from artifact.fgab import ZERO, FgAbGroup, Z, compose, cyclic
from artifact.realize import lift_six_hom, realize
from artifact.sixterm import CKInput, SixTerm, check_exact, ck_model, six_hom

import corpus


def _point(r0=1, r1=0):
    return Complex.zero(r0, r1)


def test_d_squared_checked():
    with pytest.raises(ModelError):
        Complex(np.array([[1]], dtype=object), np.array([[1]], dtype=object))


def test_twist_shape_checked():
    with pytest.raises(ModelError):
        ExtModel(_point(), _point(), (zmat(1, 1), zmat(1, 1)))


def test_shift_swaps_degrees():
    m = ck_model(CKInput(((3, 1), (0, 3)), (1,)))
    s = SixTerm.from_model(m)
    t = SixTerm.from_model(m.shift())
    assert t.groups == tuple(s.groups[(i + 3) % 6] for i in range(6))


def test_mod_n_of_a_point():
    m = ExtModel(_point(), _point(0, 0), (zmat(0, 0), zmat(1, 0)))
    mod3 = SixTerm.from_model(m.mod(3))
    assert mod3.groups[0] == cyclic(3)
    assert check_exact(mod3).ok


def test_cone_of_identity_is_acyclic():
    m = ck_model(CKInput(((2, 1), (0, 3)), (1,)))
    C = m.identity().cone()
    assert all(g.is_trivial() for g in SixTerm.from_model(C).groups)


def test_model_maps_compose():
    m = ck_model(CKInput(((3, 1), (0, 3)), (1,)))
    two = m.scaled_identity(2)
    two.compose(two).verify()
    assert [g.mat for g in two.compose(two).six()] == [g.mat for g in m.scaled_identity(4).six()]


@pytest.mark.parametrize("name", sorted(corpus.HANDCRAFTED))
def test_realization_is_isomorphic(name):
    s = corpus.HANDCRAFTED[name]()
    R = realize(s)
    assert SixTerm.from_model(R.model).groups == s.groups
    for i in range(6):
        assert compose(R.theta[(i + 1) % 6], s.maps[i]) == compose(R.model.six_maps[i], R.theta[i])


def test_lift_induces_requested_map():
    s = corpus.four_eight()
    t = SixTerm.from_model(ck_model(CKInput(((3, 1), (0, 3)), (1,))))
    phi = six_hom(s, t, [[[1]], [[1]], [[1]], [], [], []])
    R1, R2 = realize(s), realize(t)
    F = lift_six_hom(phi, R1, R2)
    for i in range(6):
        assert compose(F.on_six(i), R1.theta[i]) == compose(R2.theta[i], phi.maps[i])


def test_free_cover_of_free_sequence():
    s = SixTerm.from_matrices([Z, FgAbGroup((), 2), Z, ZERO, ZERO, ZERO],
                              [[[1], [0]], [[0, 1]], [], [], [], []])
    assert check_exact(SixTerm.from_model(realize(s).model)).ok
