"""Tests for the integral group ring of a tower."""

import pytest

from nilbal.classify.catalog import tower_family
from nilbal.extension.group_ring import (
    GroupRingElem,
    augment,
    mat_mul,
    vec_add,
    vec_mat,
    vec_scale,
    vec_sub,
    zero_vector,
)


@pytest.fixture
def c4z():
    """Z/4 x| Z with t acting by inversion."""
    return tower_family("semidirect", {"m": 4, "n": -1})


def _gen(t, j, e=1):
    return GroupRingElem.generator(t, j, e)


class TestArithmetic:
    def test_norm_absorbs_base(self, c4z):
        nu = GroupRingElem.norm(c4z)
        z = _gen(c4z, 0)
        assert z * nu == nu
        assert nu * nu == nu * 4
        assert (z - GroupRingElem.one(c4z)) * nu == GroupRingElem.zero(c4z)

    def test_noncommutative_product(self, c4z):
        a, t = _gen(c4z, 0), _gen(c4z, 1)
        assert t * a == _gen(c4z, 0, -1) * t
        assert t * a != a * t

    def test_zero_coefficients_are_dropped(self, c4z):
        a = _gen(c4z, 0)
        assert (a - a).is_zero()
        assert not (a - a)

    def test_augmentation_is_multiplicative(self, c4z):
        x = _gen(c4z, 0) * 3 - _gen(c4z, 1, -2)
        y = GroupRingElem.norm(c4z) + _gen(c4z, 1)
        assert (x * y).augmentation() == x.augmentation() * y.augmentation()

    def test_integer_scalars_on_both_sides(self, c4z):
        a = _gen(c4z, 0)
        assert 3 * a == a * 3
        assert (a * 3).augmentation() == 3

    def test_geometric(self, c4z):
        g = GroupRingElem.geometric(c4z, 1, -1, 2)
        assert g == _gen(c4z, 1, -1) + GroupRingElem.one(c4z) + _gen(c4z, 1)

    def test_act(self, c4z):
        assert _gen(c4z, 0).act(1) == _gen(c4z, 0, -1)
        assert _gen(c4z, 0, 1).act(1, 2) == _gen(c4z, 0, 1)

    def test_top(self, c4z):
        assert GroupRingElem.norm(c4z).top() == 1
        assert (_gen(c4z, 0) + _gen(c4z, 1)).top() == 2
        assert GroupRingElem.zero(c4z).top() == 0


class TestSplitting:
    def test_split_and_reassemble(self, gamma2):
        x, y, z = _gen(gamma2, 3), _gen(gamma2, 2), _gen(gamma2, 1)
        elem = x * y * z * 2 - x * z + y * y - GroupRingElem.one(gamma2)
        total = GroupRingElem.zero(gamma2)
        for prefix, part in elem.split(2).items():
            assert part.top() <= 2
            total = total + part.with_prefix(prefix, 2)
        assert total == elem


class TestDisplay:
    def test_render(self, c4z):
        elem = _gen(c4z, 1) * 2 - GroupRingElem.one(c4z)
        assert elem.render() == "-1 + 2*t"

    def test_render_zero(self, c4z):
        assert GroupRingElem.zero(c4z).render() == "0"

    def test_hashable(self, c4z):
        assert len({_gen(c4z, 0), _gen(c4z, 0, 5), _gen(c4z, 1)}) == 2


class TestVectors:
    def test_vector_helpers(self, c4z):
        a, t = _gen(c4z, 0), _gen(c4z, 1)
        u, v = [a, t], [t, a]
        assert vec_sub(vec_add(u, v), v) == u
        assert vec_scale(t, u) == [t * a, t * t]
        assert zero_vector(c4z, 2) == [GroupRingElem.zero(c4z)] * 2

    def test_vec_mat_and_augment(self, c4z):
        one, a, t = GroupRingElem.one(c4z), _gen(c4z, 0), _gen(c4z, 1)
        mat = [[a - one, one], [t, a * 2]]
        out = vec_mat([one, t], mat, 2, c4z)
        assert out == [a - one + t * t, one + t * a * 2]
        assert augment(mat) == [[0, 1], [1, 2]]

    def test_mat_mul_identity(self, c4z):
        one, zero = GroupRingElem.one(c4z), GroupRingElem.zero(c4z)
        a, t = _gen(c4z, 0), _gen(c4z, 1)
        mat = [[a, t], [t * a, one]]
        eye = [[one, zero], [zero, one]]
        assert mat_mul(mat, eye, 2, c4z) == mat
        assert mat_mul(eye, mat, 2, c4z) == mat
