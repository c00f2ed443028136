"""Tests for finitely generated abelian groups and their homomorphisms."""

import pytest

from nilbal.abelian.groups import (
    AbHom,
    FinAbGroup,
    abelianization,
    abelianize,
    cokernel,
    functor_dims,
    homology_group,
)
from nilbal.abelian.matrices import IntMatrix
from nilbal.errors import NotAutomorphismError
from nilbal.presentation.parser import parse


def _hom(group: FinAbGroup, rows: list[list[int]]) -> AbHom:
    return AbHom(group, group, IntMatrix.from_rows(rows, cols=group.rank))


class TestFinAbGroup:
    @pytest.mark.parametrize("orders, free, factors", [
        ((2, 3), 0, (6,)),
        ((2, 4), 0, (2, 4)),
        ((0, 1, 6), 1, (6,)),
        ((4, 6), 0, (2, 12)),
        ((), 0, ()),
    ])
    def test_from_orders_normalizes(self, orders, free, factors):
        group = FinAbGroup.from_orders(*orders)
        assert group == FinAbGroup(free, factors)

    def test_rejects_non_chain(self):
        with pytest.raises(ValueError, match="divisibility chain"):
            FinAbGroup(0, (2, 3))

    def test_rejects_unit_factor(self):
        with pytest.raises(ValueError, match=">= 2"):
            FinAbGroup(0, (1,))

    def test_str(self):
        assert str(FinAbGroup(2, (3,))) == "Z^2 + Z/3"
        assert str(FinAbGroup(1, ())) == "Z"
        assert str(FinAbGroup()) == "0"

    def test_invariants(self):
        group = FinAbGroup.from_orders(0, 2, 4)
        assert group.rank == 3
        assert not group.is_finite
        assert group.order is None
        assert group.torsion_order == 8
        assert group.exponent == 4
        assert group.p_rank(2) == 3
        assert group.p_rank(3) == 1
        assert group.p_torsion_rank(2) == 2
        assert group.p_indices(2) == [0, 1, 2]

    def test_primary_parts(self):
        group = FinAbGroup(0, (2, 12))
        assert group.elementary_divisors() == {2: (2, 1), 3: (1,)}
        assert group.p_primary(2) == FinAbGroup(0, (2, 4))
        assert group.primes() == [2, 3]

    def test_all_of_order(self):
        assert [g.invariant_factors for g in FinAbGroup.all_of_order(8)] == [
            (8,), (2, 4), (2, 2, 2),
        ]
        assert len(FinAbGroup.all_of_order(12)) == 2
        assert len(FinAbGroup.all_of_order(16)) == 5

    def test_elements_and_indices(self):
        group = FinAbGroup(0, (2, 2))
        elements = list(group.elements())
        assert len(elements) == 4
        assert [group.element_index(v) for v in elements] == [0, 1, 2, 3]

    def test_element_order(self):
        assert FinAbGroup.cyclic(12).element_order((3,)) == 4
        assert FinAbGroup(1, (2,)).element_order((1, 0)) == 0
        assert FinAbGroup(1, (2,)).element_order((0, 1)) == 2

    def test_infinite_group_has_no_element_list(self):
        with pytest.raises(ValueError, match="infinite"):
            FinAbGroup.free(1).elements()

    def test_direct_sum(self):
        assert FinAbGroup.cyclic(2).direct_sum(FinAbGroup.cyclic(3)) == FinAbGroup.cyclic(6)

    def test_to_json(self):
        assert FinAbGroup(1, (2,)).to_json() == {"free_rank": 1, "invariant_factors": [2]}


class TestAbHom:
    def test_scalar_automorphism_and_inverse(self):
        f = AbHom.scalar(FinAbGroup.cyclic(5), 2)
        assert f.is_automorphism()
        assert f.inverse() == AbHom.scalar(FinAbGroup.cyclic(5), 3)

    def test_non_automorphism(self):
        f = AbHom.scalar(FinAbGroup.cyclic(4), 2)
        assert not f.is_automorphism()
        with pytest.raises(NotAutomorphismError):
            f.require_automorphism()

    def test_image_order_must_divide(self):
        with pytest.raises(ValueError, match="order not dividing"):
            AbHom(FinAbGroup.cyclic(2), FinAbGroup.cyclic(4), IntMatrix.from_rows([[1]]))
        AbHom(FinAbGroup.cyclic(2), FinAbGroup.cyclic(4), IntMatrix.from_rows([[2]]))

    def test_entries_are_reduced(self):
        f = _hom(FinAbGroup.cyclic(5), [[7]])
        assert f.matrix.to_rows() == [[2]]

    def test_power_and_compose(self):
        f = AbHom.scalar(FinAbGroup.cyclic(7), 3)
        assert f.power(6) == AbHom.identity(FinAbGroup.cyclic(7))
        assert f @ f == AbHom.scalar(FinAbGroup.cyclic(7), 2)

    def test_apply(self):
        f = _hom(FinAbGroup(0, (2, 4)), [[1, 0], [2, 1]])
        assert f.apply((1, 1)) == (1, 3)

    def test_free_automorphism(self):
        z2 = FinAbGroup.free(2)
        assert _hom(z2, [[1, 1], [0, 1]]).is_automorphism()
        assert not _hom(z2, [[2, 0], [0, 1]]).is_automorphism()

    def test_minus_identity(self):
        f = _hom(FinAbGroup.free(2), [[1, 1], [0, 1]])
        assert f.minus_identity().matrix.to_rows() == [[0, 1], [0, 0]]

    def test_mod_p_keeps_surviving_generators(self):
        group = FinAbGroup.from_orders(0, 3, 6)
        f = AbHom.identity(group)
        assert f.mod_p(2).shape == (2, 2)
        assert f.mod_p(3).shape == (3, 3)

    def test_torsion_part(self):
        group = FinAbGroup(1, (4,))
        f = _hom(group, [[1, 0], [1, 3]])
        assert f.torsion_part() == AbHom.scalar(FinAbGroup.cyclic(4), 3)


class TestAbelianize:
    def test_quaternion(self):
        q8 = parse("< x, y | x^2 = y^2, y x y^-1 = x^-1 >")
        assert abelianize(q8) == FinAbGroup(0, (2, 2))

    def test_gamma(self):
        gamma = parse("< x, y, z | [x, y] = z^6, [x, z], [y, z] >")
        assert abelianize(gamma) == FinAbGroup(2, (6,))

    def test_free(self):
        assert abelianize(parse("< s, t | >")) == FinAbGroup.free(2)

    def test_cokernel(self):
        assert cokernel(IntMatrix.from_rows([[2, 0], [0, 3]])) == FinAbGroup.cyclic(6)

    def test_abelianization_coordinates(self):
        ab = abelianization(parse("< a, t | a^4, t a t^-1 = a^-1 >"))
        assert ab.group == FinAbGroup(1, (2,))
        assert ab.group.element_order(ab.coordinates((1, 0))) == 2
        assert ab.group.element_order(ab.coordinates((0, 1))) == 0
        assert ab.coordinates((2, 0)) == ab.group.zero()

    def test_induced_identity(self):
        ab = abelianization(parse("< x, y, z | [x, y] = z^2, [x, z], [y, z] >"))
        images = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert ab.induced(images) == AbHom.identity(ab.group)

    def test_induced_swap_on_free_group(self):
        ab = abelianization(parse("< s, t | >"))
        swap = ab.induced([(0, 1), (1, 0)])
        assert swap.is_automorphism()
        assert swap.power(2) == AbHom.identity(ab.group)


class TestFunctors:
    def test_functor_dims(self):
        assert functor_dims(FinAbGroup(1, (4,)), 2) == (2, 1, 2, 1)
        assert functor_dims(FinAbGroup(1, (4,)), 3) == (1, 0, 1, 0)

    @pytest.mark.parametrize("incoming, outgoing, n, expected", [
        ([[0]], [[0]], 1, FinAbGroup.free(1)),
        ([[2]], [[0]], 1, FinAbGroup.cyclic(2)),
        ([[2, -2]], [[1], [1]], 2, FinAbGroup.cyclic(2)),
    ])
    def test_homology_group(self, incoming, outgoing, n, expected):
        assert homology_group(incoming, outgoing, n) == expected
