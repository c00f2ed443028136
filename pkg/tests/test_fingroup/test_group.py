"""Tests for finite groups given by Cayley tables."""

import numpy as np
import pytest

from nilbal.abelian.groups import AbHom, FinAbGroup
from nilbal.errors import NotAutomorphismError
from nilbal.fingroup.group import FiniteGroup, GrpAutomorphism
from nilbal.presentation.words import Word


class TestFiniteGroup:
    def test_cyclic(self, c6):
        assert c6.order == 6
        assert c6.is_abelian()
        assert sorted(c6.element_orders().tolist()) == [1, 2, 3, 3, 6, 6]

    def test_inverse_and_power(self, c6):
        g = c6.generators[0]
        assert c6.mul(g, c6.inv(g)) == 0
        assert c6.power(g, 6) == 0
        assert c6.power(g, -1) == c6.inv(g)

    def test_quaternion_structure(self, q8):
        assert q8.order == 8
        assert not q8.is_abelian()
        assert q8.is_nilpotent()
        assert q8.nilpotency_class() == 2
        assert q8.centre().size == 2
        assert q8.abelianization() == FinAbGroup(0, (2, 2))

    def test_evaluate_respects_relations(self, q8):
        x2 = q8.evaluate(Word.gen(0, 2))
        assert x2 != 0
        assert x2 == q8.evaluate(Word.gen(1, 2))
        assert q8.evaluate(Word.gen(0, 4)) == 0

    def test_symmetric_group_is_not_nilpotent(self, s3):
        assert s3.order == 6
        assert not s3.is_nilpotent()
        assert s3.nilpotency_class() is None
        assert [t.size for t in s3.lower_central_series()] == [6, 3]
        assert s3.abelianization() == FinAbGroup.cyclic(2)

    def test_heisenberg(self, heisenberg3):
        assert heisenberg3.order == 27
        assert heisenberg3.nilpotency_class() == 2
        assert heisenberg3.abelianization() == FinAbGroup(0, (3, 3))
        assert heisenberg3.commutator_subgroup().size == 3

    def test_abelian_group_has_class_one(self, c6):
        assert c6.nilpotency_class() == 1
        assert c6.abelianization() == FinAbGroup.cyclic(6)

    def test_sylow_subgroups(self, s3, c6):
        assert s3.sylow_subgroup(2).size == 2
        assert s3.sylow_subgroup(3).size == 3
        assert s3.sylow_subgroup(5).size == 1
        assert s3.direct_product_of_sylows() is None
        sylows = c6.direct_product_of_sylows()
        assert {p: P.size for p, P in sylows.items()} == {2: 2, 3: 3}

    def test_subgroup_reindexes(self, q8):
        centre = q8.subgroup(q8.centre(), name="Z(Q8)")
        assert centre.order == 2
        assert centre.name == "Z(Q8)"
        assert len(centre.generators) == 1

    def test_subgroup_must_be_closed(self, q8):
        with pytest.raises(ValueError, match="closed"):
            q8.subgroup(np.array([0, q8.generators[0]]))

    def test_from_abelian(self):
        G = FiniteGroup.from_abelian(FinAbGroup(0, (2, 2)))
        assert G.order == 4
        assert G.is_abelian()
        assert G.abelianization() == FinAbGroup(0, (2, 2))

    def test_trivial_group(self):
        G = FiniteGroup.from_abelian(FinAbGroup())
        assert G.order == 1
        assert G.is_nilpotent()
        assert G.abelianization() == FinAbGroup()

    def test_from_abelian_rejects_infinite(self):
        with pytest.raises(ValueError, match="infinite"):
            FiniteGroup.from_abelian(FinAbGroup.free(1))

    def test_table_validation(self):
        with pytest.raises(ValueError, match="identity"):
            FiniteGroup(np.array([[1, 0], [0, 1]]))
        with pytest.raises(ValueError, match="square"):
            FiniteGroup(np.zeros((2, 3), dtype=np.int32))


class TestGrpAutomorphism:
    def test_inner_automorphism(self, q8):
        x = q8.generators[0]
        inner = GrpAutomorphism.inner(q8, x)
        assert not inner.is_identity()
        assert (inner @ inner).is_identity()

    def test_inner_by_central_element_is_trivial(self, q8):
        z = int(q8.centre()[1])
        assert GrpAutomorphism.inner(q8, z).is_identity()

    def test_from_generator_images(self, q8):
        x, y = q8.generators
        swap = GrpAutomorphism.from_generator_images(q8, [y, x])
        assert swap.apply(x) == y
        assert (swap @ swap).is_identity()
        assert swap.inverse().apply(y) == x

    def test_non_automorphism(self, q8):
        x, _ = q8.generators
        with pytest.raises(NotAutomorphismError):
            GrpAutomorphism.from_generator_images(q8, [x, x])

    def test_wrong_image_count(self, q8):
        with pytest.raises(ValueError, match="one image per generator"):
            GrpAutomorphism.from_generator_images(q8, [0])

    def test_from_abhom(self):
        A = FinAbGroup.cyclic(5)
        G = FiniteGroup.from_abelian(A)
        doubling = GrpAutomorphism.from_abhom(G, AbHom.scalar(A, 2))
        assert doubling.apply(1) == 2
        assert doubling.apply(3) == 1

    def test_restrict_to_invariant_subgroup(self, q8):
        centre = q8.centre()
        sub = q8.subgroup(centre)
        inner = GrpAutomorphism.inner(q8, q8.generators[0])
        assert inner.restrict(centre, sub).is_identity()

    def test_restrict_to_non_invariant_subgroup(self, s3):
        transposition = next(
            g for g in range(s3.order) if s3.element_orders()[g] == 2
        )
        elements = s3.closure([transposition])
        sub = s3.subgroup(elements)
        rotation = next(g for g in range(s3.order) if s3.element_orders()[g] == 3)
        with pytest.raises(NotAutomorphismError, match="invariant"):
            GrpAutomorphism.inner(s3, rotation).restrict(elements, sub)
