"""Tests for the explicit H_2 / H^2 model of abelian groups."""

import numpy as np
import pytest

from nilbal.abcohomology.model import (
    AbelianH2Model,
    cup_square_structure,
    fixed_h2_dim_formula,
    fixed_h2_homology_dim,
    h1_matrix,
    h2_split_dims,
    is_exponent_two_regime,
    wedge_fixed_dim,
)
from nilbal.abelian.groups import AbHom, FinAbGroup
from nilbal.abelian.matrices import IntMatrix
from nilbal.errors import NotUnipotentError
from nilbal.fingroup.bar import bar_homology
from nilbal.fingroup.group import FiniteGroup, GrpAutomorphism
from nilbal.models import Regime

KLEIN = FinAbGroup(0, (2, 2))
Z2_Z4 = FinAbGroup(0, (2, 4))
Z2 = FinAbGroup.free(2)


def _hom(group: FinAbGroup, rows: list[list[int]]) -> AbHom:
    return AbHom(group, group, IntMatrix.from_rows(rows, cols=group.rank))


class TestModel:
    @pytest.mark.parametrize("group, p, dim, wedge", [
        (KLEIN, 2, 3, 1),
        (KLEIN, 3, 0, 0),
        (Z2, 5, 1, 1),
        (FinAbGroup.cyclic(6), 2, 1, 0),
        (FinAbGroup.cyclic(6), 5, 0, 0),
        (FinAbGroup(1, (3, 3)), 3, 5, 3),
    ])
    def test_dimensions(self, group, p, dim, wedge):
        model = AbelianH2Model(group, p)
        assert model.dim == dim
        assert model.wedge_dim == wedge
        assert h2_split_dims(group, p).total == dim

    def test_identity_induces_identity(self):
        model = AbelianH2Model(Z2_Z4, 2)
        eye = np.eye(model.dim, dtype=np.int64)
        assert np.array_equal(model.homology_matrix(AbHom.identity(Z2_Z4)), eye)
        assert np.array_equal(model.cohomology_matrix(AbHom.identity(Z2_Z4)), eye)

    def test_scalar_acts_on_wedge_by_square(self):
        group = FinAbGroup(0, (3, 3))
        model = AbelianH2Model(group, 3)
        H = model.homology_matrix(AbHom.scalar(group, 2))
        # wedge block first, then one carry cycle per torsion generator
        assert H[0, 0] == 1
        assert H[1, 1] == 2
        assert H[2, 2] == 2

    def test_cohomology_is_transpose(self):
        model = AbelianH2Model(Z2_Z4, 2)
        f = _hom(Z2_Z4, [[1, 1], [0, 1]])
        assert np.array_equal(model.cohomology_matrix(f), model.homology_matrix(f).T)

    def test_rejects_foreign_map(self):
        model = AbelianH2Model(KLEIN, 2)
        with pytest.raises(ValueError, match="endomorphism"):
            model.homology_matrix(AbHom.identity(Z2_Z4))


class TestAgainstBarComplex:
    @pytest.mark.parametrize("group, rows_list", [
        (KLEIN, [[[0, 1], [1, 0]]]),
        (Z2_Z4, [[[1, 0], [2, 1]], [[1, 1], [0, 1]]]),
        (FinAbGroup(0, (3, 3)), [[[1, 1], [0, 1]]]),
    ])
    def test_fixed_dims_agree(self, group, rows_list):
        autos = [_hom(group, rows) for rows in rows_list]
        G = FiniteGroup.from_abelian(group)
        p = group.primes()[0]
        bar = bar_homology(G, p)
        hom, cohom = bar.fixed_dims([GrpAutomorphism.from_abhom(G, f) for f in autos], 2)
        assert fixed_h2_homology_dim(group, autos, p) == hom
        assert fixed_h2_dim_formula(group, autos, p) == cohom

    def test_dimension_agrees(self):
        G = FiniteGroup.from_abelian(Z2_Z4)
        assert bar_homology(G, 2).dims[2] == AbelianH2Model(Z2_Z4, 2).dim


class TestSplitDims:
    def test_klein_is_exponent_two(self):
        dec = h2_split_dims(KLEIN, 2)
        assert dec.regime is Regime.EXPONENT_TWO
        assert (dec.wedge_dim, dec.tor_dim, dec.ext_dim) == (1, 2, 2)
        assert (dec.cup_image_dim, dec.sq_image_dim, dec.cup_kernel_dim) == (0, 2, 0)
        assert dec.cup_injective is True

    def test_mixed_exponents(self):
        cs = cup_square_structure(Z2_Z4)
        assert cs == (1, 1, 1)
        assert h2_split_dims(Z2_Z4, 2).cup_injective is False

    def test_split_regime(self):
        dec = h2_split_dims(FinAbGroup(2, (3,)), 3)
        assert dec.regime is Regime.SPLIT
        assert (dec.wedge_dim, dec.tor_dim, dec.total) == (3, 1, 4)
        assert dec.cup_injective is None

    def test_regime_predicate(self):
        assert is_exponent_two_regime(FinAbGroup.cyclic(6), 2)
        assert not is_exponent_two_regime(FinAbGroup.cyclic(4), 2)
        assert not is_exponent_two_regime(FinAbGroup.cyclic(6), 3)


class TestFixedDims:
    def test_rejects_non_unipotent(self):
        group = FinAbGroup.cyclic(5)
        with pytest.raises(NotUnipotentError):
            fixed_h2_dim_formula(group, [AbHom.scalar(group, 2)], 5)

    def test_no_automorphisms_fixes_everything(self):
        assert fixed_h2_dim_formula(KLEIN, [], 2) == 3

    def test_wedge_fixed_dim(self):
        shear = _hom(Z2, [[1, 1], [0, 1]])
        swap = _hom(Z2, [[0, 1], [1, 0]])
        assert wedge_fixed_dim(Z2, shear, 3) == 1
        assert wedge_fixed_dim(Z2, swap, 3) == 0
        assert wedge_fixed_dim(Z2, swap, 2) == 1
        assert wedge_fixed_dim(FinAbGroup.cyclic(4), AbHom.identity(FinAbGroup.cyclic(4)), 2) == 0

    def test_h1_matrix(self):
        shear = _hom(Z2, [[1, 1], [0, 1]])
        assert h1_matrix(shear, 2).tolist() == [[1, 0], [1, 1]]
