"""Tests for the partial resolution of G(k, f, l)."""

import pytest

from nilbal.abelian.groups import abelianize
from nilbal.errors import ParameterInvalidError
from nilbal.extension.fox_lyndon import (
    fox_lyndon_check,
    partial3_presentation,
    partial3_tower,
    validate_partial3,
)


class TestValidation:
    @pytest.mark.parametrize(
        "k, f, l, match",
        [
            (4, 1, 5, "power of 2"),
            (12, 1, 5, "power of 2"),
            (8, 3, 5, "must divide"),
            (8, 1, 3, "1 mod 4"),
            (8, 1, 9, "1 < l"),
            (8, 1, 1, "1 < l"),
        ],
    )
    def test_rejects(self, k, f, l, match):  # noqa: E741
        with pytest.raises(ParameterInvalidError, match=match):
            validate_partial3(k, f, l)

    def test_accepts(self):
        validate_partial3(8, 2, 5)
        validate_partial3(16, 16, 13)


class TestModels:
    def test_tower_matches_presentation(self):
        t = partial3_tower(8, 1, 5)
        assert abelianize(partial3_presentation(8, 1, 5)) == t.abelianization().group

    def test_tower_parameters(self):
        t = partial3_tower(16, 2, 13)
        assert t.params["m"] == 5
        assert t.names == ("z", "y", "x")
        assert t.hirsch_length == 2
        assert t.is_nilpotent()


class TestIdentities:
    def test_f_one(self):
        record = fox_lyndon_check(8, 1, 5, with_resolution=False)
        assert record.passed
        assert (record.m, record.w) == (5, 3)
        assert record.epsilon2_matrix == [[0, 0, 1], [0, 0, 0], [0, 0, 0], [0, 0, 0]]
        assert record.beta1 == 2
        assert record.kernel_dim == 3
        assert record.beta2_resolution is None

    def test_f_even(self):
        record = fox_lyndon_check(8, 2, 5, with_resolution=False)
        assert record.passed
        assert record.epsilon2_matrix == [[0] * 3 for _ in range(4)]
        assert record.beta1 == 3
        assert record.kernel_dim == 4

    def test_named_checks(self):
        record = fox_lyndon_check(8, 1, 5, with_resolution=False)
        for name in ("fox", "d1d2", "nu central", "nu squared", "syzygy family", "kernel dim"):
            assert record.checks[name]

    @pytest.mark.slow
    @pytest.mark.parametrize("k, f, l", [(8, 1, 5), (8, 2, 5), (16, 4, 13)])
    def test_resolution_agrees(self, k, f, l):  # noqa: E741
        record = fox_lyndon_check(k, f, l)
        assert record.passed
        assert record.beta2_resolution == record.beta1 + 1
