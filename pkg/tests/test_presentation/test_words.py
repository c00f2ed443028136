"""Tests for words, presentations and the free group ring."""

import pytest

from nilbal.errors import SizeLimitError, UnknownGeneratorError
from nilbal.presentation.words import (
    MAX_POWER_LETTERS,
    FreeRingElement,
    Presentation,
    Word,
    commutator,
)

A, B = Word.gen(0), Word.gen(1)


class TestWord:
    def test_free_reduction_on_construction(self):
        assert Word(((0, 2), (0, -2))) == Word.identity()
        assert Word(((0, 1), (1, 1), (1, -1), (0, 1))) == Word.gen(0, 2)

    def test_length_counts_letters(self):
        assert len(Word(((0, 3), (1, -2)))) == 5
        assert len(Word.identity()) == 0

    def test_inverse(self):
        w = A * B ** 2
        assert w * w.inverse() == Word.identity()
        assert w.inverse() == Word(((1, -2), (0, -1)))

    def test_negative_power(self):
        assert (A * B) ** -1 == B.inverse() * A.inverse()

    def test_single_letter_power_is_not_expanded(self):
        assert (A ** (2 ** 65)).letters == ((0, 2 ** 65),)
        assert (B.inverse() ** 3).letters == ((1, -3),)

    def test_cyclic_split(self):
        outer, core = (A * B * A.inverse()).cyclic_split()
        assert (outer, core) == (A, B)
        outer, core = (A ** 2 * B * A).cyclic_split()
        assert outer * core * outer.inverse() == A ** 2 * B * A
        assert core == A ** 3 * B

    def test_conjugated_power_matches_repeated_product(self):
        w = A * B * A * B.inverse() * A ** -2
        expected = Word.identity()
        for _ in range(5):
            expected = expected * w
        assert w ** 5 == expected
        assert w ** -5 == expected.inverse()

    def test_conjugate_of_letter_power_stays_short(self):
        w = (A * B * A.inverse()) ** (10 ** 12)
        assert w.letters == ((0, 1), (1, 10 ** 12), (0, -1))

    def test_power_size_limit(self):
        with pytest.raises(SizeLimitError, match="word power"):
            (A * B) ** (MAX_POWER_LETTERS + 1)

    def test_exponent_sum(self):
        w = commutator(A, B) * A ** 3
        assert w.exponent_sum(0) == 3
        assert w.exponent_sum(1) == 0

    def test_syllables_are_unit_letters(self):
        assert list(Word(((0, 2), (1, -1))).syllables()) == [(0, 1), (0, 1), (1, -1)]

    def test_render(self):
        assert Word(((0, 1), (1, -2))).render(("x", "y")) == "x*y^-2"
        assert Word.identity().render(("x",)) == "1"


class TestPresentation:
    def test_rank_and_index(self):
        pres = Presentation(("t", "u"), (commutator(A, B),))
        assert pres.rank == 2
        assert pres.index("u") == 1

    def test_unknown_name(self):
        with pytest.raises(UnknownGeneratorError):
            Presentation(("t",)).index("u")

    def test_relator_out_of_range(self):
        with pytest.raises(UnknownGeneratorError):
            Presentation(("t",), (Word.gen(1),))

    def test_duplicate_names(self):
        with pytest.raises(ValueError, match="duplicate"):
            Presentation(("t", "t"))

    def test_name_does_not_affect_equality(self):
        assert Presentation(("a",), (A,), name="x") == Presentation(("a",), (A,), name="y")


class TestFreeRingElement:
    def test_zero_coefficients_are_dropped(self):
        assert FreeRingElement({A: 0}).is_zero()

    def test_arithmetic(self):
        one, a = FreeRingElement.one(), FreeRingElement.of(A)
        square = (one + a) * (one - a)
        assert square == one - FreeRingElement.of(A ** 2)

    def test_augmentation(self):
        assert (FreeRingElement.of(A, 3) - FreeRingElement.of(B)).augmentation() == 2

    def test_left_mul(self):
        elem = FreeRingElement.of(B, 2).left_mul(A)
        assert elem == FreeRingElement.of(A * B, 2)

    def test_render(self):
        elem = FreeRingElement.one() - FreeRingElement.of(A)
        assert elem.render(("x",)) == "1 - x"
        assert FreeRingElement.zero().render(("x",)) == "0"

    def test_hashable(self):
        assert len({FreeRingElement.of(A), FreeRingElement.of(A)}) == 1
