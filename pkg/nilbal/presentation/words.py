"""Free-group words, presentations and the free group ring."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, TypeVar

from nilbal.errors import SizeLimitError, UnknownGeneratorError

Letter = tuple[int, int]

# powers of multi-letter cyclic cores are written out letter by letter
MAX_POWER_LETTERS = 10**7

T = TypeVar("T")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True, order=True)
class Word:
    """A freely reduced word, stored as (generator index, nonzero exponent) letters."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def identity(cls) -> Word:
        return cls(())

    @classmethod
    def gen(cls, index: int, exp: int = 1) -> Word:
        return cls(((index, exp),))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> Word:
        """n-th power; only the cyclic core is repeated, single letters never are."""
        if n == 0 or not self.letters:
            return Word.identity()
        if len(self.letters) == 1:
            (g, e), = self.letters
            return Word.gen(g, e * n)
        outer, core = self.cyclic_split()
        if len(core.letters) == 1:
            (g, e), = core.letters
            return outer * Word.gen(g, e * n) * outer.inverse()
        size = len(core.letters) * abs(n)
        if size > MAX_POWER_LETTERS:
            raise SizeLimitError("word power", size, MAX_POWER_LETTERS)
        base = core if n > 0 else core.inverse()
        return outer * Word(base.letters * abs(n)) * outer.inverse()

    def cyclic_split(self) -> tuple[Word, Word]:
        """(u, c) with self = u c u^-1 and c cyclically reduced."""
        letters = list(self.letters)
        outer: list[Letter] = []
        while len(letters) > 1 and letters[0][0] == letters[-1][0]:
            (g, first), (_, last) = letters[0], letters[-1]
            outer.append((g, -last))
            letters = list(_reduce([(g, first + last), *letters[1:-1]]))
        return Word(tuple(outer)), Word(tuple(letters))

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def syllables(self) -> Iterator[Letter]:
        """Unit letters (g, +-1) in order."""
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def render(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return "*".join(parts)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class Presentation:
    """Generators and relators of a finitely presented group."""

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generator_names", tuple(self.generator_names))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generator_names)) != len(self.generator_names):
            raise ValueError(f"duplicate generator names in {self.generator_names}")
        n = len(self.generator_names)
        for rel in self.relators:
            for g in rel.generators():
                if not 0 <= g < n:
                    raise UnknownGeneratorError(f"#{g}")

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise UnknownGeneratorError(name) from None

    def render_word(self, word: Word) -> str:
        return word.render(self.generator_names)


class FreeRingElement:
    """Element of the integral group ring of a free group (immutable)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | None = None):
        clean = {w: c for w, c in (terms or {}).items() if c}
        self._terms: dict[Word, int] = clean
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> FreeRingElement:
        return cls()

    @classmethod
    def one(cls) -> FreeRingElement:
        return cls({Word.identity(): 1})

    @classmethod
    def of(cls, word: Word, coeff: int = 1) -> FreeRingElement:
        return cls({word: coeff})

    @property
    def terms(self) -> dict[Word, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, int]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def __add__(self, other: FreeRingElement) -> FreeRingElement:
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return FreeRingElement(out)

    def __neg__(self) -> FreeRingElement:
        return FreeRingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: FreeRingElement) -> FreeRingElement:
        return self + (-other)

    def __mul__(self, other: FreeRingElement | int) -> FreeRingElement:
        if isinstance(other, int):
            return FreeRingElement({w: c * other for w, c in self._terms.items()})
        out: dict[Word, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 * w2
                out[w] = out.get(w, 0) + c1 * c2
        return FreeRingElement(out)

    def __rmul__(self, other: int) -> FreeRingElement:
        return self * other

    def left_mul(self, word: Word) -> FreeRingElement:
        out: dict[Word, int] = {}
        for w, c in self._terms.items():
            key = word * w
            out[key] = out.get(key, 0) + c
        return FreeRingElement(out)

    def map(self, image: Callable[[Word], T], zero: T) -> T:
        """Sum of ``image(word) * coeff`` in a target ring with the given zero."""
        total: Any = zero
        for w, c in self.items():
            total = total + image(w) * c
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def render(self, names: Sequence[str]) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            body = w.render(names)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(str(c) if body == "1" else f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FreeRingElement({self._terms!r})"
