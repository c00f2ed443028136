"""Iterated extensions (...((C x| Z) x| Z) ... x| Z) with normal-form collection.

Generator 0 is the base (cyclic of order k; k = 1 is the trivial group) and
generator j >= 1 is an infinite-order generator acting on the subgroup G_j
generated by g_0 .. g_{j-1} by the automorphism psi_j(x) = g_j x g_j^-1. A
Z base (k = 0) is stored as a trivial base plus one extra level.

Elements are monomials: tuples e of exponents, one per generator, read as the
normal-form word g_{n-1}^e_{n-1} ... g_1^e_1 g_0^e_0 with e_0 reduced mod k.
The conjugation image of g_i under psi_j must lie in G_{i+1} with leading
exponent +-1 (a unit mod k on the base); this makes psi_j^-1 computable.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping, Sequence
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from nilbal.abelian.automorphisms import is_unipotent
from nilbal.abelian.groups import Abelianization, FinAbGroup
from nilbal.errors import TowerValidationError
from nilbal.presentation.parser import parse_expr, parse_word
from nilbal.presentation.words import Presentation, Word
from nilbal.utils.constants import TOWER_CACHE_SIZE

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

TRIVIAL_BASE_NAME = "_1"


# ---------------------------------------------------------------------------
# Input format
# ---------------------------------------------------------------------------


class BaseSpec(BaseModel):
    """Base of a tower: a cyclic group of the given order (0 for Z, 1 for trivial)."""

    order: int | str = 1
    name: str = "z"


class LevelSpec(BaseModel):
    """One infinite level: its generator name and the images of earlier generators."""

    name: str
    conj: dict[str, str] = Field(default_factory=dict)


class TowerSpec(BaseModel):
    """A ``.tower`` document.

    ``params`` are integer defaults overridable from the command line and
    ``derived`` are expressions evaluated from them, in order.
    """

    name: str | None = None
    params: dict[str, int] = Field(default_factory=dict)
    derived: dict[str, str] = Field(default_factory=dict)
    base: BaseSpec = Field(default_factory=BaseSpec)
    levels: list[LevelSpec] = Field(default_factory=list)

    @field_validator("levels")
    @classmethod
    def _unique_names(cls, levels: list[LevelSpec]) -> list[LevelSpec]:
        names = [lv.name for lv in levels]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate level names in {names}")
        return levels

    @model_validator(mode="after")
    def _base_name_free(self) -> TowerSpec:
        if any(lv.name == self.base.name for lv in self.levels):
            raise ValueError(f"level name {self.base.name!r} clashes with the base")
        return self


def resolve_params(spec: TowerSpec, overrides: Mapping[str, int] | None = None) -> dict[str, int]:
    values = dict(spec.params)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = int(value)
    for key, expr in spec.derived.items():
        values[key] = parse_expr(expr, values)
    return values


# ---------------------------------------------------------------------------
# Towers
# ---------------------------------------------------------------------------


class PcTower:
    """A validated tower with collection in normal form."""

    def __init__(
        self,
        names: Sequence[str],
        k: int,
        conj: Sequence[Sequence[Monomial]],
        name: str = "",
        params: Mapping[str, int] | None = None,
    ):
        if k < 1:
            raise TowerValidationError(
                f"base order must be >= 1, got {k} (a Z base is built by build_tower)"
            )
        self.names = tuple(names)
        self.k = k
        self.name = name
        self.params = dict(params or {})
        n = len(self.names)
        self.size = n
        self._conj = [[self._pad(m) for m in images] for images in conj]
        self._conj_inv: list[list[Monomial]] = [[] for _ in range(n)]
        self._init_caches()
        self._validate()
        logger.debug("Built tower %s on generators %s (k = %d)", name or "tower", self.names, k)

    def _init_caches(self) -> None:
        self._mul_cached = lru_cache(maxsize=TOWER_CACHE_SIZE)(self._mul_top)
        self._act_cached = lru_cache(maxsize=TOWER_CACHE_SIZE)(self._act)

    def cache_sizes(self) -> dict[str, int]:
        return {
            "mul": self._mul_cached.cache_info().currsize,
            "act": self._act_cached.cache_info().currsize,
        }

    # the memo wrappers hold bound methods; workers rebuild them after unpickling
    def __getstate__(self) -> dict[str, Any]:
        state = self.__dict__.copy()
        del state["_mul_cached"], state["_act_cached"]
        return state

    def __setstate__(self, state: dict[str, Any]) -> None:
        self.__dict__.update(state)
        self._init_caches()

    def _pad(self, m: Sequence[int]) -> Monomial:
        m = tuple(int(x) for x in m) + (0,) * (len(self.names) - len(m))
        return self._normalize_base(m)

    def _normalize_base(self, m: Monomial) -> Monomial:
        if self.k == 1:
            return (0,) + m[1:]
        return (m[0] % self.k,) + m[1:]

    # -- structure ----------------------------------------------------------

    @property
    def levels(self) -> int:
        """Number of infinite generators."""
        return self.size - 1

    @property
    def hirsch_length(self) -> int:
        return self.levels

    @property
    def has_trivial_base(self) -> bool:
        return self.k == 1

    @property
    def order(self) -> int | None:
        return self.k if self.levels == 0 else None

    def identity(self) -> Monomial:
        return (0,) * self.size

    def generator(self, j: int, exp: int = 1) -> Monomial:
        m = [0] * self.size
        m[j] = exp
        return self._normalize_base(tuple(m))

    def conj_image(self, j: int, i: int) -> Monomial:
        """psi_j(g_i) for i < j."""
        return self._conj[j][i]

    def conj_inverse_image(self, j: int, i: int) -> Monomial:
        return self._conj_inv[j][i]

    @staticmethod
    def top(m: Monomial) -> int:
        """1 + index of the highest nonzero exponent (0 for the identity)."""
        for j in range(len(m) - 1, -1, -1):
            if m[j]:
                return j + 1
        return 0

    # -- arithmetic ---------------------------------------------------------

    def mul(self, x: Monomial, y: Monomial) -> Monomial:
        return self._mul_cached(x, y)

    def _mul_top(self, x: Monomial, y: Monomial) -> Monomial:
        return self._mul(x, y, max(self.top(x), self.top(y)))

    def _mul(self, x: Monomial, y: Monomial, j: int) -> Monomial:
        if j == 0:
            return self.identity()
        if j == 1:
            return self._normalize_base((x[0] + y[0],) + (0,) * (self.size - 1))
        a, b = x[j - 1], y[j - 1]
        x_low = x[:j - 1] + (0,) * (self.size - j + 1)
        y_low = y[:j - 1] + (0,) * (self.size - j + 1)
        # g^a x' g^b y' = g^(a+b) psi^-b(x') y'
        w = self.act(j - 1, -b, x_low) if b else x_low
        res = list(self.mul(w, y_low))
        res[j - 1] = a + b
        return tuple(res)

    def inverse(self, x: Monomial) -> Monomial:
        j = self.top(x)
        if j == 0:
            return x
        if j == 1:
            return self._normalize_base((-x[0],) + x[1:])
        a = x[j - 1]
        x_low = x[:j - 1] + (0,) * (self.size - j + 1)
        # (g^a x')^-1 = g^-a psi^a(x'^-1)
        res = list(self.act(j - 1, a, self.inverse(x_low)))
        res[j - 1] = -a
        return tuple(res)

    def power(self, x: Monomial, e: int) -> Monomial:
        if e < 0:
            x, e = self.inverse(x), -e
        result = self.identity()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def act(self, j: int, c: int, x: Monomial) -> Monomial:
        """psi_j^c(x) for x in G_j (j >= 1)."""
        if c == 0 or self.top(x) == 0:
            return x
        return self._act_cached(j, c, x)

    def _act(self, j: int, c: int, x: Monomial) -> Monomial:
        step = 1 if c > 0 else -1
        images = self._conj[j] if step > 0 else self._conj_inv[j]
        y = x
        for _ in range(abs(c)):
            y = self._apply(images, y, j)
        return y

    def _apply(self, images: Sequence[Monomial], x: Monomial, j: int) -> Monomial:
        result = self.identity()
        for i in range(j - 1, -1, -1):
            if x[i]:
                result = self.mul(result, self.power(images[i], x[i]))
        return result

    def collect(self, word: Word) -> Monomial:
        """Normal form of a word over the tower generators."""
        result = self.identity()
        for g, e in word:
            result = self.mul(result, self.generator(g, e))
        return result

    def monomial_word(self, m: Monomial) -> Word:
        return Word(tuple((j, m[j]) for j in range(self.size - 1, -1, -1) if m[j]))

    def render(self, m: Monomial) -> str:
        return self.monomial_word(m).render(self.names)

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        n = self.size
        if len(self._conj) != n:
            raise TowerValidationError("one conjugation list per generator is required")
        if self._conj[0]:
            raise TowerValidationError("the base generator carries no conjugation data")
        for j in range(1, n):
            images = self._conj[j]
            if len(images) != j:
                raise TowerValidationError(
                    f"level {self.names[j]} needs images of {j} earlier generators"
                )
            for i, m in enumerate(images):
                self._check_leading(j, i, m)
            self._conj_inv[j] = self._inverse_images(j)
            self._check_relations(j)

    def _check_leading(self, j: int, i: int, m: Monomial) -> None:
        label = f"{self.names[j]}: image of {self.names[i]}"
        if any(m[i + 1:]):
            raise TowerValidationError(f"{label} leaves <{', '.join(self.names[:i + 1])}>")
        if i == 0:
            if self.k > 1 and gcd(m[0], self.k) != 1:
                raise TowerValidationError(f"{label} is not a generator of the base")
        elif m[i] not in (1, -1):
            raise TowerValidationError(f"{label} has leading exponent {m[i]}, expected +-1")

    def _inverse_images(self, j: int) -> list[Monomial]:
        out: list[Monomial] = []
        for i in range(j):
            m = self._conj[j][i]
            if i == 0:
                s = pow(m[0], -1, self.k) if self.k > 1 else 0
                out.append(self.generator(0, s))
                continue
            s = m[i]
            low = m[:i] + (0,) * (self.size - i)
            # psi(g_i) = g_i^s h  =>  psi^-1(g_i) = (g_i psi^-1(h)^-1)^s
            h_pre = self._apply(out, low, i)
            out.append(self.power(self.mul(self.generator(i), self.inverse(h_pre)), s))
        return out

    def _check_relations(self, j: int) -> None:
        psi = self._conj[j]
        for i in range(1, j):
            for i2 in range(i):
                lhs = self.mul(self.mul(psi[i], psi[i2]), self.inverse(psi[i]))
                rhs = self._apply(psi, self._conj[i][i2], j)
                if lhs != rhs:
                    raise TowerValidationError(
                        f"{self.names[j]} does not preserve "
                        f"{self.names[i]} {self.names[i2]} {self.names[i]}^-1 = "
                        f"{self.render(self._conj[i][i2])}"
                    )
        for i in range(j):
            back = self._apply(psi, self._conj_inv[j][i], j)
            if back != self.generator(i):
                raise TowerValidationError(
                    f"{self.names[j]} is not invertible on {self.names[i]}"
                )

    # -- derived data -------------------------------------------------------

    def subgroup_relations(self, j: int) -> list[list[int]]:
        """Exponent-sum rows of the defining relations of G_j."""
        rows: list[list[int]] = []
        rows.append([self.k] + [0] * (j - 1))
        for i in range(1, j):
            for i2 in range(i):
                img = self._conj[i][i2]
                row = [-img[t] for t in range(j)]
                row[i2] += 1
                rows.append(row)
        return rows

    def abelianization(self, j: int | None = None) -> Abelianization:
        """G_j^ab (the whole group by default)."""
        j = self.size if j is None else j
        return Abelianization.from_relations(self.subgroup_relations(j), j)

    def is_nilpotent(self) -> bool:
        """Nilpotent iff every psi_j is unipotent on G_j^ab."""
        for j in range(1, self.size):
            ab = self.abelianization(j)
            f = ab.induced([list(self._conj[j][i][:j]) for i in range(j)])
            if not is_unipotent(f):
                return False
        return True

    def torsion_subgroup(self) -> FinAbGroup:
        """Torsion of a nilpotent tower: the base."""
        return FinAbGroup.cyclic(self.k)

    def subtower(self, j: int) -> PcTower:
        """The tower of G_j."""
        if j < 1:
            raise ValueError("a subtower keeps at least the base")
        names = list(self.names[:j])
        conj = [[m[:j] for m in self._conj[i]] for i in range(j)]
        return PcTower(names, self.k, conj, f"{self.name}[:{j}]", self.params)

    def to_presentation(self) -> Presentation:
        """Generators and the relators g_j g_i g_j^-1 = psi_j(g_i) (and g_0^k)."""
        keep_base = self.k != 1
        offset = 0 if keep_base else 1
        names = self.names[offset:]

        def word(m: Monomial) -> Word:
            return Word(tuple(
                (t - offset, m[t]) for t in range(self.size - 1, offset - 1, -1) if m[t]
            ))

        relators: list[Word] = []
        if keep_base:
            relators.append(Word.gen(0, self.k))
        for j in range(1, self.size):
            for i in range(offset, j):
                gj, gi = Word.gen(j - offset), Word.gen(i - offset)
                relators.append(gj * gi * gj.inverse() * word(self._conj[j][i]).inverse())
        return Presentation(names, tuple(relators), name=self.name or None)

    def __repr__(self) -> str:
        return f"PcTower({self.name or '?'}: k={self.k}, generators={self.names})"


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def build_tower(spec: TowerSpec, overrides: Mapping[str, int] | None = None) -> PcTower:
    """Validate a tower document, collecting conjugation words level by level."""
    params = resolve_params(spec, overrides)
    order = spec.base.order
    k = parse_expr(order, params) if isinstance(order, str) else int(order)
    levels = list(spec.levels)
    if k == 0:
        names = [TRIVIAL_BASE_NAME, spec.base.name] + [lv.name for lv in levels]
        levels = [LevelSpec(name=spec.base.name)] + levels
        k = 1
    else:
        names = [spec.base.name] + [lv.name for lv in levels]
    conj: list[list[Monomial]] = [[]]
    for j, level in enumerate(levels, start=1):
        earlier = tuple(names[:j])
        unknown = set(level.conj) - set(earlier)
        if unknown:
            raise TowerValidationError(
                f"level {level.name} conjugates unknown or later generators {sorted(unknown)}"
            )
        partial = PcTower(earlier, k, conj, spec.name or "", params)
        conj.append([
            partial.collect(parse_word(level.conj.get(g, g), earlier, params)) for g in earlier
        ])
    return PcTower(names, k, conj, spec.name or "", params)


def parse_tower(text: str, overrides: Mapping[str, int] | None = None) -> PcTower:
    spec = TowerSpec.model_validate(json.loads(text))
    return build_tower(spec, overrides)


def load_tower(path: str | Path, overrides: Mapping[str, int] | None = None) -> PcTower:
    text = Path(path).read_text(encoding="utf-8")
    spec = TowerSpec.model_validate(json.loads(text))
    if spec.name is None:
        spec = spec.model_copy(update={"name": Path(path).stem})
    return build_tower(spec, overrides)
