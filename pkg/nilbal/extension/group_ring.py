"""The integral group ring of a tower, on normal-form monomials."""

from __future__ import annotations

from collections.abc import Iterator, Mapping

from nilbal.extension.tower import Monomial, PcTower


class GroupRingElem:
    """Finitely supported map monomial -> integer (immutable)."""

    __slots__ = ("tower", "_terms")

    def __init__(self, tower: PcTower, terms: Mapping[Monomial, int] | None = None):
        self.tower = tower
        self._terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, tower: PcTower) -> GroupRingElem:
        return cls(tower)

    @classmethod
    def one(cls, tower: PcTower) -> GroupRingElem:
        return cls(tower, {tower.identity(): 1})

    @classmethod
    def of(cls, tower: PcTower, m: Monomial, coeff: int = 1) -> GroupRingElem:
        return cls(tower, {m: coeff})

    @classmethod
    def generator(cls, tower: PcTower, j: int, exp: int = 1) -> GroupRingElem:
        return cls.of(tower, tower.generator(j, exp))

    @classmethod
    def norm(cls, tower: PcTower) -> GroupRingElem:
        """nu = 1 + z + ... + z^(k-1) on the base."""
        return cls(tower, {tower.generator(0, i): 1 for i in range(tower.k)})

    @classmethod
    def geometric(cls, tower: PcTower, j: int, start: int, stop: int) -> GroupRingElem:
        """sum of g_j^i for start <= i < stop"""
        out: dict[Monomial, int] = {}
        for i in range(start, stop):
            m = tower.generator(j, i)
            out[m] = out.get(m, 0) + 1
        return cls(tower, out)

    # -- access -------------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def top(self) -> int:
        return max((self.tower.top(m) for m in self._terms), default=0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: GroupRingElem) -> GroupRingElem:
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GroupRingElem(self.tower, out)

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem(self.tower, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: GroupRingElem) -> GroupRingElem:
        return self + (-other)

    def __mul__(self, other: GroupRingElem | int) -> GroupRingElem:
        if isinstance(other, int):
            return GroupRingElem(self.tower, {m: c * other for m, c in self._terms.items()})
        mul = self.tower.mul
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return GroupRingElem(self.tower, out)

    def __rmul__(self, other: int) -> GroupRingElem:
        return self * other

    def act(self, j: int, c: int = 1) -> GroupRingElem:
        """psi_j^c applied termwise (elements of G_j only)."""
        out: dict[Monomial, int] = {}
        for m, coeff in self._terms.items():
            key = self.tower.act(j, c, m)
            out[key] = out.get(key, 0) + coeff
        return GroupRingElem(self.tower, out)

    def split(self, level: int) -> dict[Monomial, GroupRingElem]:
        """Group terms by their exponents at indices >= level.

        Returns prefix -> element of Z G_level; the original is the sum of
        prefix * part, and left multiplication by a prefix is concatenation.
        """
        parts: dict[Monomial, dict[Monomial, int]] = {}
        n = self.tower.size
        for m, c in self._terms.items():
            prefix = (0,) * level + m[level:]
            low = m[:level] + (0,) * (n - level)
            parts.setdefault(prefix, {})[low] = c
        return {p: GroupRingElem(self.tower, t) for p, t in parts.items()}

    def with_prefix(self, prefix: Monomial, level: int) -> GroupRingElem:
        """prefix * self for self in Z G_level and prefix supported at indices >= level."""
        return GroupRingElem(
            self.tower, {m[:level] + prefix[level:]: c for m, c in self._terms.items()}
        )

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            body = self.tower.render(m)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(str(c) if body == "1" else f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"GroupRingElem({self.render()})"


Vector = list[GroupRingElem]
Matrix = list[list[GroupRingElem]]


def zero_vector(tower: PcTower, n: int) -> Vector:
    return [GroupRingElem.zero(tower) for _ in range(n)]


def vec_add(u: Vector, v: Vector) -> Vector:
    return [a + b for a, b in zip(u, v, strict=True)]


def vec_sub(u: Vector, v: Vector) -> Vector:
    return [a - b for a, b in zip(u, v, strict=True)]


def vec_scale(c: GroupRingElem, v: Vector) -> Vector:
    """Left multiplication c * v."""
    return [c * a for a in v]


def vec_mat(v: Vector, mat: Matrix, ncols: int, tower: PcTower) -> Vector:
    """Row vector times matrix."""
    out = zero_vector(tower, ncols)
    for i, a in enumerate(v):
        if a.is_zero():
            continue
        for j in range(ncols):
            entry = mat[i][j]
            if not entry.is_zero():
                out[j] = out[j] + a * entry
    return out


def mat_mul(a: Matrix, b: Matrix, ncols: int, tower: PcTower) -> Matrix:
    return [vec_mat(row, b, ncols, tower) for row in a]


def augment(mat: Matrix) -> list[list[int]]:
    return [[e.augmentation() for e in row] for row in mat]
