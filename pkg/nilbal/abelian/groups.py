"""Finitely generated abelian groups and their homomorphisms.

A :class:`FinAbGroup` is stored in invariant-factor form Z^r + Z/d_1 + ... + Z/d_s
with d_1 | d_2 | ... | d_s. Its standard generating system lists the r free
generators first and then one generator per invariant factor; elements are
coordinate tuples in that system, torsion coordinates reduced into [0, d_i).
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from math import gcd, prod
from typing import NamedTuple

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from nilbal.abelian.matrices import IntMatrix, determinant, smith_normal_form, snf_rows
from nilbal.errors import NotAutomorphismError
from nilbal.presentation.fox import relator_matrix
from nilbal.presentation.words import Presentation
from nilbal.utils import modp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group in invariant-factor normal form."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        factors = self.invariant_factors
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in itertools.pairwise(factors)):
            raise ValueError(f"invariant factors must form a divisibility chain, got {factors}")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_orders(cls, *orders: int) -> FinAbGroup:
        """Direct sum of cyclic groups Z/n (n = 0 for Z, n = 1 trivial), normalized."""
        exponents: dict[int, list[int]] = defaultdict(list)
        rank = 0
        for n in orders:
            n = abs(int(n))
            if n == 0:
                rank += 1
            elif n > 1:
                for p, e in factorint(n).items():
                    exponents[int(p)].append(int(e))
        return cls(rank, _invariant_factors(exponents))

    @classmethod
    def cyclic(cls, n: int) -> FinAbGroup:
        return cls.from_orders(n)

    @classmethod
    def free(cls, rank: int) -> FinAbGroup:
        return cls(rank, ())

    @classmethod
    def all_of_order(cls, n: int) -> list[FinAbGroup]:
        """Every finite abelian group of order n, up to isomorphism."""
        per_prime = []
        for p, e in sorted(factorint(n).items()):
            options = []
            for part in partitions(int(e)):
                exps = [k for k, mult in sorted(part.items()) for _ in range(mult)]
                options.append((int(p), exps))
            per_prime.append(options)
        groups = []
        for choice in itertools.product(*per_prime):
            groups.append(cls(0, _invariant_factors({p: exps for p, exps in choice})))
        return sorted(groups, key=lambda g: (len(g.invariant_factors), g.invariant_factors))

    # -- invariants ---------------------------------------------------------

    @property
    def rank(self) -> int:
        """Number of standard generators."""
        return self.free_rank + len(self.invariant_factors)

    @property
    def generator_orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def order(self) -> int | None:
        return self.torsion_order if self.is_finite else None

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def torsion(self) -> FinAbGroup:
        return FinAbGroup(0, self.invariant_factors)

    def p_rank(self, p: int) -> int:
        """dim over F_p of A/pA."""
        return self.free_rank + sum(1 for d in self.invariant_factors if d % p == 0)

    def p_torsion_rank(self, p: int) -> int:
        """dim over F_p of Ker(p.id_A)."""
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def p_indices(self, p: int) -> list[int]:
        """Generator indices that survive in A/pA (free ones and those with p | d)."""
        return [i for i, d in enumerate(self.generator_orders) if d == 0 or d % p == 0]

    def elementary_divisors(self) -> dict[int, tuple[int, ...]]:
        """Prime -> exponents (descending) of the p-primary cyclic summands."""
        out: dict[int, list[int]] = defaultdict(list)
        for d in self.invariant_factors:
            for p, e in factorint(d).items():
                out[int(p)].append(int(e))
        return {p: tuple(sorted(e, reverse=True)) for p, e in sorted(out.items())}

    def p_primary(self, p: int) -> FinAbGroup:
        exps = self.elementary_divisors().get(p, ())
        return FinAbGroup(0, tuple(sorted(p**e for e in exps)))

    def primes(self) -> list[int]:
        return sorted(self.elementary_divisors())

    def direct_sum(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup.from_orders(*self.generator_orders, *other.generator_orders)

    # -- elements -----------------------------------------------------------

    def reduce(self, vector: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            int(x) % d if d else int(x) for x, d in zip(vector, self.generator_orders)
        )

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in range(self.rank))

    def elements(self) -> Iterator[tuple[int, ...]]:
        if not self.is_finite:
            raise ValueError("cannot list the elements of an infinite group")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_index(self, vector: Sequence[int]) -> int:
        """Mixed-radix index of a torsion element, consistent with :meth:`elements`."""
        idx = 0
        for x, d in zip(self.reduce(vector), self.invariant_factors):
            idx = idx * d + x
        return idx

    def element_order(self, vector: Sequence[int]) -> int:
        v = self.reduce(vector)
        order = 1
        for x, d in zip(v, self.generator_orders):
            if d == 0:
                if x:
                    return 0
            elif x:
                order = order * (d // gcd(x, d)) // gcd(order, d // gcd(x, d))
        return order

    # -- display ------------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict[str, object]:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}


def _invariant_factors(exponents: dict[int, list[int]]) -> tuple[int, ...]:
    """Combine prime-power exponents into the ascending invariant-factor chain."""
    columns = max((len(e) for e in exponents.values()), default=0)
    factors = []
    for i in range(columns):
        d = 1
        for p, exps in exponents.items():
            ordered = sorted(exps, reverse=True)
            if i < len(ordered):
                d *= p ** ordered[i]
        factors.append(d)
    return tuple(sorted(factors))


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbHom:
    """Homomorphism of abelian groups on the standard generating systems.

    Column j of ``matrix`` is the image of source generator j, with row i
    reduced modulo the order of target generator i.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if m.rows != self.target.rank or m.cols != self.source.rank:
            raise ValueError(
                f"matrix shape {m.rows}x{m.cols} does not match "
                f"{self.target.rank}x{self.source.rank}"
            )
        t_orders = self.target.generator_orders
        rows = [
            [x % t_orders[i] if t_orders[i] else x for x in m.row(i)] for i in range(m.rows)
        ]
        for j, d in enumerate(self.source.generator_orders):
            if d == 0:
                continue
            for i, e in enumerate(t_orders):
                if (d * rows[i][j]) % e if e else d * rows[i][j]:
                    raise ValueError(
                        f"image of generator {j} (order {d}) has order not dividing {d}"
                    )
        object.__setattr__(self, "matrix", IntMatrix.from_rows(rows, cols=m.cols))

    @classmethod
    def from_columns(
        cls, source: FinAbGroup, target: FinAbGroup, columns: Sequence[Sequence[int]]
    ) -> AbHom:
        rows = [[columns[j][i] for j in range(source.rank)] for i in range(target.rank)]
        return cls(source, target, IntMatrix.from_rows(rows, cols=source.rank))

    @classmethod
    def identity(cls, group: FinAbGroup) -> AbHom:
        return cls(group, group, IntMatrix.identity(group.rank))

    @classmethod
    def scalar(cls, group: FinAbGroup, n: int) -> AbHom:
        size = group.rank
        return cls(group, group, IntMatrix.from_rows(
            [[n * int(i == j) for j in range(size)] for i in range(size)], cols=size
        ))

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def column(self, j: int) -> tuple[int, ...]:
        return self.matrix.col(j)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        m = self.matrix
        out = [sum(m[i, j] * vector[j] for j in range(m.cols)) for i in range(m.rows)]
        return self.target.reduce(out)

    def compose(self, other: AbHom) -> AbHom:
        """self after other."""
        if other.target != self.source:
            raise ValueError("cannot compose: target/source mismatch")
        return AbHom(other.source, self.target, self.matrix @ other.matrix)

    def __matmul__(self, other: AbHom) -> AbHom:
        return self.compose(other)

    def minus_identity(self) -> AbHom:
        if not self.is_endomorphism:
            raise ValueError("f - id needs an endomorphism")
        n = self.source.rank
        rows = [[self.matrix[i, j] - int(i == j) for j in range(n)] for i in range(n)]
        return AbHom(self.source, self.target, IntMatrix.from_rows(rows, cols=n))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def power(self, k: int) -> AbHom:
        if k < 0:
            raise ValueError("negative powers need an automorphism inverse")
        result = AbHom.identity(self.source)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def mod_p(self, p: int) -> np.ndarray:
        """Matrix of the induced map on A/pA (column convention, p_indices order)."""
        src = self.source.p_indices(p)
        dst = self.target.p_indices(p)
        m = self.matrix
        return np.array(
            [[m[i, j] % p for j in src] for i in dst], dtype=np.int64
        ).reshape(len(dst), len(src))

    def free_block(self) -> IntMatrix:
        r = self.source.free_rank
        return IntMatrix.from_rows(
            [[self.matrix[i, j] for j in range(r)] for i in range(self.target.free_rank)],
            cols=r,
        )

    def is_automorphism(self) -> bool:
        """Bijectivity: det of the free block is +-1 and the map on each T/pT is invertible."""
        if not self.is_endomorphism:
            return False
        A = self.source
        if A.free_rank and abs(determinant(self.free_block())) != 1:
            return False
        torsion_hom = self.torsion_part()
        for p in A.primes():
            mat = torsion_hom.mod_p(p)
            if modp.rank(mat, p) != mat.shape[0]:
                return False
        return True

    def torsion_part(self) -> AbHom:
        """Restriction to the torsion subgroup."""
        r = self.source.free_rank
        T = self.source.torsion()
        rows = [
            [self.matrix[i, j] for j in range(r, self.source.rank)]
            for i in range(self.target.free_rank, self.target.rank)
        ]
        return AbHom(T, self.target.torsion(), IntMatrix.from_rows(rows, cols=T.rank))

    def require_automorphism(self) -> None:
        if not self.is_automorphism():
            raise NotAutomorphismError(
                f"{self.matrix.to_rows()} is not an automorphism of {self.source}"
            )

    def permutation(self) -> list[int]:
        """Action on the elements of a finite source, as an index permutation."""
        A = self.source
        return [A.element_index(self.apply(v)) for v in A.elements()]

    def inverse(self) -> AbHom:
        """Inverse of an automorphism of a finite group."""
        self.require_automorphism()
        A = self.source
        if not A.is_finite:
            raise ValueError("inverse is only implemented for finite groups")
        perm = self.permutation()
        elements = list(A.elements())
        inv = [0] * len(perm)
        for i, j in enumerate(perm):
            inv[j] = i
        columns = [elements[inv[A.element_index(A.basis_vector(k))]] for k in range(A.rank)]
        return AbHom.from_columns(A, A, columns)

    def key(self) -> tuple[int, ...]:
        return self.matrix.entries


# ---------------------------------------------------------------------------
# Presentations and functors
# ---------------------------------------------------------------------------


def abelianize(p: Presentation) -> FinAbGroup:
    """G^ab as the cokernel of the relator exponent-sum matrix."""
    n = p.rank
    if not p.relators:
        return FinAbGroup.free(n)
    mat = IntMatrix.from_rows(relator_matrix(p), cols=n)
    return cokernel(mat)


def cokernel(mat: IntMatrix) -> FinAbGroup:
    """Z^cols modulo the row lattice of ``mat``."""
    _, d, _ = smith_normal_form(mat)
    diag = [x for x in d.diagonal() if x]
    free = mat.cols - len(diag)
    return FinAbGroup(free, tuple(x for x in diag if x > 1))


class FunctorDims(NamedTuple):
    tensor: int
    tor: int
    hom: int
    ext: int


def functor_dims(A: FinAbGroup, p: int) -> FunctorDims:
    """Dimensions of A/pA, Ker(p.id_A), Hom(A, F_p) and Ext(A, F_p)."""
    t = A.p_torsion_rank(p)
    return FunctorDims(tensor=A.free_rank + t, tor=t, hom=A.free_rank + t, ext=t)


@dataclass(frozen=True)
class Abelianization:
    """The quotient map Z^n -> Z^n / (relation lattice), in standard coordinates.

    ``to_group[g]`` is the image of free generator g; ``from_group[k]`` is a
    lift of standard generator k back to Z^n.
    """

    group: FinAbGroup
    to_group: tuple[tuple[int, ...], ...]
    from_group: tuple[tuple[int, ...], ...]

    @classmethod
    def from_relations(cls, rows: Sequence[Sequence[int]], n: int) -> Abelianization:
        if not rows:
            eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            return cls(FinAbGroup.free(n), eye, eye)
        _, d, v, v_inv = snf_rows(IntMatrix.from_rows(rows, cols=n))
        diag = [d[i][i] if i < len(rows) else 0 for i in range(n)]
        free_cols = [j for j in range(n) if diag[j] == 0]
        tors_cols = [j for j in range(n) if diag[j] > 1]
        group = FinAbGroup(len(free_cols), tuple(diag[j] for j in tors_cols))
        to_group = tuple(
            tuple([v[g][j] for j in free_cols] + [v[g][j] % diag[j] for j in tors_cols])
            for g in range(n)
        )
        from_group = tuple(tuple(v_inv[j]) for j in free_cols + tors_cols)
        return cls(group, to_group, from_group)

    @property
    def rank(self) -> int:
        return len(self.to_group)

    def coordinates(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Standard coordinates of the class of an exponent vector."""
        out = [0] * self.group.rank
        for g, x in enumerate(vector):
            if x:
                for k, c in enumerate(self.to_group[g]):
                    out[k] += x * c
        return self.group.reduce(out)

    def induced(self, images: Sequence[Sequence[int]]) -> AbHom:
        """Induced endomorphism from the exponent vectors of the generator images."""
        columns = []
        for lift in self.from_group:
            total = [0] * self.rank
            for g, c in enumerate(lift):
                if c:
                    total = [t + c * x for t, x in zip(total, images[g])]
            columns.append(self.coordinates(total))
        return AbHom.from_columns(self.group, self.group, columns)


def abelianization(p: Presentation) -> Abelianization:
    """G -> G^ab for a presented group, with coordinates of every generator."""
    return Abelianization.from_relations(relator_matrix(p), p.rank)


def homology_group(
    incoming: Sequence[Sequence[int]], outgoing: Sequence[Sequence[int]], n: int
) -> FinAbGroup:
    """Homology at Z^n of Z^a -> Z^n -> Z^b, maps acting on row vectors.

    ``incoming`` has one row per basis element of Z^a, ``outgoing`` has n rows.
    """
    width = len(outgoing[0]) if outgoing else 0
    if width == 0 or not any(any(r) for r in outgoing):
        kernel_coords = [list(r) for r in incoming]
        return cokernel(IntMatrix.from_rows(kernel_coords, cols=n))
    out_t = IntMatrix.from_rows(outgoing, cols=width).transpose()
    _, d, _, v_inv = snf_rows(out_t)
    r = sum(1 for i in range(min(out_t.rows, out_t.cols)) if d[i][i])
    # kernel basis: columns r.. of V; coordinates through rows r.. of V^-1
    coords = [
        [sum(row[k] * v_inv[j][k] for k in range(n)) for j in range(r, n)] for row in incoming
    ]
    return cokernel(IntMatrix.from_rows(coords, cols=n - r))
