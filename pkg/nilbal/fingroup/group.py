"""Finite groups given by multiplication tables."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from nilbal.abelian.automorphisms import permutation_array
from nilbal.abelian.groups import AbHom, FinAbGroup
from nilbal.errors import NotAutomorphismError
from nilbal.fingroup.todd_coxeter import enumerate_cosets
from nilbal.presentation.words import Presentation, Word

logger = logging.getLogger(__name__)

FULL_ASSOCIATIVITY_CHECK = 64
SAMPLED_TRIPLES = 1000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group as a Cayley table on element indices 0..order-1.

    Index 0 is the identity. ``generators`` lists the element index of each
    presentation generator (or any generating set for tables built directly).
    """

    mult: np.ndarray
    generators: tuple[int, ...] = ()
    name: str = ""
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        mult = np.asarray(self.mult, dtype=np.int32)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        self._validate()
        inv = np.argmax(mult == 0, axis=1).astype(np.int32)
        object.__setattr__(self, "inverse", inv)

    def _validate(self) -> None:
        m = self.mult
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"multiplication table must be square and non-empty, got {m.shape}")
        n = m.shape[0]
        ids = np.arange(n)
        if not (np.array_equal(m[0], ids) and np.array_equal(m[:, 0], ids)):
            raise ValueError("identity must be element 0")
        if not (np.all(np.sort(m, axis=1) == ids) and np.all(np.sort(m, axis=0) == ids[:, None])):
            raise ValueError("rows and columns of the table must be permutations")
        if n <= FULL_ASSOCIATIVITY_CHECK:
            left = m[m[:, :, None], ids[None, None, :]]
            right = m[ids[:, None, None], m[None, :, :]]
            ok = np.array_equal(left, right)
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
            ok = np.array_equal(m[m[a, b], c], m[a, m[b, c]])
        if not ok:
            raise ValueError("multiplication table is not associative")
        if any(not 0 <= g < n for g in self.generators):
            raise ValueError("generator index out of range")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_right_actions(
        cls, perms: np.ndarray, name: str = ""
    ) -> FiniteGroup:
        """Regular representation from the right actions of the generators on
        elements indexed so that element b is the image of 0 under b."""
        rank, n = perms.shape
        dirs = [perms[g] for g in range(rank)] + [np.argsort(perms[g]) for g in range(rank)]
        columns: list[np.ndarray | None] = [None] * n
        columns[0] = np.arange(n, dtype=np.int32)
        queue = [0]
        head = 0
        while head < len(queue):
            b = queue[head]
            head += 1
            col = columns[b]
            assert col is not None
            for d in dirs:
                x = int(d[b])
                if columns[x] is None:
                    columns[x] = d[col]
                    queue.append(x)
        if any(c is None for c in columns):
            raise ValueError("generators do not act transitively")
        mult = np.stack(columns, axis=1).astype(np.int32)
        return cls(mult, tuple(int(perms[g, 0]) for g in range(rank)), name)

    @classmethod
    def from_abelian(cls, A: FinAbGroup, name: str = "") -> FiniteGroup:
        """Cayley table of a finite abelian group, elements in mixed-radix order."""
        if not A.is_finite:
            raise ValueError(f"{A} is infinite")
        orders = np.array(A.invariant_factors, dtype=np.int64)
        if A.rank == 0:
            return cls(np.zeros((1, 1), dtype=np.int32), (), name or str(A))
        elems = np.array(list(A.elements()), dtype=np.int64)
        sums = np.mod(elems[:, None, :] + elems[None, :, :], orders)
        idx = np.zeros(sums.shape[:2], dtype=np.int64)
        for col, d in enumerate(A.invariant_factors):
            idx = idx * d + sums[:, :, col]
        gens = tuple(A.element_index(A.basis_vector(i)) for i in range(A.rank))
        return cls(idx.astype(np.int32), gens, name or str(A))

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        return cls.from_abelian(FinAbGroup.cyclic(n), f"Z/{n}")

    # -- elements -----------------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.mult.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 0
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def evaluate(self, word: Word) -> int:
        """Element index of a word in ``generators``."""
        x = 0
        for g, e in word:
            x = self.mul(x, self.power(self.generators[g], e))
        return x

    def element_orders(self) -> np.ndarray:
        n = self.order
        ids = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        current = ids.copy()
        for k in range(1, n + 1):
            current = self.mult[current, ids]
            hit = (current == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
        return orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    # -- subgroups ----------------------------------------------------------

    def closure(self, elements: Sequence[int] | np.ndarray) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``elements``."""
        gens = sorted({int(g) for g in elements if int(g) != 0})
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        queue = [0]
        head = 0
        while head < len(queue):
            h = queue[head]
            head += 1
            for g in gens:
                x = int(self.mult[h, g])
                if not member[x]:
                    member[x] = True
                    queue.append(x)
        return np.flatnonzero(member)

    def commutator_subgroup(
        self, H: np.ndarray | None = None, K: np.ndarray | None = None
    ) -> np.ndarray:
        """[H, K], by default the derived subgroup G'."""
        all_elems = np.arange(self.order)
        H = all_elems if H is None else np.asarray(H)
        K = all_elems if K is None else np.asarray(K)
        hk = self.mult[np.ix_(H, K)]
        hk_inv = self.mult[np.ix_(self.inverse[H], self.inverse[K])]
        comms = np.unique(self.mult[hk, hk_inv])
        return self.closure(comms)

    def lower_central_series(self) -> list[np.ndarray]:
        """gamma_1 = G, gamma_{i+1} = [G, gamma_i], until the series stabilises."""
        series = [np.arange(self.order)]
        while series[-1].size > 1:
            nxt = self.commutator_subgroup(K=series[-1])
            if nxt.size == series[-1].size:
                break
            series.append(nxt)
        return series

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].size == 1

    def nilpotency_class(self) -> int | None:
        """Least c with gamma_{c+1} = 1, or None when G is not nilpotent."""
        series = self.lower_central_series()
        if series[-1].size != 1:
            return None
        return len(series) - 1

    def centre(self) -> np.ndarray:
        return np.flatnonzero(np.all(self.mult == self.mult.T, axis=1))

    def abelianization(self) -> FinAbGroup:
        """G/G' read off from element-order statistics of the quotient."""
        derived = self.commutator_subgroup()
        reps = self.mult[:, derived].min(axis=1)
        quotient = np.unique(reps)
        in_derived = np.zeros(self.order, dtype=bool)
        in_derived[derived] = True
        orders = []
        for q in quotient:
            k, x = 1, int(q)
            while not in_derived[x]:
                x = self.mul(x, int(q))
                k += 1
            orders.append(k)
        return _abelian_from_order_statistics(orders)

    def sylow_subgroup(self, p: int) -> np.ndarray:
        """A Sylow p-subgroup, grown greedily from p-elements."""
        target = p ** factorint(self.order).get(p, 0)
        orders = self.element_orders()
        current = np.array([0])
        for g in np.flatnonzero(orders > 1):
            if current.size == target:
                break
            if not _is_power_of(int(orders[g]), p):
                continue
            if np.isin(g, current):
                continue
            candidate = self.closure(np.append(current, g))
            if _is_power_of(candidate.size, p):
                current = candidate
        return current

    def direct_product_of_sylows(self) -> dict[int, np.ndarray] | None:
        """Sylow subgroups when G is their internal direct product, else None."""
        primes = sorted(factorint(self.order)) if self.order > 1 else []
        sylows = {int(p): self.sylow_subgroup(int(p)) for p in primes}
        for p, P in sylows.items():
            conj = self.mult[self.mult[:, P], self.inverse[:, None]]
            if not np.all(np.isin(conj, P)):
                return None
        keys = list(sylows)
        for i, p in enumerate(keys):
            for q in keys[i + 1:]:
                P, Q = sylows[p], sylows[q]
                if not np.array_equal(self.mult[np.ix_(P, Q)], self.mult[np.ix_(Q, P)].T):
                    return None
        return sylows

    def subgroup(self, elements: np.ndarray, name: str = "") -> FiniteGroup:
        """The subgroup on ``elements`` as a FiniteGroup, re-indexed with the identity first."""
        elems = np.asarray(sorted(int(e) for e in elements))
        if elems.size == 0 or elems[0] != 0:
            raise ValueError("subgroup must contain the identity")
        position = np.full(self.order, -1, dtype=np.int64)
        position[elems] = np.arange(elems.size)
        table = position[self.mult[np.ix_(elems, elems)]]
        if np.any(table < 0):
            raise ValueError("elements are not closed under multiplication")
        gens: list[int] = []
        span = np.array([0])
        for e in elems[1:]:
            if not np.isin(e, span):
                gens.append(int(e))
                span = self.closure(gens)
        return FiniteGroup(table, tuple(int(position[g]) for g in gens), name)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _abelian_from_order_statistics(orders: Sequence[int]) -> FinAbGroup:
    """Invariants of a finite abelian group from the multiset of its element orders.

    For each prime p the number of elements of order dividing p^j is p^s_j
    with s_j = sum_i min(j, e_i), which determines the exponents e_i.
    """
    n = len(orders)
    if n == 1:
        return FinAbGroup()
    cyclic_factors: list[int] = []
    for p, e in factorint(n).items():
        # p-power element orders, by exponent
        counts: Counter[int] = Counter()
        for o in orders:
            v = factorint(o).get(p, 0)
            if p**v == o:
                counts[v] += 1
        s_prev = 0
        at_least = []
        for j in range(1, e + 1):
            s_j = _log(sum(c for v, c in counts.items() if v <= j), p)
            at_least.append(s_j - s_prev)
            s_prev = s_j
        # at_least[j-1] = number of cyclic summands of exponent >= j
        for j in range(len(at_least)):
            exact = at_least[j] - (at_least[j + 1] if j + 1 < len(at_least) else 0)
            cyclic_factors.extend([int(p) ** (j + 1)] * exact)
    return FinAbGroup.from_orders(*cyclic_factors)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def coset_enumerate(p: Presentation, max_cosets: int = 10**6) -> FiniteGroup:
    """Regular representation of a finite presented group by coset enumeration."""
    perms = enumerate_cosets(p, max_cosets)
    G = FiniteGroup.from_right_actions(perms, p.name)
    logger.info("Coset enumeration of %s: order %d", p.name or "presentation", G.order)
    return G


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GrpAutomorphism:
    """An automorphism of a FiniteGroup as a permutation of element indices."""

    group: FiniteGroup
    image: np.ndarray

    def __post_init__(self) -> None:
        img = np.asarray(self.image, dtype=np.int32)
        object.__setattr__(self, "image", img)
        G = self.group
        if img.shape != (G.order,) or not np.array_equal(np.sort(img), np.arange(G.order)):
            raise NotAutomorphismError("image is not a permutation of the elements")
        if not np.array_equal(img[G.mult], G.mult[img[:, None], img[None, :]]):
            raise NotAutomorphismError("image is not multiplicative")

    @classmethod
    def identity(cls, G: FiniteGroup) -> GrpAutomorphism:
        return cls(G, np.arange(G.order))

    @classmethod
    def from_abhom(cls, G: FiniteGroup, f: AbHom) -> GrpAutomorphism:
        """The automorphism of ``FiniteGroup.from_abelian(A)`` induced by f."""
        return cls(G, permutation_array(f))

    @classmethod
    def inner(cls, G: FiniteGroup, g: int) -> GrpAutomorphism:
        """x -> g x g^-1"""
        return cls(G, G.mult[G.mult[g, :], G.inverse[g]])

    @classmethod
    def from_generator_images(cls, G: FiniteGroup, images: Sequence[int]) -> GrpAutomorphism:
        """Extend generator images multiplicatively along a BFS spanning tree."""
        if len(images) != len(G.generators):
            raise ValueError("one image per generator is required")
        image = np.full(G.order, -1, dtype=np.int64)
        image[0] = 0
        queue = [0]
        head = 0
        while head < len(queue):
            e = queue[head]
            head += 1
            for g, h in zip(G.generators, images):
                x = int(G.mult[e, g])
                if image[x] < 0:
                    image[x] = G.mult[image[e], h]
                    queue.append(x)
        if np.any(image < 0):
            raise NotAutomorphismError("generators do not generate the group")
        return cls(G, image)

    def apply(self, x: int) -> int:
        return int(self.image[x])

    def compose(self, other: GrpAutomorphism) -> GrpAutomorphism:
        """self after other."""
        return GrpAutomorphism(self.group, self.image[other.image])

    def __matmul__(self, other: GrpAutomorphism) -> GrpAutomorphism:
        return self.compose(other)

    def inverse(self) -> GrpAutomorphism:
        return GrpAutomorphism(self.group, np.argsort(self.image))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.group.order)))

    def restrict(self, elements: np.ndarray, sub: FiniteGroup) -> GrpAutomorphism:
        """Restriction to an invariant subgroup, re-indexed as by ``FiniteGroup.subgroup``."""
        elems = np.asarray(sorted(int(e) for e in elements))
        position = np.full(self.group.order, -1, dtype=np.int64)
        position[elems] = np.arange(elems.size)
        image = position[self.image[elems]]
        if np.any(image < 0):
            raise NotAutomorphismError("the subgroup is not invariant")
        return GrpAutomorphism(sub, image)
