"""Automorphisms of finitely generated abelian groups: unipotency and enumeration."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from sympy import Matrix, Symbol, factorint

from nilbal.abelian.groups import AbHom, FinAbGroup
from nilbal.abelian.matrices import (
    IntMatrix,
    lattice_basis,
    lattice_contains,
    lattice_index_is_one,
    right_kernel,
)
from nilbal.errors import NotUnipotentError, SizeLimitError
from nilbal.utils import modp
from nilbal.utils.constants import MAX_ENUMERATED_FACTORS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Unipotency:
    """Result of :func:`is_unipotent`.

    ``index`` is the least e >= 0 with (f - id)^(e + 1) = 0, so the identity
    has index 0; it is None when f is not unipotent.
    """

    unipotent: bool
    index: int | None

    def __bool__(self) -> bool:
        return self.unipotent


def _composition_length(A: FinAbGroup) -> int:
    return sum(sum(factorint(d).values()) for d in A.invariant_factors)


def is_unipotent(f: AbHom) -> Unipotency:
    """Whether f - id is nilpotent on A; f must be an automorphism."""
    f.require_automorphism()
    A = f.source
    if A.free_rank:
        x = Symbol("x")
        free = Matrix(f.free_block().to_rows())
        if (free.charpoly(x).as_expr() - (x - 1) ** A.free_rank).expand() != 0:
            return Unipotency(False, None)
    n = f.minus_identity()
    bound = A.free_rank + _composition_length(A)
    current = n
    for e in range(bound + 1):
        if current.is_zero():
            return Unipotency(True, e)
        current = n @ current
    return Unipotency(False, None)


def is_unipotent_mod_p(matrices: Sequence[np.ndarray], p: int) -> bool:
    """Whether every matrix is unipotent over F_p."""
    for m in matrices:
        if m.size and not modp.is_nilpotent(m - np.eye(m.shape[0], dtype=np.int64), p):
            return False
    return True


# ---------------------------------------------------------------------------
# Filtrations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnipotentFiltration:
    """A = A_1 > ... > A_k = A^N > 0 with (g - 1)A_i inside A_{i+1}.

    Each term is a list of generating rows: an F_p basis in A/pA coordinates
    when ``prime`` is set, otherwise a Z-basis of the preimage lattice in Z^n
    (which contains the relation lattice of A).
    """

    group: FinAbGroup
    terms: tuple[tuple[tuple[int, ...], ...], ...]
    prime: int | None = None

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def fixed(self) -> tuple[tuple[int, ...], ...]:
        return self.terms[-1]

    def dimension(self, i: int) -> int:
        if self.prime is None:
            raise ValueError("dimensions are only defined over F_p")
        return len(self.terms[i])

    def contains(self, i: int, vector: Sequence[int]) -> bool:
        """Whether ``vector`` lies in the i-th term (0-based, A_1 first)."""
        term = self.terms[i]
        if self.prime is None:
            return lattice_contains(term, list(vector))
        p = self.prime
        if not any(int(x) % p for x in vector):
            return True
        if not term:
            return False
        return modp.rank(np.vstack([np.array(term), np.array(vector)]), p) == len(term)


def unipotent_filtration(
    A: FinAbGroup, gens: Sequence[AbHom], p: int | None = None
) -> UnipotentFiltration:
    """Socle-type filtration of A under the group generated by ``gens``.

    Built upward from the fixed subgroup S_1 by S_{j+1} = {a : (g - 1)a in S_j
    for every g}, then listed from A downward.
    """
    for g in gens:
        if not is_unipotent(g):
            raise NotUnipotentError(f"{g.matrix.to_rows()} does not act unipotently on {A}")
    if p is not None:
        return _filtration_mod_p(A, gens, p)
    return _filtration_integral(A, gens)


def _filtration_mod_p(A: FinAbGroup, gens: Sequence[AbHom], p: int) -> UnipotentFiltration:
    dim = A.p_rank(p)
    eye = np.eye(dim, dtype=np.int64)
    # row convention: v -> v @ (M^T - I)
    lowers = [np.mod(g.mod_p(p).T - eye, p) for g in gens]
    chain: list[np.ndarray] = []
    current = np.zeros((0, dim), dtype=np.int64)
    while current.shape[0] < dim:
        annihilator = modp.right_nullspace(current, p, ncols=dim) if current.size else eye
        if lowers:
            stacked = np.hstack([modp.matmul(n, annihilator.T, p) for n in lowers])
            nxt = modp.left_nullspace(stacked, p)
        else:
            nxt = eye
        nxt, _ = modp.rref(nxt, p) if nxt.size else (nxt, [])
        if nxt.shape[0] <= current.shape[0]:
            raise NotUnipotentError(
                f"filtration of {A} mod {p} stalls at dimension {current.shape[0]}"
            )
        chain.append(nxt)
        current = nxt
    terms = tuple(tuple(tuple(int(x) for x in row) for row in term) for term in reversed(chain))
    if not terms:
        terms = ((),)
    return UnipotentFiltration(A, terms, p)


def _filtration_integral(A: FinAbGroup, gens: Sequence[AbHom]) -> UnipotentFiltration:
    n = A.rank
    relations = [[d * int(i == j) for j in range(n)] for i, d in enumerate(A.generator_orders) if d]
    lowers = [g.minus_identity().matrix for g in gens]
    chain: list[list[list[int]]] = []
    current = lattice_basis(relations, n)
    while not lattice_index_is_one(current, n):
        k = len(current)
        width = n + k * len(lowers)
        rows: list[list[int]] = []
        for gi, low in enumerate(lowers):
            for r in range(n):
                row = [0] * width
                row[:n] = list(low.row(r))
                for c in range(k):
                    row[n + gi * k + c] = -current[c][r]
                rows.append(row)
        if rows:
            kernel = right_kernel(IntMatrix.from_rows(rows, cols=width))
            generators = [vec[:n] for vec in kernel]
        else:
            generators = [[int(i == j) for j in range(n)] for i in range(n)]
        nxt = lattice_basis(generators + relations, n)
        if all(lattice_contains(current, row) for row in nxt):
            raise NotUnipotentError(f"filtration of {A} over Z stalls")
        chain.append(nxt)
        current = nxt
    if not chain:
        chain.append(current)
    terms = tuple(tuple(tuple(row) for row in term) for term in reversed(chain))
    return UnipotentFiltration(A, terms, None)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _element_array(T: FinAbGroup) -> np.ndarray:
    if T.rank == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(T.elements()), dtype=np.int64)


def _index_of(T: FinAbGroup, vectors: np.ndarray) -> np.ndarray:
    idx = np.zeros(vectors.shape[0], dtype=np.int64)
    for col, d in enumerate(T.invariant_factors):
        idx = idx * d + np.mod(vectors[:, col], d)
    return idx


def permutation_array(f: AbHom) -> np.ndarray:
    """Action of an endomorphism of a finite group on element indices."""
    T = f.source
    elems = _element_array(T)
    mat = np.array(f.matrix.to_rows(), dtype=np.int64).reshape(T.rank, T.rank)
    return _index_of(T, elems @ mat.T)


def _det(m: np.ndarray) -> np.ndarray:
    """Determinants of a stack of s x s integer matrices, s <= 3."""
    s = m.shape[-1]
    if s == 0:
        return np.ones(m.shape[0], dtype=np.int64)
    if s == 1:
        return m[:, 0, 0]
    if s == 2:
        return m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]
    return (
        m[:, 0, 0] * (m[:, 1, 1] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 1])
        - m[:, 0, 1] * (m[:, 1, 0] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 0])
        + m[:, 0, 2] * (m[:, 1, 0] * m[:, 2, 1] - m[:, 1, 1] * m[:, 2, 0])
    )


def aut_enumerate(T: FinAbGroup, limit: int = 64) -> list[AbHom]:
    """Every automorphism of a finite abelian group with at most three invariant factors.

    Candidate images of each generator are the elements whose order divides
    the generator's order; a candidate tuple is bijective iff its reduction on
    every T/pT is invertible.
    """
    if not T.is_finite:
        raise ValueError("automorphisms are enumerated for finite groups only")
    if T.torsion_order > limit:
        raise SizeLimitError("automorphism enumeration", T.torsion_order, limit)
    s = len(T.invariant_factors)
    if s > MAX_ENUMERATED_FACTORS:
        raise SizeLimitError(
            "automorphism enumeration (invariant factors)", s, MAX_ENUMERATED_FACTORS
        )
    if s == 0:
        return [AbHom.identity(T)]
    elems = _element_array(T)
    orders = np.array(T.invariant_factors, dtype=np.int64)
    candidates = []
    for d in T.invariant_factors:
        ok = np.all(np.mod(elems * d, orders) == 0, axis=1)
        candidates.append(elems[ok])
    grids = np.meshgrid(*(np.arange(len(c)) for c in candidates), indexing="ij")
    choice = [g.ravel() for g in grids]
    # mats[n, i, j] = coordinate i of the image of generator j
    mats = np.stack([candidates[j][choice[j]] for j in range(s)], axis=2)
    keep = np.ones(mats.shape[0], dtype=bool)
    for p in T.primes():
        idx = T.p_indices(p)
        sub = np.mod(mats[:, idx][:, :, idx], p)
        keep &= np.mod(_det(sub), p) != 0
    mats = mats[keep]
    auts = [AbHom(T, T, IntMatrix.from_rows(m.tolist(), cols=s)) for m in mats]
    logger.debug("Enumerated %d automorphisms of %s", len(auts), T)
    return auts


def _primary_data(T: FinAbGroup, p: int) -> tuple[list[int], list[int]]:
    """Indices of generators with p | d_i and the p-adic valuations a_i."""
    idx = [i for i, d in enumerate(T.invariant_factors) if d % p == 0]
    vals = []
    for i in idx:
        d, a = T.invariant_factors[i], 0
        while d % p == 0:
            d //= p
            a += 1
        vals.append(a)
    return idx, vals


def _sylow_matrices(p: int, vals: list[int]) -> list[list[list[int]]]:
    """Matrices (on primary generators of orders p^a, a ascending) of a Sylow p-subgroup
    of Aut: diagonal blocks unitriangular mod p, column j images of order dividing p^a_j.
    """
    n = len(vals)
    choices: list[list[int]] = []
    for i in range(n):
        for j in range(n):
            mod = p ** vals[i]
            step = p ** max(0, vals[i] - vals[j])
            if i == j:
                opts = [1 + p * t for t in range(p ** (vals[i] - 1))]
            elif vals[i] == vals[j] and i > j:
                opts = list(range(0, mod, max(step, p)))
            else:
                opts = list(range(0, mod, step))
            choices.append(opts)
    out = []
    for entries in itertools.product(*choices):
        out.append([list(entries[i * n:(i + 1) * n]) for i in range(n)])
    return out


def sylow_unipotent_automorphisms(T: FinAbGroup) -> list[AbHom]:
    """Unipotent automorphisms of T meeting every conjugacy class of unipotent elements.

    Every unipotent automorphism is a p-element on each p-primary part and hence
    conjugate into the chosen Sylow subgroup of each Aut(T_p).
    """
    factors = T.invariant_factors
    per_prime = []
    for p in T.primes():
        idx, vals = _primary_data(T, p)
        per_prime.append((p, idx, vals, _sylow_matrices(p, vals)))
    s = len(factors)
    result = []
    for combo in itertools.product(*(mats for *_, mats in per_prime)):
        cols = [[0] * s for _ in range(s)]
        for (p, idx, vals, _), mat in zip(per_prime, combo):
            for jj, j in enumerate(idx):
                cofactor_j = factors[j] // p ** vals[jj]
                c_j = pow(cofactor_j, -1, p ** vals[jj])
                for ii, i in enumerate(idx):
                    cofactor_i = factors[i] // p ** vals[ii]
                    cols[j][i] += c_j * mat[ii][jj] * cofactor_i
        cols = [[x % factors[i] for i, x in enumerate(col)] for col in cols]
        result.append(AbHom.from_columns(T, T, cols))
    return result


def _conjugacy_representatives(auts: list[AbHom], unipotents: list[AbHom]) -> list[AbHom]:
    perms = [permutation_array(a) for a in auts]
    inverses = [np.argsort(g) for g in perms]
    seen: set[bytes] = set()
    reps = []
    for u in unipotents:
        pu = permutation_array(u)
        if pu.tobytes() in seen:
            continue
        reps.append(u)
        for g, ginv in zip(perms, inverses):
            seen.add(g[pu[ginv]].tobytes())
    return reps


def unipotent_automorphisms(
    T: FinAbGroup,
    enum_limit: int = 64,
    dedup_limit: int = 10**4,
) -> list[AbHom]:
    """Unipotent automorphisms of a finite abelian group, for the classification sweeps.

    Groups with at most three invariant factors are enumerated exhaustively and,
    when |Aut(T)| <= dedup_limit, reduced to conjugacy representatives. Larger
    factor counts use the Sylow-subgroup listing.
    """
    if T.rank == 0:
        return [AbHom.identity(T)]
    if len(T.invariant_factors) > MAX_ENUMERATED_FACTORS:
        return sylow_unipotent_automorphisms(T)
    auts = aut_enumerate(T, enum_limit)
    # on a finite group, unipotent iff unipotent on every T/pT
    unipotents = [
        a for a in auts if all(is_unipotent_mod_p([a.mod_p(p)], p) for p in T.primes())
    ]
    if len(auts) <= dedup_limit:
        reps = _conjugacy_representatives(auts, unipotents)
        logger.debug(
            "%s: %d automorphisms, %d unipotent, %d classes",
            T, len(auts), len(unipotents), len(reps),
        )
        return reps
    return unipotents
