"""Fox calculus and the augmented differentials of a presentation 2-complex."""

from __future__ import annotations

import numpy as np
from sympy import Matrix

from nilbal.models import BalanceAccount
from nilbal.presentation.words import FreeRingElement, Presentation, Word
from nilbal.utils import modp


def fox_derivative(rel: Word, gen: int) -> FreeRingElement:
    """Left Fox derivative d(rel)/d(gen) in the free group ring.

    Satisfies d(uv) = du + u dv, dg/dg = 1 and d(g^-1)/dg = -g^-1.
    """
    terms: dict[Word, int] = {}
    prefix = Word.identity()
    for g, step in rel.syllables():
        if g == gen:
            if step > 0:
                terms[prefix] = terms.get(prefix, 0) + 1
            else:
                key = prefix * Word.gen(g, -1)
                terms[key] = terms.get(key, 0) - 1
        prefix = prefix * Word.gen(g, step)
    return FreeRingElement(terms)


def fox_jacobian(p: Presentation) -> list[list[FreeRingElement]]:
    """Matrix of Fox derivatives, one row per relator, one column per generator."""
    return [[fox_derivative(r, g) for g in range(p.rank)] for r in p.relators]


def balance_accounting(p: Presentation) -> BalanceAccount:
    return BalanceAccount(generators=p.rank, relators=len(p.relators))


def relator_matrix(p: Presentation) -> list[list[int]]:
    """Exponent sums of each generator in each relator (relators x generators)."""
    return [[r.exponent_sum(g) for g in range(p.rank)] for r in p.relators]


def epsilon_p_jacobian(p: Presentation, characteristic: int) -> np.ndarray:
    """Augmented Fox Jacobian, reduced mod ``characteristic``.

    The augmentation of d(w)/dg is the exponent sum of g in w, so this is the
    relator matrix read in the coefficient field. Characteristic 0 keeps
    Python ints (object dtype); exponents are unbounded.
    """
    shape = (len(p.relators), p.rank)
    rows = relator_matrix(p)
    if characteristic:
        reduced = [[e % characteristic for e in row] for row in rows]
        return np.array(reduced, dtype=np.int64).reshape(shape)
    return np.array(rows, dtype=object).reshape(shape)


def jacobian_rank(p: Presentation, characteristic: int) -> int:
    mat = epsilon_p_jacobian(p, characteristic)
    if mat.size == 0:
        return 0
    if characteristic:
        return modp.rank(mat, characteristic)
    return int(Matrix(mat.tolist()).rank())


def jacobian_kernel_dim(p: Presentation, characteristic: int) -> int:
    """Dimension of the left kernel of the augmented Jacobian (relators side)."""
    return len(p.relators) - jacobian_rank(p, characteristic)


def beta1(p: Presentation, characteristic: int) -> int:
    """beta_1 of the presented group over Q (0) or F_p: the cokernel dimension."""
    return p.rank - jacobian_rank(p, characteristic)
