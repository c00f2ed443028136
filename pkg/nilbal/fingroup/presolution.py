"""Betti numbers of finite nilpotent groups from a minimal resolution of a Sylow subgroup.

For a finite nilpotent G, H_*(G; F_p) = H_*(P; F_p) with P the Sylow
p-subgroup. Over F_p[P] (a local ring) the minimal resolution

    F_p[P]^b2 -> F_p[P]^d -> F_p[P] -> F_p

has d = dim P/Phi(P) and b2 = dim K/IK, where K is the kernel of the first
differential and I the augmentation ideal. Everything is written with left
modules and row vectors indexed by (generator, element).
"""

from __future__ import annotations

import logging

import numpy as np

from nilbal.fingroup.group import FiniteGroup
from nilbal.utils import modp

logger = logging.getLogger(__name__)


def frattini_subgroup(P: FiniteGroup, p: int) -> np.ndarray:
    """Phi(P) = P^p [P, P] for a p-group."""
    powers = np.arange(P.order)
    for _ in range(p - 1):
        powers = P.mult[powers, np.arange(P.order)]
    return P.closure(np.concatenate([powers, P.commutator_subgroup()]))


def minimal_generators(P: FiniteGroup, p: int) -> list[int]:
    """Elements whose images form a basis of P/Phi(P)."""
    phi = frattini_subgroup(P, p)
    chosen: list[int] = []
    span = phi
    for e in range(P.order):
        if not np.isin(e, span):
            chosen.append(e)
            span = P.closure(np.concatenate([phi, chosen]))
    return chosen


def p_group_betti(G: FiniteGroup, p: int) -> tuple[int, int, int]:
    """(beta_0, beta_1, beta_2) of a finite nilpotent group over F_p."""
    if not G.is_nilpotent():
        raise ValueError(f"{G.name or 'group'} is not nilpotent")
    sylow = G.sylow_subgroup(p)
    if sylow.size == 1:
        return 1, 0, 0
    P = G.subgroup(sylow, name=f"Syl_{p}({G.name})")
    gens = minimal_generators(P, p)
    n, d = P.order, len(gens)

    # d1: row (i, h) is h*(g_i - 1), i.e. +1 at h g_i and -1 at h
    d1 = np.zeros((d * n, n), dtype=np.int64)
    rows = np.arange(d * n)
    h = np.tile(np.arange(n), d)
    g = np.repeat(np.array(gens), n)
    d1[rows, P.mult[h, g]] += 1
    d1[rows, h] -= 1
    kernel = modp.left_nullspace(np.mod(d1, p), p)

    # left multiplication by g permutes the (i, h) coordinates to (i, g h)
    translates = []
    for x in gens:
        perm = (np.repeat(np.arange(d), n) * n + np.tile(P.mult[x], d))
        moved = np.zeros_like(kernel)
        moved[:, perm] = kernel
        translates.append(np.mod(moved - kernel, p))
    ik_rank = modp.rank(np.vstack(translates), p) if translates else 0
    beta2 = kernel.shape[0] - ik_rank
    logger.debug("p_group_betti(%s, %d): |P| = %d, d = %d, b2 = %d", G.name, p, n, d, beta2)
    return 1, d, beta2
