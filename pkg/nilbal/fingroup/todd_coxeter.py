"""Todd–Coxeter coset enumeration over the trivial subgroup.

Cosets live in a union-find structure: ``labels[c] <= c`` points at the
surviving representative and ``neighbors[c][d]`` is the coset reached from c
by direction d, where direction 2i is generator i and 2i + 1 its inverse.
Relators are traced from every live coset in order (HLT), defining missing
edges as they are met; coincidences are processed with an explicit stack.
"""

from __future__ import annotations

import logging

import numpy as np

from nilbal.errors import CosetLimitExceededError
from nilbal.presentation.words import Presentation, Word

logger = logging.getLogger(__name__)

UNDEFINED = -1


def _directions(word: Word) -> list[int]:
    out = []
    for g, step in word.syllables():
        out.append(2 * g if step > 0 else 2 * g + 1)
    return out


class CosetTable:
    """Coset table of a presentation acting on the cosets of the trivial subgroup."""

    def __init__(self, presentation: Presentation, max_cosets: int):
        self.presentation = presentation
        self.max_cosets = max_cosets
        self.ndirs = 2 * presentation.rank
        self.labels: list[int] = []
        self.neighbors: list[list[int]] = []
        rels = [_directions(r) for r in presentation.relators]
        for g in range(presentation.rank):
            rels.append([2 * g, 2 * g + 1])
            rels.append([2 * g + 1, 2 * g])
        self.relators = rels
        self.start = self._add_coset()

    def _add_coset(self) -> int:
        c = len(self.labels)
        if c >= self.max_cosets:
            raise CosetLimitExceededError(self.max_cosets)
        self.labels.append(c)
        self.neighbors.append([UNDEFINED] * self.ndirs)
        return c

    def find(self, c: int) -> int:
        labels = self.labels
        root = c
        while labels[root] != root:
            root = labels[root]
        while labels[c] != root:
            labels[c], c = root, labels[c]
        return root

    def unify(self, c1: int, c2: int) -> None:
        pending = [(c1, c2)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.labels[b] = a
            for d in range(self.ndirs):
                n1 = self.neighbors[a][d]
                n2 = self.neighbors[b][d]
                if n1 == UNDEFINED:
                    self.neighbors[a][d] = n2
                elif n2 != UNDEFINED:
                    pending.append((n1, n2))

    def step(self, c: int, d: int) -> int:
        c = self.find(c)
        nxt = self.neighbors[c][d]
        if nxt == UNDEFINED:
            nxt = self._add_coset()
            self.neighbors[c][d] = nxt
        return self.find(nxt)

    def trace(self, c: int, dirs: list[int]) -> int:
        for d in dirs:
            c = self.step(c, d)
        return c

    def run(self) -> CosetTable:
        visit = 0
        while visit < len(self.labels):
            c = self.find(visit)
            if c == visit:
                for rel in self.relators:
                    self.unify(self.trace(c, rel), c)
                    if self.find(c) != c:
                        break
            visit += 1
        return self

    def live(self) -> list[int]:
        return [c for c in range(len(self.labels)) if self.find(c) == c]

    def generator_permutations(self) -> tuple[list[int], np.ndarray]:
        """Live cosets in BFS order from the start coset and, for each generator,
        the permutation c -> c.g on their BFS indices."""
        order = [self.find(self.start)]
        index = {order[0]: 0}
        head = 0
        while head < len(order):
            c = order[head]
            head += 1
            for d in range(self.ndirs):
                n = self.find(self.neighbors[c][d])
                if n not in index:
                    index[n] = len(order)
                    order.append(n)
        rank = self.presentation.rank
        perms = np.zeros((rank, len(order)), dtype=np.int32)
        for g in range(rank):
            for i, c in enumerate(order):
                perms[g, i] = index[self.find(self.neighbors[c][2 * g])]
        return order, perms


def enumerate_cosets(presentation: Presentation, max_cosets: int = 10**6) -> np.ndarray:
    """Run the enumeration; returns one permutation row per generator."""
    table = CosetTable(presentation, max_cosets).run()
    order, perms = table.generator_permutations()
    logger.debug(
        "Enumerated %s: %d cosets (%d defined)",
        presentation.name or "presentation", len(order), len(table.labels),
    )
    return perms
