"""Free resolutions of towers, built level by level as mapping cones.

Modules are free left modules over Z G_j written as row vectors; the
differential of degree n is right multiplication by the matrix D_n. The base
uses the 2-periodic resolution of a cyclic group (z - 1, then the norm). For
a level G' = G x| <t> with t x t^-1 = psi(x), a psi-semilinear chain map S
over the resolution P of G is lifted degree by degree through an explicit
preimage operator, and M_n = t^-1 S_n - I is a chain map over the
multiplication by t^-1 - 1 on Z[G'/G]. The cone of M resolves Z over Z G':

    F_n = P_n + P_{n-1},    (a, b) -> (a D_n + b M_{n-1}, -b D_{n-1}).

Every resolution carries ``preimage(n, r)``: some x with x D_n = r for a
cycle r, which is what makes the next lift constructive.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

from nilbal.errors import IdentityFailureError, LiftFailureError
from nilbal.extension.group_ring import (
    GroupRingElem,
    Matrix,
    Vector,
    augment,
    mat_mul,
    vec_mat,
    vec_sub,
    zero_vector,
)
from nilbal.extension.tower import PcTower
from nilbal.utils.constants import RESOLUTION_TOP_DEGREE

logger = logging.getLogger(__name__)


class Resolution(ABC):
    """Resolution of Z over Z G_level in degrees 0..RESOLUTION_TOP_DEGREE."""

    tower: PcTower
    level: int
    ranks: list[int]
    D: dict[int, Matrix]

    def boundary(self, n: int, v: Vector) -> Vector:
        return vec_mat(v, self.D[n], self.ranks[n - 1], self.tower)

    def preimage(self, n: int, r: Vector) -> Vector:
        """x in P_n with x D_n = r, for r a cycle (augmentation zero when n = 1).

        Entries of r may lie in the group ring of a larger tower level; they
        are split by their exponents at indices >= level and solved piecewise.
        """
        out = zero_vector(self.tower, self.ranks[n])
        pieces: dict[tuple[int, ...], Vector] = {}
        for pos, entry in enumerate(r):
            for prefix, part in entry.split(self.level).items():
                vec = pieces.setdefault(prefix, zero_vector(self.tower, len(r)))
                vec[pos] = part
        for prefix, piece in pieces.items():
            x = self._local_preimage(n, piece)
            out = [o + xi.with_prefix(prefix, self.level) for o, xi in zip(out, x)]
        if self.boundary(n, out) != list(r):
            raise LiftFailureError(
                f"no preimage in degree {n} over {self.tower.names[:self.level]}"
            )
        return out

    @abstractmethod
    def _local_preimage(self, n: int, r: Vector) -> Vector:
        """preimage for r with entries in Z G_level."""

    def augmented(self, n: int) -> list[list[int]]:
        """epsilon(D_n) as an integer matrix (ranks[n] x ranks[n-1])."""
        return augment(self.D[n])

    def verify(self) -> None:
        for n in range(2, RESOLUTION_TOP_DEGREE + 1):
            prod = mat_mul(self.D[n], self.D[n - 1], self.ranks[n - 2], self.tower)
            if any(not e.is_zero() for row in prod for e in row):
                raise IdentityFailureError(
                    f"d{n} d{n - 1} = 0 over {self.tower.names[:self.level]}"
                )


class CyclicResolution(Resolution):
    """Periodic resolution of the base: D_odd = z - 1, D_even = nu; trivial base has P_0 only."""

    def __init__(self, tower: PcTower):
        self.tower = tower
        self.level = 1
        top = RESOLUTION_TOP_DEGREE
        if tower.k == 1:
            self.ranks = [1] + [0] * top
            self.D = {1: []}
            for n in range(2, top + 1):
                self.D[n] = []
        else:
            self.ranks = [1] * (top + 1)
            z_minus_1 = GroupRingElem.generator(tower, 0) - GroupRingElem.one(tower)
            nu = GroupRingElem.norm(tower)
            self.D = {n: [[z_minus_1 if n % 2 else nu]] for n in range(1, top + 1)}
        self.verify()

    def _local_preimage(self, n: int, r: Vector) -> Vector:
        if self.tower.k == 1:
            return []
        k = self.tower.k
        coeffs = [0] * k
        for m, c in r[0].terms.items():
            coeffs[m[0]] += c
        if n % 2:
            # sum c_e z^e = x (z - 1) with x = sum c_e (1 + ... + z^(e-1))
            x = GroupRingElem.zero(self.tower)
            for e, c in enumerate(coeffs):
                if c and e:
                    x = x + GroupRingElem.geometric(self.tower, 0, 0, e) * c
            return [x]
        if len(set(coeffs)) != 1:
            raise LiftFailureError(f"{r[0].render()} is not a multiple of the norm")
        return [GroupRingElem.one(self.tower) * coeffs[0]]


class ConeResolution(Resolution):
    """Mapping cone of M = t^-1 S - I over the resolution of the previous level."""

    def __init__(self, parent: Resolution):
        self.parent = parent
        self.tower = tower = parent.tower
        self.j = j = parent.level
        self.level = j + 1
        top = RESOLUTION_TOP_DEGREE
        pr = parent.ranks
        self.ranks = [pr[0]] + [pr[n] + pr[n - 1] for n in range(1, top + 1)]

        self.S = self._lift()
        t_inv = GroupRingElem.generator(tower, j, -1)
        one = GroupRingElem.one(tower)
        self.M: dict[int, Matrix] = {}
        for n, rows in self.S.items():
            self.M[n] = [
                [t_inv * e - (one if i == col else GroupRingElem.zero(tower))
                 for col, e in enumerate(row)]
                for i, row in enumerate(rows)
            ]
        self._check_chain_map()

        zero = GroupRingElem.zero(tower)
        self.D = {1: [list(row) for row in parent.D[1]] + [list(row) for row in self.M[0]]}
        for n in range(2, top + 1):
            upper = [list(row) + [zero] * pr[n - 2] for row in parent.D[n]]
            lower = [
                list(self.M[n - 1][i]) + [-e for e in parent.D[n - 1][i]]
                for i in range(pr[n - 1])
            ]
            self.D[n] = upper + lower
        self.verify()
        logger.debug(
            "Cone over %s: ranks %s", tower.names[:self.level], self.ranks
        )

    def _lift(self) -> dict[int, Matrix]:
        """psi-semilinear chain map S over the parent, degrees 0..top-1."""
        parent, tower, j = self.parent, self.tower, self.j
        S: dict[int, Matrix] = {0: [[GroupRingElem.one(tower)]]}
        for n in range(1, RESOLUTION_TOP_DEGREE):
            rows = []
            width = parent.ranks[n - 1]
            for i in range(parent.ranks[n]):
                target = zero_vector(tower, width)
                for col, entry in enumerate(parent.D[n][i]):
                    if entry.is_zero():
                        continue
                    image = entry.act(j)
                    target = [a + image * b for a, b in zip(target, S[n - 1][col])]
                rows.append(parent.preimage(n, target))
            S[n] = rows
        return S

    def _check_chain_map(self) -> None:
        parent, tower = self.parent, self.tower
        for n in range(1, RESOLUTION_TOP_DEGREE):
            if parent.ranks[n] == 0:
                continue
            width = parent.ranks[n - 1]
            lhs = mat_mul(self.M[n], parent.D[n], width, tower)
            rhs = mat_mul(parent.D[n], self.M[n - 1], width, tower)
            if lhs != rhs:
                raise LiftFailureError(
                    f"M{n} D{n} != D{n} M{n - 1} for {tower.names[self.j]}"
                )

    def _local_preimage(self, n: int, r: Vector) -> Vector:
        parent, tower, j = self.parent, self.tower, self.j
        if n == 1:
            return self._preimage_degree_one(r[0])
        split = parent.ranks[n - 1]
        r1, s = r[:split], r[split:]
        b = [-e for e in parent.preimage(n - 1, s)]
        rest = vec_sub(r1, vec_mat(b, self.M[n - 1], split, tower))
        a = parent.preimage(n, rest)
        return a + b

    def _preimage_degree_one(self, r0: GroupRingElem) -> Vector:
        tower, j = self.tower, self.j
        # r0 = sum_a t^a x_a = sum_a d_a t^a with d_a = psi^a(x_a)
        d: dict[int, GroupRingElem] = {}
        for m, c in r0.terms.items():
            a = m[j]
            low = m[:j] + (0,) * (tower.size - j)
            term = GroupRingElem.of(tower, tower.act(j, a, low), c)
            d[a] = d.get(a, GroupRingElem.zero(tower)) + term
        # q_a (t^-1 - 1) = t^a - 1
        b = GroupRingElem.zero(tower)
        for a, da in d.items():
            if a > 0:
                b = b - da * GroupRingElem.geometric(tower, j, 1, a + 1)
            elif a < 0:
                b = b + da * GroupRingElem.geometric(tower, j, a + 1, 1)
        step = GroupRingElem.generator(tower, j, -1) - GroupRingElem.one(tower)
        rest = r0 - b * step
        if rest.top() > j:
            raise LiftFailureError(f"degree-one remainder {rest.render()} leaves the subgroup")
        return self.parent.preimage(1, [rest]) + [b]


@dataclass
class WangResolution:
    """The resolutions of every stage G_1 < G_2 < ... < G of a tower."""

    tower: PcTower
    stages: list[Resolution]

    @property
    def top(self) -> Resolution:
        return self.stages[-1]

    @property
    def ranks(self) -> list[int]:
        return self.top.ranks

    def augmented(self, n: int) -> list[list[int]]:
        return self.top.augmented(n)

    def top_lift(self) -> ConeResolution | None:
        """The last cone, whose lifts S describe the action of the top generator."""
        top = self.top
        return top if isinstance(top, ConeResolution) else None


def wang_resolution(t: PcTower) -> WangResolution:
    """Resolution of Z over Z G in degrees <= 3, one mapping cone per level."""
    stages: list[Resolution] = [CyclicResolution(t)]
    for _ in range(1, t.size):
        stages.append(ConeResolution(stages[-1]))
    logger.debug(
        "Resolution of %s: ranks %s, caches %s",
        t.name or "tower", stages[-1].ranks, t.cache_sizes(),
    )
    return WangResolution(t, stages)
