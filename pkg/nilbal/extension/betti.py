"""Betti numbers, integral H_1/H_2 and the balance verdict of a tower."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np
from sympy import Matrix, primefactors

from nilbal.abelian.groups import FinAbGroup, homology_group
from nilbal.errors import IdentityFailureError, NotUnipotentError
from nilbal.extension.group_ring import augment
from nilbal.extension.resolution import WangResolution, wang_resolution
from nilbal.extension.tower import PcTower
from nilbal.fingroup.bar import bar_homology
from nilbal.fingroup.group import FiniteGroup, GrpAutomorphism
from nilbal.models import BettiReport, Verdict, WangCheck, WangResult
from nilbal.utils import modp
from nilbal.utils.log_context import log_context

logger = logging.getLogger(__name__)

DEFAULT_PRIMES = (2, 3, 5)


def _array(rows: Sequence[Sequence[int]], nrows: int, ncols: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64).reshape(nrows, ncols)


def _rank(rows: Sequence[Sequence[int]], characteristic: int) -> int:
    if not rows or not rows[0]:
        return 0
    if characteristic == 0:
        return int(Matrix(rows).rank())
    return modp.rank(np.array(rows, dtype=np.int64), characteristic)


def _shifted(mat: np.ndarray, p: int) -> np.ndarray:
    return np.mod(mat - np.eye(mat.shape[0], dtype=np.int64), p)


def _fixed(mat: np.ndarray, p: int) -> int:
    """dim Ker(mat - I), which equals dim Cok(mat - I)."""
    d = mat.shape[0]
    return d - modp.rank(_shifted(mat, p), p) if d else 0


class AugmentedComplex:
    """Z tensored over Z G with the resolution, in degrees 0..3."""

    def __init__(self, res: WangResolution):
        self.ranks = res.ranks
        self.E = {n: res.augmented(n) for n in range(1, len(self.ranks))}

    def betti(self, characteristic: int) -> tuple[int, int, int]:
        rk = {n: _rank(self.E[n], characteristic) for n in self.E}
        r = self.ranks
        return r[0] - rk[1], r[1] - rk[1] - rk[2], r[2] - rk[2] - rk[3]

    def h1(self) -> FinAbGroup:
        return homology_group(self.E[2], self.E[1], self.ranks[1])

    def h2(self) -> FinAbGroup:
        return homology_group(self.E[3], self.E[2], self.ranks[2])


def _uct_betti(h1: FinAbGroup, h2: FinAbGroup, p: int) -> tuple[int, int]:
    if p == 0:
        return h1.free_rank, h2.free_rank
    return h1.p_rank(p), h2.p_rank(p) + h1.p_torsion_rank(p)


def h2_integral(t: PcTower) -> FinAbGroup:
    """H_2(G; Z) of the tower's group."""
    return AugmentedComplex(wang_resolution(t)).h2()


# ---------------------------------------------------------------------------
# Wang sequence
# ---------------------------------------------------------------------------


def wang_identity_check(h1_map: np.ndarray, h2_map: np.ndarray, p: int) -> WangResult:
    """Betti numbers of K x|_psi Z from the maps psi induces on H_1(K; F_p), H_2(K; F_p).

    Both maps must be unipotent.
    """
    for i, mat in ((1, h1_map), (2, h2_map)):
        if not modp.is_nilpotent(_shifted(mat, p), p):
            raise NotUnipotentError(f"induced map on H_{i}(K; F_{p}) is not unipotent")
    c1, c2 = _fixed(h1_map, p), _fixed(h2_map, p)
    return WangResult(
        beta1=1 + c1,
        beta2=c2 + c1,
        h1_coker=c1,
        h1_ker=c1,
        h2_coker=c2,
        h2_cyclic_module=c2 == 1,
    )


def sub_tower_maps(res: WangResolution, p: int) -> tuple[np.ndarray, np.ndarray] | None:
    """Maps induced by the top generator on H_1, H_2 of the previous level, mod p."""
    cone = res.top_lift()
    if cone is None:
        return None
    parent = cone.parent
    r = parent.ranks
    E = {n: _array(parent.augmented(n), r[n], r[n - 1]) for n in range(1, len(r))}
    maps = []
    for i in (1, 2):
        if r[i]:
            cycles = modp.left_nullspace(np.mod(E[i], p), p)
        else:
            cycles = np.zeros((0, 0), dtype=np.int64)
        sub = modp.Subquotient(cycles, np.mod(E[i + 1], p), p)
        if sub.dim == 0:
            maps.append(np.zeros((0, 0), dtype=np.int64))
            continue
        s = _array(augment(cone.S[i]), r[i], r[i])
        maps.append(sub.induced(modp.matmul(sub.representatives, s, p)))
    return maps[0], maps[1]


def wang_check(res: WangResolution, p: int, resolution_betti: tuple[int, int]) -> WangCheck | None:
    """Compare the resolution's (beta1, beta2) at p with the Wang prediction.

    The sequence is exact for any psi; unipotency is only recorded.
    """
    maps = sub_tower_maps(res, p)
    if maps is None:
        return None
    h1_map, h2_map = maps
    unipotent = all(modp.is_nilpotent(_shifted(m, p), p) for m in maps)
    c1, c2 = _fixed(h1_map, p), _fixed(h2_map, p)
    return WangCheck(p, resolution_betti, (1 + c1, c2 + c1), unipotent)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def decide_verdict(betti: dict[int, tuple[int, int, int]]) -> tuple[Verdict, int | None]:
    """Not balanced at the smallest failing prime (0 when only Q fails), else consistent."""
    failing = sorted(p for p, (_, b1, b2) in betti.items() if b2 > b1)
    if not failing:
        return Verdict.BALANCED_CONSISTENT, None
    positive = [p for p in failing if p > 0]
    return Verdict.NOT_BALANCED, positive[0] if positive else 0


def betti(
    t: PcTower,
    primes: Iterable[int] = DEFAULT_PRIMES,
    with_rationals: bool = True,
) -> BettiReport:
    """beta_0..beta_2 over Q and F_p, integral H_1 and H_2, and the verdict.

    The checked primes are the requested ones plus every prime dividing the
    base order or the torsion of H_1 or H_2, so the verdict is exact.
    """
    group_id = t.name or "tower"
    with log_context(group=group_id):
        res = wang_resolution(t)
        cx = AugmentedComplex(res)
        h1, h2 = cx.h1(), cx.h2()
        chosen = set(primes) | set(primefactors(t.k))
        chosen |= set(h1.primes()) | set(h2.primes())
        characteristics = ([0] if with_rationals else []) + sorted(chosen)

        report = BettiReport(
            group_id=group_id,
            params=dict(t.params),
            hirsch_length=t.hirsch_length,
            order=t.order,
            integral_h1=h1,
            integral_h2=h2,
        )
        for p in characteristics:
            with log_context(prime=str(p)):
                b = cx.betti(p)
                if (b[1], b[2]) != _uct_betti(h1, h2, p):
                    raise IdentityFailureError(
                        f"universal coefficients at {p}: resolution {b[1:]} vs "
                        f"H1 = {h1}, H2 = {h2}"
                    )
                report.betti[p] = b
                if p == 0:
                    continue
                check = wang_check(res, p, (b[1], b[2]))
                if check is None:
                    continue
                if not check.agrees:
                    raise IdentityFailureError(
                        f"Wang sequence at {p}: resolution {check.resolution} "
                        f"vs predicted {check.predicted}"
                    )
                report.wang_checks[p] = check

        # Q enters the verdict through the integral ranks even when not listed
        decided = dict(report.betti)
        decided.setdefault(0, (1, h1.free_rank, h2.free_rank))
        report.verdict, report.witness = decide_verdict(decided)
        logger.info(
            "%s: betti %s, H2 = %s, %s", group_id, report.betti, h2, report.verdict.value
        )
    return report


def mapping_torus_report(
    T: FiniteGroup,
    psi: GrpAutomorphism,
    name: str = "",
    primes: Iterable[int] = DEFAULT_PRIMES,
    bar_limit: int = 48,
) -> BettiReport:
    """Betti numbers of T x|_psi Z for a finite group T.

    beta1 = 1 + c1 and beta2 = c2 + c1 with c_i the fixed dimension of psi on
    H_i(T; F_p), taken from the bar complex of T.
    """
    group_id = name or T.name or "mapping torus"
    report = BettiReport(group_id=group_id, hirsch_length=1)
    report.betti[0] = (1, 1, 0)
    unipotent = True
    with log_context(group=group_id):
        for p in sorted(set(primes) | set(primefactors(T.order))):
            if T.order % p:
                report.betti[p] = (1, 1, 0)
                continue
            bar = bar_homology(T, p, 2, bar_limit)
            maps = (bar.induced_h1(psi), bar.induced_h2(psi))
            unipotent = unipotent and all(
                modp.is_nilpotent(_shifted(m, p), p) for m in maps if m.size
            )
            c1, c2 = _fixed(maps[0], p), _fixed(maps[1], p)
            report.betti[p] = (1, 1 + c1, c2 + c1)
    report.verdict, report.witness = decide_verdict(report.betti)
    if not unipotent:
        report.notes.append("psi is not unipotent on H_*(T; F_p): the group is not nilpotent")
    logger.info("%s: betti %s, %s", group_id, report.betti, report.verdict.value)
    return report


def wang_cor_check(report: BettiReport, t: PcTower) -> dict[str, bool]:
    """Consequences of the Wang sequence for nilpotent towers.

    Over Q, beta2 < beta1 exactly when h is 1 or 2. Over F_p, beta2 < beta1
    forces h in {1, 2}, beta1 = h and no p-torsion. With beta = beta1(Q), the
    group is balanced iff H_2(G; Z) is a quotient of Z^beta; for h > 2 iff
    H_2 = Z^beta, and for h = 2 a balanced group has H_2 = Z + Z/e.
    """
    if not t.is_nilpotent():
        return {}
    h = t.hirsch_length
    checks: dict[str, bool] = {}
    if 0 in report.betti:
        b1, b2 = report.beta(0)
        checks["rational"] = (b2 < b1) == (h in (1, 2))
    torsion = t.torsion_subgroup()
    for p, (_, b1, b2) in sorted(report.betti.items()):
        if p == 0 or b2 >= b1:
            continue
        checks[f"mod {p}"] = h in (1, 2) and b1 == h and torsion.p_rank(p) == 0
    h1, h2 = report.integral_h1, report.integral_h2
    if h1 is not None and h2 is not None:
        beta = h1.free_rank
        balanced = report.verdict is Verdict.BALANCED_CONSISTENT
        generators = h2.free_rank + len(h2.invariant_factors)
        checks["h2 quotient"] = balanced == (generators <= beta)
        if h > 2:
            checks["h2 free"] = balanced == (h2 == FinAbGroup.free(beta))
        elif h == 2 and balanced:
            checks["h2 rank one"] = h2.free_rank == 1 and len(h2.invariant_factors) <= 1
    return checks
