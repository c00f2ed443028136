"""The Fox–Lyndon partial resolution of G(k, f, l) and its mod-2 kernel.

G(k, f, l) = < x, y, z | z^f y x y^-1 x^-1, z^k, z x z x^-1, z^l y z^-1 y^-1 >
with k = 2^n >= 8, f | k, 1 < l < k and l = 1 mod 4. In the tower on
z < y < x, y acts by z -> z^l and x by z -> z^-1, y -> y z^(f m) where
m = l^-1 mod k and m l = w k + 1.
"""

from __future__ import annotations

import logging
from itertools import product

import numpy as np

from nilbal.errors import IdentityFailureError, ParameterInvalidError
from nilbal.extension.betti import betti
from nilbal.extension.group_ring import (
    GroupRingElem,
    Matrix,
    augment,
    mat_mul,
    vec_mat,
)
from nilbal.extension.tower import BaseSpec, LevelSpec, PcTower, TowerSpec, build_tower
from nilbal.models import FoxLyndonRecord
from nilbal.presentation.fox import fox_jacobian
from nilbal.presentation.parser import parse
from nilbal.presentation.words import Presentation, Word
from nilbal.utils import modp
from nilbal.utils.constants import PARTIAL3_MIN_K

logger = logging.getLogger(__name__)

PARTIAL3_PRESENTATION = (
    "group partial3 = < x, y, z | z^f*y*x*y^-1*x^-1, z^k, z*x*z*x^-1, z^l*y*z^-1*y^-1 >"
)

PARTIAL3_SPEC = TowerSpec(
    name="partial3",
    params={"k": 8, "f": 1, "l": 5},
    derived={"m": "inv(l, k)"},
    base=BaseSpec(order="k", name="z"),
    levels=[
        LevelSpec(name="y", conj={"z": "z^l"}),
        LevelSpec(name="x", conj={"z": "z^-1", "y": "y*z^(f*m)"}),
    ],
)


def validate_partial3(k: int, f: int, l: int) -> None:  # noqa: E741
    if k < PARTIAL3_MIN_K or k & (k - 1):
        raise ParameterInvalidError(f"k must be a power of 2 and >= {PARTIAL3_MIN_K}, got {k}")
    if f < 1 or k % f:
        raise ParameterInvalidError(f"f must divide k = {k}, got {f}")
    if not 1 < l < k:
        raise ParameterInvalidError(f"l must satisfy 1 < l < {k}, got {l}")
    if l % 4 != 1:
        raise ParameterInvalidError(f"l must be 1 mod 4, got {l}")


def partial3_tower(k: int, f: int, l: int) -> PcTower:  # noqa: E741
    validate_partial3(k, f, l)
    return build_tower(PARTIAL3_SPEC, {"k": k, "f": f, "l": l})


def partial3_presentation(k: int, f: int, l: int) -> Presentation:  # noqa: E741
    validate_partial3(k, f, l)
    return parse(PARTIAL3_PRESENTATION, {"k": k, "f": f, "l": l})


class _Ring:
    """Shorthands for elements of Z[G(k, f, l)]."""

    def __init__(self, t: PcTower):
        self.t = t
        self.one = GroupRingElem.one(t)
        self.zero = GroupRingElem.zero(t)
        self.z = GroupRingElem.generator(t, 0)
        self.y = GroupRingElem.generator(t, 1)
        self.x = GroupRingElem.generator(t, 2)
        self.nu = GroupRingElem.norm(t)

    def zpow(self, e: int) -> GroupRingElem:
        return GroupRingElem.generator(self.t, 0, e)

    def zsum(self, count: int, step: int = 1) -> GroupRingElem:
        """sum of z^(j step) for 0 <= j < count"""
        out = self.zero
        for j in range(count):
            out = out + self.zpow(j * step)
        return out

    def monomial(self, h: int, i: int, j: int) -> GroupRingElem:
        """x^h y^i z^j"""
        return GroupRingElem.of(self.t, (j % self.t.k, i, h))


def _closed_form_d2(R: _Ring, k: int, f: int, l: int) -> Matrix:  # noqa: E741
    """Rows r, s, t, u; columns e_x, e_y, e_z."""
    one, x, y, z, zero = R.one, R.x, R.y, R.z, R.zero
    zf = R.zpow(f)
    return [
        [zf * y - one, zf - x, R.zsum(f)],
        [zero, zero, R.nu],
        [z - one, zero, one + z * x],
        [zero, R.zpow(l) - one, R.zsum(l) - y],
    ]


def _fox_d2(R: _Ring, pres: Presentation) -> Matrix:
    """Fox derivatives of the presentation, read in Z[G] through collection."""
    t = R.t
    to_tower = [t.names.index(name) for name in pres.generator_names]
    column = [pres.generator_names.index(name) for name in ("x", "y", "z")]

    def image(w: Word) -> GroupRingElem:
        letters = tuple((to_tower[g], e) for g, e in w)
        return GroupRingElem.of(t, t.collect(Word(letters)))

    jac = fox_jacobian(pres)
    return [[row[c].map(image, R.zero) for c in column] for row in jac]


def _syzygy(
    R: _Ring, f: int, l: int, m: int, w: int,  # noqa: E741
    A: GroupRingElem, B: GroupRingElem, C: GroupRingElem, D: GroupRingElem,
) -> list[GroupRingElem]:
    """The solution (a, b, c, d) of (a, b, c, d) d2 = 0 for the given parameters."""
    one, x, y, z = R.one, R.x, R.y, R.z
    a = A * (z - one)
    c = -(A * (y * R.zpow(f * m) * R.zsum(m) - one)) + C * R.nu
    d = -(A * (z * x + R.zpow(f)) * R.zsum(m, l)) + D * R.nu
    b = A * (x + one) * w + B * (z - one) - C * (x + one) - D * (one * l - y)
    return [a, b, c, d]


def _require(checks: dict[str, bool], name: str, ok: bool, equation: str) -> None:
    checks[name] = ok
    if not ok:
        raise IdentityFailureError(equation)


def fox_lyndon_check(
    k: int, f: int, l: int, with_resolution: bool = True  # noqa: E741
) -> FoxLyndonRecord:
    """Verify the partial resolution identities of G(k, f, l) symbolically.

    Raises IdentityFailureError naming the first identity that fails.
    """
    validate_partial3(k, f, l)
    m = pow(l, -1, k)
    w = (m * l - 1) // k
    t = partial3_tower(k, f, l)
    R = _Ring(t)
    record = FoxLyndonRecord(k=k, f=f, l=l, m=m, w=w)
    checks = record.checks

    d1: Matrix = [[R.x - R.one], [R.y - R.one], [R.z - R.one]]
    d2 = _closed_form_d2(R, k, f, l)
    _require(
        checks, "fox", _fox_d2(R, partial3_presentation(k, f, l)) == d2,
        "Fox derivatives = closed-form d2",
    )
    _require(
        checks, "d1d2",
        all(e.is_zero() for row in mat_mul(d2, d1, 1, t) for e in row),
        "d2 d1 = 0",
    )

    nu = R.nu
    central = all(g * nu == nu * g for g in (R.x, R.y, R.z))
    _require(checks, "nu central", central, "g nu = nu g for g in x, y, z")
    _require(checks, "z nu", R.z * nu == nu, "z nu = nu")
    _require(checks, "nu squared", nu * nu == nu * k, f"nu^2 = {k} nu")
    _require(checks, "yx nu", R.y * R.x * nu == R.x * R.y * nu, "y x nu = x y nu")

    # the syzygy family is linear in (A, B, C, D): test one basis monomial at a time
    monomials = [
        (h, i, j) for h, i, j in product(range(-2, 3), repeat=3) if abs(h) + abs(i) + abs(j) <= 2
    ]
    epsilon_ok = True
    for role, (h, i, j) in product(range(4), monomials):
        coeffs = [R.zero] * 4
        coeffs[role] = R.monomial(h, i, j)
        sol = _syzygy(R, f, l, m, w, *coeffs)
        _require(
            checks, "syzygy family",
            all(e.is_zero() for e in vec_mat(sol, d2, 3, t)),
            f"(a, b, c, d) d2 = 0 for {'ABCD'[role]} = {coeffs[role].render()}",
        )
        epsilon_ok = epsilon_ok and all(e.augmentation() % 2 == 0 for e in sol)
    _require(checks, "epsilon2 syzygy", epsilon_ok, "epsilon_2 of a, b, c, d vanishes")

    eps = np.mod(np.array(augment(d2), dtype=np.int64), 2)
    expected = np.zeros((4, 3), dtype=np.int64)
    expected[0, 2] = f % 2
    _require(
        checks, "epsilon2 matrix", np.array_equal(eps, expected),
        f"epsilon_2(d2) is zero except f mod 2 = {f % 2} at (r, e_z)",
    )
    rank = modp.rank(eps, 2)
    record.epsilon2_matrix = eps.tolist()
    record.kernel_dim = 4 - rank
    record.beta1 = 3 - rank
    _require(
        checks, "beta1", record.beta1 == (2 if f == 1 else 3),
        f"beta1(G; F_2) = {2 if f == 1 else 3}",
    )
    _require(
        checks, "kernel dim", record.kernel_dim == record.beta1 + 1,
        "dim Ker(F_2 x d2) = beta1 + 1",
    )

    if with_resolution:
        report = betti(t, primes=[2], with_rationals=False)
        b1, b2 = report.beta(2)
        record.beta2_resolution = b2
        _require(checks, "resolution beta1", b1 == record.beta1, f"resolution beta1 = {b1}")
        _require(
            checks, "resolution beta2", b2 == record.beta1 + 1,
            f"resolution beta2 = {b2}, expected {record.beta1 + 1}",
        )
    logger.info("Fox-Lyndon check (k=%d, f=%d, l=%d) passed", k, f, l)
    return record
