"""Named groups and parametrised families, with tagged expected properties.

Tower families are ``TowerSpec`` documents built with parameter overrides;
families that are not iterated extensions of a cyclic group by Z (finite
metacyclic groups, Q(8k) x| Z, the metabelian example) are carried as
presentations, together with the torsion subgroup and the automorphism of it
induced by the infinite generator when G = T x| Z.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from math import gcd

from sympy import factorint, isprime, primefactors
from sympy.ntheory import n_order

from nilbal.abelian.groups import FinAbGroup, abelianize
from nilbal.errors import NotCoprimeError, ParameterInvalidError
from nilbal.extension.betti import DEFAULT_PRIMES, betti, decide_verdict
from nilbal.extension.fox_lyndon import PARTIAL3_PRESENTATION, PARTIAL3_SPEC, validate_partial3
from nilbal.extension.tower import BaseSpec, LevelSpec, PcTower, TowerSpec, build_tower
from nilbal.fingroup.bar import bar_homology
from nilbal.fingroup.group import FiniteGroup, GrpAutomorphism
from nilbal.fingroup.presolution import p_group_betti
from nilbal.models import BettiReport, Expectation, Provenance, Verdict
from nilbal.presentation.parser import parse, parse_word
from nilbal.presentation.words import Presentation

logger = logging.getLogger(__name__)

# Expectation names
ORDER = "order"
TORSION_ORDER = "torsion_order"
HIRSCH = "hirsch_length"
ABELIANIZATION = "abelianization"
VERDICT = "verdict"
WITNESS = "witness"
NILPOTENT = "nilpotent"
TORSION_H2_TRIVIAL = "torsion_h2_trivial"


def betti_key(characteristic: int) -> str:
    """Expectation name of (beta1, beta2) in a characteristic (0 for Q)."""
    return f"betti_{characteristic}"


# Families surviving the classification of balanced abelian-by-Z^2 groups
Z2_SURVIVORS = frozenset({"z2", "gamma", "omega"})


# ---------------------------------------------------------------------------
# Tower families
# ---------------------------------------------------------------------------

TOWER_SPECS: dict[str, TowerSpec] = {
    "z": TowerSpec(name="z", base=BaseSpec(order=0, name="t")),
    "z2": TowerSpec(
        name="z2",
        base=BaseSpec(order=0, name="y"),
        levels=[LevelSpec(name="x")],
    ),
    "semidirect": TowerSpec(
        name="semidirect",
        params={"m": 4, "n": -1},
        base=BaseSpec(order="m", name="a"),
        levels=[LevelSpec(name="t", conj={"a": "a^n"})],
    ),
    "gamma": TowerSpec(
        name="gamma",
        params={"q": 1},
        base=BaseSpec(order=0, name="z"),
        levels=[LevelSpec(name="y"), LevelSpec(name="x", conj={"y": "y*z^q"})],
    ),
    "omega": TowerSpec(
        name="omega",
        base=BaseSpec(order=0, name="b"),
        levels=[
            LevelSpec(name="a"),
            LevelSpec(name="u"),
            LevelSpec(name="t", conj={"a": "a*b", "u": "u*a"}),
        ],
    ),
    "heisenberg_mod": TowerSpec(
        name="heisenberg_mod",
        params={"p": 3},
        base=BaseSpec(order="p", name="z"),
        levels=[LevelSpec(name="y"), LevelSpec(name="x", conj={"y": "y*z"})],
    ),
    "z2_x_cyclic": TowerSpec(
        name="z2_x_cyclic",
        params={"n": 2},
        base=BaseSpec(order="n", name="z"),
        levels=[LevelSpec(name="y"), LevelSpec(name="x")],
    ),
    "partial3": PARTIAL3_SPEC,
}


def tower_family(family: str, params: Mapping[str, int] | None = None) -> PcTower:
    """Build a member of a named tower family."""
    spec = TOWER_SPECS.get(family)
    if spec is None:
        raise ParameterInvalidError(
            f"unknown tower family {family!r}; expected one of {sorted(TOWER_SPECS)}"
        )
    values = {**spec.params, **{k: v for k, v in (params or {}).items() if v is not None}}
    if family == "semidirect":
        m, n = values["m"], values["n"]
        if m < 1:
            raise ParameterInvalidError(f"m must be >= 1, got {m}")
        if gcd(m, n) != 1:
            raise NotCoprimeError(f"gcd({m}, {n}) != 1")
    elif family == "partial3":
        validate_partial3(values["k"], values["f"], values["l"])
    elif family == "heisenberg_mod" and values["p"] < 2:
        raise ParameterInvalidError(f"p must be >= 2, got {values['p']}")
    tower = build_tower(spec, values)
    label = ",".join(f"{k}={v}" for k, v in sorted(values.items()) if k in spec.params)
    tower.name = f"{family}({label})" if label else family
    return tower


def tower_document(family: str) -> str:
    """The ``.tower`` JSON document of a family."""
    return TOWER_SPECS[family].model_dump_json(indent=2, exclude_defaults=True)


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


def semidirect_presentation(m: int, n: int) -> Presentation:
    return parse(f"group semidirect = < a, t | a^{m}, t*a*t^-1 = a^({n}) >")


def semidirect_quotient_presentation(m: int, n: int) -> Presentation:
    """The finite quotient Z/m x| Z/N with N the order of n mod m."""
    order = n_order(n % m, m) if m > 1 else 1
    return parse(f"group semidirect_quotient = < a, t | a^{m}, t^{order}, t*a*t^-1 = a^({n}) >")


def gamma_presentation(q: int) -> Presentation:
    return parse(f"group gamma = < x, y, z | [x, y] = z^{q}, [x, z], [y, z] >")


def omega_presentation() -> Presentation:
    return parse("group omega = < t, u | [t, [t, [t, u]]], [u, [t, u]] >")


def heisenberg_presentation(p: int) -> Presentation:
    return parse(f"group heisenberg_mod = < x, y | [x, [x, y]], [y, [x, y]], [x, y]^{p} >")


def z2_x_cyclic_presentation(n: int) -> Presentation:
    return parse(f"group z2_x_cyclic = < x, y, z | [x, y], [x, z], [y, z], z^{n} >")


def partial3_presentation_text(k: int, f: int, l: int) -> Presentation:  # noqa: E741
    return parse(PARTIAL3_PRESENTATION, {"k": k, "f": f, "l": l})


def metacyclic_presentation(p: int, r: int, s: int, t: int) -> Presentation:
    """< a, b | b^(p^(r+s+t)) = a^(p^(r+s)), b a b^-1 = a^(1+p^r) >, of order p^(3r+2s+t)."""
    if r < 1 or s < 0 or t < 0:
        raise ParameterInvalidError(f"need r >= 1 and s, t >= 0, got r={r}, s={s}, t={t}")
    if not isprime(p):
        raise ParameterInvalidError(f"p must be prime, got {p}")
    return parse(
        f"group metacyclic = < a, b | b^{p ** (r + s + t)} = a^{p ** (r + s)}, "
        f"b*a*b^-1 = a^{1 + p ** r} >"
    )


def q8k_presentation(k: int) -> Presentation:
    """Q(8k) x| Z as < t, y | [t, y]^(2k) = y^2, [t, [t, y]] >."""
    return parse(f"group q8k = < t, y | [t, y]^{2 * k} = y^2, [t, [t, y]] >")


def q8k_torsion_presentation(k: int) -> Presentation:
    return parse(f"group Q{8 * k} = < x, y | x^{2 * k} = y^2, y*x*y^-1 = x^-1 >")


def metabelian_presentation(m: int) -> Presentation:
    return parse(
        "group metabelian = < t, x, y | t*x*t^-1 = y, t*y*t^-1 = x^-1*y^2, "
        f"y*x*y^-1 = x^{m + 1} >"
    )


def metabelian_torsion_presentation(m: int) -> Presentation:
    return parse(f"group metabelian_torsion = < x, y | x^{m} = y^{m}, y*x*y^-1 = x^{m + 1} >")


# ---------------------------------------------------------------------------
# Entries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionData:
    """The finite torsion subgroup T of G = T x|_psi Z.

    ``psi_images`` are words over T's generators giving the action of the
    infinite generator.
    """

    presentation: Presentation
    psi_images: tuple[str, ...] | None = None

    def automorphism(self, T: FiniteGroup) -> GrpAutomorphism:
        if self.psi_images is None:
            raise ValueError("no action recorded for this torsion subgroup")
        names = self.presentation.generator_names
        images = [T.evaluate(parse_word(w, names)) for w in self.psi_images]
        return GrpAutomorphism.from_generator_images(T, images)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A named group with tagged expectations."""

    name: str
    family: str
    presentation: Presentation
    tower: PcTower | None = None
    params: dict[str, int] = field(default_factory=dict)
    expectations: tuple[Expectation, ...] = ()
    torsion: TorsionData | None = None
    abelian_by_z2: bool = False

    def __post_init__(self) -> None:
        names = [e.name for e in self.expectations]
        if len(set(names)) != len(names):
            raise ValueError(f"{self.name}: duplicate expectations in {names}")
        for e in self.expectations:
            if not isinstance(e.provenance, Provenance):
                raise ValueError(f"{self.name}: expectation {e.name} has no provenance tag")

    def expected(self, name: str) -> Expectation | None:
        for e in self.expectations:
            if e.name == name:
                return e
        return None

    @property
    def is_finite(self) -> bool:
        return self.expected(ORDER) is not None


def _x(name: str, value: object, provenance: Provenance) -> Expectation:
    return Expectation(name, value, provenance)


P, D, T_ = Provenance.PUBLISHED, Provenance.DERIVED, Provenance.TRIVIAL
BALANCED, NOT_BALANCED = Verdict.BALANCED_CONSISTENT, Verdict.NOT_BALANCED


def _z_entries() -> list[CatalogEntry]:
    return [
        CatalogEntry(
            "z", "z", parse("group z = < t | >"), tower_family("z"),
            expectations=(
                _x(HIRSCH, 1, T_),
                _x(ABELIANIZATION, FinAbGroup.free(1), T_),
                _x(VERDICT, BALANCED, T_),
                _x(betti_key(0), (1, 0), T_),
            ),
        ),
        CatalogEntry(
            "z2", "z2", parse("group z2 = < x, y | [x, y] >"), tower_family("z2"),
            expectations=(
                _x(HIRSCH, 2, T_),
                _x(ABELIANIZATION, FinAbGroup.free(2), T_),
                _x(VERDICT, BALANCED, T_),
                _x(betti_key(0), (2, 1), T_),
            ),
            abelian_by_z2=True,
        ),
    ]


def _semidirect_entry(m: int, n: int, provenance: Provenance = D) -> CatalogEntry:
    params = {"m": m, "n": n}
    coker = gcd(m, n - 1)
    return CatalogEntry(
        f"semidirect({m},{n})", "semidirect", semidirect_presentation(m, n),
        tower_family("semidirect", params), params,
        expectations=(
            _x(HIRSCH, 1, T_),
            _x(NILPOTENT, semidirect_nilpotent(m, n)[0], P),
            _x(ABELIANIZATION, FinAbGroup.from_orders(0, coker), provenance),
            _x(VERDICT, BALANCED, P),
        ),
    )


def _gamma_entry(q: int) -> CatalogEntry:
    return CatalogEntry(
        f"gamma({q})", "gamma", gamma_presentation(q), tower_family("gamma", {"q": q}),
        {"q": q},
        expectations=(
            _x(HIRSCH, 3, P),
            _x(ABELIANIZATION, FinAbGroup.from_orders(0, 0, q), D),
            _x(VERDICT, BALANCED, P),
            _x(betti_key(0), (2, 2), D),
        ),
        abelian_by_z2=True,
    )


def _heisenberg_entry(p: int) -> CatalogEntry:
    return CatalogEntry(
        f"heisenberg_mod({p})", "heisenberg_mod", heisenberg_presentation(p),
        tower_family("heisenberg_mod", {"p": p}), {"p": p},
        expectations=(
            _x(HIRSCH, 2, D),
            _x(ABELIANIZATION, FinAbGroup.free(2), D),
            _x(VERDICT, NOT_BALANCED, P),
            _x(WITNESS, p, P),
            _x(betti_key(p), (2, 3), D),
        ),
        abelian_by_z2=True,
    )


def _omega_entry() -> CatalogEntry:
    return CatalogEntry(
        "omega", "omega", omega_presentation(), tower_family("omega"),
        expectations=(
            _x(HIRSCH, 4, P),
            _x(ABELIANIZATION, FinAbGroup.free(2), D),
            _x(VERDICT, BALANCED, P),
            _x(betti_key(0), (2, 2), P),
        ),
        abelian_by_z2=True,
    )


def _z2_x_cyclic_entry(n: int) -> CatalogEntry:
    witness = min(primefactors(n))
    return CatalogEntry(
        f"z2_x_cyclic({n})", "z2_x_cyclic", z2_x_cyclic_presentation(n),
        tower_family("z2_x_cyclic", {"n": n}), {"n": n},
        expectations=(
            _x(HIRSCH, 2, T_),
            _x(ABELIANIZATION, FinAbGroup.from_orders(0, 0, n), T_),
            _x(VERDICT, NOT_BALANCED, P),
            _x(WITNESS, witness, D),
        ),
        abelian_by_z2=True,
    )


def _partial3_entry(k: int, f: int, l: int) -> CatalogEntry:  # noqa: E741
    params = {"k": k, "f": f, "l": l}
    b1 = 2 if f == 1 else 3
    return CatalogEntry(
        f"partial3({k},{f},{l})", "partial3", partial3_presentation_text(k, f, l),
        tower_family("partial3", params), params,
        expectations=(
            _x(HIRSCH, 2, D),
            _x(VERDICT, NOT_BALANCED, D),
            _x(WITNESS, 2, D),
            _x(betti_key(2), (b1, b1 + 1), P),
        ),
    )


def _q8k_entry(k: int) -> CatalogEntry:
    return CatalogEntry(
        f"q8k({k})", "q8k", q8k_presentation(k), params={"k": k},
        expectations=(
            _x(HIRSCH, 1, T_),
            _x(TORSION_ORDER, 8 * k, T_),
            _x(ABELIANIZATION, FinAbGroup.from_orders(0, 2), D),
            _x(VERDICT, BALANCED, P),
            _x(TORSION_H2_TRIVIAL, True, P),
        ),
        torsion=TorsionData(q8k_torsion_presentation(k), ("x", "x*y")),
    )


def _metacyclic_entry(p: int, r: int, s: int, t: int) -> CatalogEntry:
    return CatalogEntry(
        f"metacyclic({p},{r},{s},{t})", "metacyclic", metacyclic_presentation(p, r, s, t),
        params={"p": p, "r": r, "s": s, "t": t},
        expectations=(
            _x(ORDER, p ** (3 * r + 2 * s + t), P),
            _x(ABELIANIZATION, FinAbGroup.from_orders(p**r, p ** (r + s + t)), D),
            _x(VERDICT, BALANCED, P),
            _x(TORSION_H2_TRIVIAL, True, P),
        ),
    )


def _metabelian_entry(m: int) -> CatalogEntry:
    return CatalogEntry(
        f"metabelian({m})", "metabelian", metabelian_presentation(m), params={"m": m},
        expectations=(
            _x(HIRSCH, 1, P),
            _x(TORSION_ORDER, m**3, D),
            _x(ABELIANIZATION, FinAbGroup.from_orders(0, m), D),
            _x(TORSION_H2_TRIVIAL, True, P),
        ),
        torsion=TorsionData(metabelian_torsion_presentation(m), ("y", "x^-1*y^2")),
    )


def build_catalog(
    gamma_qs: Iterable[int] = range(1, 11),
    heisenberg_primes: Iterable[int] = (2, 3, 5),
    metabelian_ms: Iterable[int] = (4, 9),
) -> list[CatalogEntry]:
    """Every catalog entry, in a fixed order."""
    entries = _z_entries()
    entries.append(_semidirect_entry(4, -1, P))
    entries += [_semidirect_entry(m, n) for m, n in ((8, 5), (5, 6), (9, 4))]
    entries += [_gamma_entry(q) for q in gamma_qs]
    entries.append(_omega_entry())
    entries += [_heisenberg_entry(p) for p in heisenberg_primes]
    entries.append(_z2_x_cyclic_entry(2))
    entries.append(_partial3_entry(8, 1, 5))
    entries += [_q8k_entry(k) for k in (1, 2)]
    entries += [_metacyclic_entry(3, 1, s, t) for s, t in ((0, 0), (0, 1), (1, 0))]
    entries += [_metabelian_entry(m) for m in metabelian_ms]
    return entries


def catalog_entry(name: str) -> CatalogEntry:
    for entry in build_catalog():
        if entry.name == name:
            return entry
    raise ParameterInvalidError(f"no catalog entry named {name!r}")


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def semidirect_nilpotent(m: int, n: int) -> tuple[bool, int | None]:
    """Whether Z/m x|_n Z is nilpotent, with the least e such that m | (n - 1)^e."""
    if m < 1:
        raise ParameterInvalidError(f"m must be >= 1, got {m}")
    if gcd(m, n) != 1:
        raise NotCoprimeError(f"gcd({m}, {n}) != 1")
    bound = sum(factorint(m).values())
    for e in range(bound + 1):
        if pow(n - 1, e, m) == 0:
            return True, e
    return False, None


def abelianization_isomorphic(p1: Presentation, p2: Presentation) -> bool:
    return abelianize(p1) == abelianize(p2)


def check_not_balanced(
    entry: CatalogEntry, primes: Iterable[int] = DEFAULT_PRIMES
) -> BettiReport:
    """Run the tower computation of an entry; the verdict is on the report."""
    if entry.tower is None:
        raise ParameterInvalidError(f"{entry.name} has no tower")
    report = betti(entry.tower, primes)
    report.group_id = entry.name
    return report


def finite_group_report(
    G: FiniteGroup,
    primes: Iterable[int] = DEFAULT_PRIMES,
    bar_limit: int = 48,
) -> BettiReport:
    """Betti numbers of a finite group: the bar complex up to ``bar_limit``,
    minimal resolutions of Sylow subgroups beyond it (nilpotent groups only)."""
    report = BettiReport(group_id=G.name or "group", hirsch_length=0, order=G.order)
    report.betti[0] = (1, 0, 0)
    for p in sorted(set(primes) | set(primefactors(G.order))):
        if G.order % p:
            report.betti[p] = (1, 0, 0)
        elif G.order <= bar_limit:
            report.betti[p] = bar_homology(G, p, 2, bar_limit).dims
        else:
            report.betti[p] = p_group_betti(G, p)
    report.verdict, report.witness = decide_verdict(report.betti)
    logger.info("%s: betti %s, %s", report.group_id, report.betti, report.verdict.value)
    return report


def h2_trivial(G: FiniteGroup, bar_limit: int = 48) -> bool:
    """H_2(G; Z) = 0 for a finite group, decided by beta2 = beta1 at every p dividing |G|."""
    report = finite_group_report(G, (), bar_limit)
    return all(b2 == b1 for p, (_, b1, b2) in report.betti.items() if p)


def family_members(family: str, ranges: Mapping[str, Sequence[int]]) -> list[dict[str, int]]:
    """Parameter tuples of a family listing, in lexicographic order."""
    keys = sorted(ranges)
    out: list[dict[str, int]] = [{}]
    for key in keys:
        out = [{**d, key: v} for d in out for v in ranges[key]]
    logger.debug("%s: %d parameter tuples", family, len(out))
    return out
