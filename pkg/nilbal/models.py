"""Core data models for nilbal.

All report-level data models are Python dataclasses, serving as the contract
between the computational modules, the verifiers and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any

from nilbal.utils.constants import (
    VERDICT_BALANCED,
    VERDICT_NOT_BALANCED,
    VERDICT_UNDETERMINED,
)

if TYPE_CHECKING:
    from nilbal.abelian.groups import FinAbGroup

__all__ = [
    # Enums
    "Verdict",
    "Provenance",
    "Regime",
    # Presentations
    "BalanceAccount",
    # Abelian cohomology
    "H2Decomposition",
    # Extensions
    "WangResult",
    "WangCheck",
    "BettiReport",
    "EulerDims",
    "FoxLyndonRecord",
    # Catalog / sweeps
    "Expectation",
    "SweepRecord",
    "SweepReport",
    "EnumRecord",
]


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------


class Verdict(Enum):
    """Outcome of the finitary homological-balance check."""

    BALANCED_CONSISTENT = VERDICT_BALANCED
    NOT_BALANCED = VERDICT_NOT_BALANCED
    UNDETERMINED = VERDICT_UNDETERMINED


class Provenance(Enum):
    """Where an expected catalog property comes from."""

    PUBLISHED = "PUBLISHED"
    DERIVED = "DERIVED"
    TRIVIAL = "TRIVIAL"


class Regime(Enum):
    """Splitting regime of H2(A; F_p) for an abelian group A."""

    SPLIT = "split"
    EXPONENT_TWO = "exponent-two"


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BalanceAccount:
    """Generator/relator bookkeeping of a presentation."""

    generators: int
    relators: int

    @property
    def deficiency(self) -> int:
        return self.generators - self.relators

    @property
    def balanced(self) -> bool:
        return self.deficiency == 0


# ---------------------------------------------------------------------------
# Abelian cohomology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class H2Decomposition:
    """Component dimensions of H2(A; F_p) and H^2(A; F_p).

    ``cup_image_dim`` and ``sq_image_dim`` are only meaningful in the
    exponent-two regime: they are the dimensions of the images of B*.A* under
    cup product and of the squaring map.
    """

    p: int
    wedge_dim: int
    tor_dim: int
    ext_dim: int
    regime: Regime
    cup_image_dim: int | None = None
    sq_image_dim: int | None = None
    cup_kernel_dim: int | None = None

    @property
    def total(self) -> int:
        return self.wedge_dim + self.tor_dim

    @property
    def cup_injective(self) -> bool | None:
        if self.cup_kernel_dim is None:
            return None
        return self.cup_kernel_dim == 0


# ---------------------------------------------------------------------------
# Extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WangResult:
    """Betti numbers of K x| Z predicted from the homology of K."""

    beta1: int
    beta2: int
    h1_coker: int
    h1_ker: int
    h2_coker: int
    h2_cyclic_module: bool   # dim H2/(t-1)H2 == 1


@dataclass(frozen=True)
class WangCheck:
    """Comparison of resolution Betti numbers with the Wang prediction at one prime."""

    p: int
    resolution: tuple[int, int]
    predicted: tuple[int, int]
    unipotent: bool

    @property
    def agrees(self) -> bool:
        return self.resolution == self.predicted


@dataclass
class BettiReport:
    """Low-degree Betti numbers of one group, with the balance verdict.

    ``betti`` maps a characteristic (0 for Q) to (beta0, beta1, beta2).
    """

    group_id: str
    params: dict[str, int] = field(default_factory=dict)
    hirsch_length: int | None = None
    order: int | None = None
    betti: dict[int, tuple[int, int, int]] = field(default_factory=dict)
    integral_h1: FinAbGroup | None = None
    integral_h2: FinAbGroup | None = None
    verdict: Verdict = Verdict.UNDETERMINED
    witness: int | None = None
    wang_checks: dict[int, WangCheck] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def beta(self, characteristic: int) -> tuple[int, int]:
        _, b1, b2 = self.betti[characteristic]
        return b1, b2

    def to_records(self) -> list[dict[str, Any]]:
        """One JSON-ready record per characteristic, in increasing order."""
        records = []
        for p in sorted(self.betti):
            _, b1, b2 = self.betti[p]
            records.append({
                "group_id": self.group_id,
                "params": dict(sorted(self.params.items())),
                "p": p,
                "beta1": b1,
                "beta2": b2,
                "verdict": self.verdict.value,
                "witness": self.witness,
            })
        return records

    def to_dict(self) -> dict[str, Any]:
        return {
            "group_id": self.group_id,
            "params": dict(sorted(self.params.items())),
            "hirsch_length": self.hirsch_length,
            "order": self.order,
            "betti": {str(p): list(b) for p, b in sorted(self.betti.items())},
            "integral_h1": None if self.integral_h1 is None else self.integral_h1.to_json(),
            "integral_h2": None if self.integral_h2 is None else self.integral_h2.to_json(),
            "verdict": self.verdict.value,
            "witness": self.witness,
            "wang": {
                str(p): {
                    "resolution": list(c.resolution),
                    "predicted": list(c.predicted),
                    "unipotent": c.unipotent,
                }
                for p, c in sorted(self.wang_checks.items())
            },
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class EulerDims:
    """Dimensions of H_i(Z^2; A) for a finite-dimensional module A."""

    b0: int
    b1: int
    b2: int

    @property
    def euler_characteristic(self) -> int:
        return self.b0 - self.b1 + self.b2


@dataclass
class FoxLyndonRecord:
    """Verification record for the Fox–Lyndon partial resolution of G(k, f, l)."""

    k: int
    f: int
    l: int  # noqa: E741
    m: int
    w: int
    checks: dict[str, bool] = field(default_factory=dict)
    epsilon2_matrix: list[list[int]] = field(default_factory=list)
    kernel_dim: int = 0
    beta1: int = 0
    beta2_resolution: int | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


# ---------------------------------------------------------------------------
# Catalog / sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expectation:
    """An expected property of a catalog entry, tagged with its provenance."""

    name: str
    value: Any
    provenance: Provenance


@dataclass
class SweepRecord:
    """One work item of a verification sweep."""

    theorem: str
    key: tuple[Any, ...]
    params: dict[str, Any]
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "key": list(self.key),
            "params": self.params,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class SweepReport:
    """All records of one sweep, merged in sorted key order."""

    theorem: str
    records: list[SweepRecord] = field(default_factory=list)
    annotations: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[SweepRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class EnumRecord:
    """One parameter tuple of a family listing."""

    family: str
    params: dict[str, int]
    nilpotent: bool | None
    order: int | None
    abelianization: FinAbGroup | None
    verdict: Verdict
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "params": dict(sorted(self.params.items())),
            "nilpotent": self.nilpotent,
            "order": self.order,
            "abelianization": (
                None if self.abelianization is None else self.abelianization.to_json()
            ),
            "verdict": self.verdict.value,
            "detail": self.detail,
        }
