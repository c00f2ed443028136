"""Report formatters: JSON lines and human-readable tables."""

import json
from collections.abc import Iterable, Mapping
from typing import Any

import pandas as pd

from nilbal.abelian.groups import FinAbGroup
from nilbal.fingroup.group import FiniteGroup
from nilbal.models import BalanceAccount, BettiReport, EnumRecord, SweepReport


def json_line(record: Mapping[str, Any]) -> str:
    """One deterministic JSON line."""
    return json.dumps(record, sort_keys=True, default=str)


def json_lines(records: Iterable[Mapping[str, Any]]) -> str:
    return "\n".join(json_line(r) for r in records)


def _table(rows: list[dict[str, Any]]) -> str:
    if not rows:
        return "(empty)"
    return pd.DataFrame(rows).to_string(index=False)


def _characteristic(p: int) -> str:
    return "Q" if p == 0 else f"F_{p}"


def format_betti_report(report: BettiReport, as_json: bool = False) -> str:
    """One record per characteristic; text mode adds the integral groups and the verdict."""
    if as_json:
        return json_lines(report.to_records())
    rows = [
        {"field": _characteristic(p), "beta1": b1, "beta2": b2}
        for p, (_, b1, b2) in sorted(report.betti.items())
    ]
    lines = [f"{report.group_id}", _table(rows)]
    if report.integral_h1 is not None:
        lines.append(f"H1(G; Z) = {report.integral_h1}")
    if report.integral_h2 is not None:
        lines.append(f"H2(G; Z) = {report.integral_h2}")
    verdict = report.verdict.value
    if report.witness is not None:
        verdict += f" (witness {_characteristic(report.witness)})"
    lines.append(f"verdict: {verdict}")
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines)


def sweep_summary(report: SweepReport) -> pd.DataFrame:
    """Record and failure counts, one row per theorem."""
    frame = pd.DataFrame(
        [{"theorem": r.theorem, "passed": r.passed} for r in report.records],
        columns=["theorem", "passed"],
    )
    if frame.empty:
        return pd.DataFrame({"theorem": [report.theorem], "records": [0], "failures": [0]})
    grouped = frame.groupby("theorem")["passed"]
    return pd.DataFrame({
        "records": grouped.size(),
        "failures": grouped.apply(lambda s: int((~s).sum())),
    }).reset_index()


def format_sweep(report: SweepReport, as_json: bool = False) -> str:
    if as_json:
        lines = [json_line(r.to_json_dict()) for r in report.records]
        lines += [
            json_line({"annotation": a, "theorem": report.theorem}) for a in report.annotations
        ]
        return "\n".join(lines)
    lines = [sweep_summary(report).to_string(index=False)]
    for r in report.failures:
        failed = [name for name, ok in r.detail.get("checks", {}).items() if not ok]
        lines.append(f"FAILED {list(r.key)}: {', '.join(failed)}")
    lines += [f"note: {a}" for a in report.annotations]
    return "\n".join(lines)


def format_enum(records: list[EnumRecord], as_json: bool = False) -> str:
    if as_json:
        return json_lines(r.to_json_dict() for r in records)
    rows = []
    for r in records:
        row: dict[str, Any] = dict(sorted(r.params.items()))
        row.update({
            "nilpotent": r.nilpotent,
            "order": r.order if r.order is not None else "inf",
            "abelianization": str(r.abelianization) if r.abelianization is not None else "-",
            "verdict": r.verdict.value,
        })
        rows.append(row)
    return _table(rows)


def format_group(G: FiniteGroup, ab: FinAbGroup, as_json: bool = False) -> str:
    data = {
        "group": G.name or "group",
        "order": G.order,
        "abelian": G.is_abelian(),
        "nilpotent": G.is_nilpotent(),
        "nilpotency_class": G.nilpotency_class(),
        "abelianization": ab.to_json(),
    }
    if as_json:
        return json_line(data)
    return "\n".join(
        f"{k}: {ab if k == 'abelianization' else v}" for k, v in data.items()
    )


def format_abelian(name: str, ab: FinAbGroup, as_json: bool = False) -> str:
    if as_json:
        return json_line({"group": name, "abelianization": ab.to_json()})
    return f"{name}^ab = {ab}"


def format_fox(
    name: str,
    account: BalanceAccount,
    beta1: Mapping[int, int],
    as_json: bool = False,
) -> str:
    data = {
        "group": name,
        "generators": account.generators,
        "relators": account.relators,
        "deficiency": account.deficiency,
        "beta1": {str(p): b for p, b in sorted(beta1.items())},
    }
    if as_json:
        return json_line(data)
    rows = [{"field": _characteristic(p), "beta1": b} for p, b in sorted(beta1.items())]
    balanced = "balanced" if account.balanced else f"deficiency {account.deficiency}"
    return "\n".join([
        f"{name}: {account.generators} generators, {account.relators} relators ({balanced})",
        _table(rows),
    ])
