"""Command handlers.

Each handler takes the parsed arguments and the configuration and returns a
CommandResult; nothing here prints or exits, so handlers are testable
without a subprocess. Exceptions propagate to ``nilbal.main``.
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass
from importlib import resources
from math import gcd
from pathlib import Path

from nilbal.abelian.groups import abelianize
from nilbal.classify import catalog, verifiers
from nilbal.classify.runner import ChunkSink
from nilbal.classify.verifiers import SweepSettings
from nilbal.cli.formatters import (
    format_abelian,
    format_betti_report,
    format_enum,
    format_fox,
    format_group,
    format_sweep,
    json_line,
)
from nilbal.config import NilbalConfig
from nilbal.errors import ParameterInvalidError, SizeLimitError
from nilbal.extension.betti import betti, mapping_torus_report
from nilbal.extension.fox_lyndon import fox_lyndon_check
from nilbal.extension.tower import load_tower
from nilbal.fingroup.group import coset_enumerate
from nilbal.models import EnumRecord, SweepRecord, SweepReport, Verdict
from nilbal.presentation.fox import balance_accounting, beta1
from nilbal.presentation.parser import load_presentation
from nilbal.presentation.words import Presentation
from nilbal.utils.constants import EXIT_ASSERTION_FAILED, EXIT_OK
from nilbal.utils.log_context import log_context

logger = logging.getLogger(__name__)

TOWER_SUFFIX = ".tower"

# tower/presentation parameters settable from the command line
PARAM_FLAGS = ("q", "k", "f", "l", "m", "n")


@dataclass
class CommandResult:
    text: str
    exit_code: int = EXIT_OK


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive, empty when b < a), ``a,b,c`` or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParameterInvalidError(f"not a range: {text!r}") from None


def resolve_input(name: str) -> Path:
    """A path on disk, else a bundled ``data/towers`` or ``data/groups`` file."""
    path = Path(name)
    if path.exists():
        return path
    folder = "towers" if path.suffix == TOWER_SUFFIX else "groups"
    bundled = resources.files("nilbal") / "data" / folder / path.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no such input: {name}")


def param_overrides(args: argparse.Namespace) -> dict[str, int]:
    params = {k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k, None) is not None}
    for item in getattr(args, "set", None) or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParameterInvalidError(f"expected NAME=VALUE, got {item!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise ParameterInvalidError(f"parameter {key!r} is not an integer: {value!r}") from None
    return params


def load_group(name: str, params: dict[str, int]) -> Presentation:
    return load_presentation(resolve_input(name), params)


# ---------------------------------------------------------------------------
# betti
# ---------------------------------------------------------------------------


async def cmd_betti(args: argparse.Namespace, config: NilbalConfig) -> CommandResult:
    """Betti numbers and verdict of a tower, or of a finite presented group."""
    path = resolve_input(args.input)
    params = param_overrides(args)
    with log_context(group=path.stem):
        if path.suffix == TOWER_SUFFIX:
            report = betti(load_tower(path, params), config.primes)
        else:
            pres = load_presentation(path, params)
            G = coset_enumerate(pres, config.max_cosets)
            report = catalog.finite_group_report(G, config.primes, config.bar_size_limit)
            report.group_id = pres.name or path.stem
    text = format_betti_report(report, args.json)
    if args.assert_balanced and report.verdict is Verdict.NOT_BALANCED:
        logger.warning("%s is not homologically balanced", report.group_id)
        return CommandResult(text, EXIT_ASSERTION_FAILED)
    return CommandResult(text)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


class JsonLinesSink:
    """Appends finished records to a JSON-lines file, flushing after every chunk.

    The final report is written over it in sorted order by ``finalize``; until
    then the file holds whatever completed, in completion order.
    """

    def __init__(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        self.path = path
        self.written = 0
        self._fh = path.open("w", encoding="utf-8")

    def __call__(self, chunk: list[SweepRecord]) -> None:
        for record in chunk:
            self._fh.write(json_line(record.to_json_dict()) + "\n")
        self._fh.flush()
        self.written += len(chunk)

    def close(self) -> None:
        self._fh.close()

    def finalize(self, report: SweepReport) -> None:
        self.close()
        self.path.write_text(format_sweep(report, as_json=True) + "\n", encoding="utf-8")
        logger.info("Wrote %d records to %s", len(report.records), self.path)


async def run_verifier(
    args: argparse.Namespace, config: NilbalConfig, on_chunk: ChunkSink | None = None
) -> SweepReport:
    settings = SweepSettings.from_config(config)
    jobs = config.jobs
    theorem = args.theorem
    if theorem == "h1":
        bound = args.bound or config.h1_bound
        return await verifiers.verify_theorem_h1(bound, settings, jobs, on_chunk=on_chunk)
    if theorem == "cycboth":
        bound = args.bound or config.cycboth_bound
        return await verifiers.verify_cycboth(bound, settings, jobs, on_chunk=on_chunk)
    if theorem == "partial3":
        return await verifiers.verify_partial3(args.kmax, jobs, on_chunk=on_chunk)
    if theorem == "euler":
        return await verifiers.verify_euler(
            args.trials, tuple(config.primes), args.max_dim, args.seed, jobs,
            on_chunk=on_chunk,
        )
    if theorem == "catalog":
        return await verifiers.verify_catalog(settings, jobs, on_chunk=on_chunk)
    if theorem == "semidirect":
        return await verifiers.verify_semidirect(
            args.bound or 100, args.nmax, settings, jobs, on_chunk=on_chunk
        )
    if theorem == "oracle":
        bound = args.bound or config.cycboth_bound
        return await verifiers.verify_oracle(bound, settings, jobs, on_chunk=on_chunk)
    raise ParameterInvalidError(f"unknown theorem {theorem!r}")


async def cmd_verify(args: argparse.Namespace, config: NilbalConfig) -> CommandResult:
    """Run a sweep; exit 2 when any record failed.

    With ``--out`` records are streamed to the file as items finish, so an
    interrupted sweep leaves the completed part behind.
    """
    sink = JsonLinesSink(Path(args.out)) if args.out else None
    try:
        report = await run_verifier(args, config, sink)
    except BaseException:
        if sink is not None:
            sink.close()
            logger.warning("Sweep interrupted; %d records kept in %s", sink.written, sink.path)
        raise
    if sink is not None:
        sink.finalize(report)
    text = format_sweep(report, args.json)
    if report.failures:
        logger.warning("%s: %d failed records", report.theorem, len(report.failures))
        return CommandResult(text, EXIT_ASSERTION_FAILED)
    return CommandResult(text)


# ---------------------------------------------------------------------------
# enum
# ---------------------------------------------------------------------------


def enum_semidirect(ms: list[int], ns: list[int]) -> list[EnumRecord]:
    records = []
    for m in ms:
        for n in ns:
            if m < 1 or n == 0 or gcd(m, n) != 1:
                continue
            nilpotent, e = catalog.semidirect_nilpotent(m, n)
            pres = catalog.semidirect_presentation(m, n)
            account = balance_accounting(pres)
            records.append(EnumRecord(
                "semidirect", {"m": m, "n": n}, nilpotent, None, abelianize(pres),
                # a balanced presentation is exhibited
                Verdict.BALANCED_CONSISTENT if account.balanced else Verdict.UNDETERMINED,
                {"exponent": e, "deficiency": account.deficiency},
            ))
    return records


def enum_metacyclic(
    ps: list[int], rs: list[int], ss: list[int], ts: list[int], config: NilbalConfig
) -> list[EnumRecord]:
    records = []
    for p in ps:
        for r in rs:
            for s in ss:
                for t in ts:
                    pres = catalog.metacyclic_presentation(p, r, s, t)
                    predicted = p ** (3 * r + 2 * s + t)
                    if predicted > config.max_cosets:
                        raise SizeLimitError("metacyclic group order", predicted, config.max_cosets)
                    G = coset_enumerate(pres, config.max_cosets)
                    report = catalog.finite_group_report(G, (p,), config.bar_size_limit)
                    records.append(EnumRecord(
                        "metacyclic", {"p": p, "r": r, "s": s, "t": t}, G.is_nilpotent(),
                        G.order, abelianize(pres), report.verdict,
                        {"predicted_order": predicted, "betti": report.beta(p)},
                    ))
    return records


def enum_q8k(ks: list[int], config: NilbalConfig) -> list[EnumRecord]:
    records = []
    for k in ks:
        if k < 1:
            continue
        if 8 * k > config.bar_size_limit:
            raise SizeLimitError("torsion subgroup Q(8k)", 8 * k, config.bar_size_limit)
        torsion = catalog.TorsionData(catalog.q8k_torsion_presentation(k), ("x", "x*y"))
        T = coset_enumerate(torsion.presentation, config.max_cosets)
        report = mapping_torus_report(
            T, torsion.automorphism(T), f"q8k({k})", config.primes, config.bar_size_limit
        )
        nilpotent = T.is_nilpotent() and not report.notes
        records.append(EnumRecord(
            "q8k", {"k": k}, nilpotent, None, abelianize(catalog.q8k_presentation(k)),
            report.verdict,
            {"torsion_order": T.order, "balanced_presentation": "unknown"},
        ))
    return records


async def cmd_enum(args: argparse.Namespace, config: NilbalConfig) -> CommandResult:
    """One record per parameter tuple of a family."""
    if args.family == "semidirect":
        records = enum_semidirect(parse_range(args.m), parse_range(args.n))
    elif args.family == "metacyclic":
        records = enum_metacyclic(
            parse_range(args.p), parse_range(args.r), parse_range(args.s), parse_range(args.t),
            config,
        )
    else:
        records = enum_q8k(parse_range(args.k), config)
    logger.info("enum %s: %d records", args.family, len(records))
    return CommandResult(format_enum(records, args.json))


# ---------------------------------------------------------------------------
# coset-enum, abelianize, fox
# ---------------------------------------------------------------------------


async def cmd_coset_enum(args: argparse.Namespace, config: NilbalConfig) -> CommandResult:
    pres = load_group(args.input, param_overrides(args))
    G = coset_enumerate(pres, config.max_cosets)
    return CommandResult(format_group(G, G.abelianization(), args.json))


async def cmd_abelianize(args: argparse.Namespace, config: NilbalConfig) -> CommandResult:
    path = resolve_input(args.input)
    params = param_overrides(args)
    if path.suffix == TOWER_SUFFIX:
        tower = load_tower(path, params)
        return CommandResult(
            format_abelian(tower.name or path.stem, tower.abelianization().group, args.json)
        )
    pres = load_presentation(path, params)
    return CommandResult(format_abelian(pres.name or path.stem, abelianize(pres), args.json))


async def cmd_fox(args: argparse.Namespace, config: NilbalConfig) -> CommandResult:
    """Balance accounting and beta1 from the augmented Fox Jacobian.

    With ``--lyndon`` the partial resolution identities of G(k, f, l) are
    checked instead.
    """
    params = param_overrides(args)
    if args.lyndon:
        record = fox_lyndon_check(params.get("k", 8), params.get("f", 1), params.get("l", 5))
        data = {
            "k": record.k, "f": record.f, "l": record.l, "m": record.m, "w": record.w,
            "checks": record.checks, "beta1": record.beta1,
            "beta2": record.beta2_resolution, "kernel_dim": record.kernel_dim,
        }
        if args.json:
            return CommandResult(json_line(data))
        return CommandResult("\n".join(f"{k}: {v}" for k, v in data.items()))
    if not args.input:
        raise ParameterInvalidError("fox needs an input presentation unless --lyndon is given")
    pres = load_group(args.input, params)
    dims = {p: beta1(pres, p) for p in [0, *config.primes]}
    return CommandResult(
        format_fox(pres.name or Path(args.input).stem, balance_accounting(pres), dims, args.json)
    )


HANDLERS = {
    "betti": cmd_betti,
    "verify": cmd_verify,
    "enum": cmd_enum,
    "coset-enum": cmd_coset_enum,
    "abelianize": cmd_abelianize,
    "fox": cmd_fox,
}
