"""nilbal command-line entry point."""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from typing import NoReturn

from nilbal.classify.verifiers import THEOREMS
from nilbal.cli.commands import HANDLERS, PARAM_FLAGS, CommandResult
from nilbal.config import NilbalConfig
from nilbal.errors import NilbalError
from nilbal.utils.constants import EXIT_ERROR
from nilbal.utils.log_context import reset_context, set_context
from nilbal.utils.logger import configure_logging

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for failed assertions."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON-lines output")
    common.add_argument("--jobs", type=int, help="worker processes (default NILBAL_JOBS)")
    common.add_argument("--max-cosets", type=int, help="coset table size limit")
    common.add_argument("--bar-limit", type=int, help="largest |G| for degree-2 bar homology")
    common.add_argument(
        "-p", "--prime", type=int, action="append", dest="primes",
        help="prime to check (repeatable)",
    )
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    return common


def _param_options() -> argparse.ArgumentParser:
    params = _ArgumentParser(add_help=False)
    for name in PARAM_FLAGS:
        params.add_argument(f"--{name}", type=int, help=f"family parameter {name}")
    params.add_argument(
        "--set", action="append", metavar="NAME=VALUE", help="any parameter (repeatable)"
    )
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="nilbal",
        description="Low-degree homology of nilpotent groups and the homologically balanced check",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common, params = _common_options(), _param_options()

    betti = sub.add_parser(
        "betti", parents=[common, params], help="Betti numbers of a .tower or finite .grp"
    )
    betti.add_argument("input", help=".tower or .grp path, or a bundled file name")
    betti.add_argument(
        "--assert-balanced", action="store_true",
        help="exit 2 when the verdict is not-homologically-balanced",
    )

    verify = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    verify.add_argument("theorem", choices=THEOREMS)
    verify.add_argument("--bound", type=int, help="largest group order in the sweep")
    verify.add_argument("--kmax", type=int, default=16, help="largest k for partial3")
    verify.add_argument("--trials", type=int, default=1000, help="trials per prime for euler")
    verify.add_argument("--max-dim", type=int, default=8, help="largest module dimension")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--nmax", type=int, default=50, help="largest |n| for semidirect")
    verify.add_argument("--out", help="write the JSON-lines report here")

    enum = sub.add_parser("enum", help="list a parametrised family")
    families = enum.add_subparsers(dest="family", required=True)
    semidirect = families.add_parser("semidirect", parents=[common])
    semidirect.add_argument("--m", default="1..20", help="range of m, e.g. 1..20")
    semidirect.add_argument("--n", default="-5..5", help="range of n")
    metacyclic = families.add_parser("metacyclic", parents=[common])
    metacyclic.add_argument("--p", default="3")
    metacyclic.add_argument("--r", default="1")
    metacyclic.add_argument("--s", default="0..1")
    metacyclic.add_argument("--t", default="0..1")
    q8k = families.add_parser("q8k", parents=[common])
    q8k.add_argument("--k", default="1..4")

    coset = sub.add_parser(
        "coset-enum", parents=[common, params], help="order and structure of a finite .grp"
    )
    coset.add_argument("input")

    abel = sub.add_parser("abelianize", parents=[common, params], help="G^ab by Smith normal form")
    abel.add_argument("input")

    fox = sub.add_parser("fox", parents=[common, params], help="Fox Jacobian accounting")
    fox.add_argument("input", nargs="?", help="a .grp file; omit with --lyndon")
    fox.add_argument(
        "--lyndon", action="store_true",
        help="check the partial resolution identities of G(k, f, l)",
    )
    return parser


def load_config(args: argparse.Namespace, env_file: str | None = ".env") -> NilbalConfig:
    """Environment and .env first, command-line flags on top."""
    overrides = {
        "jobs": args.jobs,
        "max_cosets": args.max_cosets,
        "bar_size_limit": args.bar_limit,
        "primes": args.primes,
        "log_level": args.log_level,
    }
    if args.json:
        overrides["output_format"] = "json"
    return NilbalConfig(_env_file=env_file, **{k: v for k, v in overrides.items() if v is not None})


async def main(argv: list[str] | None = None) -> int:
    """Parse, configure, dispatch. Returns the exit code."""
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        configure_logging(level=config.log_level, log_file=config.log_file)
    except ValueError as e:
        print(f"nilbal: invalid configuration\n{e}", file=sys.stderr)
        return EXIT_ERROR
    args.json = config.output_format == "json"
    set_context(command=args.command)
    try:
        result: CommandResult = await HANDLERS[args.command](args, config)
    except (NilbalError, OSError, ValueError, OverflowError) as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"nilbal: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        reset_context()
    print(result.text)
    return result.exit_code


def run() -> None:
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    run()
