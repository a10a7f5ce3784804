# coding=utf-8
from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from pathlib import Path
from typing import Callable, Sequence

__original_name__ = "py" "co" "ium"

try:
    from ._version import __version__
except ImportError:
    __version__ = ""

COMMANDS: tuple[str, ...] = ("mine", "verify", "bench", "gen")


def _float_list(text: str) -> list[float]:
    from .utils import parse_list

    try:
        return parse_list(text, float)
    except ValueError:
        raise ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _choice_list(choices: Sequence[str]) -> Callable[[str], list[str]]:
    def parse(text: str) -> list[str]:
        from .utils import parse_list

        values: list[str] = parse_list(text, str)
        unknown: list[str] = [value for value in values if value not in choices]
        if unknown or not values:
            raise ArgumentTypeError(f"choose from {', '.join(choices)}: {text!r}")
        return values

    return parse


def _argument_parser() -> ArgumentParser:
    ap: ArgumentParser = ArgumentParser(
        allow_abbrev=True,
        description="Mining of correlated high-utility itemsets from transaction databases.\n"
        "Run a command with `--help` for its options.",
    )
    ap.add_argument("command", choices=COMMANDS, help="what to do")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def _common_argument_parser(command: str, description: str) -> ArgumentParser:
    ap: ArgumentParser = ArgumentParser(prog=f"{__original_name__} {command}", allow_abbrev=True, description=description)
    ap.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="tell more about the progress, repeat for the debugging messages",
    )
    return ap


def _add_input_arguments(ap: ArgumentParser) -> None:
    ap.add_argument("-i", "--input", type=Path, required=True, help="the database in the SPMF format, maybe compressed")
    ap.add_argument(
        "--merge-duplicates",
        action="store_true",
        help="sum the utilities of an item repeated in a transaction instead of rejecting the line",
    )
    ap.add_argument(
        "--trust-sum",
        action="store_true",
        help="replace the declared transaction utilities that differ from the sum of the item utilities",
    )


def _add_threshold_arguments(ap: ArgumentParser) -> None:
    from .utils import BOUNDS_MODES, KULC_MODES, LU_SU, PRUNE

    ap.add_argument(
        "--min-util",
        type=float,
        required=True,
        help="the utility threshold as a share of the total utility, in [0, 1]",
    )
    ap.add_argument("--min-cor", type=float, required=True, help="the Kulc threshold, in [0, 1]")
    ap.add_argument("--absolute", action="store_true", help="take `--min-util` as the utility itself")
    ap.add_argument(
        "--kulc-mode",
        choices=KULC_MODES,
        default=PRUNE,
        help="prune the subtrees by Kulc while mining or only filter the results (default: %(default)s)",
    )
    ap.add_argument(
        "--bounds",
        choices=BOUNDS_MODES,
        default=LU_SU,
        help="the upper bounds to prune the search with (default: %(default)s)",
    )
    ap.add_argument("--max-len", type=int, help="the longest pattern to look for")


def _mine_argument_parser() -> ArgumentParser:
    ap: ArgumentParser = _common_argument_parser("mine", "Find the correlated high-utility itemsets.")
    _add_input_arguments(ap)
    _add_threshold_arguments(ap)
    ap.add_argument("-o", "--output", type=Path, help="the file to write the patterns to, the standard output if not set")
    ap.add_argument("--stats", type=Path, help="the file to write the run counters to as `key=value` lines")
    ap.add_argument("--stats-json", type=Path, help="the file to write the run counters to as JSON")
    return ap


def _verify_argument_parser() -> ArgumentParser:
    ap: ArgumentParser = _common_argument_parser(
        "verify",
        "Compare the mined patterns with the ones found by the exhaustive enumeration.",
    )
    _add_input_arguments(ap)
    _add_threshold_arguments(ap)
    ap.add_argument(
        "--max-items",
        type=int,
        default=20,
        help="refuse to enumerate more itemsets than this many items give (default: %(default)s)",
    )
    return ap


def _bench_argument_parser() -> ArgumentParser:
    from .utils import BOUNDS_MODES, KULC_MODES, LU_SU, PRUNE, TWU_ONLY

    ap: ArgumentParser = _common_argument_parser("bench", "Time the mining over the thresholds and the modes.")
    _add_input_arguments(ap)
    ap.add_argument("--min-util-list", type=_float_list, required=True, help="the utility thresholds, comma-separated")
    ap.add_argument("--min-cor-list", type=_float_list, required=True, help="the Kulc thresholds, comma-separated")
    ap.add_argument("--absolute", action="store_true", help="take the utility thresholds as the utilities themselves")
    ap.add_argument(
        "--modes",
        type=_choice_list(BOUNDS_MODES),
        default=[LU_SU, TWU_ONLY],
        help=f"the upper bounds to compare, comma-separated (default: {LU_SU},{TWU_ONLY})",
    )
    ap.add_argument(
        "--kulc-modes",
        type=_choice_list(KULC_MODES),
        default=[PRUNE],
        help=f"the ways to apply the Kulc threshold, comma-separated (default: {PRUNE})",
    )
    ap.add_argument("--max-len", type=int, help="the longest pattern to look for")
    ap.add_argument("--repeat", type=int, default=1, help="the runs to take the median time of (default: %(default)s)")
    ap.add_argument("--report", type=Path, help="the file to write the rows to as JSON Lines")
    ap.add_argument("--table", type=Path, help="the file to write the table to, the standard output if not set")
    ap.add_argument(
        "--fractions",
        type=_float_list,
        help="the leading shares of the database to time with the first thresholds and modes, like 0.2,0.4,0.6,0.8,1",
    )
    return ap


def _gen_argument_parser() -> ArgumentParser:
    from .synth import DENSITY_PROFILES, SPARSE

    ap: ArgumentParser = _common_argument_parser("gen", "Write a synthetic database in the SPMF format.")
    ap.add_argument("-o", "--out", type=Path, required=True, help="the file to write")
    ap.add_argument("--trans", type=int, required=True, help="the number of transactions")
    ap.add_argument("--items", type=int, required=True, help="the number of distinct items")
    ap.add_argument("--avg-len", type=float, required=True, help="the mean transaction length")
    ap.add_argument("--seed", type=int, default=0, help="the seed of the random generator (default: %(default)s)")
    ap.add_argument("--profile", choices=DENSITY_PROFILES, default=SPARSE, help="the data shape (default: %(default)s)")
    ap.add_argument(
        "--max-util",
        type=int,
        default=10,
        help="the highest utility of an item in a transaction (default: %(default)s)",
    )
    return ap


def _configure_logging(verbosity: int) -> None:
    level: int = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s: %(name)s: %(message)s")


def main_cli(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)

    try:
        command: str = _argument_parser().parse_args(argv[:1]).command
        ap: ArgumentParser = {
            "mine": _mine_argument_parser,
            "verify": _verify_argument_parser,
            "bench": _bench_argument_parser,
            "gen": _gen_argument_parser,
        }[command]()
        args: Namespace = ap.parse_intermixed_args(argv[1:])
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2

    _configure_logging(args.verbose)

    from .cli import COMMANDS as RUNNERS

    return RUNNERS[command](args)
