"""Argument parsing and dispatch for the ``tree-hunt`` command line."""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from src.cli import commands
from src.config import get_settings
from src.services.certificates import CertificateFormatError
from src.services.dimacs import DimacsFormatError
from src.services.generators import GeneratorError
from src.services.graph_ops import GraphError
from src.utils.logging_config import StructuredLogger, init_logging
from src.utils.validation import InputValidationError, sanitize_log_data

logger = logging.getLogger(__name__)
events = StructuredLogger("cli")

INPUT_ERRORS = (
    CertificateFormatError,
    DimacsFormatError,
    GeneratorError,
    GraphError,
    InputValidationError,
    ValueError,
    OSError,
)

HANDLERS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "generate": commands.cmd_generate,
    "color": commands.cmd_color,
    "oracle": commands.cmd_oracle,
    "hunt": commands.cmd_hunt,
    "verify": commands.cmd_verify,
    "stats": commands.cmd_stats,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tree-hunt",
        description=f"{get_settings().app_name}: search triangle-free radius-two "
        "graphs for induced T(t,2,1) trees",
    )
    parser.add_argument("--log-level", default=None, help="Override the log level")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="Write a test graph in DIMACS format")
    families = gen.add_subparsers(dest="family", required=True)
    p = families.add_parser("cycle", help="Cycle C_n")
    p.add_argument("--n", type=int, required=True)
    p = families.add_parser("mycielski", help="C5 after k Mycielski steps")
    p.add_argument("--k", type=int, required=True)
    p = families.add_parser("kneser", help="Kneser graph KG(n,k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = families.add_parser("random", help="Seeded triangle-free process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="Target edge count")
    p.add_argument("--seed", type=int, required=True)
    for p in families.choices.values():
        p.add_argument("--output", default=None, help="Write to file instead of stdout")

    color = sub.add_parser("color", help="Chromatic number by branch and bound")
    color.add_argument("--input", type=Path, required=True)
    color.add_argument("--budget", type=int, default=None, help="Search node budget")

    oracle = sub.add_parser("oracle", help="Brute-force induced tree search")
    oracle.add_argument("--spec", required=True, help="Level degrees, e.g. 2,2,1")
    oracle.add_argument("--input", type=Path, required=True)

    hunt = sub.add_parser("hunt", help="Hunt for an induced T(t,2,1)")
    hunt.add_argument("--t", type=int, required=True)
    hunt.add_argument("--input", type=Path, required=True)
    hunt.add_argument(
        "--no-fallback", action="store_true", help="Do not run the brute-force oracle"
    )
    hunt.add_argument("--jobs", type=int, default=None, help="Worker processes")
    hunt.add_argument("--output", default=None, help="Write the certificate to a file")

    verify = sub.add_parser("verify", help="Check a certificate against a graph")
    verify.add_argument("--cert", type=Path, required=True)
    verify.add_argument("--input", type=Path, required=True)

    stats = sub.add_parser("stats", help="Basic graph statistics")
    stats.add_argument("--input", type=Path, required=True)

    return parser


def run(argv: Optional[Sequence[str]] = None, configure_logging: bool = True) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        0 on success or ``found``, 1 on ``not_found``/``step_failed`` or a
        negative answer, 2 on usage, premise or input errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if configure_logging:
        init_logging(get_settings(), args.log_level)

    start = time.perf_counter()
    try:
        exit_code = HANDLERS[args.command](args)
    except INPUT_ERRORS as e:
        message = sanitize_log_data(str(e))
        events.log_error(type(e).__name__, message, command=args.command)
        sys.stderr.write(f"error: {message}\n")
        exit_code = commands.EXIT_INPUT_ERROR
    events.log_command(args.command, exit_code, time.perf_counter() - start)
    return exit_code


def main() -> None:
    sys.exit(run())
