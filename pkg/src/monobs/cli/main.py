#!/usr/bin/env python3
"""
monobs command-line interface.

Every command prints one JSON document on stdout. Exit status is 0 on
success, 1 on domain errors and 2 on usage or parse errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from rich.console import Console

from ..config.settings import DEBUG_MODE, JOBS, LOG_LEVEL, validate_config
from ..core.errors import BudgetExceededError, IdealParseError, InconclusiveError, MonobsError
from ..models import ErrorDocument, SelftestDocument
from .commands import COMMAND_MODULES
from .inputs import positive_int

logger = logging.getLogger(__name__)

console = Console(stderr=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='Certificates, traces and debug logging')
    common.add_argument('--jobs', type=positive_int, default=JOBS,
                        help=f'Worker processes (default: {JOBS})')

    parser = argparse.ArgumentParser(
        prog='monobs',
        description='Exact invariants and Bernstein-Sato roots of monomial ideals',
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')
    for module in COMMAND_MODULES:
        module.register(subparsers, common)
    return parser


def _error_document(error: MonobsError) -> ErrorDocument:
    trace = None
    if isinstance(error, BudgetExceededError):
        trace = [list(s) if isinstance(s, tuple) else s for s in error.trace]
    elif isinstance(error, InconclusiveError) and error.tuple is not None:
        trace = [list(part) for part in error.tuple]
    return ErrorDocument(error=error.kind, message=str(error), trace=trace)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose or DEBUG_MODE else LOG_LEVEL,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    config = validate_config()
    if not config["valid"]:
        for issue in config["issues"]:
            console.print(f"[red]❌ {issue}[/red]")
        return 2

    try:
        doc = args.func(args)
    except IdealParseError as e:
        console.print(f"[red]❌ {e}[/red]")
        print(_error_document(e).model_dump_json(exclude_none=True))
        return 2
    except MonobsError as e:
        logger.error(f"{args.command} failed: {e}")
        console.print(f"[red]❌ {e}[/red]")
        print(_error_document(e).model_dump_json(exclude_none=True))
        return 1

    print(doc.model_dump_json(exclude_none=True))
    if isinstance(doc, SelftestDocument) and not doc.passed:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
