import argparse
import asyncio
import signal
import sys
from pathlib import Path
from typing import List, Optional

from catalog.operations import serialize_record
from catalog.schema import CatalogRecord
from config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_WORKERS
from models.certify import BoundMode
from models.cover import from_rows
from runner import run_enumeration
from search.enumerate import SearchSpec
from search.shards import analyze_matrix
from utils.errors import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    PrymscopeError,
)
from utils.logging_config import logger
from utils.parsers import parse_matrix_spec, parse_sigma_csv
from verify import SUITES, run_suites


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prymscope",
        description="Exact certificates of non-specialness for Prym families of abelian covers of the line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyse one cover matrix and involution")
    analyze.add_argument("--modulus", type=int, required=True)
    analyze.add_argument("--matrix", required=True, help="rows split by ';', entries by ',', or @path")
    analyze.add_argument("--sigma", required=True, help="comma separated involution")
    analyze.add_argument("--strict-etale", action="store_true")
    analyze.add_argument("--mode", choices=("unitary", "symplectic"), default="unitary")
    analyze.add_argument("--format", choices=("json", "text"), default="json")

    enumerate_ = sub.add_parser("enumerate", help="write the catalog of a search space")
    enumerate_.add_argument("--modulus", type=int, required=True)
    enumerate_.add_argument("--rows", type=int, required=True)
    enumerate_.add_argument("--cols-min", type=int, required=True)
    enumerate_.add_argument("--cols-max", type=int, required=True)
    enumerate_.add_argument("--strict-etale", action="store_true")
    enumerate_.add_argument("--mode", choices=("unitary", "symplectic"), default="unitary")
    enumerate_.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    enumerate_.add_argument("--out", type=Path, default=Path("catalog.jsonl"))
    enumerate_.add_argument("--resume", action="store_true")

    verify = sub.add_parser("verify-paper", help="run the reproduction suites")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    return parser


def format_text(record: CatalogRecord) -> str:
    types = ", ".join(
        f"{{{t['a']},{t['b']}}}{' self-dual' if t['self_dual'] else ''} x{t['multiplicity']}"
        for t in record.minus_types
    )
    lines = [
        f"cover:            N={record.modulus} m={record.rows} s={record.cols}",
        f"matrix:           {record.matrix}",
        f"sigma:            {record.sigma}",
        f"group order:      {record.group_order}",
        f"genus:            {record.genus}",
        f"ramification:     {record.ramification} ({record.fixed_points} fixed points)",
        f"prym dimension:   {record.prym_dim}",
        f"quotient genus:   {record.quotient_genus}",
        f"minus types:      {types or '-'}",
        f"bound (unitary):  {record.bound_unitary}",
        f"bound (+sympl.):  {record.bound_with_symplectic}",
        f"family dimension: {record.family_dim}",
        f"verdict:          {record.verdict} ({record.mode})",
        f"trichotomy:       {record.prop_trichotomy or 'not applicable'}",
        f"cyclic sums:      {'applicable' if record.prop_sums_applicable else 'not applicable'}",
        f"abelian theorem:  {'applicable' if record.thm_abelian_applicable else 'not applicable'}",
        f"two-row corollary:{' applicable' if record.cor_two_rows_applicable else ' not applicable'}",
        f"canonical key:    {record.canonical_key}",
    ]
    return "\n".join(lines)


def cmd_analyze(args: argparse.Namespace) -> int:
    matrix = from_rows(args.modulus, parse_matrix_spec(args.matrix))
    sigma = parse_sigma_csv(args.sigma, args.modulus)
    record = analyze_matrix(matrix, sigma, args.strict_etale, BoundMode.from_flag(args.mode))
    print(serialize_record(record) if args.format == "json" else format_text(record))
    return EXIT_OK


async def _enumerate(spec: SearchSpec, out: Path, resume: bool) -> bool:
    stop_event = asyncio.Event()

    def signal_handler(sig, frame):
        logger.info(f"Received signal {sig}, initiating shutdown...")
        stop_event.set()

    previous = {s: signal.signal(s, signal_handler) for s in (signal.SIGINT, signal.SIGTERM)}
    try:
        return await run_enumeration(spec, out, resume, stop_event)
    finally:
        for s, handler in previous.items():
            signal.signal(s, handler)


def cmd_enumerate(args: argparse.Namespace) -> int:
    spec = SearchSpec(
        modulus=args.modulus,
        rows=args.rows,
        cols_min=args.cols_min,
        cols_max=args.cols_max,
        strict_etale=args.strict_etale,
        mode=BoundMode.from_flag(args.mode),
        workers=args.workers,
    ).validate()

    completed = asyncio.run(_enumerate(spec, args.out, args.resume))
    if not completed:
        print(f"interrupted; rerun with --resume to finish {args.out}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_OK


def cmd_verify_paper(args: argparse.Namespace) -> int:
    reports = run_suites(args.suite, args.samples, args.seed)
    for report in reports:
        print("\n".join(report.lines()))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFICATION_FAILED


COMMANDS = {
    "analyze": cmd_analyze,
    "enumerate": cmd_enumerate,
    "verify-paper": cmd_verify_paper,
}


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK

    try:
        return COMMANDS[args.command](args)

    except PrymscopeError as e:
        print(f"{e.code}: {e.message}", file=sys.stderr)
        logger.error(f"{args.command} failed: {e}", exc_info=e.exit_code == EXIT_INTERNAL_ERROR)
        return e.exit_code

    except KeyboardInterrupt:
        logger.info("Stopped by user")
        return EXIT_INPUT_ERROR

    except Exception as e:
        print(f"INTERNAL_ERROR: {e}", file=sys.stderr)
        logger.error(f"Fatal error: {e}", exc_info=True)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(run())
