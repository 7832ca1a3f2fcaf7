"""Command implementations; each returns the process exit code."""

import argparse
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from src.config import get_config
from src.core.curve import Curve, new_curve
from src.errors import DomainError
from src.fields.rationals import as_fraction
from src.growth.analysis import analyze
from src.growth.models import AnalysisReport
from src.growth.tables import get_tables
from src.logging_config import get_logger

from .fixtures import FixtureRow, find_row, load_fixture
from .rendering import (
    RunDocument,
    TablesDocument,
    compare_row,
    render_outcome,
    render_report,
    render_tables,
    summary_line,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

T = TypeVar("T")
R = TypeVar("R")


def parse_coefficients(text: str) -> Curve:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise DomainError(f"Expected five coefficients a1,a2,a3,a4,a6, got {text!r}")
    return new_curve(*(as_fraction(p) for p in parts))


def _fixture_path(args: argparse.Namespace) -> str:
    return args.fixture or get_config().fixture_path


def _parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int) -> list[R]:
    """Ordered map, on a thread pool when jobs > 1."""
    if jobs <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _analyze_row(row: FixtureRow) -> AnalysisReport:
    return analyze(row.curve, label=row.label)


def _emit(document: RunDocument) -> None:
    print(document.model_dump_json(indent=2))


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.coeffs:
        curve, label = parse_coefficients(args.coeffs), None
    else:
        row = find_row(load_fixture(_fixture_path(args)), args.label)
        curve, label = row.curve, row.label

    report = analyze(curve, label=label)
    if args.json:
        _emit(RunDocument(command="analyze", reports=[report]))
    else:
        print(render_report(report))
    return EXIT_FAILURE if report.flags.failures() else EXIT_OK


def cmd_batch(args: argparse.Namespace) -> int:
    rows = load_fixture(_fixture_path(args))
    jobs = args.jobs or get_config().jobs
    logger.info(f"Analyzing {len(rows)} curves with {jobs} worker(s)")
    reports = _parallel_map(_analyze_row, rows, jobs)

    if args.json:
        _emit(RunDocument(command="batch", reports=reports))
    else:
        print("\n\n".join(render_report(r) for r in reports))
    return EXIT_FAILURE if any(r.flags.failures() for r in reports) else EXIT_OK


def cmd_verify_paper(args: argparse.Namespace) -> int:
    rows = load_fixture(_fixture_path(args))
    if not rows:
        logger.warning("No fixture rows to verify")
    jobs = args.jobs or get_config().jobs
    reports = _parallel_map(_analyze_row, rows, jobs)
    outcomes = [compare_row(row, report) for row, report in zip(rows, reports)]

    if args.json:
        _emit(RunDocument(command="verify-paper", reports=reports, rows=outcomes))
    else:
        for outcome in outcomes:
            print(render_outcome(outcome))
        print(summary_line(outcomes))
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAILURE


def cmd_tables(args: argparse.Namespace) -> int:
    document = TablesDocument(**get_tables().as_document())
    if args.json:
        print(document.model_dump_json(indent=2))
    else:
        print(render_tables(document))
    return EXIT_OK
