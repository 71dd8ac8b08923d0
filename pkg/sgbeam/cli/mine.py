"""``mine``: rank the outlying subspaces of query records."""

from __future__ import annotations

import argparse
import time

from sgbeam.cli.common import (
    HEADER_CHOICES,
    add_data_arguments,
    add_output_arguments,
    add_search_arguments,
    emit,
    id_list,
    miner_config,
)
from sgbeam.core.logging import logger
from sgbeam.repositories.dataset_repository import load_csv
from sgbeam.schemas.report import (
    CacheCounts,
    DataInfo,
    QueryResult,
    RunReport,
    ScoredSubspaceOut,
    TimingBreakdown,
    render_run_report,
)
from sgbeam.services.miner import mine_queries


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the ``mine`` command."""
    parser = subparsers.add_parser(
        "mine",
        help="Find the subspaces in which query records are most outlying.",
    )
    add_data_arguments(parser)
    parser.add_argument(
        "--query",
        type=id_list,
        required=True,
        help="Comma-separated 0-based record ids.",
    )
    add_search_arguments(parser)
    parser.add_argument(
        "--tau",
        type=float,
        help="Drop subspaces whose Z-score is not below this threshold.",
    )
    parser.add_argument(
        "--no-cache",
        action="store_true",
        help="Recompute subspace statistics for every query.",
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        help="Include wall-clock timings in the report.",
    )
    add_output_arguments(parser)
    parser.set_defaults(handler=cmd_mine)


def cmd_mine(args: argparse.Namespace) -> int:
    """Mine the requested queries and print or write the report.

    Returns:
        Exit status 0; failures raise and are mapped by the entry point.
    """
    cfg = miner_config(args)
    started = time.perf_counter()
    ds = load_csv(args.data, has_header=HEADER_CHOICES[args.header])
    ingest_ms = (time.perf_counter() - started) * 1000.0

    run = mine_queries(ds, args.query, cfg, jobs=args.jobs)
    report = RunReport(
        config=cfg,
        data=DataInfo(path=str(args.data), n=ds.n, d=ds.d),
        queries=[
            QueryResult(
                query=o.query,
                subspaces=[ScoredSubspaceOut.from_model(s) for s in o.subspaces],
            )
            for o in run.outcomes
        ],
        cache=CacheCounts(
            hits=run.cache_hits, misses=run.cache_misses, entries=run.cache_entries
        ),
        subspaces_scored=run.subspaces_scored,
        timing=(
            TimingBreakdown(
                ingest_ms=ingest_ms,
                build_ms=run.build_seconds * 1000.0,
                search_ms=run.search_seconds * 1000.0,
            )
            if args.timing
            else None
        ),
    )
    text = (
        render_run_report(report)
        if args.format == "text"
        else report.model_dump_json(indent=2) + "\n"
    )
    emit(text, args.out)
    logger.info(
        "Mine finished",
        queries=len(report.queries),
        subspaces_scored=report.subspaces_scored,
        out=str(args.out) if args.out else "stdout",
    )
    return 0
