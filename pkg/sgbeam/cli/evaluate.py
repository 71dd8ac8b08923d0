"""``eval``: mine every planted outlier and credit the results."""

from __future__ import annotations

import argparse
from pathlib import Path

from sgbeam.cli.common import (
    HEADER_CHOICES,
    add_data_arguments,
    add_output_arguments,
    add_search_arguments,
    emit,
    miner_config,
)
from sgbeam.core.logging import logger
from sgbeam.repositories.dataset_repository import load_csv
from sgbeam.repositories.truth_repository import load_truth
from sgbeam.schemas.synthetic import render_match_report
from sgbeam.services.evaluation import check_truth, score_matches
from sgbeam.services.miner import mine_queries


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the ``eval`` command."""
    parser = subparsers.add_parser(
        "eval",
        help="Score mined subspaces against a ground-truth file.",
    )
    add_data_arguments(parser)
    parser.add_argument("--truth", type=Path, required=True)
    add_search_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(handler=cmd_eval)


def cmd_eval(args: argparse.Namespace) -> int:
    """Mine each ground-truth record and print exact and any-match totals."""
    cfg = miner_config(args)
    ds = load_csv(args.data, has_header=HEADER_CHOICES[args.header])
    gt = load_truth(args.truth)
    check_truth(gt, ds)

    run = mine_queries(ds, gt.record_ids, cfg, jobs=args.jobs)
    report = score_matches(run.results(), gt)
    text = (
        render_match_report(report)
        if args.format == "text"
        else report.model_dump_json(indent=2) + "\n"
    )
    emit(text, args.out)
    logger.info(
        "Evaluation finished",
        estimator=str(cfg.estimator),
        queries=report.queries,
        exact_matches=report.exact_matches,
        matches=report.matches,
    )
    return 0
