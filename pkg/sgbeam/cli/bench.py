"""``bench``: time estimators over the same queries, one CSV row per run."""

from __future__ import annotations

import argparse

from sgbeam.cli.common import (
    HEADER_CHOICES,
    add_data_arguments,
    add_output_arguments,
    add_search_arguments,
    emit,
    estimator_list,
    float_list,
    id_list,
    int_at_least,
    miner_config,
)
from sgbeam.repositories.dataset_repository import load_csv
from sgbeam.schemas.miner import Estimator
from sgbeam.schemas.synthetic import BenchRow
from sgbeam.services.benchmark import spread_queries, sweep


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the ``bench`` command."""
    parser = subparsers.add_parser(
        "bench",
        help="Compare estimator runtimes on identical query sets.",
    )
    add_data_arguments(parser)
    parser.add_argument(
        "--estimators",
        type=estimator_list,
        default=[Estimator.SGRID, Estimator.GRID, Estimator.KDE],
    )
    parser.add_argument(
        "--queries",
        type=int_at_least(1),
        default=10,
        help="Number of evenly spaced query records.",
    )
    parser.add_argument("--repeat", type=int_at_least(1), default=1)
    parser.add_argument(
        "--fractions",
        type=float_list,
        default=[1.0],
        help="Row fractions to sweep, e.g. 0.25,0.5,1.",
    )
    parser.add_argument(
        "--dims",
        type=id_list,
        help="Leading-attribute counts to sweep, e.g. 4,6,8.",
    )
    parser.add_argument("--seed", type=int_at_least(0), default=0)
    add_search_arguments(parser, with_estimator=False)
    add_output_arguments(parser, with_format=False)
    parser.set_defaults(handler=cmd_bench)


def cmd_bench(args: argparse.Namespace) -> int:
    """Run the sweep and print ``BenchRow`` CSV lines under a header."""
    configs = [miner_config(args, estimator=str(e)) for e in args.estimators]
    ds = load_csv(args.data, has_header=HEADER_CHOICES[args.header])
    queries = spread_queries(ds.n, args.queries)
    rows = sweep(
        ds,
        queries,
        configs,
        fractions=args.fractions,
        dims=args.dims,
        repeat=args.repeat,
        seed=args.seed,
        jobs=args.jobs,
    )
    lines = [",".join(BenchRow.COLUMNS), *(row.as_csv() for row in rows)]
    emit("\n".join(lines) + "\n", args.out)
    return 0
