"""``synth``: write a synthetic dataset and its ground truth."""

from __future__ import annotations

import argparse
from pathlib import Path

from pydantic import ValidationError

from sgbeam.cli.common import add_metrics_argument, emit, id_list, int_at_least
from sgbeam.core.exceptions import ConfigError
from sgbeam.repositories.dataset_repository import write_csv
from sgbeam.repositories.truth_repository import write_truth
from sgbeam.schemas.synthetic import SynthResult, SyntheticSpec
from sgbeam.services.synthetic import generate


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the ``synth`` command."""
    parser = subparsers.add_parser(
        "synth",
        help="Generate data with outliers planted in attribute groups.",
    )
    parser.add_argument("--dims", type=int_at_least(1), required=True)
    parser.add_argument("--size", type=int_at_least(1), required=True)
    parser.add_argument(
        "--groups",
        type=id_list,
        required=True,
        help="Comma-separated group sizes, each between 2 and 5.",
    )
    parser.add_argument("--outliers", type=int_at_least(0), required=True)
    parser.add_argument("--seed", type=int_at_least(0), default=0)
    parser.add_argument("--clusters", type=int_at_least(2), default=3)
    parser.add_argument("--cluster-std", type=float, default=0.04)
    parser.add_argument(
        "--margin",
        type=float,
        default=4.0,
        help="Minimum outlier distance to any cluster centre, in deviations.",
    )
    parser.add_argument(
        "--max-groups",
        type=int_at_least(1),
        default=2,
        help="Most groups a single outlier deviates in.",
    )
    parser.add_argument(
        "--out",
        type=Path,
        required=True,
        help="Output prefix; writes <prefix>.csv and <prefix>.truth.",
    )
    add_metrics_argument(parser)
    parser.set_defaults(handler=cmd_synth)


def cmd_synth(args: argparse.Namespace) -> int:
    """Generate the dataset, write both files and print a JSON summary."""
    try:
        spec = SyntheticSpec(
            n=args.size,
            d=args.dims,
            group_sizes=args.groups,
            outlier_count=args.outliers,
            seed=args.seed,
            clusters_per_group=args.clusters,
            cluster_std=args.cluster_std,
            outlier_margin=args.margin,
            max_groups_per_outlier=args.max_groups,
        )
    except ValidationError as exc:
        msg = f"Invalid synthetic spec: {exc.errors()[0]['msg']}"
        raise ConfigError(msg) from exc
    ds, gt = generate(spec)

    prefix: Path = args.out
    prefix.parent.mkdir(parents=True, exist_ok=True)
    data_path = prefix.with_name(prefix.name + ".csv")
    truth_path = prefix.with_name(prefix.name + ".truth")
    write_csv(ds, data_path)
    write_truth(gt, truth_path)

    result = SynthResult(
        data=str(data_path), truth=str(truth_path), n=ds.n, d=ds.d, outliers=len(gt)
    )
    emit(result.model_dump_json(indent=2) + "\n", None)
    return 0
