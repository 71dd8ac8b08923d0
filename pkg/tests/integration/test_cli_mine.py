import json
from collections.abc import Callable
from pathlib import Path

import pytest

from sgbeam.main import main

Run = Callable[..., tuple[int, str, str]]


def test_mine_json_report(run_cli: Run, data_csv: Path) -> None:
    status, out, _ = run_cli(
        "mine", "--data", data_csv, "--query", "0,5", "--depth", "3", "--top-k", "4"
    )
    assert status == 0
    report = json.loads(out)
    assert [q["query"] for q in report["queries"]] == [0, 5]
    assert all(len(q["subspaces"]) <= 4 for q in report["queries"])
    assert report["config"]["estimator"] == "sgrid"
    assert report["data"] == {"path": str(data_csv), "n": 400, "d": 6}
    assert report["timing"] is None
    assert report["subspaces_scored"] > 0


def test_mine_output_is_deterministic(run_cli: Run, data_csv: Path) -> None:
    argv = ("mine", "--data", data_csv, "--query", "3,9,3", "--depth", "3")
    outputs = {run_cli(*argv)[1] for _ in range(3)}
    assert len(outputs) == 1


def test_worker_threads_same_report(run_cli: Run, data_csv: Path) -> None:
    argv = ("mine", "--data", data_csv, "--query", "1,2,3,4", "--depth", "3")
    assert run_cli(*argv)[1] == run_cli(*argv, "--jobs", "3")[1]


def test_cache_flag_changes_counts_only(run_cli: Run, data_csv: Path) -> None:
    argv = ("mine", "--data", data_csv, "--query", "1,2", "--depth", "3")
    cached = json.loads(run_cli(*argv)[1])
    plain = json.loads(run_cli(*argv, "--no-cache")[1])
    assert cached["queries"] == plain["queries"]
    assert cached["cache"]["hits"] > 0
    assert plain["cache"] == {"hits": 0, "misses": 0, "entries": 0}


@pytest.mark.parametrize("estimator", ["grid", "kde"])
def test_other_estimators(run_cli: Run, data_csv: Path, estimator: str) -> None:
    status, out, _ = run_cli(
        "mine",
        "--data",
        data_csv,
        "--query",
        "0",
        "--depth",
        "2",
        "--estimator",
        estimator,
    )
    assert status == 0
    assert json.loads(out)["config"]["estimator"] == estimator


def test_text_format_and_timing(run_cli: Run, data_csv: Path) -> None:
    status, out, _ = run_cli(
        "mine",
        "--data",
        data_csv,
        "--query",
        "7",
        "--depth",
        "2",
        "--format",
        "text",
        "--timing",
    )
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == f"data: {data_csv} (n=400, d=6)"
    assert "query 7:" in lines
    assert lines[-1].startswith("timing: ingest=")


def test_tau_filters_report(run_cli: Run, data_csv: Path) -> None:
    _, out, _ = run_cli(
        "mine", "--data", data_csv, "--query", "0", "--depth", "2", "--tau", "-0.5"
    )
    for item in json.loads(out)["queries"][0]["subspaces"]:
        assert item["z"] < -0.5


def test_output_file(run_cli: Run, data_csv: Path, tmp_path: Path) -> None:
    target = tmp_path / "reports" / "run.json"
    status, out, _ = run_cli(
        "mine", "--data", data_csv, "--query", "0", "--depth", "2", "--out", target
    )
    assert status == 0
    assert out == ""
    assert json.loads(target.read_text())["queries"][0]["query"] == 0


def test_metrics_written(run_cli: Run, data_csv: Path, tmp_path: Path) -> None:
    target = tmp_path / "metrics.prom"
    status, _, _ = run_cli(
        "mine",
        "--data",
        data_csv,
        "--query",
        "0",
        "--depth",
        "2",
        "--metrics-out",
        target,
    )
    assert status == 0
    text = target.read_text()
    assert "sgbeam_subspace_stats_total" in text
    assert "sgbeam_search_seconds_bucket" in text


def test_logs_stay_on_stderr(run_cli: Run, data_csv: Path) -> None:
    status, out, err = run_cli(
        "--log-level",
        "INFO",
        "--log-format",
        "json",
        "mine",
        "--data",
        data_csv,
        "--query",
        "0",
        "--depth",
        "2",
    )
    assert status == 0
    json.loads(out)
    events = [json.loads(line)["event"] for line in err.splitlines()]
    assert "Dataset loaded" in events
    assert "Search finished" in events


def test_depth_beyond_attributes_exits_1(run_cli: Run, data_csv: Path) -> None:
    status, out, err = run_cli(
        "mine", "--data", data_csv, "--query", "0", "--depth", "99"
    )
    assert status == 1
    assert out == ""
    assert "error[config_error]" in err


def test_unknown_query_exits_1(run_cli: Run, data_csv: Path) -> None:
    status, _, err = run_cli("mine", "--data", data_csv, "--query", "400")
    assert status == 1
    assert "error[unknown_query]" in err
    assert "400" in err


def test_missing_file_exits_1(run_cli: Run, tmp_path: Path) -> None:
    status, _, err = run_cli("mine", "--data", tmp_path / "x.csv", "--query", "0")
    assert status == 1
    assert "error[data_load_error]" in err


def test_bad_cell_named(run_cli: Run, tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n4,abc,6\n")
    status, _, err = run_cli("mine", "--data", path, "--query", "0", "--depth", "2")
    assert status == 1
    assert "row 1, column 1" in err


def test_empty_file_exits_1(run_cli: Run, tmp_path: Path) -> None:
    path = tmp_path / "empty.csv"
    path.write_text("")
    status, _, err = run_cli("mine", "--data", path, "--query", "0")
    assert status == 1
    assert "error[empty_input]" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["mine", "--data", "x.csv"],
        ["mine", "--data", "x.csv", "--query", "0", "--depth", "1"],
        ["mine", "--data", "x.csv", "--query", "a,b"],
        ["mine", "--data", "x.csv", "--query", "0", "--block-size", "12"],
        ["mine", "--data", "x.csv", "--query", "0", "--bogus"],
        ["explode"],
        [],
    ],
)
def test_usage_errors_exit_2(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
