import io
import json

import pytest

from symcascade import generate_er_graph, parse_edge_list
from symcascade.cli import dumps_report, main

from corpus import named_small_graphs


def run_cli(*argv) -> tuple[int, str]:
    out = io.StringIO()
    status = main(list(argv), out=out)
    return status, out.getvalue()


@pytest.fixture
def path_graph_file(tmp_path):
    g = named_small_graphs()["path_3_7"]
    path = tmp_path / "path3.edges"
    path.write_text(g.serialize())
    return str(path)


def test_gen_round_trips_through_parser():
    status, text = run_cli("gen", "--gen", "er:6:0.5:uniform", "--seed", "5")
    assert status == 0
    assert parse_edge_list(text) == generate_er_graph(6, 0.5, "uniform-random", 5)


def test_gen_writes_file(tmp_path):
    target = tmp_path / "g.edges"
    status, text = run_cli(
        "gen", "--gen", "er:4:1.0:0.5", "--seed", "1", "--out", str(target)
    )
    assert status == 0 and text == ""
    assert parse_edge_list(target.read_text()).edge_count == 6


def test_exact_csv_matrix_value(path_graph_file):
    status, text = run_cli(
        "exact", "--graph", path_graph_file, "--n", "2", "--format", "csv"
    )
    assert status == 0
    rows = [line.split(",") for line in text.strip().splitlines()]
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)
    assert abs(float(rows[0][2]) - 0.21) < 1e-12
    assert abs(float(rows[2][0]) - 0.21) < 1e-12


def test_exact_json_matches_csv_values(path_graph_file):
    status_j, text_j = run_cli("exact", "--graph", path_graph_file, "--n", "2")
    status_c, text_c = run_cli(
        "exact", "--graph", path_graph_file, "--n", "2", "--format", "csv"
    )
    assert status_j == status_c == 0
    values = json.loads(text_j)["results"]["values"]
    csv_values = [
        [float(x) for x in line.split(",")] for line in text_c.strip().splitlines()
    ]
    assert values == csv_values


def test_simulate_one_step_near_edge_probability():
    status, text = run_cli(
        "simulate",
        "--gen",
        "er:5:1.0:0.5",
        "--n",
        "1",
        "--trials",
        "20000",
        "--seed",
        "7",
    )
    assert status == 0
    report = json.loads(text)
    assert report["command"] == "simulate"
    assert report["pass"] is None
    point = report["results"]["point"]
    for i in range(5):
        for j in range(5):
            if i == j:
                assert point[i][j] == 1.0
            else:
                assert abs(point[i][j] - 0.5) < 0.02


def test_simulate_csv_equals_json_points():
    args = ["--gen", "er:4:1.0:0.5", "--n", "2", "--trials", "500", "--seed", "3"]
    _, text_j = run_cli("simulate", *args)
    _, text_c = run_cli("simulate", *args, "--format", "csv")
    points = json.loads(text_j)["results"]["point"]
    csv_points = [
        [float(x) for x in line.split(",")] for line in text_c.strip().splitlines()
    ]
    assert points == csv_points


def test_matrix_estimate_runs():
    status, text = run_cli(
        "matrix-estimate",
        "--gen",
        "er:4:1.0:0.5",
        "--n",
        "2",
        "--trials",
        "500",
        "--seed",
        "3",
    )
    assert status == 0
    report = json.loads(text)
    assert report["results"]["order"] == "forward"
    assert report["results"]["point"][0][0] == 1.0


def test_verify_symmetry_passes_on_valid_graph(path_graph_file):
    status, text = run_cli("verify", "symmetry", "--graph", path_graph_file, "--n", "4")
    assert status == 0
    report = json.loads(text)
    assert report["pass"] is True
    assert report["results"]["max_abs_asymmetry"] <= 1e-9


def test_verify_transpose_passes():
    status, text = run_cli(
        "verify",
        "transpose",
        "--gen",
        "er:8:0.5:uniform",
        "--n",
        "3",
        "--trials",
        "100",
        "--seed",
        "2",
    )
    assert status == 0
    assert json.loads(text)["results"]["violations"] == 0


def test_verify_consistency_pass_and_fail_status(path_graph_file):
    args = [
        "verify",
        "consistency",
        "--graph",
        path_graph_file,
        "--n",
        "2",
        "--trials",
        "2000",
        "--seed",
        "5",
    ]
    status, text = run_cli(*args)
    assert status == 0
    assert json.loads(text)["pass"] is True
    # an unattainable coverage demand must flip the exit status to 1
    status_fail, text_fail = run_cli(*args, "--min-coverage", "1.01")
    assert status_fail == 1
    assert json.loads(text_fail)["pass"] is False


def test_json_reports_are_byte_identical_across_runs():
    args = (
        "simulate",
        "--gen",
        "er:4:0.7:uniform",
        "--n",
        "2",
        "--trials",
        "800",
        "--seed",
        "11",
    )
    _, first = run_cli(*args)
    _, second = run_cli(*args)
    assert first == second


def test_report_schema_top_level_keys(path_graph_file):
    _, text = run_cli("exact", "--graph", path_graph_file, "--n", "1")
    report = json.loads(text)
    assert list(report) == ["command", "graph", "n", "seed", "results", "pass"]
    assert report["graph"] == {"nodes": 3, "edges": 2}


def test_floats_serialized_with_17_significant_digits():
    text = dumps_report({"x": 1.0 / 3.0, "y": 0.5, "z": [1e-17]})
    assert "0.33333333333333331" in text
    assert json.loads(text)["x"] == 1.0 / 3.0


def test_usage_errors_exit_2(tmp_path, capsys):
    assert run_cli("unknown-command")[0] == 2
    assert run_cli("simulate", "--n", "1")[0] == 2  # missing graph source
    assert run_cli("exact", "--gen", "bogus:3", "--n", "1")[0] == 2
    bad = tmp_path / "bad.edges"
    bad.write_text("2\n0 0 0.5\n")
    status, _ = run_cli("exact", "--graph", str(bad), "--n", "1")
    assert status == 2
    err = capsys.readouterr().err
    assert "line 2" in err


def test_exact_cap_exceeded_exits_2():
    status, _ = run_cli("exact", "--gen", "er:25:0.2:uniform", "--n", "2")
    assert status == 2


def test_verify_rejects_csv_format(path_graph_file):
    status, _ = run_cli(
        "verify",
        "symmetry",
        "--graph",
        path_graph_file,
        "--n",
        "2",
        "--format",
        "csv",
    )
    assert status == 2


def test_missing_graph_file_exits_2(tmp_path):
    status, _ = run_cli("exact", "--graph", str(tmp_path / "nope.edges"), "--n", "1")
    assert status == 2
