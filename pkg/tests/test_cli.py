import json
import math
import subprocess
import sys

import pytest

from sqpo.cli import main
from sqpo.graph import discrete, graph_to_obj, path


@pytest.fixture()
def create_two_file(tmp_path):
    rule = {"output": {"vertices": [0, 1], "edges": []},
            "context": {"vertices": [], "edges": []},
            "input": {"vertices": [], "edges": []},
            "o": {"vmap": {}, "emap": {}},
            "i": {"vmap": {}, "emap": {}}}
    p = tmp_path / "create_two.json"
    p.write_text(json.dumps(rule))
    return str(p)


@pytest.fixture()
def model_file(tmp_path):
    model = {"rules": [{"name": "v+", "rate": 2.0, "lib": "v_plus"},
                       {"name": "v-", "rate": 1.0, "lib": "v_minus"}],
             "initial": {"vertices": [], "edges": []}}
    p = tmp_path / "model.json"
    p.write_text(json.dumps(model))
    return str(p)


def test_compose_example(create_two_file, tmp_path, capsys):
    out = tmp_path / "compose.txt"
    rc = main(["compose", "lib:v_minus", create_two_file, "--output", str(out)])
    assert rc == 0
    text = out.read_text()
    assert "admissible overlaps: 3" in text
    assert "composite classes: 2" in text
    assert "x2\t" in text and "x1\t" in text


def test_compose_unit_rule(tmp_path, create_two_file):
    unit = {"output": {"vertices": [], "edges": []},
            "context": {"vertices": [], "edges": []},
            "input": {"vertices": [], "edges": []},
            "o": {"vmap": {}, "emap": {}}, "i": {"vmap": {}, "emap": {}}}
    p = tmp_path / "unit.json"
    p.write_text(json.dumps(unit))
    out = tmp_path / "out.txt"
    rc = main(["compose", str(p), create_two_file, "--output", str(out)])
    assert rc == 0
    assert "admissible overlaps: 1" in out.read_text()


def test_product_output_is_stable_dump(create_two_file, tmp_path):
    out1 = tmp_path / "p1.txt"
    out2 = tmp_path / "p2.txt"
    assert main(["product", "lib:v_minus", create_two_file, "--output", str(out1)]) == 0
    assert main(["product", "lib:v_minus", create_two_file, "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().strip().splitlines()
    assert len(lines) == 2
    coeffs = sorted(line.split("\t")[1] for line in lines)
    assert coeffs == ["1", "2"]


def test_represent_derivative_of_path(tmp_path):
    state = tmp_path / "state.json"
    state.write_text(json.dumps(graph_to_obj(path(3))))
    out = tmp_path / "rep.txt"
    rc = main(["represent", "lib:v_minus", str(state), "--output", str(out)])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 2
    coeffs = sorted(line.split("\t")[1] for line in lines)
    assert coeffs == ["1", "2"]


def test_simulate_deterministic_csv(model_file, tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["simulate", model_file, "--seed", "9", "--t-max", "2", "--n-traj", "50",
            "--grid", "1,2", "--observables", "vertices"]
    assert main(args + ["--output", str(out1)]) == 0
    assert main(args + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().strip().splitlines()
    assert lines[0] == "t,observable,mean,variance,stderr,n"
    assert len(lines) == 3
    # round-trip-safe floats
    mean = float(lines[1].split(",")[2])
    assert repr(mean) == lines[1].split(",")[2]


def test_simulate_trajectory_dump(model_file, tmp_path):
    out = tmp_path / "m.csv"
    dump = tmp_path / "traj.jsonl"
    rc = main(["simulate", model_file, "--seed", "3", "--t-max", "1", "--n-traj", "2",
               "--grid", "1", "--observables", "vertices",
               "--output", str(out), "--dump-trajectories", str(dump)])
    assert rc == 0
    records = [json.loads(line) for line in dump.read_text().splitlines()]
    assert records and all(set(r) == {"trajectory", "time", "rule", "state", "flagged"}
                           for r in records)
    assert records[0]["time"] == 0.0 and records[0]["rule"] is None


def test_simulate_motif_observable(model_file, tmp_path):
    motif = tmp_path / "motif.json"
    motif.write_text(json.dumps(graph_to_obj(discrete(2))))
    out = tmp_path / "m.csv"
    rc = main(["simulate", model_file, "--seed", "1", "--t-max", "1", "--n-traj", "5",
               "--grid", "1", "--observables", f"@{motif}", "--output", str(out)])
    assert rc == 0
    assert str(motif) in out.read_text()


def test_verify_unit_suite_exit_zero(capsys):
    assert main(["verify", "--suite", "unit", "--n-random", "3"]) == 0
    out = capsys.readouterr().out
    assert "suite unit:" in out and "0 failed" in out


def test_reference_edge_limit(tmp_path, capsys):
    assert main(["reference", "--formula", "edge-limit", "--nu-plus", "1",
                 "--nu-minus", "1", "--eps-plus", "1", "--eps-minus", "1"]) == 0
    out = capsys.readouterr().out
    assert abs(float(out.strip().splitlines()[1]) - 1 / 3) < 1e-15


def test_reference_mv_initial_row(tmp_path):
    out = tmp_path / "mv.csv"
    rc = main(["reference", "--formula", "mv", "--nu-plus", "2", "--nu-minus", "1",
               "--lam", "0.5", "--n-vertices", "3", "--grid", "0", "--output", str(out)])
    assert rc == 0
    value = float(out.read_text().strip().splitlines()[1].split(",")[2])
    assert abs(value - math.exp(0.5 * 3)) < 1e-12


def test_reference_edge_mean_zero_source(tmp_path):
    out = tmp_path / "em.csv"
    rc = main(["reference", "--formula", "edge-mean", "--nu-plus", "1", "--nu-minus", "1",
               "--eps-plus", "0", "--eps-minus", "1", "--grid", "0,1,2",
               "--output", str(out)])
    assert rc == 0
    rows = out.read_text().strip().splitlines()[1:]
    assert all(float(r.split(",")[1]) == 0.0 for r in rows)


def test_reference_rejects_out_of_domain(capsys):
    rc = main(["reference", "--formula", "edge-limit", "--nu-plus", "1",
               "--nu-minus", "0", "--eps-plus", "1", "--eps-minus", "1"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_missing_file_reports_and_fails(capsys):
    rc = main(["product", "lib:v_minus", "/nonexistent/rule.json"])
    assert rc == 1
    assert "not found" in capsys.readouterr().err


def test_bad_json_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    rc = main(["compose", str(bad), "lib:v_plus"])
    assert rc == 1
    err = capsys.readouterr().err
    assert "bad.json:1:" in err


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "sqpo.cli", "reference",
                           "--formula", "edge-limit", "--nu-plus", "2",
                           "--nu-minus", "1", "--eps-plus", "3", "--eps-minus", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert abs(float(proc.stdout.strip().splitlines()[1]) - 4.0) < 1e-12
