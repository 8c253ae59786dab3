import csv
import io
import json
import subprocess
import sys

import pytest

from terracini.cli import parse_range, run_command
from terracini.constructions import construct_on_rational_curve, thresholds
from terracini.curves import line_curve


@pytest.fixture
def pts_file(tmp_path):
    p = tmp_path / "pts.json"
    p.write_text(json.dumps({"n": 2, "field": "Q",
                             "points": [["1", "0", "0"], ["1", "1", "0"], ["1", "1/2", "0"]]}))
    return p


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3..8") == [3, 4, 5, 6, 7, 8]
    assert parse_range("4") == [4]
    assert parse_range("1,3") == [1, 3]


def test_membership(capsys, pts_file):
    code, out, _ = run(capsys, "membership", "--n", "2", "--d", "4", "--points",
                       str(pts_file), "--field", "q", "--seed", "9")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "terracini-report/1"
    assert doc["config"]["seed"] == 9
    v = doc["result"]["verdict"]
    assert (v["rank"], v["conditions"], v["ambient_dim"], v["member"]) == (8, 9, 15, True)
    assert doc["result"]["input"]["points"][2] == ["1", "1/2", "0"]


def test_membership_fast_and_csv(capsys, pts_file):
    code, out, _ = run(capsys, "membership", "--n", "2", "--d", "4", "--points",
                       str(pts_file), "--fast", "--format", "csv", "--seed", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["rank"] == "8" and rows[0]["method"] == "modular-multi-prime"


def test_membership_input_errors(capsys, pts_file, tmp_path):
    code, _, _ = run(capsys, "membership", "--n", "3", "--d", "4", "--points", str(pts_file))
    assert code == 2
    code, _, _ = run(capsys, "membership", "--n", "2", "--d", "4", "--points",
                     str(tmp_path / "missing.json"))
    assert code == 2
    code, _, _ = run(capsys, "membership", "--n", "2", "--d", "4", "--points",
                     str(pts_file), "--field", "fp:7")
    assert code == 2


def test_unknown_flag_exit_2(capsys):
    code, _, err = run(capsys, "ah", "--n", "2", "--d", "4", "--k", "5", "--bogus")
    assert code == 2 and "usage" in err


def test_construct_elliptic_odd_refused(capsys):
    code, out, err = run(capsys, "construct", "elliptic", "--dprime", "3", "--seed", "1")
    assert code == 1
    assert json.loads(out)["result"]["report"] == "refusal"


def test_construct_rational_infeasible_refused(capsys):
    code, out, _ = run(capsys, "construct", "rational", "--n", "2", "--m", "2", "--seed", "1")
    assert code == 1
    assert json.loads(out)["result"]["detail"]["feasible"] is False


def test_construct_even(capsys):
    code, out, _ = run(capsys, "construct", "elliptic", "--dprime", "2", "--seed", "4")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["curve_level"]["rank"] == 5 and res["verdict"]["member"]


def test_construct_elliptic_over_q_needs_base(capsys):
    code, _, _ = run(capsys, "construct", "elliptic", "--dprime", "2", "--field", "q",
                     "--a", "0", "--b", "17")
    assert code == 2
    code, out, _ = run(capsys, "construct", "elliptic", "--dprime", "2", "--field", "q",
                       "--a", "0", "--b", "17", "--base=-2,3", "--seed", "2")
    assert code == 0 and json.loads(out)["result"]["curve_level"]["rank"] == 5


def test_construct_rational_with_curve_file(capsys, tmp_path):
    f = tmp_path / "curve.json"
    f.write_text(json.dumps({"type": "rnc", "dprime": 2}))
    code, out, _ = run(capsys, "construct", "rational", "--n", "2", "--m", "5",
                       "--curve", str(f), "--seed", "3")
    assert code == 0
    assert json.loads(out)["result"]["surjection_check"] is True


def test_scan_rows_match_library(capsys):
    code, out, _ = run(capsys, "scan", "--n", "2", "--m", "3..8", "--curve", "line",
                       "--format", "csv", "--seed", "11")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["m"]) for r in rows] == list(range(3, 9))
    for r in rows:
        m = int(r["m"])
        th = thresholds(2, m, 1)
        assert int(r["minimal_k"]) == th.minimal_k and int(r["k"]) == th.minimal_k
        ex = construct_on_rational_curve(2, m, line_curve(2), None, 11)
        assert int(r["ambient_rank"]) == ex.ambient_rank
        assert r["member"] == "True" and r["surjection"] == "True"


def test_probe_and_ah(capsys):
    code, out, _ = run(capsys, "probe", "rnc", "--dprime", "4", "--k", "1..4",
                       "--trials", "10", "--seed", "3")
    assert code == 0
    items = json.loads(out)["result"]["items"]
    assert all(i["members_found"] == 0 for i in items) and len(items) == 4
    code, out, _ = run(capsys, "probe", "elliptic", "--dprime", "3", "--k", "4",
                       "--trials", "10", "--seed", "3")
    assert code == 0 and json.loads(out)["result"]["items"][0]["histogram"] == {"8": 10}
    code, out, _ = run(capsys, "ah", "--n", "2", "--d", "4", "--k", "5", "--trials", "5",
                       "--seed", "3", "--format", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["defective"] == "True" and row["max_rank"] == "14"


def test_thresholds_command(capsys):
    code, out, _ = run(capsys, "thresholds", "--n", "2", "--m", "4", "--seed", "0")
    assert code == 0
    item = json.loads(out)["result"]["items"][0]
    assert (item["paper_k"], item["minimal_k"], item["k_max_span"]) == (4, 3, 4)
    code, _, _ = run(capsys, "thresholds", "--n", "1", "--m", "4")
    assert code == 2


def test_output_file_and_unwritable(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, _, _ = run(capsys, "thresholds", "--n", "2", "--m", "4", "--seed", "0",
                     "--output", str(target))
    assert code == 0 and json.loads(target.read_text())["schema"] == "terracini-report/1"
    code, _, _ = run(capsys, "thresholds", "--n", "2", "--m", "4",
                     "--output", str(tmp_path / "no" / "such" / "dir.json"))
    assert code == 2


def test_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("TERRACINI_SEED", "1234")
    code, out, _ = run(capsys, "ah", "--n", "2", "--d", "3", "--k", "2", "--trials", "2",
                       "--seed", "5")
    assert code == 0 and json.loads(out)["config"]["seed"] == 1234


def test_byte_identical_reruns(capsys):
    argv = ["construct", "rational", "--n", "3", "--m", "4", "--seed", "77"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    csv_argv = ["probe", "rnc", "--dprime", "5", "--k", "2..3", "--trials", "5",
                "--seed", "8", "--format", "csv"]
    _, a, _ = run(capsys, *csv_argv)
    _, b, _ = run(capsys, *csv_argv)
    assert a == b and a.splitlines()[0].startswith("kind,parameters,seed")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "terracini", "thresholds", "--n", "2",
                          "--m", "5", "--seed", "0"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["items"][0]["minimal_k"] == 4


def test_scan_defaults_to_csv_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", "--n", "2", "--m", "3..4", "--seed", "1")
    assert code == 0 and out.startswith("n,m,e,ambient_dim")
    report = tmp_path / "scan.json"
    assert run(capsys, "scan", "--n", "2", "--m", "3..4", "--format", "json",
               "-o", str(report))[0] == 0
    code, out, _ = run(capsys, "replay", str(report))
    assert code == 0 and out == report.read_text()
    assert run(capsys, "replay", str(tmp_path / "nope.json"))[0] == 2
