import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from latnum.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def hexagon_file(tmp_path):
    path = tmp_path / "hexagon.json"
    path.write_text(json.dumps({"dim": 2, "vertices": [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]}))
    return str(path)


def test_count(hexagon_file):
    code, out = call("count", "--body", hexagon_file)
    assert code == 0 and json.loads(out) == {"total": 7, "interior": 1, "boundary": 6}


def test_volume_and_polar():
    code, out = call("volume", "--body", "@cross:3:2")
    assert code == 0 and json.loads(out)["volume"] == "8/3"
    code, out = call("polar", "--body", "@cross:2:3")
    doc = json.loads(out)
    assert sorted(map(tuple, doc["vertices"])) == sorted([("-1/3", "-1"), ("-1/3", "1"), ("1/3", "-1"), ("1/3", "1")])


def test_verify_hexagon(hexagon_file):
    code, out = call("verify", "--suite", "all", "--body", hexagon_file)
    doc = json.loads(out)
    assert code == 0 and doc["all_hold"]
    reps = {r["name"]: r for r in doc["bodies"][0]["reports"]}
    assert reps["gs-product"]["lhs"] == "21"
    assert reps["gs-product"]["rhs"]["coeff"] == "7/2" and reps["gs-product"]["rhs"]["pi_power"] == 2
    lo, hi = map(Fraction, reps["gs-product"]["rhs"]["interval"])
    assert lo <= Fraction("34.5436154038127551659207") <= hi and hi - lo <= Fraction(2, 10 ** 20)


def test_verify_csv_rows():
    code, out = call("--format", "csv", "verify", "--body", "@cube:2", "--body", "@diamond:2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert {r["body"] for r in rows} == {"@cube:2", "@diamond:2"}
    mahler = [r for r in rows if r["name"] == "mahler"]
    assert all(r["equality"] == "True" for r in mahler)


def test_verify_random_is_deterministic_and_parallel_independent():
    a = call("verify", "--random", "6", "--seed", "3", "--dims", "2", "3")
    b = call("verify", "--random", "6", "--seed", "3", "--dims", "2", "3", "--jobs", "2")
    assert a == b and a[0] == 0


def test_davenport():
    code, out = call("davenport", "--body", "@cube:2")
    doc = json.loads(out)
    assert code == 0 and doc["equality"] and doc["characterized"]
    assert doc["coefficients"] == {"{}": "4", "{1}": "2", "{2}": "2", "{1,2}": "1"}
    code, out = call("davenport", "--body", "@hexagon", "--gens", "2,0;0,2")
    assert code == 0 and json.loads(out)["rhs"] == "15"


def test_report():
    code, out = call("report", "--asymptotics", "--n-max", "12")
    doc = json.loads(out)["asymptotics"]
    assert code == 0 and doc["first_crossing"] == 8
    code, out = call("report", "--recurrence", "3", "--g-monotonicity", "5")
    doc = json.loads(out)
    assert [r["discrepancy"] for r in doc["recurrence"]] == ["0", "1", "1", "-1"]
    assert all(r["holds"] for r in doc["g_monotonicity"])


def test_search(tmp_path):
    code, out = call("search", "--dim", "2", "--bound", "2")
    doc = json.loads(out)
    assert code == 0 and doc["complete"]
    assert doc["top"]["value"] == "21" and doc["top"]["name"] == "hexagon"
    code, out = call("search", "--dim", "2", "--bound", "1", "--interior", "1")
    assert sorted(c["name"] for c in json.loads(out)["classes"]) == ["diamond", "hexagon", "square"]
    ck = str(tmp_path / "ck.json")
    code, part = call("search", "--dim", "2", "--bound", "2", "--checkpoint", ck, "--max-steps", "30")
    assert code == 0 and not json.loads(part)["complete"]
    code, resumed = call("search", "--dim", "2", "--bound", "2", "--checkpoint", ck, "--resume")
    assert json.loads(resumed)["classes"] == doc["classes"]


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["count"], ["count", "--body", "/nonexistent.json"], ["count", "--body", "@nosuch"],
    ["search", "--dim", "3", "--bound", "9"], ["search", "--dim", "2", "--bound", "1", "--resume"],
    ["davenport", "--body", "@cube:7"], ["davenport", "--body", "@cube:2", "--gens", "1,2;2,4"],
    ["report"], ["report", "--asymptotics", "--epsilon", "3"], ["--format", "xml", "count", "--body", "@hexagon"],
    ["verify"], ["--jobs", "0", "count", "--body", "@hexagon"],
])
def test_usage_errors_exit_1(argv, capsys):
    code, out = call(*argv)
    assert code == 1 and out == ""
    assert capsys.readouterr().err.startswith("latnum:")


def test_malformed_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("count", "--body", str(bad))[0] == 1
    bad.write_text(json.dumps({"dim": 3, "vertices": [[1, 0]]}))
    assert call("count", "--body", str(bad))[0] == 1


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "latnum.cli", "count", "--body", "@hexagon"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["total"] == 7
