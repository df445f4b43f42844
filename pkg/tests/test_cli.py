import csv
import io
import json
import subprocess
import sys

import pytest

from qschubert.cli import parse_support, run, UsageError


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_structconst_example():
    code, out, _ = call("structconst", "--n", "3", "--u", "2,1,3", "--v", "2,1,3")
    assert code == 0
    assert json.loads(out) == {"[3,1,2]": "1", "[1,2,3]": "q1"}


def test_schubert_example():
    code, out, _ = call("schubert", "--n", "3", "--w", "3,2,1")
    assert code == 0
    data = json.loads(out)
    assert data["quantum"] == "x1^2*x2 + q1*x1"
    assert data["classical"] == "x1^2*x2"
    assert data["w"] == "[3,2,1]"
    assert all(set(rec) == {"exponents", "num", "den"} for rec in data["quantum_terms"])


def test_pairing():
    code, out, _ = call("pairing", "--n", "3", "--u", "1,2,3", "--v", "3,2,1")
    assert code == 0 and json.loads(out)["value"] == "1"
    code, out, _ = call("pairing", "--n", "3", "--u", "2,1,3", "--v", "2,1,3")
    assert json.loads(out)["value"] == "0"


def test_basis():
    code, out, _ = call("basis", "--n", "2")
    data = json.loads(out)
    assert code == 0 and data["monomial_basis"] == [[0, 0], [1, 0]] and data["determinant"] == "1"


def test_structconst_csv_full_table():
    code, out, _ = call("structconst", "--n", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["u", "v", "w", "c"]
    assert {"u": "[2,1]", "v": "[2,1]", "w": "[1,2]", "c": "q1"} in rows


def test_potential_json_shape():
    code, out, _ = call("potential", "--n", "2", "--trunc", "3")
    data = json.loads(out)
    assert code == 0
    assert {"n", "D", "support", "F", "checks"} <= set(data)
    assert data["F_text"] == "1/6*q1*t[2,1]^3 + 1/2*t[1,2]^2*t[2,1] + t[1,2]*t[2,1] + t[2,1]"
    assert all({"name", "status", "certified_degree"} <= set(c) for c in data["checks"])


def test_wdvv_and_conditions():
    code, out, _ = call("wdvv", "--n", "2", "--trunc", "4", "--degree", "1")
    assert code == 0 and json.loads(out)["checks"][0]["items"] == 16
    code, out, _ = call("conditions", "--n", "3")
    assert code == 0 and all(c["status"] == "pass" for c in json.loads(out)["checks"])


def test_lax_n2():
    code, out, _ = call("lax", "--n", "2", "--trunc", "3")
    data = json.loads(out)
    assert code == 0 and set(data["matrices"]["L"]) == {"[1,2]", "[2,1]"}


def test_verify_all_n2_exit_zero():
    code, out, _ = call("verify-all", "--n", "2", "--trunc", "4")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["summary"]["fail"] == 0


def test_verify_all_suite_selection():
    code, out, _ = call("verify-all", "--n", "3", "--checks", "schubert,ring")
    data = json.loads(out)
    assert code == 0 and set(data["suites"]) == {"schubert", "ring"}
    assert data["config"]["suites"] == ["schubert", "ring"]


def test_timeout_exits_one():
    code, out, _ = call("lax", "--n", "3", "--trunc", "2", "--time-budget", "0.5")
    assert code == 1
    assert {c["status"] for c in json.loads(out)["checks"]} == {"timeout"}


@pytest.mark.parametrize("argv", [
    ["schubert", "--n", "3", "--w", "3,3,1"],
    ["schubert", "--n", "3", "--w", "2,1"],
    ["structconst", "--n", "5", "--u", "1,2,3,4,5", "--v", "1,2,3,4,5"],
    ["structconst", "--n", "3", "--u", "2,1,3"],
    ["wdvv", "--n", "2", "--trunc", "2"],
    ["wdvv", "--n", "2", "--trunc", "4", "--degree", "2"],
    ["potential", "--n", "2", "--trunc", "1"],
    ["lax", "--n", "4"],
    ["verify-all", "--n", "2", "--checks", "nonsense"],
    ["verify-all", "--n", "2", "--support", "len<=x"],
    ["verify-all", "--n", "2", "--jobs", "0"],
    ["no-such-command"],
    [],
])
def test_usage_errors_exit_two(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_parse_support():
    assert parse_support(None, 3) is None
    assert parse_support("all", 3) is None
    assert parse_support("len<=1", 3) == ("length", 1)
    assert [str(w) for w in parse_support("2,1,3; 1,2,3", 3)] == ["[1,2,3]", "[2,1,3]"]
    with pytest.raises(UsageError):
        parse_support("2,1", 3)


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qschubert", "structconst", "--n", "2", "--u", "2,1", "--v", "2,1",
                           "--cache-dir", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"[1,2]": "q1"}
    assert (tmp_path / "n2" / "change_of_basis.json").exists()
