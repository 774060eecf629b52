import json
import subprocess
import sys

import pytest

from toroidlab.cli import main, parse_int


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_int():
    assert parse_int("10^9") == 10**9
    assert parse_int("1e9") == 10**9
    assert parse_int("256") == 256


def test_analyze_cubic_two_orbit(capsys):
    code, out, err = run(capsys, "analyze", "--tess", "cubic", "--n", "4", "--lattice", "lambda1")
    assert code == 0
    assert out.splitlines()[0] == "orbits: 2, class: 2_{1,2,3}"
    assert "stabilizer order: 192" in out
    assert "runtime" in err and "runtime" not in out


def test_analyze_3343_lambda1(capsys):
    # computed: lambda1 is a [3,4,3]-image of 2Z^4, so three flag orbits
    code, out, _ = run(capsys, "analyze", "--tess", "3343", "--lattice", "lambda1")
    assert code == 0
    assert out.splitlines()[0] == "orbits: 3"


def test_analyze_json_and_file(capsys, tmp_path):
    f = tmp_path / "lat.json"
    f.write_text(json.dumps([[1, 0, 1, 0], [1, 0, -1, 0], [0, 1, 0, 1], [0, 1, 0, -1]]))
    code, out, _ = run(capsys, "analyze", "--n", "4", "--lattice-file", str(f), "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["orbits"] == 3 and d["family"] == "1*l11xl11"
    g = tmp_path / "lat2.json"
    g.write_text(json.dumps(d["lattice"]))
    code, out, _ = run(capsys, "analyze", "--n", "4", "--lattice-file", str(g))
    assert code == 0 and out.startswith("orbits: 3")


def test_analyze_rank_error(capsys):
    code, _, err = run(capsys, "analyze", "--tess", "cubic", "--n", "4",
                       "--basis", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,0]]")
    assert code == 2 and "rank" in err


@pytest.mark.parametrize("argv", [
    ["analyze", "--tess", "3343", "--basis", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"],
    ["analyze", "--n", "4"],
    ["analyze", "--n", "4", "--lattice", "cln", "--basis", "[[1]]"],
    ["analyze", "--n", "4", "--lattice", "nosuch"],
    ["analyze", "--n", "4", "--basis", "[[1,0],[0,1]]"],
    ["analyze", "--lattice", "cln"],
])
def test_analyze_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_enumerate_summary(capsys, tmp_path):
    out_file = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "enumerate", "--tess", "cubic", "--n", "4", "--max-index", "16",
                       "--output", str(out_file))
    assert code == 0
    assert "orbits=3: 1 class" in out.splitlines()
    assert "orbits=2: 1 class" in out.splitlines()
    lines = out_file.read_text().splitlines()
    assert json.loads(lines[-1])["summary"]["records"] == len(lines) - 1


def test_enumerate_cap(capsys):
    assert run(capsys, "enumerate", "--max-index", "10^9")[0] == 2
    assert run(capsys, "enumerate", "--n", "4", "--max-index", "10^9")[0] == 2


def test_enumerate_all(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--max-index", "4", "--all")
    assert code == 0 and out.startswith("orbits=1:")


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "index3-B4")
    assert code == 0 and "PASS" in out
    rep = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "--suite", "table3-reps", "--report", str(rep))
    assert code == 0
    assert json.loads(rep.read_text().splitlines()[-1])["summary"]["status"] == "pass"
    assert run(capsys, "verify", "--suite", "nonexistent")[0] == 2


def test_verify_failure_exit_code(capsys):
    # a suite with a deliberately impossible parameter set still runs and reports failure
    code, out, _ = run(capsys, "verify", "--suite", "t3343-2orbit", "--param", "max_index=2")
    assert code == 1 and "FAIL" in out and "counterexample" in out


def test_stg_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "stg", "--tess", "cubic", "--n", "4", "--lattice", "cln", "--format", "dot")
    assert code == 0 and out.count("v0;") == 1 and "v1;" not in out
    code, out, _ = run(capsys, "stg", "--tess", "cubic", "--n", "4", "--lattice", "l11xl11", "--format", "json")
    assert json.loads(out)["vertices"] == 3
    code, out, _ = run(capsys, "stg", "--tess", "3433", "--lattice", "lambda1", "--format", "json")
    d = json.loads(out)
    assert d["vertices"] == 3
    f = tmp_path / "g.dot"
    assert run(capsys, "stg", "--n", "4", "--lattice", "lambda1", "--output", str(f))[0] == 0
    assert f.read_text().startswith("graph stg")


def test_console_entry():
    res = subprocess.run([sys.executable, "-m", "toroidlab", "analyze", "--n", "4", "--lattice", "fcln"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("orbits: 1")
