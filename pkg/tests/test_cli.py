import csv
import io
import json
import subprocess
import sys

import pytest

from k3covers import cli, verification
from k3covers import k3lattices as k3
from k3covers import lattice as lt


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), stdout=buf)
    return code, buf.getvalue()


def tampered(n, r=1):
    """L_n^(r) with one diagonal entry changed: a deliberately wrong builder."""
    L = k3.build_Ln(n, r)
    G = L.gram.tolist()
    G[-1][-1] -= 2
    return lt.from_gram(G, L.labels, L.name)


@pytest.mark.parametrize("argv", [
    ["lattice-info", "L_9_2"],
    ["lattice-info", "K"],
    ["lattice-build", "L_13_4"],
    ["classify", "--genera", "2,0,0,0,0,0"],
    ["ns-candidates", "13"],
    ["derive-candidates", "9"],
    ["even-sets", "M_2e3"],
    ["even-sets", "--options", "12"],
    ["even-sets", "--alternative", "13", "2"],
    ["existence", "17", "2"],
])
@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_subcommands_succeed_and_are_deterministic(argv, fmt):
    code1, out1 = call(*argv, "--format", fmt)
    code2, out2 = call(*argv, "--format", fmt)
    assert code1 == code2 == 0
    assert out1 == out2 and out1.strip()
    if fmt == "json":
        json.loads(out1)
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(out1)))
        assert len(rows) >= 2 and all(len(r) == len(rows[0]) for r in rows)


def test_lattice_info_values():
    code, out = call("lattice-info", "L_9_2", "--format", "json")
    data = json.loads(out)
    assert data["det"] == 2 ** 5 * 4 and data["disc_group"] == [2] * 7
    assert data["two_elementary"] == {"r": 9, "a": 7, "delta": 1}
    assert data["embedding"]["verdict"] == "Embeddable"


def test_classify_json():
    _, out = call("classify", "--genera", "2,0,0,0,0,0", "--format", "json")
    data = json.loads(out)
    assert (data["Xmin"]["chi"], data["Xmin"]["c1sq"], data["Xmin"]["c2"]) == (3, 1, 35)
    _, out = call("classify", "--genera", "0,0,0,0,0,0,0,0,0,0,0,0", "--format", "json")
    data = json.loads(out)
    assert data["admissible"] is False and data["reason"] == "genus-zero-count"


def test_build_then_info_roundtrip(tmp_path):
    path = tmp_path / "l.json"
    assert call("lattice-build", "L_15_8", "--format", "json", "--out", str(path))[0] == 0
    code, out = call("lattice-info", "--input", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["det"] == k3.closed_form_det(15, 8)


def test_even_sets_input_file(tmp_path):
    path = tmp_path / "code.json"
    path.write_text(json.dumps({"m": 8, "generators": [[1, 1, 1, 1, 0, 0, 0, 0]]}))
    code, out = call("even-sets", "--input", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["valid"] is False


def test_out_writes_file_only(tmp_path):
    path = tmp_path / "r.txt"
    code, out = call("ns-candidates", "11", "--out", str(path))
    assert code == 0 and out == ""
    assert "L_11_2" in path.read_text()


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["lattice-info"],
    ["ns-candidates", "x"],
    ["classify"],
    ["lattice-info", "K", "--format", "xml"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["lattice-info", "NO_SUCH"],
    ["lattice-info", "L_5_1"],
    ["lattice-info", "--input", "/nonexistent/file.json"],
    ["derive-candidates", "5"],
    ["existence", "2", "0"],
    ["classify", "--genera", "a,b"],
    ["even-sets", "ZZ"],
    ["even-sets", "--options", "0"],
])
def test_input_errors(argv, capsys):
    assert call(*argv)[0] == 3
    assert "error:" in capsys.readouterr().err


def test_malformed_lattice_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert call("lattice-info", "--input", str(path))[0] == 3
    path.write_text(json.dumps({"gram": [[1, 2], [3, 4]]}))
    assert call("lattice-info", "--input", str(path))[0] == 3


def test_verify_paper_cli():
    code, out = call("verify-paper", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["failed"] == 0
    assert len(data["warnings"]) == 3


def test_tampered_builder_is_caught(monkeypatch):
    report = verification.run_checks(build_ln=tampered)
    assert not report.ok and len(report.failures) >= 1
    monkeypatch.setattr(verification, "run_checks", lambda: report)
    code, out = call("verify-paper")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "k3covers", "ns-candidates", "15"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "L_15_8" in proc.stdout
