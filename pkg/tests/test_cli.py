import json
import subprocess
import sys

import pytest

from twocomplex.cli import EXIT_FOUND, EXIT_HYPOTHESIS, EXIT_NONE, EXIT_USAGE, run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["decide", "gen:tetrahedron"], EXIT_FOUND),
    (["decide", "gen:cone-K5", "--assume-simply-connected"], EXIT_NONE),
    (["decide", "gen:torus", "--assume-simply-connected"], EXIT_HYPOTHESIS),
    (["decide", "gen:tetrahedron", "--p", "4"], EXIT_USAGE),
    (["decide", "gen:no-such-thing"], EXIT_USAGE),
    (["decide"], EXIT_USAGE),
    (["homology", "gen:torus"], EXIT_FOUND),
    (["obstruct", "gen:moebius-555"], EXIT_NONE),
    (["obstruct", "gen:octahedron"], EXIT_FOUND),
    (["local-surfaces", "gen:octahedron"], EXIT_FOUND),
    (["local-surfaces", "gen:cone-k5"], EXIT_NONE),
    (["links", "gen:cone-k5"], EXIT_FOUND),
    (["gen", "list"], EXIT_FOUND),
])
def test_exit_codes(capsys, argv, code):
    assert _run(capsys, *argv)[0] == code


def test_decide_summary_and_json(capsys):
    code, out, _ = _run(capsys, "decide", "gen:cone-K5")
    assert code == EXIT_NONE and "ConeOverKuratowski" in out and "K5" in out
    code, out, _ = _run(capsys, "decide", "gen:tetrahedron", "--json")
    rep = json.loads(out)
    assert rep["verdict"]["status"] == "Found" and len(rep["input"]["sha256"]) == 64


def test_deterministic_reports(capsys):
    a = _run(capsys, "decide", "gen:moebius-555", "--json")[1]
    b = _run(capsys, "decide", "gen:moebius-555", "--json")[1]
    assert a == b


def test_validate_invalid_file(tmp_path, capsys):
    bad = {"vertices": ["a", "b"], "edges": [{"id": "e", "tail": "a", "head": "b"}],
           "faces": [{"id": "f", "trail": [{"edge": "e", "forward": True}]}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out, _ = _run(capsys, "validate", str(p), "--json")
    rep = json.loads(out)
    assert code == EXIT_NONE and not rep["valid"] and rep["diagnostics"][0]["kind"]
    assert _run(capsys, "validate", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_certificate_round_trip(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    cx = tmp_path / "c.json"
    assert _run(capsys, "gen", "cone-k6", "-o", str(cx))[0] == EXIT_FOUND
    assert _run(capsys, "decide", str(cx), "--emit-certificate", str(cert))[0] == EXIT_NONE
    code, out, _ = _run(capsys, "minor", str(cx), str(cert), "--check-obstruction", "--json")
    rep = json.loads(out)
    assert code == EXIT_FOUND and rep["check"]["ok"]
    assert rep["trace"] and all(t["S_after"] <= t["S_before"] for t in rep["trace"])


def test_report_file_and_stdin(tmp_path, capsys):
    _run(capsys, "gen", "tetrahedron", "-o", str(tmp_path / "t.json"))
    rp = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "twocomplex.cli", "homology", "-", "--report", str(rp)],
                          input=(tmp_path / "t.json").read_text(), capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "trivial"
    assert json.loads(rp.read_text())["h1"] == "trivial"


def test_bad_script_is_usage_error(tmp_path, capsys):
    s = tmp_path / "s.json"
    s.write_text(json.dumps([{"op": "DeleteFace", "face": "nope"}]))
    assert _run(capsys, "minor", "gen:tetrahedron", str(s))[0] == EXIT_USAGE
