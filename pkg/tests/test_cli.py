import json

import pytest

from isoreduce import fixture_path, load_fixture, parse_graph
from isoreduce.cli import main
from isoreduce.equivalence import isomorphic


def fx(name):
    return str(fixture_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- reduce --------------------------------------------------------------------

def test_reduce_drop_to_file(tmp_path, capsys, H):
    out = tmp_path / "out.net"
    code, _, _ = run(capsys, "reduce", "--in", fx("G"), "--drop", "4", "--out", str(out))
    assert code == 0
    assert isomorphic(parse_graph(out.read_text(encoding="utf-8")), H) == {v: v for v in H.labels}


def test_reduce_keep_stdout(capsys, A1):
    code, out, _ = run(capsys, "reduce", "--in", fx("G"), "--keep", "1,2,3")
    assert code == 0 and parse_graph(out) == A1


def test_reduce_empty_keep(capsys):
    code, _, err = run(capsys, "reduce", "--in", fx("G"), "--keep", "")
    assert code == 1 and "empty" in err


def test_reduce_keep_and_drop_exclusive(capsys):
    code, _, _ = run(capsys, "reduce", "--in", fx("G"), "--keep", "1", "--drop", "2")
    assert code == 1


def test_reduce_unknown_vertex(capsys):
    assert run(capsys, "reduce", "--in", fx("G"), "--keep", "1,9")[0] == 1


def test_reduce_division_by_lambda(tmp_path, capsys):
    p = tmp_path / "bad.net"
    p.write_text("[vertices]\na v\n[edges]\nv -> v : λ\na -> v : 1\n", encoding="utf-8")
    code, _, err = run(capsys, "reduce", "--in", str(p), "--keep", "a")
    assert code == 2 and "--order" in err


def test_reduce_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.net"
    p.write_text("[vertices]\na b\n[edges]\na -> b : 1//λ\n", encoding="utf-8")
    code, _, err = run(capsys, "reduce", "--in", str(p), "--keep", "a")
    assert code == 1 and "line 4" in err


def test_reduce_missing_file(tmp_path, capsys):
    assert run(capsys, "reduce", "--in", str(tmp_path / "nope.net"), "--keep", "a")[0] == 1


def test_reduce_round_trip_identity(tmp_path, capsys, G):
    out = tmp_path / "same.net"
    run(capsys, "reduce", "--in", fx("G"), "--keep", ",".join(G.labels), "--out", str(out))
    again = tmp_path / "again.net"
    run(capsys, "reduce", "--in", str(out), "--keep", ",".join(G.labels), "--out", str(again))
    assert parse_graph(out.read_text(encoding="utf-8")) == G
    assert again.read_text(encoding="utf-8") == out.read_text(encoding="utf-8")


# -- orbit -----------------------------------------------------------------------

def test_orbit_tau2_text(capsys):
    code, out, _ = run(capsys, "orbit", "--in", fx("G"), "--rule", "tau2")
    assert code == 0
    assert "terminated: fixed-point after 2 step(s)" in out
    assert "uniform: false" in out
    assert "selected: {1, 2, 3}" in out and "selected: {2, 3}" in out


def test_orbit_tau2_report(capsys, A2):
    code, out, _ = run(capsys, "orbit", "--in", fx("G"), "--rule", "tau2", "--format", "report")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == "isoreduce-report/1"
    assert doc["steps"] == 2
    assert parse_graph(doc["attractor"]["graph"]) == A2
    assert len(doc["inputs"][0]["sha256"]) == 64
    table = doc["orbit"][0]["characteristics"]
    assert table[0] == {"node": "1", "indegree": 2, "outdegree": 4, "degree": 6, "betweenness": table[0]["betweenness"]}


def test_orbit_hub11_custom_rule(capsys):
    code, out, _ = run(capsys, "orbit", "--in", fx("hub11"), "--rule", "degree:1/2:gt")
    assert code == 0 and "after 0 step(s)" in out and "uniform: true" in out


def test_orbit_tau3_H(capsys, A2):
    code, out, _ = run(capsys, "orbit", "--in", fx("H"), "--rule", "tau3", "--format", "report")
    doc = json.loads(out)
    assert code == 0 and doc["steps"] == 1
    assert parse_graph(doc["attractor"]["graph"]) == A2


def test_orbit_dot(capsys):
    code, out, _ = run(capsys, "orbit", "--in", fx("G"), "--rule", "tau1", "--format", "dot")
    assert code == 0 and out.count("digraph") == 2


def test_orbit_empty_selection(capsys):
    code, _, _ = run(capsys, "orbit", "--in", fx("empty2"), "--rule", "tau1")
    assert code == 3


def test_orbit_bad_rule(capsys):
    assert run(capsys, "orbit", "--in", fx("G"), "--rule", "tau9")[0] == 1


# -- spectrum ------------------------------------------------------------------------

def test_spectrum_A2(capsys):
    code, out, _ = run(capsys, "spectrum", "--in", fx("A2"))
    assert code == 0
    assert "-1.414214  x2" in out and "1.414214  x2" in out


def test_spectrum_verify(capsys):
    code, out, _ = run(capsys, "spectrum", "--in", fx("G"), "--verify", "1,2,3,5,6", "--samples", "20")
    assert code == 0
    assert "factors: (-λ)" in out and "verified (20/20" in out


def test_spectrum_verify_report(capsys):
    code, out, _ = run(capsys, "spectrum", "--in", fx("G"), "--verify", "1,2,3", "--format", "report")
    doc = json.loads(out)
    assert code == 0 and doc["verification"]["verified"]
    assert [f["vertex"] for f in doc["verification"]["factors"]] == ["4", "5", "6"]


def test_spectrum_empty2(capsys):
    code, out, _ = run(capsys, "spectrum", "--in", fx("empty2"))
    assert code == 0 and "0.000000  x2" in out


def test_spectrum_verification_failure(capsys, monkeypatch):
    import isoreduce.spectra as sp

    real = sp.exact_det
    monkeypatch.setattr(sp, "exact_det", lambda m: real(m) + 1)
    code, out, _ = run(capsys, "spectrum", "--in", fx("G"), "--verify", "1,2,3", "--samples", "3")
    assert code == 4 and "FAILED" in out


def test_spectrum_deterministic(capsys):
    a = run(capsys, "spectrum", "--in", fx("H"), "--verify", "2,3", "--format", "report", "--seed", "4")
    b = run(capsys, "spectrum", "--in", fx("H"), "--verify", "2,3", "--format", "report", "--seed", "4")
    assert a == b


# -- equiv ------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "rule, mode, code",
    [
        ("tau1", "strong", 0),
        ("tau2", "strong", 5),
        ("tau2", "weak", 0),
        ("tau3", "weak", 5),
        ("tau1", "attractor", 0),
        ("tau3", "attractor", 5),
    ],
)
def test_equiv_exit_codes(capsys, rule, mode, code):
    assert run(capsys, "equiv", fx("G"), fx("H"), "--rule", rule, "--mode", mode)[0] == code


def test_equiv_weak_witness(capsys):
    code, out, _ = run(capsys, "equiv", fx("G"), fx("H"), "--rule", "tau2", "--mode", "weak")
    assert "(m, k) = (2, 1)" in out
    code, out, _ = run(capsys, "equiv", fx("G"), fx("H"), "--rule", "tau2", "--mode", "weak", "--format", "report")
    assert json.loads(out)["witness"] == {"m": 2, "k": 1}


# -- dot ----------------------------------------------------------------------------------

def test_dot_A2(capsys):
    code, out, _ = run(capsys, "dot", "--in", fx("A2"))
    assert code == 0 and out.startswith("digraph")
    assert out.count('[label="2/λ"]') == 2
    assert out.count('[label="1"]') == 1
    assert '"2";' in out and '"3";' in out


def test_dot_hub11(capsys, hub11):
    code, out, _ = run(capsys, "dot", "--in", fx("hub11"))
    assert code == 0 and out.startswith("graph")
    assert out.count(" -- ") == 22
    assert sum(1 for line in out.splitlines() if line.strip().endswith('";') and "--" not in line) == 11


def test_dot_empty_graph(tmp_path, capsys):
    out = tmp_path / "e.dot"
    code, _, _ = run(capsys, "dot", "--in", fx("empty2"), "--out", str(out))
    text = out.read_text(encoding="utf-8")
    assert code == 0 and "->" not in text and text.rstrip().endswith("}")


def test_dot_parse_failure(tmp_path, capsys):
    p = tmp_path / "x.net"
    p.write_text("[vertices]\n\n", encoding="utf-8")
    assert run(capsys, "dot", "--in", str(p))[0] == 1


def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "spectrum", "--in", fx("G"), "--samples", "x")[0] == 1
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.strip()


def test_fixtures_load():
    assert load_fixture("A2").n == 2
