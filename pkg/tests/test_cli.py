import json

from pwb.cli import main

JAC10 = """
algebra jac {
  vars: x, y, z;
  bracket{x,y} = z^2;
  bracket{y,z} = x^2;
  bracket{z,x} = y^2;
}
"""

SKEW = """
algebra S {
  vars: x, y;
  bracket{x,y} = 2*x*y;
}
"""

BAD = """
algebra bad {
  vars: x, y, z;
  bracket{x,y} = x^2;
  bracket{z,x} = z^2;
}
"""

ZETA3_MAP = """
map g on S {
  x -> zeta(3)*x;
}
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, json.loads(captured.out)


def test_check_ok(tmp_path, capsys):
    f = tmp_path / "jac.pois"
    f.write_text(JAC10)
    code, report = run(capsys, "check", "--algebra", str(f))
    assert code == 0 and report["result"]["jacobi"] is True
    assert report["schema"] == "pwb/1"
    assert str(f) in report["inputs"]


def test_check_bad_exit2(tmp_path, capsys):
    f = tmp_path / "bad.pois"
    f.write_text(BAD)
    # no --defer-jacobi needed: check reports the violation as its finding
    code, report = run(capsys, "check", "--algebra", str(f))
    assert code == 2
    assert report["result"]["failing_triple"] == ["x", "y", "z"]


def test_other_commands_fail_fast_on_bad_algebra(tmp_path, capsys):
    f = tmp_path / "bad.pois"
    f.write_text(BAD)
    code, report = run(capsys, "normal", "--algebra", str(f))
    assert code == 1
    code, report = run(capsys, "normal", "--algebra", str(f), "--defer-jacobi")
    assert code == 0


def test_check_map_not_automorphism(tmp_path, capsys):
    f = tmp_path / "bad.pois"
    f.write_text(BAD)
    m = tmp_path / "g.map"
    m.write_text("map g on bad { y -> zeta(3)*y; }")
    code, report = run(capsys, "check", "--algebra", str(f), "--defer-jacobi",
                       "--map", str(m))
    assert code == 2
    assert report["result"]["maps"][0]["classification"]["kind"] == "not_automorphism"


def test_reflections_none(tmp_path, capsys):
    f = tmp_path / "jac.pois"
    f.write_text(JAC10)
    code, report = run(capsys, "reflections", "--algebra", str(f))
    assert code == 0
    assert report["result"]["status"] == "no_reflections"
    assert report["result"]["reflections"] == "none"


def test_normal_and_trace_and_molien(tmp_path, capsys):
    f = tmp_path / "s.pois"
    f.write_text(SKEW)
    code, report = run(capsys, "normal", "--algebra", str(f))
    assert code == 0
    assert report["result"]["normal_elements"]["kind"] == "points"

    m = tmp_path / "g.map"
    m.write_text(ZETA3_MAP)
    code, report = run(capsys, "trace", "--algebra", str(f), "--map", str(m))
    assert code == 0
    assert report["result"]["classification"]["kind"] == "reflection"

    code, report = run(capsys, "molien", "--algebra", str(f), "--group", str(m))
    assert code == 0
    assert report["result"]["group_order"] == 3
    taylor = [c["str"] for c in report["result"]["taylor"]]
    assert taylor[:4] == ["1", "1", "1", "2"]


def test_fixed_and_report(tmp_path, capsys):
    f = tmp_path / "s.pois"
    f.write_text(SKEW)
    m = tmp_path / "g.map"
    m.write_text(ZETA3_MAP)
    code, report = run(capsys, "fixed", "--algebra", str(f), "--group", str(m))
    assert code == 0
    fixed = report["result"]["fixed_ring"]
    assert fixed["polynomial"] is True
    exprs = {g["expression"] for g in fixed["generators"]}
    assert exprs == {"x^3", "y"}
    assert fixed["skew_presentation"] is not None

    code, report = run(capsys, "report", "--algebra", str(f), "--group", str(m))
    assert code == 0
    assert report["result"]["verdict"] in ("distinguished", "not_distinguished")
    assert "unimodular" in report["result"]


def test_family_roundtrip(tmp_path, capsys):
    out = tmp_path / "m2.pois"
    code, report = run(capsys, "family", "qmatrix", "--n", "2", "--out", str(out))
    assert code == 0 and out.exists()
    code, report = run(capsys, "normal", "--algebra", str(out))
    assert code == 0
    assert report["result"]["normal_elements"]["kind"] == "subspace"


def test_family_jacobian_args(tmp_path, capsys):
    code, report = run(capsys, "family", "jacobian", "--p", "-1", "--q", "1")
    assert code == 0
    assert "bracket{x,y}" in report["result"]["algebra_file"]


def test_family_skew_from_matrix_file(tmp_path, capsys):
    mat = tmp_path / "q.mat"
    mat.write_text("0 zeta(3)\n-1*zeta(3) 0\n")
    out = tmp_path / "s.pois"
    code, report = run(capsys, "family", "skew", "--matrix", str(mat), "--out", str(out))
    assert code == 0
    code, report = run(capsys, "check", "--algebra", str(out))
    assert code == 0 and report["result"]["jacobi"] is True


def test_fixed_with_two_generators(tmp_path, capsys):
    f = tmp_path / "m2.pois"
    run(capsys, "family", "qmatrix", "--n", "2", "--out", str(f))
    g1 = tmp_path / "swap.map"
    g1.write_text("map s on m2 { b -> c; c -> b; }")
    g2 = tmp_path / "signs.map"
    g2.write_text("map t on m2 { b -> -1*b; c -> -1*c; }")
    code, report = run(capsys, "fixed", "--algebra", str(f),
                       "--group", f"{g1},{g2}", "--degree", "4")
    assert code == 0
    assert report["result"]["group_order"] == 4


def test_envelope(tmp_path, capsys):
    f = tmp_path / "s.pois"
    f.write_text(SKEW)
    m = tmp_path / "g.map"
    m.write_text(ZETA3_MAP)
    code, report = run(capsys, "envelope", "--algebra", str(f), "--dims", "3",
                       "--extend", str(m), "--trace", str(m))
    assert code == 0
    r = report["result"]
    assert r["dims"] == [1, 4, 10, 20]
    assert r["extension"]["relations_preserved"] is True
    assert r["trace"]["quasi_reflection"] is False
    assert any("m_x" in s for s in r["relations"])


def test_envelope_aliases(tmp_path, capsys):
    f = tmp_path / "s.pois"
    f.write_text(SKEW)
    code, report = run(capsys, "envelope", "--algebra", str(f), "--aliases-paper")
    assert code == 0
    assert report["result"]["generators"] == ["x1", "y1", "x2", "y2"]


def test_paper_suite(capsys):
    code, report = run(capsys, "paper-suite", "--json")
    assert code == 0
    assert report["result"]["passed"] == report["result"]["total"]


def test_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.pois"
    f.write_text("not an algebra file")
    code, report = run(capsys, "normal", "--algebra", str(f))
    assert code == 1 and report["result"] is None


def test_determinism(tmp_path, capsys):
    f = tmp_path / "s.pois"
    f.write_text(SKEW)
    code1, report1 = run(capsys, "normal", "--algebra", str(f), "--json")
    code2, report2 = run(capsys, "normal", "--algebra", str(f), "--json")
    assert report1 == report2
