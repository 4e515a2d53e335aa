import json
import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from falldeg.cli import main
from falldeg.errors import ParseError
from falldeg.field import make_field
from falldeg.formats import SystemFile, dump_system, load_system, parse_system, save_system
from falldeg.poly import PolyRing, PolySystem

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


@given(st.integers(0, 10 ** 6), st.booleans())
def test_roundtrip(seed, fe):
    rng = random.Random(seed)
    K = rng.choice([make_field(3), make_field(2, [2]), make_field(2, [3])])
    R = PolyRing(K, 2)
    F = PolySystem(R, [R.random_poly(rng, 3, density=0.5) for _ in range(3)], fe)
    text = dump_system(F)
    sf = parse_system(text)
    assert sf.dumps() == text
    assert sf.polys == F.polys and sf.field_equations == fe


def test_goldens_are_canonical():
    for path in GOLDEN.glob("*.sys"):
        assert load_system(str(path)).dumps() == path.read_text()


def test_save_and_load(tmp_path):
    R = PolyRing(make_field(5), 2, ["a", "b"])
    sf = SystemFile(R, [R.parse("a*b + 3")], True, {"model": "classic", "q": 5})
    save_system(str(tmp_path / "s.sys"), sf)
    back = load_system(str(tmp_path / "s.sys"))
    assert back.descent == {"model": "classic", "q": 5} and list(back.ring.names) == ["a", "b"]


@pytest.mark.parametrize("text,line", [
    ("hello\n", 1),
    ("#falldeg-system v1\nfield: GF(6)\nvars: x0\npolys:\n", 2),
    ("#falldeg-system v1\nfield: GF(3)\nvars: x0\ncolour: red\npolys:\n", 4),
    ("#falldeg-system v1\nfield: GF(3)\nvars: x0\npolys:\nx0 +\n", 5),
    ("#falldeg-system v1\nfield: GF(3)\nvars: x0\nfield_equations: maybe\npolys:\n", 4),
    ("#falldeg-system v1\nfield: GF(3)\nvars: x0\n", 4),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_system(text)
    assert info.value.line == line and info.value.column >= 1


@pytest.mark.parametrize("name", ["two_generators", "unit", "univariate", "empty"])
def test_falldeg_goldens(capsys, name):
    code, out = run(capsys, "falldeg", GOLDEN / f"{name}.sys", "--oracle")
    assert code == 0
    got = json.loads(out)
    assert got == json.loads((GOLDEN / f"{name}.falldeg.json").read_text())
    expect = {"two_generators": 2, "unit": 0, "univariate": 0, "empty": 0}[name]
    assert got["last_fall_degree"] == expect


def test_falldeg_horizon_mode(capsys):
    code, out = run(capsys, "falldeg", GOLDEN / "two_generators.sys", "--horizon", 4)
    rep = json.loads(out)
    assert code == 0 and rep["method"] == "horizon" and rep["falls"] == [2] and rep["horizon"] == 4


@pytest.mark.parametrize("src,args,golden", [
    ("square_gf4.sys", ["--basis", "polynomial"], "square_gf4.classic.sys"),
    ("fifth_gf8.sys", ["--model", "bar"], "fifth_gf8.bar.sys"),
])
def test_descend_goldens(capsys, src, args, golden):
    code, out = run(capsys, "descend", GOLDEN / src, *args)
    assert code == 0 and out == (GOLDEN / golden).read_text()


def test_descend_n1_is_relabeling(capsys, tmp_path):
    p = tmp_path / "p.sys"
    p.write_text("#falldeg-system v1\nfield: GF(5)\nvars: x0\nfield_equations: false\npolys:\nx0^2 + 3\n")
    code, out = run(capsys, "descend", p)
    assert code == 0 and out.splitlines()[-1] == "x0_0^2 + 3"


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.sys"
    p.write_text("nonsense\n")
    code, out = run(capsys, "falldeg", p)
    err = json.loads(out)
    assert code == 64 and err["error"] == "ParseError" and err["line"] == 1 and err["column"] == 1


def test_missing_file(capsys):
    code, _ = run(capsys, "falldeg", "/nonexistent/x.sys")
    assert code == 64


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tau", "x"])
    assert info.value.code == 64


def test_tau(capsys):
    code, out = run(capsys, "tau", 8, 2, 1)
    assert code == 0 and json.loads(out)["tau"] == 6
    code, out = run(capsys, "tau", 8, 2, 1, "--plain")
    assert out.strip() == "6"


def test_solve(capsys, tmp_path):
    p = tmp_path / "s.sys"
    p.write_text("#falldeg-system v1\nfield: GF(5)\nvars: x0 x1\nfield_equations: false\npolys:\n"
                 "x0^2 - 1\nx1 - x0\n")
    code, out = run(capsys, "solve", p, "--ebound", 2)
    rep = json.loads(out)
    assert code == 0 and rep["solutions"] == [["1", "1"], ["4", "4"]]
    p.write_text("#falldeg-system v1\nfield: GF(5)\nvars: x0\nfield_equations: false\npolys:\nx0^2\n")
    assert run(capsys, "solve", p)[0] == 64


def test_verify_901(capsys):
    code, out = run(capsys, "verify", "901", "--q", 2, "--n", 2, "--trials", 50)
    assert code == 0 and json.loads(out)["pass"]


def test_verify_one_variable_constant(capsys):
    code, out = run(capsys, "verify", "8056", "--q", 2, "--d", 3, "--n", "2..6")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["constant_in_n"]


def test_verify_failure_dumps(capsys, tmp_path):
    dump = tmp_path / "fail.json"
    code, out = run(capsys, "verify", "5551", "--q", 2, "--m", 1, "--max-degree", 3, "--trials", 0,
                    "--dump", dump)
    rep = json.loads(out)
    assert code == (0 if rep["pass"] else 2)
    assert dump.exists() == (not rep["pass"])


def test_hfe_commands(capsys, tmp_path):
    code, out = run(capsys, "hfe", "gen", "--n", 3, "--seed", 1)
    assert code == 0 and len(json.loads(out)["public"]) == 3
    code, out = run(capsys, "hfe", "attack", "--n", 4, "--seed", 1)
    assert code == 0 and json.loads(out)["recovered"]
    code, out = run(capsys, "hfe", "gen", "--n", 30)
    assert code == 3 and json.loads(out)["error"] == "ParameterCapExceeded"
    cfg = tmp_path / "grid.cfg"
    cfg.write_text("q = 2\nn = 2, 3\nm = 1\nD = 2\n")
    code, out = run(capsys, "hfe", "sweep", cfg, "--csv")
    assert code == 0 and len(out.strip().splitlines()) == 3


def test_attack_bound_exceeded(capsys):
    code, out = run(capsys, "hfe", "attack", "--n", 4, "--D", 3, "--bound", 1)
    assert code == 2 and json.loads(out)["error"] == "BoundExceeded"
