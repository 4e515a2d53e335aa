import pytest

from falldeg.descent import theorem_bound_m1
from falldeg.errors import ParameterCapExceeded
from falldeg.hfe import (SWEEP_FIELDS, SweepReport, attack, cell_seed, gen_instance, instance_to_json,
                         parse_sweep_config, sweep)
from falldeg.oracle import enumerate_solutions
from falldeg.poly import PolySystem
from falldeg.solver import solve_zero_dim


def test_plaintext_solves_public_key():
    inst = gen_instance(2, 3, 1, 3, seed=7)
    G = inst.attack_system()
    assert all(f.evaluate(list(inst.plaintext)) == 0 for f in G.polys)
    x = inst.secret_point()
    assert all(f.evaluate(list(x)) == 0 for f in inst.secret.polys)


def test_same_seed_same_instance():
    a, b = gen_instance(2, 4, 1, 3, 11), gen_instance(2, 4, 1, 3, 11)
    assert instance_to_json(a) == instance_to_json(b)
    assert instance_to_json(a) != instance_to_json(gen_instance(2, 4, 1, 3, 12))


def test_scrambling_preserves_solution_count():
    inst = gen_instance(2, 3, 1, 3, 2)
    pub = enumerate_solutions(inst.attack_system())
    sec = enumerate_solutions(inst.unscrambled().system())
    assert len(pub) == len(sec)


def test_linear_instance():
    inst = gen_instance(2, 3, 1, 1, 0)
    res = attack(inst)
    assert res.recovered and res.bound == theorem_bound_m1(1, 2) == 2
    assert res.solve_degree <= 2


def test_attack_recovers_and_is_flat_in_n():
    degrees = set()
    for n in (3, 4):
        inst = gen_instance(2, n, 1, 3, 0)
        res = attack(inst)
        assert res.recovered and res.bound == 5
        degrees.add(res.solve_degree)
    assert len(degrees) == 1


def test_attack_two_variables():
    inst = gen_instance(2, 2, 2, 2, 1)
    res = attack(inst)
    assert res.recovered and res.solve_degree <= res.bound


def test_unit_ideal_attack_system_is_empty():
    inst = gen_instance(2, 3, 1, 3, 0)
    G = inst.attack_system()
    R = G.ring
    bad = PolySystem(R, G.polys + [R.var(0), R.var(0) + R.one], True)
    Z, _ = solve_zero_dim(bad)
    assert Z.points == []


@pytest.mark.parametrize("args", [(7, 3, 1, 3), (2, 13, 1, 3), (2, 3, 3, 3), (2, 3, 1, 7), (2, 0, 1, 3)])
def test_parameter_caps(args):
    with pytest.raises(ParameterCapExceeded):
        gen_instance(*args)


def test_sweep_config_and_rows():
    grid = parse_sweep_config("# demo\nq = 2\nn = 2..3\nm = 1\nD = 3\n")
    assert grid == {"q": [2], "n": [2, 3], "m": [1], "D": [3]}
    rep = sweep(grid, seed=4)
    assert [r["n"] for r in rep.rows] == [2, 3]
    for r in rep.rows:
        assert r["error"] == "" and r["recovered"] and r["bound"] == 5
        assert r["method"] == "oracle"
        assert r["observed"] <= r["bound"]
    assert rep.violations() == []
    lines = rep.to_csv().splitlines()
    assert lines[0].split(",") == SWEEP_FIELDS and len(lines) == 3
    assert sweep(grid, seed=4).rows[0]["observed"] == rep.rows[0]["observed"]


def test_empty_grid():
    assert sweep({}).rows == []
    assert sweep(parse_sweep_config("")).rows == []
    assert SweepReport().to_csv().strip() == ",".join(SWEEP_FIELDS)


def test_cell_seeds_distinct():
    assert len({cell_seed(0, i) for i in range(50)}) == 50
