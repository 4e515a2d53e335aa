import random

import pytest
from hypothesis import given, strategies as st

from falldeg.constructible import build_V, contains, equivalent_mod, fall_report, last_fall_degree, last_fall_info
from falldeg.errors import DegreeTooLarge
from falldeg.field import make_field
from falldeg.poly import PolyRing, PolySystem
from oracles import naive_V

GF2, GF3, GF5 = make_field(2), make_field(3), make_field(5)


def system(R, *texts):
    return PolySystem(R, [R.parse(t) for t in texts])


def test_single_linear_generator():
    R = PolyRing(GF2, 1)
    V = build_V(system(R, "x0"), 2)
    assert V.dim == 2
    assert V.contains(R.parse("x0^2")) and V.contains(R.parse("x0"))
    V1 = build_V(system(R, "x0"), 1)
    assert contains(V1, R.var(0))
    assert not contains(V1, R.parse("x0 + 1"))


@pytest.mark.parametrize("K", [GF2, GF3, GF5])
def test_difference_of_generators(K):
    R = PolyRing(K, 2)
    F = system(R, "x0^2 + x1", "x0^2")
    V = build_V(F, 2)
    assert V.contains(R.var(1))
    assert V.dim_upto(1) >= 1
    assert V.dim == naive_V(F.polys, 2).dim
    assert fall_report(F, 5).falls == [2]
    assert last_fall_degree(F) == 2


def test_empty_system():
    R = PolyRing(GF3, 2)
    for i in range(4):
        assert build_V(PolySystem(R, []), i).dim == 0
    assert last_fall_degree(PolySystem(R, [])) == 0


def test_unit_ideal_has_no_positive_fall():
    R = PolyRing(GF3, 2)
    F = system(R, "1")
    rep = fall_report(F, 4)
    assert rep.falls == []
    assert last_fall_degree(F) == 0


@pytest.mark.parametrize("text", ["x0^3 + x0 + 1", "x0^2", "x0 + 2", "x0^5 + 2*x0^2"])
def test_univariate_has_last_fall_zero(text):
    R = PolyRing(GF3, 1)
    assert last_fall_degree(system(R, text)) == 0


def test_degree_too_large():
    R = PolyRing(GF2, 2)
    V = build_V(system(R, "x0"), 1)
    with pytest.raises(DegreeTooLarge):
        V.contains(R.parse("x0*x1"))


def test_generator_above_i_is_ignored():
    R = PolyRing(GF2, 2)
    V = build_V(system(R, "x0^3 + x1"), 2)
    assert V.dim == 0


@given(st.integers(0, 10 ** 6))
def test_against_naive_closure(seed):
    rng = random.Random(seed)
    K = rng.choice([GF2, GF3])
    R = PolyRing(K, 2)
    polys = [R.random_poly(rng, rng.randint(1, 3), density=0.5) for _ in range(rng.randint(1, 3))]
    F = PolySystem(R, polys)
    for i in range(4):
        V, N = build_V(F, i), naive_V(polys, i) if any(f.terms for f in polys) else None
        if N is None:
            assert V.dim == 0
            continue
        assert V.dim == N.dim
        assert all(V.contains(g) for g in N.rows.values())


@given(st.integers(0, 10 ** 6))
def test_first_fall_before_last(seed):
    rng = random.Random(seed)
    R = PolyRing(GF2, 2)
    polys = [R.random_poly(rng, 2, density=0.6) for _ in range(2)] + \
        [R.parse("x0^2 + x0"), R.parse("x1^2 + x1")]
    info = last_fall_info(PolySystem(R, polys, True), max_degree=8)
    rep = info.report
    if rep.first_fall is not None:
        assert rep.first_fall <= info.value
    assert info.value <= info.gb_degree


def test_ideal_equivalence_relation():
    R = PolyRing(GF3, 2)
    V = build_V(system(R, "x0^2 + x1", "x0^2"), 3)
    f, g = R.parse("x0*x1 + 1"), R.parse("x0*x1 + 1 + x1")
    assert equivalent_mod(V, f, g)
    assert not equivalent_mod(V, f, R.parse("x0 + 1"))
