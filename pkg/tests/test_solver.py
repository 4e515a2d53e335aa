import random

import pytest
from hypothesis import given, settings, strategies as st

from falldeg.constructible import build_V
from falldeg.descent import DescentMap, descend_classic
from falldeg.errors import FieldTooSmall, NoUnivariateFound, NotRadical
from falldeg.field import make_field
from falldeg.oracle import SolutionSet, enumerate_solutions
from falldeg.poly import PolyRing, PolySystem, field_equations
from falldeg.solver import (factor_univariate, map_points, minimal_in_span, randomize_projection, solve_zero_dim,
                            transform_for_points)
from falldeg import univariate as up
from oracles import brute_zeros

GF2, GF4, GF5 = make_field(2), make_field(2, [2]), make_field(5)


def system(R, *texts, fe=False):
    return PolySystem(R, [R.parse(t) for t in texts], fe)


def test_two_point_example():
    R = PolyRing(GF5, 2)
    F = system(R, "x0^2 - 1", "x1 - x0")
    Z, trace = solve_zero_dim(F, e=2)
    assert Z.points == [(1, 1), (4, 4)] == brute_zeros(F.polys, GF5, 2)
    first = trace.levels[0]
    assert first["level"] == 0 and first["degree"] == 2
    assert trace.d >= 2


@pytest.mark.parametrize("c", range(5))
def test_linear_univariate(c):
    R = PolyRing(GF5, 1)
    F = PolySystem(R, [R.var(0) - R.const(c)])
    Z, trace = solve_zero_dim(F)
    assert Z.points == [(c,)]
    assert trace.levels[0]["degree"] == 1


def test_descended_univariate_matches_scan():
    K = make_field(2, [4])
    D = DescentMap(K, 2, 1)
    f = D.source.parse("x0^3 + [0,1]*x0 + [1,1]")
    out = descend_classic([f], D)
    F = out.system()
    Z, _ = solve_zero_dim(F)
    assert Z.points == brute_zeros(F.polys, GF2, 4)


def test_minimal_in_span_examples():
    R = PolyRing(GF5, 2)
    V = build_V(system(R, "x0^2 - 1", "x1 - x0"), 2)
    ladder = [R.one, R.var(0), R.var(0) ** 2]
    elem, coeffs = minimal_in_span(V, ladder)
    assert elem == R.parse("x0^2 - 1") and coeffs == [4, 0, 1]
    assert minimal_in_span(V, [R.one, R.var(0)]) is None
    U = build_V(system(R, "1"), 2)
    elem, coeffs = minimal_in_span(U, ladder)
    assert elem == R.one and coeffs == [1]


def test_factor_examples():
    fac = factor_univariate(GF5, [4, 0, 1])
    assert sorted(g for g, _ in fac.factors) == [[1, 1], [4, 1]]
    assert fac.roots() == [1, 4]
    fac = factor_univariate(GF2, [1, 1, 1])
    assert fac.factors == [([1, 1, 1], 1)] and fac.roots() == []
    fac = factor_univariate(GF4, up.field_poly(GF4, 4))
    assert len(fac.factors) == 4 and fac.roots() == [0, 1, 2, 3]


def test_not_radical_rejected():
    R = PolyRing(GF5, 1)
    with pytest.raises(NotRadical):
        solve_zero_dim(system(R, "x0^2"))


def test_unit_ideal_empty():
    R = PolyRing(GF5, 2)
    Z, _ = solve_zero_dim(system(R, "x0", "x0 + 1"))
    assert Z.points == []


def test_deterministic():
    K = make_field(3)
    R = PolyRing(K, 2)
    F = PolySystem(R, [R.parse("x0^2 + x1 + 1"), R.parse("x0*x1 + 2")] + field_equations(R, 3), True)
    a = solve_zero_dim(F, seed=5)
    b = solve_zero_dim(F, seed=5)
    assert a[0].points == b[0].points and a[1].to_json() == b[1].to_json()


def test_no_univariate_reports_dims():
    R = PolyRing(GF5, 2)
    F = system(R, "x0^2 - 1", "x1 - x0")
    with pytest.raises(NoUnivariateFound) as info:
        solve_zero_dim(F, d=1, e=1)
    assert info.value.dims


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_solver_against_enumeration(seed):
    rng = random.Random(seed)
    K = rng.choice([GF2, make_field(3), GF4])
    m = rng.choice([1, 2]) if K.order > 2 else rng.choice([2, 3])
    R = PolyRing(K, m)
    polys = [R.random_poly(rng, 2, density=0.5) for _ in range(m)]
    F = PolySystem(R, polys + field_equations(R, K.order), True)
    Z, _ = solve_zero_dim(F)
    assert Z.points == enumerate_solutions(F).points


def test_randomize_identity_ok():
    R = PolyRing(GF5, 2)
    F = system(R, "x0^2 - 1", "x1 - x0")
    Z = SolutionSet(R, GF5, [(1, 1), (4, 4)])
    A = randomize_projection(F, Z, seed=0)
    assert [list(r) for r in A.matrix] == [[1, 0], [0, 1]]


def test_randomize_mixes_coordinates():
    R = PolyRing(GF5, 2)
    F = system(R, "x0", "x1^2 - x1")
    Z = enumerate_solutions(F)
    assert Z.points == [(0, 0), (0, 1)]
    A = randomize_projection(F, Z, seed=3)
    assert A.matrix[0][1] != 0
    moved = map_points(A, Z)
    assert len({pt[0] for pt in moved.points}) == 2
    G = transform_for_points(F, A)
    assert enumerate_solutions(G).points == moved.points


def test_randomize_single_point_and_small_field():
    R = PolyRing(GF5, 2)
    F = system(R, "x0 - 2", "x1 - 3")
    Z = enumerate_solutions(F)
    assert len({pt[0] for pt in map_points(randomize_projection(F, Z, 1), Z).points}) == 1
    R2 = PolyRing(GF2, 2)
    F2 = PolySystem(R2, field_equations(R2, 2))
    with pytest.raises(FieldTooSmall):
        randomize_projection(F2, enumerate_solutions(F2), 0)
