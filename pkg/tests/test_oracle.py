import random

import pytest
from hypothesis import given, strategies as st

from falldeg.errors import ProjectionNotInjective
from falldeg.field import make_field
from falldeg.oracle import (SolutionSet, buchberger, enumerate_solutions, is_radical_desk, is_zero_dimensional,
                            lagrange_gamma, normal_form, projection_poly, quotient_dimension, standard_monomials)
from falldeg.poly import PolyRing, PolySystem, field_equations
from falldeg import univariate as up
from oracles import brute_zeros

GF2, GF3, GF4, GF5 = make_field(2), make_field(3), make_field(2, [2]), make_field(5)


def system(R, *texts, fe=False):
    return PolySystem(R, [R.parse(t) for t in texts], fe)


def test_groebner_examples():
    R = PolyRing(GF3, 2)
    B = buchberger(system(R, "x0^2 + x1", "x0^2"))
    assert sorted(map(str, B.polys)) == ["x0^2", "x1"]
    R1 = PolyRing(GF4, 1)
    B = buchberger(system(R1, "x0^4 - x0"))
    assert [str(g) for g in B.polys] == ["x0^4 + x0"]
    assert buchberger(system(R, "1", "x0")).is_unit()


def test_normal_forms():
    R = PolyRing(GF3, 2)
    B = buchberger(system(R, "x0^2", "x1"))
    assert not normal_form(R.var(1), B).terms
    assert normal_form(R.var(0), B) == R.var(0)
    assert not normal_form(R.zero, B).terms


def test_zero_dimensionality():
    R = PolyRing(GF3, 2)
    B = buchberger(system(R, "x0^2", "x1"))
    assert is_zero_dimensional(B) and quotient_dimension(B) == 2
    assert sorted(standard_monomials(B)) == [(0, 0), (1, 0)]
    R1 = PolyRing(GF3, 1)
    assert quotient_dimension(buchberger(system(R1, "x0 - 1"))) == 1
    assert not is_zero_dimensional(buchberger(system(R, "x0*x1")))


def test_enumerate_examples():
    R = PolyRing(GF5, 2)
    Z = enumerate_solutions(system(R, "x0^2 - 1", "x1 - x0"))
    assert Z.points == [(1, 1), (4, 4)]
    assert enumerate_solutions(system(R, "1")).points == []
    R1 = PolyRing(GF4, 1)
    assert len(enumerate_solutions(system(R1, "x0^4 - x0"))) == 4


def test_projection_poly_expansion():
    R = PolyRing(GF5, 2)
    Z = SolutionSet(R, GF5, [(1, 1), (4, 4)])
    expect = up.mul(GF5, [GF5.neg(1), 1], [GF5.neg(4), 1])   # expansion oracle
    assert expect == [4, 0, 1]
    assert projection_poly(Z, 0).to_univariate(0) == expect
    assert str(projection_poly(Z, 0)) == "x0^2 + 4"
    assert projection_poly(SolutionSet(R, GF5, []), 0) == R.one
    Zr = SolutionSet(R, GF5, [(2, 0), (2, 1)])
    assert projection_poly(Zr, 0) == R.parse("x0 - 2")


def test_lagrange_gamma():
    R = PolyRing(GF5, 2)
    assert lagrange_gamma(SolutionSet(R, GF5, [(1, 1), (4, 4)]), 1) == R.var(0)
    assert lagrange_gamma(SolutionSet(R, GF5, [(2, 3)]), 1) == R.const(3)
    with pytest.raises(ProjectionNotInjective):
        lagrange_gamma(SolutionSet(R, GF5, [(2, 3), (2, 4)]), 1)


def test_radical_checks():
    R1 = PolyRing(GF3, 1)
    assert is_radical_desk(system(R1, "x0^2")) == "not_radical"
    assert is_radical_desk(system(R1, "x0^2 - x0")) == "radical"
    R = PolyRing(GF3, 2)
    F = PolySystem(R, [R.parse("x0^2*x1 + x1^2")] + field_equations(R, 3))
    assert is_radical_desk(F) == "radical"


def test_closure_points():
    R = PolyRing(GF2, 1)
    Z = enumerate_solutions(system(R, "x0^2 + x0 + 1"), closure=True)
    assert len(Z) == 2 and Z.exact
    assert Z.field.order == 4


@given(st.integers(0, 10 ** 6))
def test_gb_canonical_under_shuffle(seed):
    rng = random.Random(seed)
    R = PolyRing(GF3, 2)
    polys = [R.random_poly(rng, 2, density=0.6) for _ in range(3)]
    B1 = buchberger(PolySystem(R, polys))
    shuffled = polys[:]
    rng.shuffle(shuffled)
    shuffled = [f.scale(2) for f in shuffled]
    B2 = buchberger(PolySystem(R, shuffled))
    assert sorted(map(str, B1.polys)) == sorted(map(str, B2.polys))
    for f in polys:
        assert B1.contains(f)


@given(st.integers(0, 10 ** 6))
def test_enumeration_matches_brute_force(seed):
    rng = random.Random(seed)
    K = rng.choice([GF3, GF4])
    R = PolyRing(K, 2)
    polys = [R.random_poly(rng, 2, density=0.5) for _ in range(2)]
    Z = enumerate_solutions(PolySystem(R, polys))
    assert Z.points == brute_zeros(polys, K, 2)
