import itertools
import random

import pytest
from hypothesis import given, strategies as st

from falldeg.errors import CapExceeded, MixedRings, ParseError, SingularMatrix
from falldeg.field import make_field
from falldeg.poly import (GREVLEX, GRLEX, LEX, NEG_INF, AffineMap, PolyRing, act_affine, field_equations,
                          format_poly, monomials_upto, parse_poly, reduce_exponent, reduce_mod_field_equations)

GF2, GF3, GF4, GF5 = make_field(2), make_field(3), make_field(2, [2]), make_field(5)


def test_char2_square():
    R = PolyRing(GF2, 2)
    x0, x1 = R.gens()
    assert (x0 + x1) * (x0 + x1) == x0 ** 2 + x1 ** 2
    assert not (x0 + x0).terms
    assert not (x0 * R.zero).terms


def test_zero_degree_marker():
    R = PolyRing(GF3, 2)
    assert R.zero.degree == NEG_INF
    assert R.zero.degree < 0 and R.zero.degree < -10 ** 9


def test_mixed_rings():
    with pytest.raises(MixedRings):
        PolyRing(GF2, 2).var(0) + PolyRing(GF3, 2).var(0)


def test_evaluate_examples():
    R = PolyRing(GF2, 2)
    assert R.parse("x0^2 + x1").evaluate([1, 1]) == 0
    assert PolyRing(GF4, 2).const(3).evaluate([1, 2]) == 3
    R4 = PolyRing(GF4, 2)
    assert (R4.var(0) * R4.var(1)).evaluate([2, 2]) == 3


def test_affine_examples():
    R = PolyRing(GF3, 2)
    f = R.parse("x0^2*x1 + 2*x1 + 1")
    assert act_affine(AffineMap.identity(GF3, 2), f) == f
    A = AffineMap(GF3, [[1, 1], [0, 1]], [0, 0])
    assert act_affine(A, R.var(0)) == R.var(0) + R.var(1)
    with pytest.raises(SingularMatrix):
        AffineMap(GF3, [[1, 1], [1, 1]], [0, 0])


def test_reduce_examples():
    R = PolyRing(GF2, 2)
    x0, x1 = R.gens()
    assert reduce_mod_field_equations(x0 ** 3, 2) == x0
    assert reduce_mod_field_equations(x0 ** 2 * x1, 2) == x0 * x1
    assert reduce_mod_field_equations(R.one, 2) == R.one


def test_exponent_rule():
    for q in (2, 3, 4, 5):
        assert reduce_exponent(0, q) == 0
        for e in range(1, 40):
            r = reduce_exponent(e, q)
            assert r == ((e - 1) % (q - 1)) + 1
            assert 1 <= r <= q - 1 or q == 2 and r == 1


def test_monomials_upto_examples():
    assert monomials_upto(1, 2) == [(2,), (1,), (0,)]
    assert len(monomials_upto(2, 1)) == 3
    assert len(monomials_upto(3, 3)) == 20
    with pytest.raises(CapExceeded):
        monomials_upto(30, 30, cap=1000)


@pytest.mark.parametrize("order", [GREVLEX, GRLEX, LEX])
def test_monomials_sorted_descending(order):
    ms = monomials_upto(3, 4, order)
    keys = [order.key(m) for m in ms]
    assert keys == sorted(keys, reverse=True)


def _rand_poly(R, seed, degree=3):
    return R.random_poly(random.Random(seed), degree, density=0.4)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_evaluation_homomorphism(s1, s2, s3):
    R = PolyRing(GF4, 3)
    f, g, h = (_rand_poly(R, s) for s in (s1, s2, s3))
    pt = [s1 % 4, s2 % 4, s3 % 4]
    F = GF4
    assert (f * g + h).evaluate(pt) == F.add(F.mul(f.evaluate(pt), g.evaluate(pt)), h.evaluate(pt))


@given(st.integers(0, 10 ** 6))
def test_affine_group_action(seed):
    rng = random.Random(seed)
    R = PolyRing(GF5, 2)
    f = _rand_poly(R, seed)
    A = AffineMap.random(GF5, 2, rng)
    B = AffineMap.random(GF5, 2, rng)
    assert act_affine(A * B, f) == act_affine(A, act_affine(B, f))
    assert act_affine(A.inverse(), act_affine(A, f)) == f
    assert act_affine(A, f).degree == f.degree
    for pt in itertools.product(range(5), repeat=2):
        assert act_affine(A, f).evaluate(list(pt)) == f.evaluate(list(A(pt)))


@pytest.mark.parametrize("F,m", [(GF2, 3), (GF3, 2), (GF4, 2)])
def test_field_equation_reduction_pointwise(F, m):
    R = PolyRing(F, m)
    q = F.order
    for seed in range(10):
        f = _rand_poly(R, seed, degree=6)
        r = reduce_mod_field_equations(f, q)
        assert all(e <= q - 1 for mono in r.terms for e in mono)
        for pt in itertools.product(range(q), repeat=m):
            assert r.evaluate(list(pt)) == f.evaluate(list(pt))


def test_field_equations_vanish():
    R = PolyRing(GF4, 2)
    eqs = field_equations(R, 4)
    for pt in itertools.product(range(4), repeat=2):
        assert all(e.evaluate(list(pt)) == 0 for e in eqs)


@given(st.integers(0, 10 ** 6))
def test_print_parse_roundtrip(seed):
    for F in (GF3, GF4):
        R = PolyRing(F, 3)
        f = _rand_poly(R, seed)
        assert parse_poly(R, format_poly(f)) == f
        assert format_poly(parse_poly(R, format_poly(f))) == format_poly(f)


def test_parser_grammar():
    R = PolyRing(GF4, 2)
    assert R.parse("x0 x1") == R.parse("x0*x1")
    assert R.parse("[1,1]*x0 - x1") == R.var(0).scale(3) - R.var(1)
    assert format_poly(R.zero) == "0"
    names = PolyRing(GF2, 4, ["x0_0", "x0_1", "x1_0", "x1_1"])
    assert format_poly(names.parse("x0_1^2 + x1_0")) == "x0_1^2 + x1_0"


@pytest.mark.parametrize("text", ["x0 +", "x7", "x0^", "[1,2]*x0", "x0 ** 2", "(x0"])
def test_parse_errors_have_location(text):
    R = PolyRing(GF4, 2)
    with pytest.raises(ParseError) as info:
        R.parse(text, line=3)
    assert info.value.line == 3
    assert info.value.column is not None
