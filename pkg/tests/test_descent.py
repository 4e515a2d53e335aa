import random

import pytest
from hypothesis import given, strategies as st

from falldeg.descent import (DescentMap, bar_degree_bound, bar_inclusion_violations, descend_bar, descend_bar_system,
                             descend_classic, descent_gcd_certificate, floor_affine_log, phi, poly_weight,
                             relate_models, tau, theorem_bound, theorem_bound_m1, weight)
from falldeg.errors import InvalidBase, NotNormalBasis
from falldeg.field import make_field
from falldeg.oracle import enumerate_solutions
from falldeg.poly import PolyRing, PolySystem
from oracles import affine_log_oracle, brute_zeros, tau_oracle

GF4, GF8, GF9 = make_field(2, [2]), make_field(2, [3]), make_field(3, [2])


def test_tau_examples():
    assert tau(2, 2, 1) == 2
    assert tau(8, 2, 1) == 6
    assert tau(1, 2, 1) == 0
    assert tau(0, 2, 1) == 0
    assert tau(6, 2, 1) == 5
    with pytest.raises(InvalidBase):
        tau(4, 1, 1)


@given(st.integers(0, 300), st.integers(2, 6), st.integers(1, 3))
def test_tau_against_scan(r, c, t):
    assert tau(r, c, t) == tau_oracle(r, c, t)


@given(st.integers(1, 6), st.integers(2, 5), st.integers(1, 60), st.integers(1, 20))
def test_affine_log_against_fractions(A, c, num, den):
    expect = affine_log_oracle(A, c, num, den)
    got = floor_affine_log(A, c, num, den)
    assert got == expect


def test_classic_square_polynomial_basis():
    D = DescentMap(GF4, 2, 1, "polynomial")
    R = D.source
    out = descend_classic([R.parse("x0^2")], D, with_field_eqs=False)
    assert [str(f) for f in out.polys] == ["x0_1 + x0_0", "x0_1"]
    out = descend_classic([R.var(0)], D, with_field_eqs=False)
    assert [str(f) for f in out.polys] == ["x0_0", "x0_1"]
    out = descend_classic([R.const(3)], D, with_field_eqs=False)
    assert [str(f) for f in out.polys] == ["1", "1"]


def test_bar_examples():
    D = DescentMap(GF8, 2, 1)
    R = D.source
    b = descend_bar(R.parse("x0^5"), D)
    assert str(b) == "x0_0*x0_2" and b.degree == 2
    assert str(descend_bar(R.var(0), D)) == "x0_0"
    assert descend_bar(R.const(5), D) == D.target_ext.const(5)


def test_phi_examples():
    D = DescentMap(GF8, 2, 1)
    R, S = D.source, D.target_ext
    assert phi(S.parse("x0_1"), D) == R.parse("x0^2")
    assert phi(descend_bar(R.parse("x0^5"), D), D) == R.parse("x0^5")
    assert phi(S.const(3), D) == R.const(3)


def test_phi_inverts_bar_mod_field_equation():
    D = DescentMap(GF8, 2, 1)
    R = D.source
    for e in range(0, 30):
        f = R.parse(f"x0^{e}")
        back = phi(descend_bar(f, D), D)
        for x in range(8):
            assert back.evaluate([x]) == f.evaluate([x])


def test_weights():
    assert weight(5, 2) == 2
    assert weight(0, 2) == 0
    assert weight(8, 3) == 4
    D = DescentMap(GF8, 2, 1)
    f = D.source.parse("x0^3 + x0")
    assert poly_weight(f, 2, 3) == 2 == descend_bar(f, D).degree


def test_bar_degree_bound_examples():
    R = PolyRing(GF8, 1)
    assert bar_degree_bound(R.parse("x0^5"), 2) == 3
    assert bar_degree_bound(R.var(0), 2) == 1
    for j in range(1, 4):
        assert bar_degree_bound(R.parse(f"x0^{2 ** j}"), 2) >= 1


def test_theorem_bounds():
    assert theorem_bound_m1(2, 2) == 4
    assert theorem_bound_m1(3, 2) == 5
    assert theorem_bound(1, 2, 1, 0, 1) == 2
    assert theorem_bound(1, 2, 0, 0, 3) == max(tau(3, 2, 1), 0, 2)


def test_normal_basis_tag():
    assert DescentMap(GF8, 2, 1).is_normal
    D = DescentMap(GF4, 2, 1, "polynomial")
    if not D.is_normal:
        with pytest.raises(NotNormalBasis):
            relate_models([D.source.var(0)], D)


@pytest.mark.parametrize("f", ["x0^2", "x0^3 + x0 + 1", "1"])
def test_relate_models_q2n2(f):
    D = DescentMap(GF4, 2, 1)
    w = relate_models([D.source.parse(f)], D)
    assert w.ok, w.failures


def test_relate_models_n1():
    K = make_field(3)
    D = DescentMap(K, 3, 1)
    w = relate_models([D.source.parse("x0^2 + 1")], D)
    assert w.ok
    assert [str(g) for g in w.G.polys[:1]] == [str(p) for p in w.bar.polys]


def test_gcd_certificates():
    D = DescentMap(GF4, 2, 1)
    R = D.source
    cert = descent_gcd_certificate(R.parse("x0^2 + x0"), D)
    assert cert.u == 4 and cert.gcd == [0, 1, 1] and cert.ok
    for c in range(4):
        assert descent_gcd_certificate(R.var(0) - R.const(c), D).ok
    # x^2 + x + a has no root in GF(4)
    irr = R.parse("x0^2 + x0 + [0,1]")
    cert = descent_gcd_certificate(irr, D)
    assert cert.gcd == [1] and cert.ok


@pytest.mark.parametrize("K,q", [(GF4, 2), (GF8, 2), (GF9, 3)])
def test_classic_solution_bijection(K, q):
    rng = random.Random(K.order)
    D = DescentMap(K, q, 1)
    R = D.source
    for _ in range(5):
        f = R.random_poly(rng, 3, density=0.7)
        Z = enumerate_solutions(PolySystem(R, [f])).points
        out = descend_classic([f], D)
        Zd = brute_zeros(out.polys, D.sub, D.n)
        assert sorted(tuple(D.coords.to_coords(x)) for (x,) in Z) == sorted(Zd)


@pytest.mark.parametrize("K,q", [(GF4, 2), (GF8, 2)])
def test_bar_solution_map(K, q):
    rng = random.Random(3)
    D = DescentMap(K, q, 1)
    R = D.source
    for _ in range(5):
        f = R.random_poly(rng, 4, density=0.7)
        bar = descend_bar_system([f], D)
        ZS = brute_zeros(bar.polys + bar.field_eqs, K, D.n)
        Z = enumerate_solutions(PolySystem(R, [f])).points
        images = sorted(tuple(K.frobenius(x, j, q) for j in range(D.n)) for (x,) in Z)
        assert images == ZS


def test_two_bases_agree_up_to_max():
    from falldeg.constructible import last_fall_degree
    R = PolyRing(GF4, 1)
    f = R.parse("x0^3 + [0,1]*x0 + 1")
    vals = []
    for basis in ("normal", "polynomial"):
        D = DescentMap(GF4, 2, 1, basis)
        out = descend_classic([f], D)
        vals.append(max(last_fall_degree(out.system()), out.degree, 2))
    assert vals[0] == vals[1]


def test_inclusion_on_small_monomials():
    D = DescentMap(GF4, 2, 1)
    R = D.source
    for e in range(2, 6):
        assert bar_inclusion_violations([R.parse(f"x0^{e} + 1")], D, e) == []


def test_bar_of_reduced_monomials_has_weight_degree():
    D = DescentMap(GF9, 3, 1)
    R = D.source
    for e in range(1, 9):
        assert descend_bar(R.parse(f"x0^{e}"), D).degree == weight(e, 3)
