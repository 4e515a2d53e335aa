import random

import pytest
from hypothesis import given, strategies as st

from falldeg import univariate as up
from falldeg.field import make_field
from oracles import naive_roots

FIELDS = [make_field(2), make_field(3), make_field(5), make_field(2, [2]), make_field(3, [2]), make_field(2, [3])]


def rand_poly(F, d, rng):
    return [F.random_element(rng) for _ in range(d)] + [F.random_nonzero(rng)]


def test_factor_examples():
    F5 = make_field(5)
    lc, facs = up.factor(F5, [4, 0, 1])
    assert lc == 1 and sorted(facs) == [([1, 1], 1), ([4, 1], 1)]
    F2 = make_field(2)
    assert up.factor(F2, [1, 1, 1]) == (1, [([1, 1, 1], 1)])
    F4 = make_field(2, [2])
    lc, facs = up.factor(F4, up.field_poly(F4, 4))
    assert len(facs) == 4 and all(len(g) == 2 and m == 1 for g, m in facs)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.describe())
def test_divmod_and_gcd(F):
    rng = random.Random(F.order)
    for _ in range(30):
        f, g = rand_poly(F, rng.randint(0, 7), rng), rand_poly(F, rng.randint(0, 4), rng)
        q, r = up.divmod_(F, f, g)
        assert up.add(F, up.mul(F, q, g), r) == up.trim(f)
        assert up.deg(r) < up.deg(g)
        h = up.gcd(F, f, g)
        assert h[-1] == 1
        assert not up.trim(up.rem(F, f, h)) and not up.trim(up.rem(F, g, h))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.describe())
def test_factor_recombines(F):
    @given(st.integers(0, 10 ** 6), st.integers(1, 9))
    def check(seed, d):
        rng = random.Random(seed)
        f = rand_poly(F, d, rng)
        if rng.random() < 0.5:
            f = up.mul(F, f, f[: max(2, len(f) // 2)] if up.trim(f[: max(2, len(f) // 2)]) else [1])
        lc, facs = up.factor(F, f, seed)
        assert up.expand_factorization(F, lc, facs) == up.trim(f)
        assert all(up.is_irreducible(F, g) and g[-1] == 1 for g, _ in facs)
        assert sorted(up.roots(F, f)) == naive_roots(F, up.trim(f))
    check()


def test_squarefree_char_p():
    F3 = make_field(3)
    f = up.mul(F3, up.field_poly(F3, 3), [0, 1])    # x^2 (x^3 - x) has derivative issues
    parts = up.squarefree_decomposition(F3, f)
    acc = [1]
    for g, m in parts:
        for _ in range(m):
            acc = up.mul(F3, acc, g)
    assert acc == up.monic(F3, f)


def test_euclid_trace_ends_in_gcd():
    F4 = make_field(2, [2])
    f = [0, 1, 1]
    tr = up.euclid_trace(F4, up.field_poly(F4, 4), f)
    assert up.monic(F4, tr[-1]) == up.gcd(F4, up.field_poly(F4, 4), f)


def test_lcm_int():
    assert up.lcm_int([2, 3, 4]) == 12
    assert up.lcm_int([]) == 1
