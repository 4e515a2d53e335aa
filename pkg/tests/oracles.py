"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from falldeg.poly import GREVLEX


def tau_oracle(r: int, c: int, t: int) -> int:
    """Linear scan: N <= 2t(c-1)(log_c(r/2t)+1)  <=>  c^N (2t)^A <= (c r)^A with A = 2t(c-1)."""
    if r == 0:
        return 0
    A = 2 * t * (c - 1)
    best = 0
    N = 1
    while c ** N * (2 * t) ** A <= (c * r) ** A:
        best = N
        N += 1
    return best


def affine_log_oracle(A: int, c: int, num: int, den: int):
    """Largest N with N <= A(log_c(num/den)+1), or None when that is negative."""
    if A * 1 == 0:
        return 0
    lhs = lambda N: Fraction(c) ** N * Fraction(den) ** A <= Fraction(c * num) ** A if N >= 0 else \
        Fraction(den) ** A <= Fraction(c * num) ** A * Fraction(c) ** (-N)
    if not lhs(0):
        N = -1
        while not lhs(N):
            N -= 1
        return N
    N = 0
    while lhs(N + 1):
        N += 1
    return N


class NaiveSpan:
    """Echelon basis of polynomials by leading monomial, via field ops only."""

    def __init__(self, ring, order=GREVLEX):
        self.ring = ring
        self.order = order
        self.rows = {}          # leading monomial -> monic poly

    def reduce(self, f):
        while f.terms:
            changed = False
            for mono in f.monomials(self.order):
                if mono in self.rows:
                    f = f - self.rows[mono].scale(f.terms[mono])
                    changed = True
                    break
            if not changed:
                return f
        return f

    def add(self, f) -> bool:
        r = self.reduce(f)
        if not r.terms:
            return False
        r = r.scale(self.ring.field.inv(r.leading_coeff(self.order)))
        lm = r.leading_monomial(self.order)
        for k in list(self.rows):
            c = self.rows[k].terms.get(lm)
            if c:
                self.rows[k] = self.rows[k] - r.scale(c)
        self.rows[lm] = r
        return True

    def contains(self, f) -> bool:
        return not self.reduce(f).terms

    @property
    def dim(self) -> int:
        return len(self.rows)


def naive_V(polys, i: int):
    """Smallest space holding the generators of degree <= i, closed under x_t * g within degree i."""
    polys = [f for f in polys if f.terms]
    ring = polys[0].ring
    S = NaiveSpan(ring)
    for f in polys:
        if f.degree <= i:
            S.add(f)
    grew = True
    while grew:
        grew = False
        for g in list(S.rows.values()):
            if g.degree + 1 > i:
                continue
            for t in range(ring.nvars):
                if S.add(g * ring.var(t)):
                    grew = True
    return S


def brute_zeros(polys, K, m):
    pts = []
    for pt in itertools.product(range(K.order), repeat=m):
        if all(f.evaluate(list(pt)) == 0 for f in polys if f.terms):
            pts.append(tuple(pt))
    return pts


def naive_roots(K, coeffs):
    out = []
    for x in range(K.order):
        acc = 0
        for c in reversed(coeffs):
            acc = K.add(K.mul(acc, x), c)
        if acc == 0:
            out.append(x)
    return out
