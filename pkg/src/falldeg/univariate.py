"""Dense univariate polynomials over a finite field.

A polynomial is a list of field integers, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  Every function takes the
field context first.  These routines back modulus selection, gcd traces
through descent, projection polynomials and the factoring used by the solver.
"""

from __future__ import annotations

import random
from math import gcd as int_gcd

from .errors import DivisionByZero


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f) -> int:
    """Degree, with -1 for the zero polynomial (internal convention only)."""
    return len(f) - 1


def add(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, f):
    return [F.neg(c) for c in f]


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, f, c):
    if c == 0:
        return []
    return [F.mul(c, a) for a in f]


def mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    fmul, fadd = F.mul, F.add
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = fadd(out[i + j], fmul(a, b))
    return trim(out)


def monic(F, f):
    if not f:
        return []
    lc = f[-1]
    if lc == 1:
        return list(f)
    return scale(F, f, F.inv(lc))


def divmod_(F, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [], trim(f)
    inv_lc = F.inv(g[-1])
    quo = [0] * (len(f) - dg)
    fmul, fsub = F.mul, F.sub
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c == 0:
            continue
        c = fmul(c, inv_lc)
        quo[i - dg] = c
        for j in range(dg + 1):
            if g[j]:
                f[i - dg + j] = fsub(f[i - dg + j], fmul(c, g[j]))
    return trim(quo), trim(f[:dg])


def rem(F, f, g):
    return divmod_(F, f, g)[1]


def gcd(F, f, g):
    """Monic gcd; gcd(0, 0) = 0."""
    f, g = trim(f), trim(g)
    while g:
        f, g = g, rem(F, f, g)
    return monic(F, f)


def euclid_trace(F, f, g):
    """Remainder sequence of the Euclidean algorithm on (f, g).

    Returns ``[f, g, r_1, r_2, ...]`` ending with the last nonzero remainder.
    """
    seq = [trim(f), trim(g)]
    a, b = seq
    while b:
        r = rem(F, a, b)
        if not r:
            break
        seq.append(r)
        a, b = b, r
    return seq


def powmod(F, f, e, m):
    """f^e mod m by square-and-multiply."""
    result = [1]
    base = rem(F, f, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = rem(F, mul(F, base, base), m)
    return rem(F, result, m) if len(m) > 1 else []


def x_power_mod(F, e, m):
    """X^e mod m."""
    return powmod(F, [0, 1], e, m)


def derivative(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(F.mul(F.from_int(i), f[i]))
    return trim(out)


def evaluate(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def from_roots(F, roots):
    out = [1]
    for r in roots:
        out = mul(F, out, [F.neg(r), 1])
    return out


def compose(F, f, g):
    """f(g(X))."""
    acc = []
    for c in reversed(f):
        acc = add(F, mul(F, acc, g), [c] if c else [])
    return acc


def field_poly(F, order):
    """X^order - X as a dense list."""
    out = [0] * (order + 1)
    out[order] = 1
    out[1] = F.neg(1) if order != 1 else 0
    return trim(out)


def is_irreducible(F, f) -> bool:
    """Rabin-style test: f has no factor of degree <= deg(f)/2."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    f = monic(F, f)
    Q = F.order
    h = [0, 1]
    for _ in range(d // 2):
        h = powmod(F, h, Q, f)
        if len(gcd(F, sub(F, h, [0, 1]), f)) > 1:
            return False
    return True


def _pth_root(F, f):
    """g with g(X)^p == f(X), given f' == 0."""
    p = F.p
    root_exp = F.order // p
    return trim([F.pow(f[i], root_exp) for i in range(0, len(f), p)])


def squarefree_decomposition(F, f):
    """Monic f -> list of (g, multiplicity) with g squarefree and pairwise coprime."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    p = F.p
    out = []
    df = derivative(F, f)
    if not df:
        for g, m in squarefree_decomposition(F, _pth_root(F, f)):
            out.append((g, m * p))
        return out
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if len(z) > 1:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if len(c) > 1:
        for g, m in squarefree_decomposition(F, _pth_root(F, c)):
            out.append((g, m * p))
    return out


def distinct_degree(F, f):
    """Squarefree monic f -> list of (product of all degree-d factors, d)."""
    Q = F.order
    out = []
    h = [0, 1]
    g = monic(F, f)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, Q, g)
        fac = gcd(F, sub(F, h, [0, 1]), g)
        if len(fac) > 1:
            out.append((fac, d))
            g = divmod_(F, g, fac)[0]
            h = rem(F, h, g)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _trace_map(F, a, d, f):
    # a + a^2 + ... + a^(2^(k d - 1)) mod f, for characteristic 2
    total = F.degree * d
    t = list(a)
    cur = list(a)
    for _ in range(total - 1):
        cur = rem(F, mul(F, cur, cur), f)
        t = add(F, t, cur)
    return t


def equal_degree(F, f, d, rng: random.Random):
    """Split squarefree monic f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [monic(F, f)]
    Q = F.order
    while True:
        a = trim([F.random_element(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        if F.p == 2:
            b = _trace_map(F, a, d, f)
        else:
            b = sub(F, powmod(F, a, (Q ** d - 1) // 2, f), [1])
        g = gcd(F, b, f)
        if 1 < len(g) < len(f):
            h = divmod_(F, f, g)[0]
            return equal_degree(F, g, d, rng) + equal_degree(F, monic(F, h), d, rng)


def factor(F, f, seed=0):
    """Factor f into (leading coefficient, [(monic irreducible, multiplicity), ...]).

    Squarefree decomposition, then distinct-degree, then randomized
    equal-degree splitting.  Output sorted by (degree, coefficients) so it is
    deterministic given ``seed``.
    """
    f = trim(f)
    if not f:
        raise DivisionByZero("cannot factor the zero polynomial")
    lc = f[-1]
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for part, d in distinct_degree(F, g):
            for irr in equal_degree(F, part, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return lc, out


def roots(F, f, seed=0):
    """Distinct roots of f in F, sorted."""
    f = monic(F, trim(f))
    if len(f) <= 1:
        return []
    if F.order <= 64:
        return exhaustive_roots(F, f)
    g = gcd(F, sub(F, x_power_mod(F, F.order, f), [0, 1]), f)
    if len(g) <= 1:
        return []
    rng = random.Random(seed)
    lin = equal_degree(F, g, 1, rng)
    return sorted(F.neg(h[0]) for h in lin)


def exhaustive_roots(F, f):
    return [x for x in range(F.order) if evaluate(F, f, x) == 0]


def expand_factorization(F, lc, factors):
    out = [lc]
    for g, m in factors:
        for _ in range(m):
            out = mul(F, out, g)
    return out


def lcm_int(values):
    out = 1
    for v in values:
        out = out * v // int_gcd(out, v)
    return out
