"""Ground-truth ideal computations: Buchberger, normal forms, solution sets.

Everything here is deliberately plain.  The Groebner basis routine is
Buchberger's algorithm with the sugar selection strategy and the two
classical criteria; it serves as the reference the linear-algebra side is
checked against.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import univariate as up
from .caps import get_caps
from .errors import (CapExceeded, NotApplicable, OracleInfeasible,
                     ProjectionNotInjective)
from .field import FieldCtx, extend
from .poly import GREVLEX, MonomialOrder, Poly, PolyRing, PolySystem, format_poly


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quot(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


class _Reducer:
    """Division by a list of monic polynomials with cached leading monomials."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.key = order.key
        self.polys: list[Poly] = []
        self.lms: list[tuple] = []

    def add(self, g: Poly):
        self.polys.append(g)
        self.lms.append(g.leading_monomial(self.order))

    def find(self, m: tuple, active=None):
        for idx, lm in enumerate(self.lms):
            if (active is None or idx in active) and _divides(lm, m):
                return idx
        return None

    def reduce(self, f: Poly, active=None) -> Poly:
        """Full reduction; terms are processed largest first from a heap."""
        F = self.ring.field
        key = self.key
        terms = dict(f.terms)
        heap = [(tuple(-x for x in key(m)), m) for m in terms]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = terms.get(m)
            if not c:
                continue
            idx = self.find(m, active)
            if idx is None:
                out[m] = terms.pop(m)
                continue
            g = self.polys[idx]
            shift = _quot(m, self.lms[idx])
            neg = F.neg(c)
            for gm, gc in g.terms.items():
                mm = tuple(a + b for a, b in zip(gm, shift))
                v = F.add(terms.get(mm, 0), F.mul(neg, gc))
                if v:
                    if mm not in terms:
                        heapq.heappush(heap, (tuple(-x for x in key(mm)), mm))
                    terms[mm] = v
                else:
                    terms.pop(mm, None)
        return Poly(self.ring, out)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis, sorted by leading monomial (smallest first)."""

    ring: PolyRing
    order: MonomialOrder
    polys: list

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self).terms

    def dumps(self) -> str:
        return "\n".join(format_poly(g, self.order) for g in self.polys) + "\n"


def _spoly(f: Poly, g: Poly, lf: tuple, lg: tuple) -> Poly:
    l = _lcm(lf, lg)
    return f.mul_monomial(_quot(l, lf)) - g.mul_monomial(_quot(l, lg))


def buchberger(F, order: MonomialOrder = GREVLEX, cap: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by F."""
    polys = F.polys if isinstance(F, PolySystem) else list(F)
    ring = F.ring if isinstance(F, PolySystem) else polys[0].ring
    cap = get_caps().gb_pairs if cap is None else cap
    red = _Reducer(ring, order)
    sugar: list[int] = []
    pairs: list = []
    processed = set()
    counter = itertools.count()

    def push(i, j):
        li, lj = red.lms[i], red.lms[j]
        l = _lcm(li, lj)
        s = max(sugar[i] + sum(l) - sum(li), sugar[j] + sum(l) - sum(lj))
        heapq.heappush(pairs, (s, order.key(l), next(counter), i, j))

    def add_basis(g: Poly, s: int):
        g = g.monic(order)
        red.add(g)
        sugar.append(s)
        k = len(red.polys) - 1
        for i in range(k):
            push(i, k)
        return k

    gens = sorted((f for f in polys if f.terms), key=lambda f: order.key(f.leading_monomial(order)))
    for f in gens:
        h = red.reduce(f)
        if h.terms:
            if h.is_constant():
                return GroebnerBasis(ring, order, [ring.one])
            add_basis(h, f.degree)

    steps = 0
    while pairs:
        s, _, _, i, j = heapq.heappop(pairs)
        processed.add((i, j))
        li, lj = red.lms[i], red.lms[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        l = _lcm(li, lj)
        if _chain_skip(red.lms, processed, i, j, l):
            continue
        steps += 1
        if steps > cap:
            raise OracleInfeasible(f"Buchberger exceeded {cap} S-pair reductions")
        h = red.reduce(_spoly(red.polys[i], red.polys[j], li, lj))
        if h.terms:
            if h.is_constant():
                return GroebnerBasis(ring, order, [ring.one])
            add_basis(h, s)
    return GroebnerBasis(ring, order, _reduce_basis(ring, order, red.polys))


def _chain_skip(lms, processed, i, j, l) -> bool:
    for k, lk in enumerate(lms):
        if k in (i, j) or not _divides(lk, l):
            continue
        a = (min(i, k), max(i, k))
        b = (min(j, k), max(j, k))
        if a in processed and b in processed:
            return True
    return False


def _reduce_basis(ring, order, polys) -> list[Poly]:
    lms = [g.leading_monomial(order) for g in polys]
    keep = []
    for idx, (g, lm) in enumerate(zip(polys, lms)):
        redundant = False
        for jdx, other in enumerate(lms):
            if jdx == idx or not _divides(other, lm):
                continue
            if other != lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        r = _Reducer(ring, order)
        for jdx, h in enumerate(keep):
            if jdx != idx:
                r.add(h)
        lm = g.leading_monomial(order)
        tail = g - ring.monomial(lm, g.terms[lm])
        out.append((ring.monomial(lm, g.terms[lm]) + r.reduce(tail)).monic(order))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return out


def normal_form(f: Poly, B: GroebnerBasis) -> Poly:
    if not f.terms:
        return f
    r = _Reducer(B.ring, B.order)
    for g in B.polys:
        r.add(g)
    return r.reduce(f)


# ---------------------------------------------------------------------------
# zero-dimensional structure

def is_zero_dimensional(B: GroebnerBasis) -> bool:
    if B.is_unit():
        return True
    m = B.ring.nvars
    pure = set()
    for lm in B.leading_monomials:
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) == m


def standard_monomials(B: GroebnerBasis, cap: int | None = None) -> list[tuple]:
    """Monomials outside the leading-term ideal (finite case only)."""
    if not is_zero_dimensional(B):
        raise NotApplicable("ideal is not zero-dimensional")
    if B.is_unit():
        return []
    m = B.ring.nvars
    lms = B.leading_monomials
    cap = get_caps().enum if cap is None else cap
    out = []
    seen = {(0,) * m}
    stack = [(0,) * m]
    while stack:
        mono = stack.pop()
        if any(_divides(lm, mono) for lm in lms):
            continue
        out.append(mono)
        if len(out) > cap:
            raise CapExceeded("too many standard monomials")
        for i in range(m):
            nxt = list(mono)
            nxt[i] += 1
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    out.sort(key=B.order.key)
    return out


def quotient_dimension(B: GroebnerBasis) -> int:
    return len(standard_monomials(B))


def minimal_polynomial(B: GroebnerBasis, var: int) -> list[int]:
    """Monic generator of I intersected with k[x_var], as a dense list."""
    std = standard_monomials(B)
    if not std:
        return [1]
    F = B.ring.field
    p = F.p
    a = F.degree
    index = {mono: k for k, mono in enumerate(std)}
    ring = B.ring
    from .linalg import nullspace_first
    from .constructible import _coord_table
    table = _coord_table(F)
    x = ring.var(var)
    power = ring.one
    # each k-vector NF(x^j) contributes its a prime-field multiples beta_l * NF(x^j)
    rows = []
    for j in range(len(std) + 1):
        nf = normal_form(power, B)
        for l in range(a):
            w = np.zeros(len(std) * a)
            for mono, c in nf.terms.items():
                cc = F.mul(c, p ** l)
                w[index[mono] * a: index[mono] * a + a] = table[cc]
            rows.append(w)
        power = power * x
    dep = nullspace_first(np.array(rows), p)
    J, coeffs = dep
    top = J // a
    out = []
    for j in range(top + 1):
        val = 0
        for l in range(a):
            c = coeffs[j * a + l]
            if c:
                val = F.add(val, F.mul(F.from_int(c), p ** l))
        out.append(val)
    return up.monic(F, up.trim(out))


# ---------------------------------------------------------------------------
# solution sets

@dataclass
class SolutionSet:
    ring: PolyRing                  # ring of the system the points solve
    field: FieldCtx                 # where the coordinates live
    points: list                    # tuples of integers of ``field``
    exact: bool = False             # True when this is the full set over the closure
    meta: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_set(self) -> set:
        return set(self.points)

    def rational(self, sub: FieldCtx | None = None) -> list:
        sub = sub or self.ring.field
        return [pt for pt in self.points if all(x < sub.order for x in pt)]

    def to_json(self) -> dict:
        return {
            "field": self.field.describe(),
            "exact": self.exact,
            "points": [[self.field.format(x) for x in pt] for pt in self.points],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _vector_eval(f: Poly, K: FieldCtx, cols: list[np.ndarray], cache: dict) -> np.ndarray:
    n = len(cols[0]) if cols else 1
    acc = np.zeros(n, dtype=np.int64)
    for mono, c in f.terms.items():
        t = np.full(n, c, dtype=np.int64)
        for i, e in enumerate(mono):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = K.vpow(cols[i], e)
                t = K.vmul(t, cache[key])
        acc = K.vadd(acc, t)
    return acc


def _filter_points(polys: Sequence[Poly], K: FieldCtx, pts: np.ndarray) -> np.ndarray:
    """Rows of ``pts`` (shape (N, m)) that zero every polynomial."""
    for f in sorted(polys, key=lambda g: len(g.terms)):
        if pts.shape[0] == 0:
            break
        cols = [pts[:, i] for i in range(pts.shape[1])]
        val = _vector_eval(f, K, cols, {})
        pts = pts[val == 0]
    return pts


def _brute_force(polys, K: FieldCtx, m: int, cap: int) -> list:
    total = K.order ** m
    if total > cap:
        raise CapExceeded(f"{K.order}^{m} points exceeds the enumeration cap {cap}")
    if m == 0:
        return [()] if all(not f.terms for f in polys) else []
    Q = K.order
    found = []
    inner = max(1, min(m, int(np.floor(np.log(1 << 16) / np.log(Q))) or 1))
    outer = m - inner
    grid = np.array(list(itertools.product(range(Q), repeat=inner)), dtype=np.int64)
    for prefix in itertools.product(range(Q), repeat=outer):
        pts = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (grid.shape[0], 1)), grid]) \
            if outer else grid
        good = _filter_points(polys, K, pts)
        found.extend(tuple(int(x) for x in row) for row in good)
    found.sort()
    return found


def enumerate_solutions(F, over: FieldCtx | None = None, closure: bool = False,
                        order: MonomialOrder = GREVLEX) -> SolutionSet:
    """Zeros of F over ``over`` (default: the coefficient field).

    With ``closure=True`` the points over the algebraic closure are found in
    an explicit extension: the eliminant of every coordinate is factored and
    the enumeration runs over the extension of degree lcm(factor degrees).
    The set is flagged exact when its size equals the quotient dimension of
    the radical.
    """
    polys = [f for f in (F.polys if isinstance(F, PolySystem) else F) if f.terms]
    ring = F.ring if isinstance(F, PolySystem) else polys[0].ring
    caps = get_caps()
    if closure:
        return _closure_solutions(ring, polys, order, caps)
    K = over if over is not None else ring.field
    if any(f.is_constant() for f in polys):
        return SolutionSet(ring, K, [], exact=False)
    pts = _brute_force(polys, K, ring.nvars, caps.enum)
    return SolutionSet(ring, K, pts, exact=False)


def _closure_solutions(ring, polys, order, caps) -> SolutionSet:
    if not polys:
        raise NotApplicable("the zero ideal is not zero-dimensional")
    B = buchberger(polys, order)
    if B.is_unit():
        return SolutionSet(ring, ring.field, [], exact=True, meta={"extension_degree": 1})
    if not is_zero_dimensional(B):
        raise NotApplicable("ideal is not zero-dimensional")
    k = ring.field
    eliminants = [minimal_polynomial(B, i) for i in range(ring.nvars)]
    degs = []
    for mu in eliminants:
        _, facs = up.factor(k, mu)
        degs.extend(len(g) - 1 for g, _ in facs)
    L = up.lcm_int(degs) if degs else 1
    if k.order ** L > caps.field:
        raise CapExceeded(f"closure needs GF({k.order}^{L}), beyond the field cap")
    K = extend(k, L)
    root_sets = [up.roots(K, mu) for mu in eliminants]
    count = 1
    for r in root_sets:
        count *= max(len(r), 1)
    if count > caps.enum:
        raise CapExceeded("candidate product exceeds the enumeration cap")
    pts = np.array(list(itertools.product(*root_sets)), dtype=np.int64).reshape(-1, ring.nvars)
    good = _filter_points(polys, K, pts)
    points = sorted(tuple(int(x) for x in row) for row in good)
    rad = radical_quotient_dimension(B, eliminants)
    return SolutionSet(ring, K, points, exact=(len(points) == rad),
                       meta={"extension_degree": L, "radical_dimension": rad})


def _squarefree_part(F, f):
    parts = up.squarefree_decomposition(F, f)
    out = [1]
    for g, _ in parts:
        out = up.mul(F, out, g)
    return out


def radical_quotient_dimension(B: GroebnerBasis, eliminants=None) -> int:
    """dim k[X]/sqrt(I) for zero-dimensional I, via squarefree eliminants."""
    ring = B.ring
    if eliminants is None:
        eliminants = [minimal_polynomial(B, i) for i in range(ring.nvars)]
    extra = [ring.from_univariate(_squarefree_part(ring.field, mu), i)
             for i, mu in enumerate(eliminants)]
    B2 = buchberger(list(B.polys) + extra, B.order)
    return quotient_dimension(B2)


def _univariate_ring(K: FieldCtx, ring: PolyRing) -> PolyRing:
    return PolyRing(K, ring.nvars, ring.names)


def projection_poly(Z: SolutionSet, i: int, restrict_to: FieldCtx | None = None) -> Poly:
    """prod (X_i - x) over the distinct i-th coordinates of Z (or of Z in restrict_to^m)."""
    K = Z.field
    pts = Z.points if restrict_to is None else Z.rational(restrict_to)
    values = sorted({pt[i] for pt in pts})
    ring = _univariate_ring(K, Z.ring)
    return ring.from_univariate(up.from_roots(K, values), i)


def lagrange_gamma(Z: SolutionSet, i: int) -> Poly:
    """gamma in K[X_0] with gamma(x_0) = x_i on Z; deg gamma < |Z|."""
    K = Z.field
    xs = [pt[0] for pt in Z.points]
    if len(set(xs)) != len(xs):
        raise ProjectionNotInjective("two solutions share their first coordinate")
    acc: list = []
    for pt in Z.points:
        num = [1]
        den = 1
        for other in Z.points:
            if other is pt or other[0] == pt[0]:
                continue
            num = up.mul(K, num, [K.neg(other[0]), 1])
            den = K.mul(den, K.sub(pt[0], other[0]))
        acc = up.add(K, acc, up.scale(K, num, K.div(pt[i], den)))
    ring = _univariate_ring(K, Z.ring)
    return ring.from_univariate(acc, 0)


def _has_field_equations(F: PolySystem) -> bool:
    if F.field_equations:
        return True
    ring = F.ring
    p = ring.field.p
    found = set()
    for f in F.polys:
        if len(f.terms) != 2:
            continue
        monos = list(f.terms)
        vs = f.variables()
        if len(vs) != 1:
            continue
        (v,) = vs
        exps = sorted(m[v] for m in monos)
        if exps[0] != 1:
            continue
        Q = exps[1]
        if Q < 2 or p ** round(np.log(Q) / np.log(p)) != Q:
            continue
        lo = [m for m in monos if m[v] == 1][0]
        hi = [m for m in monos if m[v] == Q][0]
        if f.terms[lo] == ring.field.neg(f.terms[hi]):
            found.add(v)
    return len(found) == ring.nvars


def is_radical_desk(F: PolySystem, order: MonomialOrder = GREVLEX) -> str:
    """'radical', 'not_radical' or 'unknown'."""
    if _has_field_equations(F):
        return "radical"
    try:
        B = buchberger(F, order)
        if B.is_unit():
            return "radical"
        if not is_zero_dimensional(B):
            return "unknown"
        dim = quotient_dimension(B)
        rad = radical_quotient_dimension(B)
    except (OracleInfeasible, CapExceeded):
        return "unknown"
    return "radical" if dim == rad else "not_radical"


def parse_solution_json(text: str, ring: PolyRing, field: FieldCtx) -> SolutionSet:
    from .field import parse_element
    data = json.loads(text)
    pts = [tuple(parse_element(field, s) for s in pt) for pt in data["points"]]
    return SolutionSet(ring, field, pts, exact=bool(data.get("exact", False)))
