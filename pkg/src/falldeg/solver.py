"""Solving zero-dimensional systems from one constructible space V_d.

Level 0 takes the nonzero element of least degree in V_d cut with
span{1, x0, ..., x0^e}; its roots are the candidate first coordinates.
For a root a0 the cofactor h0' = h0 / (x0 - a0) is multiplied by powers of
x1, and the least element of V_d in that span is h0' * g1(x1), so the roots
of g1 are the candidate second coordinates above a0.  The same step repeats
for every further variable.  A root is only followed when it is a simple
root of its factor; then the cofactor does not vanish at the fixed prefix
and no solution can be missed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

import numpy as np

from . import univariate as up
from .caps import get_caps
from .constructible import EchelonSpace, build_V
from .errors import (CapExceeded, FallDegError, FieldTooSmall, NoUnivariateFound, NotRadical,
                     TrialCapExceeded)
from .field import FieldCtx
from .linalg import nullspace_first
from .oracle import SolutionSet, is_radical_desk
from .poly import AffineMap, Poly, PolySystem, act_affine


# ---------------------------------------------------------------------------
# intersections with a ladder

def minimal_in_span(V: EchelonSpace, ladder: Sequence[Poly]):
    """Least-index nonzero element of V cut with span(ladder), or None.

    Returns ``(element, coeffs)`` where element = sum coeffs[j] * ladder[j]
    with coeffs[J] = 1 at the top index J and zeros above it.  Such an
    element is unique: two of them would differ by a dependency of smaller
    top index.
    """
    if not ladder:
        return None
    basis = V.basis
    F = basis.field
    p, a = F.p, basis.a
    rows = np.vstack([basis.span_rows(g) for g in ladder])
    resid = V.echelon.reduce(rows)
    dep = nullspace_first(resid, p)
    if dep is None:
        return None
    J, tags = dep
    top = J // a
    coeffs = []
    for j in range(top + 1):
        c = 0
        for l in range(a):
            t = tags[j * a + l]
            if t:
                c = F.add(c, F.mul(t, p ** l))
        coeffs.append(c)
    inv = F.inv(coeffs[top])
    coeffs = [F.mul(inv, c) for c in coeffs]
    elem = basis.ring.zero
    for c, g in zip(coeffs, ladder):
        if c:
            elem = elem + g.scale(c)
    return elem, coeffs


# ---------------------------------------------------------------------------
# univariate factoring

@dataclass
class Factorization:
    field: FieldCtx
    lc: int
    factors: list     # (monic irreducible dense list, multiplicity)

    def roots(self) -> list[int]:
        return sorted(self.field.neg(g[0]) for g, _ in self.factors if len(g) == 2)


def factor_univariate(F: FieldCtx, h, seed: int = 0, check: bool = True) -> Factorization:
    """Factor a univariate polynomial given as Poly or dense list."""
    if isinstance(h, Poly):
        vs = h.variables()
        h = h.to_univariate(next(iter(vs)) if vs else 0)
    h = up.trim(h)
    lc, facs = up.factor(F, h, seed)
    if check:
        if up.expand_factorization(F, lc, facs) != h:
            raise FallDegError("factorization does not recombine")  # pragma: no cover
        if F.order <= 4096:
            lin = sorted(F.neg(g[0]) for g, _ in facs if len(g) == 2)
            if lin != up.exhaustive_roots(F, h):
                raise FallDegError("factor roots disagree with the exhaustive scan")  # pragma: no cover
    return Factorization(F, lc, facs)


# ---------------------------------------------------------------------------
# the solver

@dataclass
class SolveTrace:
    d: int
    e: int
    attempts: list = dc_field(default_factory=list)     # (d, outcome)
    levels: list = dc_field(default_factory=list)       # one record per univariate extraction
    solutions: list = dc_field(default_factory=list)
    dims: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"d": self.d, "e": self.e, "attempts": self.attempts,
                "levels": self.levels, "solutions": [list(s) for s in self.solutions],
                "dims": self.dims}


class _Incomplete(Exception):
    def __init__(self, reason: str, level: int):
        super().__init__(reason)
        self.reason = reason
        self.level = level


def _solve_with(V: EchelonSpace, F: PolySystem, e: int, seed: int, trace: SolveTrace):
    ring = F.ring
    K = ring.field
    m = ring.nvars
    d = V.degree
    found = []

    def level(t: int, prefix: tuple, cof: Poly):
        base_deg = int(cof.degree)
        top = min(e - base_deg, d - base_deg)
        xt = ring.var(t)
        ladder = []
        g = cof
        for _ in range(top + 1):
            ladder.append(g)
            g = g * xt
        res = minimal_in_span(V, ladder)
        if res is None:
            raise _Incomplete(f"no univariate element at level {t}", t)
        _, coeffs = res
        uni = up.trim(coeffs)
        fac = factor_univariate(K, uni, seed)
        roots = fac.roots()
        duni = up.derivative(K, uni)
        rec = {"level": t, "prefix": [K.format(x) for x in prefix], "degree": len(uni) - 1,
               "factor_degrees": [[len(q) - 1, mult] for q, mult in fac.factors],
               "roots": [K.format(r) for r in roots]}
        trace.levels.append(rec)
        for r in roots:
            if up.evaluate(K, duni, r) == 0:
                raise _Incomplete(f"repeated root at level {t}", t)
        for r in roots:
            pt = prefix + (r,)
            if t == m - 1:
                if all(f.evaluate(list(pt)) == 0 for f in F.polys):
                    found.append(pt)
                continue
            quotient = up.divmod_(K, uni, [K.neg(r), 1])[0]
            new_cof = cof * ring.from_univariate(quotient, t)
            level(t + 1, pt, new_cof)

    level(0, (), ring.one)
    return sorted(found)


def default_solution_bound(F: PolySystem) -> int:
    """A bound on the number of solutions over the closure (product of degrees of univariate elements)."""
    from .oracle import buchberger, quotient_dimension
    return quotient_dimension(buchberger(F))


def solve_zero_dim(F: PolySystem, d: int | None = None, e: int | None = None, seed: int = 0,
                   max_degree: int | None = None, check_radical: bool = True):
    """All k-rational zeros of a radical zero-dimensional system.

    With ``d`` given only that degree is tried; otherwise d escalates from
    max(deg F, e) until every level succeeds (or the cap is reached).
    Returns ``(SolutionSet, SolveTrace)``.
    """
    ring = F.ring
    polys = [f for f in F.polys if f.terms]
    system = PolySystem(ring, polys, F.field_equations, dict(F.meta))
    if any(f.is_constant() for f in polys):
        trace = SolveTrace(0, 0, attempts=[(0, "unit ideal")])
        return SolutionSet(ring, ring.field, []), trace
    if check_radical:
        verdict = is_radical_desk(system)
        if verdict == "not_radical":
            raise NotRadical("the ideal is not radical")
    if e is None:
        e = default_solution_bound(system)
    start = int(max(system.degree, 0))
    caps = get_caps()
    if d is not None:
        degrees = [max(d, e)]
    else:
        lo = max(start, e)
        hi = max_degree if max_degree is not None else lo + caps.escalation
        degrees = list(range(lo, hi + 1))
        if not degrees:
            raise NoUnivariateFound(f"start degree {lo} is above the limit {hi}", dims={})
    trace = SolveTrace(degrees[0], e)
    V = None
    last_dims = {}
    for dd in degrees:
        try:
            V = build_V(system, dd, start=V if V is not None and V.degree == dd - 1 else None)
        except CapExceeded:
            trace.attempts.append((dd, "cap exceeded"))
            raise
        last_dims[dd] = V.dim
        trace.levels = []
        try:
            sols = _solve_with(V, system, e, seed, trace)
        except _Incomplete as exc:
            trace.attempts.append((dd, exc.reason))
            continue
        trace.d = dd
        trace.attempts.append((dd, "ok"))
        trace.solutions = sols
        trace.dims = last_dims
        return SolutionSet(ring, ring.field, sols, exact=False, meta={"d": dd}), trace
    trace.dims = last_dims
    raise NoUnivariateFound(f"no complete extraction for d in {degrees[0]}..{degrees[-1]}",
                            dims=last_dims)


# ---------------------------------------------------------------------------
# projection randomisation

def _apply_points(A: AffineMap, K: FieldCtx, pt) -> tuple:
    out = []
    for row, b in zip(A.matrix, A.translation):
        acc = b
        for c, x in zip(row, pt):
            if c and x:
                acc = K.add(acc, K.mul(c, x))
        out.append(acc)
    return tuple(out)


def randomize_projection(F: PolySystem, Z: SolutionSet, seed: int = 0, max_trials: int = 1000) -> AffineMap:
    """Invertible affine A over k with pairwise distinct first coordinates on A(Z).

    The transformed system with zero set A(Z) is ``transform_for_points(F, A)``.
    """
    k = F.ring.field
    r = len(Z.points)
    if k.order <= comb(r, 2):
        raise FieldTooSmall(f"|k| = {k.order} <= C({r},2)")
    m = F.ring.nvars
    K = Z.field
    rng = random.Random(seed)
    A = AffineMap.identity(k, m)
    for trial in range(max_trials + 1):
        firsts = [_apply_points(A, K, pt)[0] for pt in Z.points]
        if len(set(firsts)) == r:
            return A
        A = AffineMap.random(k, m, rng, translate=False)
    raise TrialCapExceeded(f"no separating map after {max_trials} trials")


def transform_for_points(F: PolySystem, A: AffineMap) -> PolySystem:
    """System whose zero set is A(Z(F))."""
    Ainv = A.inverse()
    return F.with_polys([act_affine(Ainv, f) for f in F.polys])


def map_points(A: AffineMap, Z: SolutionSet) -> SolutionSet:
    return SolutionSet(Z.ring, Z.field, sorted(_apply_points(A, Z.field, pt) for pt in Z.points),
                       Z.exact, dict(Z.meta))
