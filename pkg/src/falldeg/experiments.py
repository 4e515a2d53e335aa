"""Seeded property suites for the descent bounds and the solver.

Every suite returns a :class:`SuiteReport`; a failure entry carries enough
of the instance (printed polynomials, parameters, seed) to replay it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

from . import univariate as up
from .constructible import build_V, last_fall_info
from .descent import (DescentMap, bar_degree_bound, bar_inclusion_violations, descend_bar,
                      descend_bar_system, descend_classic, descent_gcd_certificate, low_weight_hypothesis,
                      tau, theorem_bound, theorem_bound_m1)
from .errors import CapExceeded, FallDegError, OracleInfeasible
from .field import make_extension, make_field
from .oracle import buchberger, enumerate_solutions
from .poly import (AffineMap, Poly, PolyRing, PolySystem, act_affine, field_equations, format_poly,
                   monomials_upto)
from .solver import randomize_projection, solve_zero_dim, transform_for_points


@dataclass
class SuiteReport:
    name: str
    params: dict
    trials: int = 0
    skipped: int = 0
    failures: list = dc_field(default_factory=list)
    rows: list = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.name, "params": self.params, "trials": self.trials,
                "skipped": self.skipped, "ok": self.ok, "failures": self.failures,
                "rows": self.rows, "seconds": round(self.seconds, 3)}


def _rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def _dump(polys) -> list[str]:
    return [format_poly(f) for f in polys]


def _with_big_field_eqs(polys, ring: PolyRing, Q: int) -> list:
    return list(polys) + field_equations(ring, Q)


def descended_with_field_eqs(polys, D: DescentMap) -> PolySystem:
    """F'_f: classic descent of F together with x^q - x for every new variable."""
    Q = D.q ** D.n
    return descend_classic(_with_big_field_eqs(polys, D.source, Q), D, True).system()


def bar_with_field_eqs(polys, D: DescentMap) -> PolySystem:
    Q = D.q ** D.n
    return descend_bar_system(_with_big_field_eqs(polys, D.source, Q), D, True).system()


def exact_last_fall(F: PolySystem, max_degree: int | None = None) -> int:
    return last_fall_info(F, max_degree=max_degree).value


# ---------------------------------------------------------------------------
# one-variable bound

def random_univariate(R: PolyRing, d: int, rng: random.Random) -> Poly:
    K = R.field
    coeffs = [K.random_element(rng) for _ in range(d)] + [K.random_nonzero(rng)]
    return R.from_univariate(coeffs, 0)


def suite_one_variable_bound(q: int = 2, degrees=(1, 2, 3), ns=range(2, 7), trials: int = 25, seed: int = 0) -> SuiteReport:
    """Exact last fall degree of F'_f against max(tau(2d, q, 1), q), one variable.

    ``rows`` holds one entry per (d, n) with the cell maximum of the
    observed value; the constancy check compares these across n.
    """
    rep = SuiteReport("one-variable", {"q": q, "degrees": list(degrees), "n": list(ns), "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    for d in degrees:
        bound = theorem_bound_m1(d, q)
        for n in ns:
            K = make_extension(q, n)
            D = DescentMap(K, q, 1, "normal")
            observed = []
            for t in range(trials):
                rng = _rng("one-variable", q, d, n, t, seed)
                f = random_univariate(D.source, d, rng)
                if not low_weight_hypothesis([f], d, D):
                    rep.skipped += 1
                    continue
                val = exact_last_fall(descended_with_field_eqs([f], D), max_degree=bound + 4)
                observed.append(val)
                rep.trials += 1
                if val > bound:
                    rep.failures.append({"d": d, "n": n, "trial": t, "observed": val, "bound": bound,
                                         "f": format_poly(f), "field": K.describe()})
            rep.rows.append({"q": q, "d": d, "n": n, "bound": bound,
                             "observed_max": max(observed, default=None),
                             "observed": observed})
    rep.seconds = time.perf_counter() - t0
    return rep


def constant_in_n(report: SuiteReport) -> tuple[bool, dict]:
    """Per d, the list of cell maxima across n and whether it is constant."""
    cols: dict = {}
    for r in report.rows:
        cols.setdefault(r["d"], []).append((r["n"], r["observed_max"]))
    ok = all(len({v for _, v in col}) == 1 for col in cols.values())
    return ok, cols


# ---------------------------------------------------------------------------
# general bound

def _squarefree_random(K, s: int, rng: random.Random) -> list:
    while True:
        f = [K.random_element(rng) for _ in range(s)] + [1]
        if len(up.squarefree_decomposition(K, f)) == 1 and up.squarefree_decomposition(K, f)[0][1] == 1:
            return f


def _injective_coordinate(Z) -> int | None:
    for i in range(Z.ring.nvars):
        if len({pt[i] for pt in Z.points}) == len(Z.points):
            return i
    return None


def radical_instance(ring: PolyRing, s: int, rng: random.Random, mix: bool = True):
    """Zero-dimensional radical system with s points over the closure.

    Built as {pi(x0), x_j - gamma_j(x0)} with pi squarefree of degree s and
    deg gamma_j < s, then mixed by a random invertible linear map of the
    polynomials and a random affine change of variables.  Returns
    ``(system, closure solutions)`` with an injective projection on some
    coordinate.
    """
    K = ring.field
    m = ring.nvars
    pi = _squarefree_random(K, s, rng)
    polys = [ring.from_univariate(pi, 0)]
    for j in range(1, m):
        gamma = [K.random_element(rng) for _ in range(s)]
        polys.append(ring.var(j) - ring.from_univariate(gamma, 0))
    if mix:
        if m > 1:
            M = AffineMap.random(K, m, rng, translate=False).matrix
            polys = [sum((g.scale(c) for c, g in zip(row, polys) if c), ring.zero) for row in M]
        A = AffineMap.random(K, m, rng, translate=True)
        polys = [act_affine(A, f) for f in polys]
    F = PolySystem(ring, polys)
    Z = enumerate_solutions(F, closure=True)
    if _injective_coordinate(Z) is None:
        A = randomize_projection(F, Z, seed=rng.randrange(1 << 30))
        F = transform_for_points(F, A)
        Z = enumerate_solutions(F, closure=True)
    return F, Z


def suite_general_bound(ms=(1, 2), qs=(2, 3), ns=(2, 3, 4), trials: int = 5, s_max: int = 3,
               seed: int = 0) -> SuiteReport:
    rep = SuiteReport("general", {"m": list(ms), "q": list(qs), "n": list(ns), "trials": trials,
                               "s_max": s_max, "seed": seed})
    t0 = time.perf_counter()
    for m in ms:
        for q in qs:
            for n in ns:
                K = make_extension(q, n)
                D = DescentMap(K, q, m, "normal")
                for t in range(trials):
                    rng = _rng("general", m, q, n, t, seed)
                    s = rng.randint(1, s_max)
                    F, Z = radical_instance(D.source, s, rng)
                    s_count = len(Z.points)
                    d_F = exact_last_fall(F)
                    deg_F = int(F.degree)
                    bound = theorem_bound(m, q, s_count, d_F, deg_F)
                    try:
                        obs = exact_last_fall(descended_with_field_eqs(F.polys, D), max_degree=bound + 4)
                    except (OracleInfeasible, CapExceeded) as exc:
                        rep.skipped += 1
                        rep.rows.append({"m": m, "q": q, "n": n, "trial": t, "skipped": str(exc)})
                        continue
                    rep.trials += 1
                    row = {"m": m, "q": q, "n": n, "trial": t, "s": s_count, "d_F": d_F, "deg_F": deg_F,
                           "observed": obs, "bound": bound}
                    rep.rows.append(row)
                    if obs > bound:
                        rep.failures.append(dict(row, F=_dump(F.polys), field=K.describe()))
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# solver against enumeration

def suite_solver(trials: int = 200, seed: int = 0, max_points: int = 1 << 20) -> SuiteReport:
    """solve_zero_dim against brute-force enumeration on radical systems."""
    rep = SuiteReport("solver", {"trials": trials, "seed": seed})
    t0 = time.perf_counter()
    shapes = [(2, 1), (3, 1), (4, 1), (5, 1), (7, 1), (8, 1), (9, 1), (16, 1), (2, 2), (3, 2), (4, 2),
              (5, 2), (7, 2), (2, 3), (3, 3), (4, 3)]
    t = 0
    while rep.trials < trials:
        rng = _rng("solver", t, seed)
        t += 1
        order, m = shapes[rng.randrange(len(shapes))]
        if order ** m > max_points:
            continue
        p = {4: 2, 8: 2, 9: 3, 16: 2}.get(order, order)
        a = {4: 2, 8: 3, 9: 2, 16: 4}.get(order, 1)
        k = make_field(p, [a]) if a > 1 else make_field(p)
        R = PolyRing(k, m)
        kind = rng.randrange(3)
        if kind == 0:
            F, _ = radical_instance(R, rng.randint(1, 4), rng)
        else:
            npolys = rng.randint(1, m + 1)
            polys = [R.random_poly(rng, rng.randint(1, 3), density=0.5) for _ in range(npolys)]
            F = PolySystem(R, polys + field_equations(R, k.order), field_equations=True)
        try:
            Z, trace = solve_zero_dim(F, seed=t)
        except (OracleInfeasible, CapExceeded):
            rep.skipped += 1
            continue
        except FallDegError as exc:
            rep.trials += 1
            rep.failures.append({"trial": t, "error": f"{type(exc).__name__}: {exc}", "F": _dump(F.polys),
                                 "field": k.describe()})
            continue
        truth = enumerate_solutions(F)
        rep.trials += 1
        if Z.as_set() != truth.as_set():
            rep.failures.append({"trial": t, "solver": sorted(Z.points), "enumeration": truth.points,
                                 "F": _dump(F.polys), "field": k.describe()})
        else:
            rep.rows.append({"trial": t, "field": k.order, "m": m, "solutions": len(truth.points),
                             "d": trace.d})
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# gcd through the descent

def suite_gcd_certificate(qs=(2, 3), ns=(2, 3, 4), trials: int = 50, max_deg: int = 6, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("gcd", {"q": list(qs), "n": list(ns), "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    cells = [(q, n) for q in qs for n in ns]
    maps = {}
    for t in range(trials):
        q, n = cells[t % len(cells)]
        if (q, n) not in maps:
            maps[(q, n)] = DescentMap(make_extension(q, n), q, 1, "normal")
        D = maps[(q, n)]
        rng = _rng("gcd", q, n, t, seed)
        d = rng.randint(1, max_deg)
        f = random_univariate(D.source, d, rng)
        cert = descent_gcd_certificate(f, D)
        rep.trials += 1
        rep.rows.append({"q": q, "n": n, "deg": d, "u": cert.u, "gcd_degree": len(cert.gcd) - 1, "ok": cert.ok})
        if not cert.ok:
            rep.failures.append({"q": q, "n": n, "f": format_poly(f), "certificate": cert.to_json()})
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# model relation

def suite_model_relation(trials: int = 25, seed: int = 0) -> SuiteReport:
    """max(d_{F'_f}, q, deg F') <= max(d_{bar F_f}, q, deg F'), both exact."""
    rep = SuiteReport("models", {"trials": trials, "seed": seed})
    t0 = time.perf_counter()
    cells = [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2)]
    for t in range(trials):
        q, n, m = cells[t % len(cells)]
        D = DescentMap(make_extension(q, n), q, m, "normal")
        rng = _rng("models", t, seed)
        R = D.source
        if m == 1:
            polys = [random_univariate(R, rng.randint(1, 4), rng)]
        else:
            polys = [R.random_poly(rng, rng.randint(1, 2), density=0.6) for _ in range(2)]
        classic = descended_with_field_eqs(polys, D)
        bar = bar_with_field_eqs(polys, D)
        deg_c = int(max((f.degree for f in descend_classic(polys, D, False).polys if f.terms), default=0))
        lhs = max(exact_last_fall(classic), q, deg_c)
        rhs = max(exact_last_fall(bar), q, deg_c)
        rep.trials += 1
        row = {"q": q, "n": n, "m": m, "lhs": lhs, "rhs": rhs}
        rep.rows.append(row)
        if lhs > rhs:
            rep.failures.append(dict(row, F=_dump(polys)))
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# bar inclusion and bar degree bound

def _all_monomials(R: PolyRing, max_degree: int) -> list[Poly]:
    return [R.monomial(list(e)) for e in monomials_upto(R.nvars, max_degree) if sum(e) > 0]


def suite_bar_bounds(pairs=((2, 1), (2, 2), (3, 1)), n: int = 2, max_degree: int = 8, randoms: int = 100,
               seed: int = 0) -> SuiteReport:
    """Degree bound on bar images and inclusion bar(V_{F_f,i}) in V_{bar F_f, tau(i,q,m)}.

    The degree bound is checked on every nonconstant monomial of degree at
    most ``max_degree`` and on the random polynomials; the inclusion for
    F = {g} at i = deg g on the same inputs.
    """
    rep = SuiteReport("bar", {"pairs": [list(p) for p in pairs], "n": n, "max_degree": max_degree,
                               "randoms": randoms, "seed": seed})
    t0 = time.perf_counter()
    for q, m in pairs:
        D = DescentMap(make_extension(q, n), q, m, "normal")
        R = D.source
        inputs = [("monomial", g) for g in _all_monomials(R, max_degree)]
        rng = _rng("bar", q, m, seed)
        per_pair = max(1, randoms // len(pairs))
        for _ in range(per_pair):
            g = R.random_poly(rng, rng.randint(1, max_degree), density=0.3)
            if g.is_constant():
                g = g + R.var(0)
            inputs.append(("random", g))
        deg_bad = incl_bad = 0
        for kind, g in inputs:
            b = descend_bar(g, D)
            bnd = bar_degree_bound(g, q)
            rep.trials += 1
            if b.terms and b.degree > bnd:
                deg_bad += 1
                rep.failures.append({"check": "degree", "q": q, "m": m, "kind": kind, "g": format_poly(g),
                                     "bar_degree": int(b.degree), "bound": bnd})
            i = int(g.degree)
            try:
                bad = bar_inclusion_violations([g], D, i)
            except (CapExceeded, OracleInfeasible):
                rep.skipped += 1
                continue
            if bad:
                incl_bad += 1
                rep.failures.append({"check": "inclusion", "q": q, "m": m, "kind": kind, "g": format_poly(g),
                                     "i": i, "tau": tau(i, q, m), "example": bad[0]})
        rep.rows.append({"q": q, "m": m, "n": n, "inputs": len(inputs), "degree_violations": deg_bad,
                         "inclusion_violations": incl_bad})
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# constructible-space properties

def _small_system(rng: random.Random):
    k = [make_field(3), make_field(2, [2]), make_field(5)][rng.randrange(3)]
    R = PolyRing(k, 2)
    polys = [R.random_poly(rng, rng.randint(1, 2), density=0.6) for _ in range(rng.randint(2, 3))]
    return R, polys


def _ideal_dim_upto(B, i: int) -> int:
    """dim_k of I cut with R_{<=i}: all monomials minus standard ones (degree-refining order)."""
    lms = B.leading_monomials
    m = B.ring.nvars
    total = std = 0
    for e in monomials_upto(m, i):
        total += 1
        if not any(all(a >= b for a, b in zip(e, l)) for l in lms):
            std += 1
    return total - std


def suite_constructible(trials: int = 100, seed: int = 0) -> dict:
    """Five property checks, each on ``trials`` seeded systems."""
    names = ["affine_equivariance", "span_invariance", "affine_last_fall", "subset_monotonicity",
             "ideal_agreement"]
    reps = {nm: SuiteReport(nm, {"trials": trials, "seed": seed}) for nm in names}
    t0 = time.perf_counter()
    for t in range(trials):
        rng = _rng("constructible", t, seed)
        R, polys = _small_system(rng)
        k = R.field
        F = PolySystem(R, polys)
        i = max(int(F.degree), 1) + rng.randint(0, 2)
        V = build_V(F, i)
        A = AffineMap.random(k, R.nvars, rng)
        AF = [act_affine(A, f) for f in polys]
        VA = build_V(AF, i)
        moved = [act_affine(A, g) for g in V.basis_polys()]
        rep = reps["affine_equivariance"]
        rep.trials += 1
        if VA.dim != V.dim or not VA.contains_all(moved):
            rep.failures.append({"trial": t, "F": _dump(polys), "i": i})

        M = AffineMap.random(k, len(polys), rng, translate=False).matrix
        G = [sum((g.scale(c) for c, g in zip(row, polys) if c), R.zero) for row in M]
        rep = reps["span_invariance"]
        rep.trials += 1
        if not build_V(G, i).same_space(V):
            rep.failures.append({"trial": t, "F": _dump(polys), "G": _dump(G), "i": i})

        extra = R.random_poly(rng, rng.randint(1, 2), density=0.5)
        W = build_V(polys + [extra], i)
        rep = reps["subset_monotonicity"]
        rep.trials += 1
        if not W.contains_all(V.basis_polys()):
            rep.failures.append({"trial": t, "F": _dump(polys), "extra": format_poly(extra), "i": i})

        try:
            info = last_fall_info(F, max_degree=12)
            info_A = last_fall_info(AF, max_degree=12)
        except (OracleInfeasible, CapExceeded):
            reps["affine_last_fall"].skipped += 1
            reps["ideal_agreement"].skipped += 1
            continue
        rep = reps["affine_last_fall"]
        rep.trials += 1
        if info.value != info_A.value:
            rep.failures.append({"trial": t, "F": _dump(polys), "d_F": info.value, "d_AF": info_A.value})

        rep = reps["ideal_agreement"]
        B = buchberger(F)
        for c in range(info.value, info.value + 3):
            Vc = build_V(F, c)
            rep.trials += 1
            ok = Vc.dim == _ideal_dim_upto(B, c) and Vc.contains_all([g for g in B.polys if g.degree <= c])
            if not ok:
                rep.failures.append({"trial": t, "F": _dump(polys), "c": c, "d_F": info.value,
                                     "dim_V": Vc.dim, "dim_I": _ideal_dim_upto(B, c)})
    dt = time.perf_counter() - t0
    for r in reps.values():
        r.seconds = dt
    return reps


# ---------------------------------------------------------------------------
# factoring

def suite_factor(trials: int = 500, seed: int = 0) -> SuiteReport:
    from .solver import factor_univariate
    orders = [(2, 1), (3, 1), (5, 1), (2, 2), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1), (5, 2), (2, 6),
              (3, 4), (2, 8), (7, 3), (2, 10), (4093, 1), (2, 12), (3, 7), (5, 5), (17, 2)]
    rep = SuiteReport("factor", {"trials": trials, "seed": seed})
    t0 = time.perf_counter()
    for t in range(trials):
        rng = _rng("factor", t, seed)
        p, a = orders[t % len(orders)]
        K = make_field(p, [a]) if a > 1 else make_field(p)
        if K.order > 4096:
            continue
        d = rng.randint(1, 12)
        # half the inputs are products with repeated and linear factors
        if rng.random() < 0.5:
            f = [1]
            while len(f) - 1 < d:
                g = [K.random_element(rng) for _ in range(rng.randint(1, 3))] + [1]
                f = up.mul(K, f, g if rng.random() < 0.7 else up.mul(K, g, g))
        else:
            f = [K.random_element(rng) for _ in range(d)] + [K.random_nonzero(rng)]
        rep.trials += 1
        try:
            fac = factor_univariate(K, f, seed=t)
        except FallDegError as exc:
            rep.failures.append({"trial": t, "field": K.describe(), "f": f, "error": str(exc)})
            continue
        recombined = up.expand_factorization(K, fac.lc, fac.factors) == up.trim(f)
        roots_ok = fac.roots() == up.exhaustive_roots(K, f)
        irreducible = all(up.is_irreducible(K, g) and g[-1] == 1 for g, _ in fac.factors)
        if not (recombined and roots_ok and irreducible):
            rep.failures.append({"trial": t, "field": K.describe(), "f": f, "recombined": recombined,
                                 "roots_ok": roots_ok, "irreducible": irreducible})
    rep.seconds = time.perf_counter() - t0
    return rep
