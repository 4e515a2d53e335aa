"""Weil descent from k = GF(q^n) to k' = GF(q), in two models.

Classic model: substitute x_i = sum_j alpha_j x_{i j}, reduce modulo
x_{ij}^q - x_{ij} and split along the basis; the pieces [f]_j have
coefficients in k'.

Bar model: a monomial x_i^e is sent to prod_j x_{ij}^{e_j} where the e_j
are the base-q digits of e reduced modulo x^{q^n} - x; coefficients stay
in k and the attached equations are x_{ij}^q - x_{i,j+1} (indices mod n).

The module also holds the growth function tau, the bar-degree bound, the
theorem bounds and the two witness computations (model relation and the
gcd certificate).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import univariate as up
from .constructible import build_V
from .errors import ConstantInput, DegreeTooLarge, InvalidBase, InvalidParameters, NotNormalBasis, ZeroInput
from .field import CoordinateMap, FieldCtx, find_normal_basis, is_subfield_basis, normal_basis
from .poly import Poly, PolyRing, PolySystem, reduce_exponent, reduce_mod_field_equations


# ---------------------------------------------------------------------------
# exact logarithmic bounds

def floor_affine_log(A: int, c: int, num: int, den: int) -> int | None:
    """Largest integer N with N <= A * (log_c(num/den) + 1), or None if num == 0.

    Decided with integer powers only: for N >= A the test is
    c^(N-A) * den^A <= num^A, otherwise den^A <= num^A * c^(A-N).
    """
    if c < 2:
        raise InvalidBase(f"logarithm base must be >= 2, got {c}")
    if A <= 0 or den <= 0:
        raise InvalidParameters("need A >= 1 and den >= 1")
    if num <= 0:
        return None
    numA, denA = num ** A, den ** A

    def ok(N: int) -> bool:
        if N >= A:
            return c ** (N - A) * denA <= numA
        return denA <= numA * c ** (A - N)

    # bracket then bisect; ok() is monotone decreasing in N
    lo = 0
    while not ok(lo):
        lo = lo * 2 - 1 if lo < 0 else -1
        if lo < -(1 << 40):  # pragma: no cover - would need astronomically small ratios
            raise InvalidParameters("ratio too small")
    hi = max(lo + 1, A + 1)
    while ok(hi):
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def tau(r: int, c: int, t: int) -> int:
    """max(floor(2t(c-1)(log_c(r/2t) + 1)), 0), with tau(0, c, t) = 0."""
    if c < 2:
        raise InvalidBase(f"tau needs c >= 2, got {c}")
    if t < 1 or r < 0:
        raise InvalidParameters("tau needs r >= 0 and t >= 1")
    val = floor_affine_log(2 * t * (c - 1), c, r, 2 * t)
    return 0 if val is None else max(val, 0)


def weight(e: int, q: int) -> int:
    """Base-q digit sum."""
    if e < 0:
        raise InvalidParameters("negative exponent")
    s = 0
    while e:
        e, d = divmod(e, q)
        s += d
    return s


def poly_weight(f: Poly, q: int, n: int | None = None) -> int:
    """max over the support of the summed digit weights of the exponents."""
    if not f.terms:
        return 0
    return max(sum(weight(e, q) for e in m) for m in f.terms)


def bar_degree_bound(g: Poly, q: int) -> int:
    """floor(m(q-1)(log_q(deg g / m) + 1)) with m the number of variables."""
    if g.is_constant():
        raise ConstantInput("bound is stated for nonconstant polynomials")
    m = g.ring.nvars
    return floor_affine_log(m * (q - 1), q, int(g.degree), m)


def theorem_bound(m: int, q: int, s: int, d_F: int, deg_F: int) -> int:
    """max(tau(max(d_F, deg F, (m+1)s, 1), q, m), m*tau(2s, q, 1), q)."""
    if q < 2 or m < 1 or min(s, d_F, deg_F) < 0:
        raise InvalidParameters("need q >= 2, m >= 1 and nonnegative s, d_F, deg F")
    inner = max(d_F, deg_F, (m + 1) * s, 1)
    return max(tau(inner, q, m), m * tau(2 * s, q, 1), q)


def theorem_bound_m1(d: int, q: int) -> int:
    """max(tau(2d, q, 1), q) for one variable."""
    if q < 2 or d < 0:
        raise InvalidParameters("need q >= 2 and d >= 0")
    return max(tau(2 * d, q, 1), q)


# ---------------------------------------------------------------------------
# descent context

def descent_names(m: int, n: int) -> list[str]:
    return [f"x{i}_{j}" for i in range(m) for j in range(n)]


class DescentMap:
    """k = ``ext`` over k' = GF(q) with a chosen basis, for m source variables."""

    def __init__(self, ext: FieldCtx, q: int, m: int, basis: Sequence[int] | str = "normal"):
        b = ext._check_subfield(q)
        self.ext = ext
        self.q = q
        self.n = ext.degree // b
        self.m = m
        if isinstance(basis, str):
            if basis == "normal":
                self.theta = find_normal_basis(ext, q).value
                basis = normal_basis(ext, q)
            elif basis == "polynomial":
                basis = self._power_basis()
                self.theta = None
            else:
                raise InvalidParameters(f"unknown basis kind {basis!r}")
        else:
            self.theta = None
        self.basis = [int(getattr(a, "value", a)) for a in basis]
        self.coords = CoordinateMap(ext, self.basis, q)   # raises NotABasis
        self.embedding = self.coords.embedding
        self.sub = self.embedding.sub
        if self.theta is None:
            self.theta = self._detect_theta()
        self.source = PolyRing(ext, m)
        names = descent_names(m, self.n)
        self.target_sub = PolyRing(self.sub, m * self.n, names)
        self.target_ext = PolyRing(ext, m * self.n, names)

    def _power_basis(self) -> list[int]:
        """1, g, g^2, ... for the smallest g generating k over k' (encoding order)."""
        F = self.ext
        for g in range(2, F.order):
            cand = [F.pow(g, j) for j in range(self.n)]
            if is_subfield_basis(F, cand, self.q):
                return cand
        return [1]

    def _detect_theta(self):
        F = self.ext
        t = self.basis[0]
        if all(self.basis[j] == F.frobenius(t, j, self.q) for j in range(self.n)):
            return t
        return None

    @property
    def is_normal(self) -> bool:
        return self.theta is not None

    def var(self, i: int, j: int) -> int:
        return i * self.n + j

    def header(self) -> dict:
        F = self.ext
        return {
            "q": self.q, "n": self.n, "m": self.m,
            "basis": [F.format(a) for a in self.basis],
            "normal": self.is_normal,
        }

    def lift_sub(self, h: Poly) -> Poly:
        """View a k'-coefficient polynomial of the target ring over k."""
        emb = self.embedding
        return Poly(self.target_ext, {mm: emb.to_ext(c) for mm, c in h.terms.items()})


@dataclass
class DescentSystem:
    """Descended polynomials, their field equations and provenance."""

    dmap: DescentMap
    model: str                      # "classic" or "bar"
    polys: list
    field_eqs: list
    provenance: list = dc_field(default_factory=list)   # (source index, j) per poly

    @property
    def ring(self) -> PolyRing:
        return self.dmap.target_sub if self.model == "classic" else self.dmap.target_ext

    def system(self, with_field_eqs: bool = True) -> PolySystem:
        polys = list(self.polys) + (list(self.field_eqs) if with_field_eqs else [])
        return PolySystem(self.ring, polys, field_equations=with_field_eqs and bool(self.field_eqs),
                          meta={"descent": self.dmap.header(), "model": self.model})

    @property
    def degree(self):
        return max((f.degree for f in self.polys if f.terms), default=0)


def classic_field_equations(D: DescentMap) -> list[Poly]:
    R = D.target_sub
    F = R.field
    out = []
    for v in range(R.nvars):
        hi = [0] * R.nvars
        hi[v] = D.q
        lo = [0] * R.nvars
        lo[v] = 1
        out.append(Poly(R, {tuple(hi): 1, tuple(lo): F.neg(1)}))
    return out


def twisted_field_equations(D: DescentMap) -> list[Poly]:
    R = D.target_ext
    F = R.field
    out = []
    for i in range(D.m):
        for j in range(D.n):
            hi = [0] * R.nvars
            hi[D.var(i, j)] = D.q
            nxt = [0] * R.nvars
            nxt[D.var(i, (j + 1) % D.n)] = 1
            out.append(Poly(R, {tuple(hi): 1, tuple(nxt): F.neg(1)}))
    return out


class _ClassicEngine:
    """Images of x_i^e under the substitution, reduced mod x_ij^q - x_ij.

    Modulo the field equations (sum_j a_j x_ij)^q == sum_j a_j^q x_ij, so
    x_i^e with e == sum_l d_l q^l (e reduced mod q^n - 1) becomes
    prod_l (sum_j alpha_j^(q^l) x_ij)^(d_l).
    """

    def __init__(self, D: DescentMap):
        self.D = D
        self.R = D.target_ext
        self.cache: dict = {}
        F = D.ext
        self.linear = {}
        for i in range(D.m):
            for l in range(D.n):
                terms = {}
                for j in range(D.n):
                    c = F.frobenius(D.basis[j], l, D.q)
                    if c:
                        mono = [0] * self.R.nvars
                        mono[D.var(i, j)] = 1
                        terms[tuple(mono)] = c
                self.linear[(i, l)] = Poly(self.R, terms)

    def power(self, i: int, e: int) -> Poly:
        key = (i, e)
        if key in self.cache:
            return self.cache[key]
        D = self.D
        e2 = reduce_exponent(e, D.q ** D.n)
        acc = self.R.one
        rem, l = e2, 0
        while rem:
            rem, d = divmod(rem, D.q)
            for _ in range(d):
                acc = reduce_mod_field_equations(acc * self.linear[(i, l)], D.q)
            l += 1
        self.cache[key] = acc
        return acc

    def image(self, f: Poly) -> Poly:
        acc = self.R.zero
        for mono, c in f.terms.items():
            t = self.R.const(c)
            for i, e in enumerate(mono):
                if e:
                    t = t * self.power(i, e)  # distinct variable blocks: no reduction needed
            acc = acc + t
        return acc


def descend_classic(F, D: DescentMap, with_field_eqs: bool = True) -> DescentSystem:
    """[f]_j for every f, so that f(sum alpha_j x_ij) == sum_j [f]_j alpha_j."""
    polys = F.polys if isinstance(F, PolySystem) else list(F)
    eng = _ClassicEngine(D)
    out, prov = [], []
    Rs = D.target_sub
    for idx, f in enumerate(polys):
        if f.ring.field is not D.ext or f.ring.nvars != D.m:
            raise InvalidParameters("polynomial does not live in the source ring")
        img = eng.image(f)
        parts = [dict() for _ in range(D.n)]
        for mono, c in img.terms.items():
            for j, cj in enumerate(D.coords.to_coords(c)):
                if cj:
                    parts[j][mono] = cj
        for j in range(D.n):
            out.append(Poly(Rs, parts[j]))
            prov.append((idx, j))
    eqs = classic_field_equations(D) if with_field_eqs else []
    return DescentSystem(D, "classic", out, eqs, prov)


def bar_monomial(D: DescentMap, mono: Sequence[int]) -> tuple:
    out = [0] * (D.m * D.n)
    Q = D.q ** D.n
    for i, e in enumerate(mono):
        e2 = reduce_exponent(e, Q)
        j = 0
        while e2:
            e2, d = divmod(e2, D.q)
            out[D.var(i, j)] = d
            j += 1
    return tuple(out)


def descend_bar(f: Poly, D: DescentMap) -> Poly:
    """The k-linear bar map R -> S on one polynomial."""
    F = D.ext
    out: dict = {}
    for mono, c in f.terms.items():
        bm = bar_monomial(D, mono)
        v = F.add(out.get(bm, 0), c)
        if v:
            out[bm] = v
        else:
            out.pop(bm, None)
    return Poly(D.target_ext, out)


def descend_bar_system(F, D: DescentMap, with_field_eqs: bool = True) -> DescentSystem:
    polys = F.polys if isinstance(F, PolySystem) else list(F)
    out = [descend_bar(f, D) for f in polys]
    eqs = twisted_field_equations(D) if with_field_eqs else []
    return DescentSystem(D, "bar", out, eqs, [(i, 0) for i in range(len(polys))])


def phi(h: Poly, D: DescentMap) -> Poly:
    """The k-algebra map S -> R with x_ij -> x_i^(q^j)."""
    R = D.source
    out: dict = {}
    F = D.ext
    for mono, c in h.terms.items():
        e = [0] * D.m
        for i in range(D.m):
            for j in range(D.n):
                e[i] += mono[D.var(i, j)] * D.q ** j
        e = tuple(e)
        v = F.add(out.get(e, 0), c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return Poly(R, out)


def frobenius_power_poly(f: Poly, e: int) -> Poly:
    """f^e for e a power of the characteristic, computed termwise."""
    F = f.ring.field
    out: dict = {}
    for mono, c in f.terms.items():
        mm = tuple(x * e for x in mono)
        v = F.add(out.get(mm, 0), F.pow(c, e))
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return Poly(f.ring, out)


# ---------------------------------------------------------------------------
# the hypothesis of the one-variable theorem

def low_weight_hypothesis(F, d: int, D: DescentMap) -> bool:
    """Some generator has degree <= d and every bar image has degree <= tau(2d, q, 1)."""
    polys = [f for f in (F.polys if isinstance(F, PolySystem) else F) if f.terms]
    if D.m != 1 or not polys:
        return False
    if not any(0 <= f.degree <= d for f in polys):
        return False
    u = tau(2 * d, D.q, 1)
    return all(descend_bar(g, D).degree <= u for g in polys)


# ---------------------------------------------------------------------------
# model relation

@dataclass
class ModelWitness:
    classic: DescentSystem
    bar: DescentSystem
    G: PolySystem
    transform: list          # Y_ij as linear polynomials in the x_ik (over k)
    field_eqs_ok: bool
    identity_ok: bool
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.field_eqs_ok and self.identity_ok


def model_transform(D: DescentMap) -> list[Poly]:
    """Y_ij = sum_k theta^(q^(j+k)) x_ik, listed by (i, j)."""
    if not D.is_normal:
        raise NotNormalBasis("the model relation needs a normal basis")
    R = D.target_ext
    F = D.ext
    out = []
    for i in range(D.m):
        for j in range(D.n):
            terms = {}
            for k in range(D.n):
                c = F.frobenius(D.theta, j + k, D.q)
                mono = [0] * R.nvars
                mono[D.var(i, k)] = 1
                terms[tuple(mono)] = c
            out.append(Poly(R, terms))
    return out


def relate_models(F, D: DescentMap) -> ModelWitness:
    polys = F.polys if isinstance(F, PolySystem) else list(F)
    if not D.is_normal:
        raise NotNormalBasis("the model relation needs a normal basis")
    R = D.target_ext
    K = D.ext
    q, n = D.q, D.n
    classic = descend_classic(polys, D, with_field_eqs=True)
    bar = descend_bar_system(polys, D, with_field_eqs=True)
    G_polys = [descend_bar(frobenius_power_poly(f, q ** l), D) for f in polys for l in range(n)]
    G = PolySystem(R, G_polys + twisted_field_equations(D), field_equations=True)
    Y = model_transform(D)
    failures = []

    eq_ok = True
    for i in range(D.m):
        for j in range(n):
            lhs = Y[D.var(i, j)] ** q - Y[D.var(i, (j + 1) % n)]
            rhs = R.zero
            for k in range(n):
                v = [0] * R.nvars
                v[D.var(i, k)] = 1
                xk = R.monomial(v)
                rhs = rhs + (xk ** q - xk).scale(K.frobenius(D.theta, j + k + 1, q))
            if lhs != rhs:
                eq_ok = False
                failures.append({"check": "field_equations", "i": i, "j": j})

    id_ok = True
    for idx, f in enumerate(polys):
        parts = [D.lift_sub(classic.polys[idx * n + k]) for k in range(n)]
        for l in range(n):
            lhs = G_polys[idx * n + l].substitute(Y)
            rhs = R.zero
            for k in range(n):
                rhs = rhs + parts[k].scale(K.frobenius(D.theta, k + l, q))
            if reduce_mod_field_equations(lhs - rhs, q).terms:
                id_ok = False
                failures.append({"check": "identity", "poly": idx, "l": l})
    return ModelWitness(classic, bar, G, Y, eq_ok, id_ok, failures)


# ---------------------------------------------------------------------------
# gcd certificate

@dataclass
class GcdCertificate:
    u: int
    remainders: list         # dense univariate lists along the Euclidean algorithm
    gcd: list
    memberships: list        # (label, degree of bar image, contained?)

    @property
    def ok(self) -> bool:
        return all(ok for _, _, ok in self.memberships)

    def to_json(self) -> dict:
        return {"u": self.u, "gcd_degree": len(self.gcd) - 1,
                "checks": [{"item": lab, "bar_degree": d, "contained": ok}
                           for lab, d, ok in self.memberships],
                "ok": self.ok}


def descent_gcd_certificate(f: Poly, D: DescentMap, space=None) -> GcdCertificate:
    """Check that every Euclidean remainder of (x^(q^n) - x, f) and the gcd
    have bar images in V_u of the bar system, u = tau(2 deg f, q, 1)."""
    if D.m != 1 or f.ring.nvars != 1:
        raise InvalidParameters("the gcd certificate is for one variable")
    if not f.terms:
        raise ZeroInput("f must be nonzero")
    K = D.ext
    d = int(f.degree)
    u = tau(2 * d, D.q, 1)
    Q = D.q ** D.n
    fl = f.to_univariate(0)
    field_poly = up.field_poly(K, Q)
    trace = up.euclid_trace(K, field_poly, fl)
    g = up.gcd(K, field_poly, fl)
    bar_sys = descend_bar_system([f], D, with_field_eqs=True)
    V = space if space is not None else build_V(bar_sys.system(), u)
    checks = []
    items = [(f"r{k}", r) for k, r in enumerate(trace[2:], start=1)] + [("gcd", g)]
    R = D.source
    for label, r in items:
        b = descend_bar(R.from_univariate(r, 0), D)
        deg = int(b.degree) if b.terms else -1
        try:
            ok = V.contains(b)
        except DegreeTooLarge:
            ok = False
        checks.append((label, deg, ok))
    return GcdCertificate(u, trace, g, checks)


# ---------------------------------------------------------------------------
# bar-space inclusion check

def bar_inclusion_violations(F, D: DescentMap, i: int) -> list[dict]:
    """Elements of a spanning set of bar(V_{F_f, i}) outside V_{bar F_f, tau(i, q, m)}."""
    polys = F.polys if isinstance(F, PolySystem) else list(F)
    R = D.source
    Q = D.q ** D.n
    eqs = []
    for v in range(D.m):
        hi = [0] * D.m
        hi[v] = Q
        lo = [0] * D.m
        lo[v] = 1
        eqs.append(Poly(R, {tuple(hi): 1, tuple(lo): R.field.neg(1)}))
    Ff = PolySystem(R, list(polys) + eqs, field_equations=True)
    s = tau(i, D.q, D.m)
    Vi = build_V(Ff, i)
    W = build_V(descend_bar_system(polys, D).system(), s)
    bad = []
    for g in Vi.basis_polys():
        b = descend_bar(g, D)
        try:
            inside = W.contains(b)
        except DegreeTooLarge:
            inside = False
        if not inside:
            bad.append({"element": str(g), "bar": str(b), "bar_degree": int(b.degree), "s": s})
    return bad
