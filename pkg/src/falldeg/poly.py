"""Sparse multivariate polynomials over a :class:`~falldeg.field.FieldCtx`.

A polynomial maps exponent tuples to nonzero field integers.  Monomial
orders live outside the polynomials and are passed where needed; the default
is grevlex with ``x0 < x1 < ... < x{m-1}``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterable, Mapping, Sequence

from .caps import get_caps
from .errors import CapExceeded, MixedFields, MixedRings, ParseError, SingularMatrix
from .field import Elem, FieldCtx, _invert, _det_rank

NEG_INF = float("-inf")
"""Degree of the zero polynomial; compares below every integer."""


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """``grevlex``, ``grlex`` or ``lex``; ``perm`` lists variables smallest first."""

    def __init__(self, tag: str = "grevlex", perm: Sequence[int] | None = None):
        if tag not in ("grevlex", "grlex", "lex"):
            raise ValueError(f"unknown monomial order {tag!r}")
        self.tag = tag
        self.perm = None if perm is None else tuple(perm)

    def _perm(self, m):
        return self.perm if self.perm is not None else tuple(range(m))

    def key(self, mono: tuple) -> tuple:
        """Sort key: larger key means larger monomial."""
        perm = self._perm(len(mono))
        if self.tag == "grevlex":
            return (sum(mono),) + tuple(-mono[v] for v in perm)
        if self.tag == "grlex":
            return (sum(mono),) + tuple(mono[v] for v in reversed(perm))
        return tuple(mono[v] for v in reversed(perm))

    @property
    def degree_refining(self) -> bool:
        return self.tag != "lex"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.tag, self.perm) == (other.tag, other.perm)

    def __hash__(self):
        return hash((self.tag, self.perm))

    def __repr__(self):
        return f"MonomialOrder({self.tag!r}" + (f", perm={self.perm})" if self.perm else ")")


GREVLEX = MonomialOrder("grevlex")
GRLEX = MonomialOrder("grlex")
LEX = MonomialOrder("lex")


def monomials_of_degree(m: int, d: int):
    if m == 0:
        if d == 0:
            yield ()
        return
    if m == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(m - 1, d - e):
            yield (e,) + rest


def monomials_upto(m: int, i: int, order: MonomialOrder = GREVLEX, cap: int | None = None) -> list[tuple]:
    """All monomials of total degree <= i, largest first."""
    if i < 0:
        return []
    cap = get_caps().matrix if cap is None else cap
    count = comb(m + i, i)
    if count > cap:
        raise CapExceeded(f"C({m}+{i},{i}) = {count} monomials exceeds the matrix cap {cap}")
    monos = [mono for d in range(i + 1) for mono in monomials_of_degree(m, d)]
    monos.sort(key=order.key, reverse=True)
    return monos


# ---------------------------------------------------------------------------
# rings and polynomials

class PolyRing:
    """k[x0, ..., x{m-1}] with fixed variable names."""

    _cache: dict = {}

    def __new__(cls, field: FieldCtx, nvars: int, names: Sequence[str] | None = None):
        names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(nvars))
        if len(names) != nvars:
            raise ValueError("one name per variable")
        key = (id(field), nvars, names)
        ring = cls._cache.get(key)
        if ring is None:
            ring = super().__new__(cls)
            ring.field = field
            ring.nvars = nvars
            ring.names = names
            ring.index = {n: i for i, n in enumerate(names)}
            cls._cache[key] = ring
        return ring

    def __getnewargs__(self):
        return (self.field, self.nvars, self.names)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def const(self, c) -> "Poly":
        c = self._coef(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, mono: Sequence[int], c=1) -> "Poly":
        c = self._coef(c)
        return Poly(self, {tuple(mono): c} if c else {})

    def from_dict(self, terms: Mapping) -> "Poly":
        return Poly(self, {tuple(k): self._coef(v) for k, v in terms.items() if self._coef(v)})

    def _coef(self, c) -> int:
        if isinstance(c, Elem):
            if c.ctx is not self.field:
                raise MixedFields("coefficient from another field")
            return c.value
        c = int(c)
        if 0 <= c < self.field.order:
            return c
        return self.field.from_int(c)

    def from_univariate(self, coeffs: Sequence[int], var: int = 0) -> "Poly":
        terms = {}
        for e, c in enumerate(coeffs):
            if c:
                mono = [0] * self.nvars
                mono[var] = e
                terms[tuple(mono)] = c
        return Poly(self, terms)

    def random_poly(self, rng: random.Random, degree: int, density: float = 0.5,
                    monic_top: bool = False) -> "Poly":
        F = self.field
        terms = {}
        for mono in monomials_upto(self.nvars, degree):
            if rng.random() < density:
                c = F.random_element(rng)
                if c:
                    terms[mono] = c
        if monic_top or not any(sum(m) == degree for m in terms):
            top = [0] * self.nvars
            top[rng.randrange(self.nvars)] = degree
            terms[tuple(top)] = F.random_nonzero(rng) if not monic_top else 1
        return Poly(self, terms)

    def parse(self, text: str, line: int | None = None) -> "Poly":
        return parse_poly(self, text, line)

    def __repr__(self):
        return f"PolyRing({self.field.describe()}, {list(self.names)})"


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_deg")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._deg = None

    # -- basic data ---------------------------------------------------
    @property
    def degree(self):
        if self._deg is None:
            self._deg = max((sum(m) for m in self.terms), default=NEG_INF)
        return self._deg

    def degree_in(self, i: int):
        return max((m[i] for m in self.terms), default=NEG_INF)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def coeff(self, mono: Sequence[int]) -> int:
        return self.terms.get(tuple(mono), 0)

    def monomials(self, order: MonomialOrder = GREVLEX) -> list[tuple]:
        return sorted(self.terms, key=order.key, reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple:
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = GREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coeff(order)
        return self.scale(self.ring.field.inv(lc))

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "Poly"):
        if other.ring is not self.ring:
            raise MixedRings(f"{other.ring} vs {self.ring}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Elem)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = self.ring._coef(c)
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        F = self.ring.field
        return Poly(self.ring, {m: F.mul(c, v) for m, v in self.terms.items()})

    def mul_monomial(self, mono: Sequence[int], c: int = 1) -> "Poly":
        F = self.ring.field
        out = {}
        for m, v in self.terms.items():
            out[tuple(a + b for a, b in zip(m, mono))] = F.mul(c, v) if c != 1 else v
        return Poly(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, (int, Elem)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero
        F = self.ring.field
        fmul, fadd = F.mul, F.add
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = fadd(out.get(m, 0), fmul(c1, c2))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Elem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Poly":
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, Elem)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation and substitution -----------------------------------
    def evaluate(self, point: Sequence, field: FieldCtx | None = None):
        """Value at ``point``; entries are Elems or integers of ``field``.

        ``field`` may be an extension of the coefficient field built with
        :func:`falldeg.field.extend` (coefficients embed as themselves).
        """
        K, pt = _point_field(self.ring.field, point, field)
        if len(pt) != self.ring.nvars:
            raise ValueError("point has the wrong length")
        acc = 0
        mul, add, pw = K.mul, K.add, K.pow
        for m, c in self.terms.items():
            t = c
            for x, e in zip(pt, m):
                if e:
                    t = mul(t, pw(x, e))
                    if not t:
                        break
            acc = add(acc, t)
        return Elem(K, acc) if isinstance(point[0] if point else None, Elem) else acc

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """f(images[0], ..., images[m-1]); images live in a common ring."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable")
        target = images[0].ring if images else self.ring
        powers: list[dict] = [dict() for _ in images]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                if e == 0:
                    cache[e] = target.one
                elif e - 1 in cache:
                    cache[e] = cache[e - 1] * images[i]
                else:
                    cache[e] = images[i] ** e
            return cache[e]

        acc = target.zero
        lift = _coef_map(self.ring.field, target.field)
        for m, c in self.terms.items():
            t = target.const(lift(c))
            for i, e in enumerate(m):
                if e:
                    t = t * pw(i, e)
            acc = acc + t
        return acc

    def map_coeffs(self, ring: PolyRing, fn) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return Poly(ring, out)

    def to_univariate(self, var: int = 0) -> list[int]:
        """Dense coefficient list in ``x{var}``; raises if other variables occur."""
        top = self.degree_in(var)
        if top == NEG_INF:
            return []
        out = [0] * (top + 1)
        for m, c in self.terms.items():
            if any(e for i, e in enumerate(m) if i != var):
                raise ValueError("polynomial is not univariate in the requested variable")
            out[m[var]] = c
        return out

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


def _coef_map(src: FieldCtx, dst: FieldCtx):
    if src is dst:
        return lambda c: c
    if _is_layer(src, dst):
        return lambda c: c
    raise MixedFields(f"cannot map coefficients from {src.describe()} to {dst.describe()}")


def _is_layer(sub: FieldCtx, ext: FieldCtx) -> bool:
    ctx = ext
    while ctx is not None:
        if ctx is sub:
            return True
        ctx = ctx.base
    return False


def _point_field(F: FieldCtx, point, field):
    if point and isinstance(point[0], Elem):
        K = point[0].ctx
        if any(x.ctx is not K for x in point):
            raise MixedFields("point coordinates from different fields")
        pt = [x.value for x in point]
    else:
        K = field if field is not None else F
        pt = [int(x) for x in point]
    if K is not F and not _is_layer(F, K):
        raise MixedFields(f"cannot evaluate {F.describe()} polynomial over {K.describe()}")
    return K, pt


def evaluate(f: Poly, point: Sequence, field: FieldCtx | None = None):
    return f.evaluate(point, field)


def poly_arith(op: str, f: Poly, g) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def reduce_exponent(e: int, q: int) -> int:
    """Exponent of X^e mod X^q - X."""
    if e == 0:
        return 0
    return (e - 1) % (q - 1) + 1


def reduce_mod_field_equations(f: Poly, q: int) -> Poly:
    """Normal form of f modulo {x_i^q - x_i}."""
    F = f.ring.field
    out: dict = {}
    for m, c in f.terms.items():
        r = tuple(reduce_exponent(e, q) for e in m)
        v = F.add(out.get(r, 0), c)
        if v:
            out[r] = v
        else:
            out.pop(r, None)
    return Poly(f.ring, out)


def field_equations(ring: PolyRing, q: int, variables: Iterable[int] | None = None) -> list[Poly]:
    """x_i^q - x_i for the requested variables (default: all)."""
    F = ring.field
    out = []
    for i in (range(ring.nvars) if variables is None else variables):
        e = [0] * ring.nvars
        e[i] = q
        lin = [0] * ring.nvars
        lin[i] = 1
        out.append(Poly(ring, {tuple(e): 1, tuple(lin): F.neg(1)}))
    return out


def system_degree(polys: Iterable[Poly]):
    return max((f.degree for f in polys), default=NEG_INF)


# ---------------------------------------------------------------------------
# affine maps

@dataclass(frozen=True)
class AffineMap:
    """x -> M x + b on k^m; acts on polynomials by substitution x_i -> (Mx + b)_i."""

    field: FieldCtx
    matrix: tuple
    translation: tuple

    def __post_init__(self):
        M = [list(r) for r in self.matrix]
        m = len(M)
        if any(len(r) != m for r in M) or len(self.translation) != m:
            raise ValueError("matrix must be square and match the translation")
        if m and _det_rank(self.field, M) != m:
            raise SingularMatrix("affine map matrix is not invertible")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in M))
        object.__setattr__(self, "translation", tuple(self.translation))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, field: FieldCtx, m: int) -> "AffineMap":
        return cls(field, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)), (0,) * m)

    @classmethod
    def random(cls, field: FieldCtx, m: int, rng: random.Random, translate: bool = True) -> "AffineMap":
        while True:
            M = [[field.random_element(rng) for _ in range(m)] for _ in range(m)]
            if _det_rank(field, M) == m:
                b = [field.random_element(rng) if translate else 0 for _ in range(m)]
                return cls(field, tuple(map(tuple, M)), tuple(b))

    def __call__(self, point: Sequence[int]) -> tuple:
        F = self.field
        out = []
        for row, b in zip(self.matrix, self.translation):
            acc = b
            for a, x in zip(row, point):
                if a and x:
                    acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return tuple(out)

    def inverse(self) -> "AffineMap":
        F = self.field
        Minv = _invert(F, [list(r) for r in self.matrix])
        tmp = AffineMap(F, tuple(map(tuple, Minv)), (0,) * self.dim)
        nb = tmp(self.translation)
        return AffineMap(F, tuple(map(tuple, Minv)), tuple(F.neg(v) for v in nb))

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        """Product with act(A * B, f) == act(A, act(B, f)); on points, A then B."""
        F = self.field
        m = self.dim
        MA, MB = self.matrix, other.matrix
        M = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                acc = 0
                for t in range(m):
                    acc = F.add(acc, F.mul(MB[i][t], MA[t][j]))
                M[i][j] = acc
        b = other(self.translation)
        return AffineMap(F, tuple(map(tuple, M)), b)

    def linear_images(self, ring: PolyRing) -> list[Poly]:
        out = []
        for row, b in zip(self.matrix, self.translation):
            terms = {}
            for j, a in enumerate(row):
                if a:
                    e = [0] * ring.nvars
                    e[j] = 1
                    terms[tuple(e)] = a
            if b:
                terms[(0,) * ring.nvars] = b
            out.append(Poly(ring, terms))
        return out


def act_affine(A: AffineMap, f: Poly) -> Poly:
    if A.dim != f.ring.nvars:
        raise ValueError("affine map dimension does not match the ring")
    if A.field is not f.ring.field:
        raise MixedFields("affine map over another field")
    return f.substitute(A.linear_images(f.ring))


# ---------------------------------------------------------------------------
# systems

@dataclass
class PolySystem:
    """A finite list of polynomials with ring metadata."""

    ring: PolyRing
    polys: list = dc_field(default_factory=list)
    field_equations: bool = False
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for f in self.polys:
            if f.ring is not self.ring:
                raise MixedRings("system polynomial from another ring")

    @property
    def field(self) -> FieldCtx:
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def degree(self):
        return system_degree(self.polys)

    def nonzero(self) -> list[Poly]:
        return [f for f in self.polys if f.terms]

    def with_polys(self, polys, **kw) -> "PolySystem":
        return PolySystem(self.ring, list(polys), kw.get("field_equations", self.field_equations),
                          dict(self.meta))

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def apply_affine_system(A: AffineMap, F: PolySystem) -> PolySystem:
    return F.with_polys([act_affine(A, f) for f in F.polys])


# ---------------------------------------------------------------------------
# text grammar

def format_coeff(F: FieldCtx, c: int) -> str:
    return F.format(c)


def format_monomial(ring: PolyRing, mono: tuple) -> str:
    parts = []
    for name, e in zip(ring.names, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Poly, order: MonomialOrder = GREVLEX) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for m in f.monomials(order):
        c = f.terms[m]
        mono = format_monomial(f.ring, m)
        if not mono:
            out.append(format_coeff(F, c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{format_coeff(F, c)}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<list>\[[\d\s,]*\])|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<num>\d+)"
    r"|(?P<op>[\^*+\-()])"
)


def _tokenize(text: str, line):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append((kind, m.group(), pos + 1))
        pos = m.end()
    return toks


def parse_poly(ring: PolyRing, text: str, line: int | None = None) -> Poly:
    """Parse the shared grammar, e.g. ``x0^2*x1 + [1,1]*x1 + 1``."""
    F = ring.field
    toks = _tokenize(text, line)
    if not toks:
        raise ParseError("empty polynomial", line, 1)
    acc = ring.zero
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            i += 1
            expect_term = True
            continue
        if not expect_term:
            raise ParseError(f"expected '+' or '-' before {val!r}", line, col)
        term = ring.one
        saw = False
        while i < len(toks):
            kind, val, col = toks[i]
            if kind == "op" and val == "*":
                if not saw:
                    raise ParseError("unexpected '*'", line, col)
                i += 1
                if i >= len(toks) or toks[i][0] not in ("num", "list", "var"):
                    raise ParseError("dangling '*'", line, col)
                continue
            if kind == "num":
                factor = ring.const(F.from_int(int(val)) if F.degree == 1 else F.from_int(int(val)))
            elif kind == "list":
                inner = val[1:-1].strip()
                coords = [int(x) for x in inner.split(",")] if inner else []
                if len(coords) > F.degree or any(c >= F.p for c in coords):
                    raise ParseError(f"bad field literal {val}", line, col)
                factor = ring.const(F.from_coords(coords))
            elif kind == "var":
                if val not in ring.index:
                    raise ParseError(f"unknown variable {val!r}", line, col)
                factor = ring.var(ring.index[val])
            else:
                break
            i += 1
            if i < len(toks) and toks[i][1] == "^":
                if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                    raise ParseError("expected exponent after '^'", line, toks[i][2])
                factor = factor ** int(toks[i + 1][1])
                i += 2
            term = term * factor
            saw = True
        if not saw:
            raise ParseError(f"unexpected token {toks[i][1]!r}", line, toks[i][2])
        acc = acc + term if sign > 0 else acc - term
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("dangling sign", line, toks[-1][2])
    return acc
