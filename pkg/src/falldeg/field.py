"""Finite fields GF(p^a) and explicit towers GF(q^n)/GF(q).

Elements are plain integers: the base-p digits of an integer are its
coordinates in the tower's polynomial basis, lowest first.  A layer of the
tower with base B and degree d stores ``sum(c_j * |B|**j)`` where the c_j are
encodings of B; so elements of every lower layer are exactly the integers
below that layer's cardinality.  Multiplication uses log/antilog tables,
addition uses XOR (p = 2), plain modular arithmetic (prime fields) or Zech
logarithms (everything else).
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import univariate as up
from .caps import FIELD_CAP
from .errors import (
    CapExceeded,
    DivisionByZero,
    FallDegError,
    InvalidSubfield,
    MixedFields,
    NonPrimeCharacteristic,
    NotABasis,
    ParseError,
    ReducibleModulus,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(n: int) -> tuple[int, int]:
    """n = p^a -> (p, a); raises for non prime powers."""
    if n < 2:
        raise NonPrimeCharacteristic(f"{n} is not a prime power")
    p = prime_factors(n)[0]
    a = 0
    m = n
    while m % p == 0:
        m //= p
        a += 1
    if m != 1:
        raise NonPrimeCharacteristic(f"{n} is not a prime power")
    return p, a


class FieldCtx:
    """An immutable finite field; build with :func:`make_field`."""

    def __init__(self, p: int, degrees: tuple[int, ...], moduli: tuple[tuple[int, ...], ...],
                 base: "FieldCtx | None"):
        self.p = p
        self.degrees = degrees
        self.moduli = moduli
        self.base = base
        self.degree = 1
        for d in degrees:
            self.degree *= d
        self.order = p ** self.degree
        self._build_tables()

    # -- construction -------------------------------------------------
    def _layer_mul(self, a: int, b: int) -> int:
        B = self.base
        d = self.degrees[-1]
        mod = self.moduli[-1]
        fa = _digits(a, B.order, d)
        fb = _digits(b, B.order, d)
        prod = up.rem(B, up.mul(B, fa, fb), list(mod))
        return _undigits(prod, B.order)

    def _layer_mul_linear(self, a: int, c0: int, c1: int) -> int:
        # a * (c1 X + c0) in the top layer, O(d) base operations
        B = self.base
        d = self.degrees[-1]
        mod = self.moduli[-1]
        fa = _digits(a, B.order, d) + [0]
        shifted = [0] + fa[:-1]
        out = [B.add(B.mul(c1, shifted[i]), B.mul(c0, fa[i])) for i in range(d + 1)]
        top = out[d]
        if top:
            for i in range(d):
                out[i] = B.sub(out[i], B.mul(top, mod[i]))
        return _undigits(out[:d], B.order)

    def _build_tables(self):
        Q = self.order
        if Q > FIELD_CAP:
            raise CapExceeded(f"field of size {Q} exceeds cap {FIELD_CAP}")
        p = self.p
        n1 = Q - 1
        if self.base is None:
            mul1 = lambda a, b: a * b % p  # noqa: E731
            cands = [(g, lambda a, g=g: a * g % p) for g in range(1, p)]
        else:
            B = self.base
            mul1 = self._layer_mul
            cands = []
            for c1 in range(1, B.order):
                for c0 in range(B.order):
                    g = c0 + c1 * B.order
                    cands.append((g, lambda a, c0=c0, c1=c1: self._layer_mul_linear(a, c0, c1)))
        gen = None
        step = None
        pf = prime_factors(n1) if n1 > 1 else []
        for g, st in cands:
            if _is_primitive(mul1, g, n1, pf):
                gen, step = g, st
                break
        if gen is None:
            for g in range(2, Q):
                if _is_primitive(mul1, g, n1, pf):
                    gen, step = g, (lambda a, g=g: mul1(a, g))
                    break
        self.generator = gen
        exp = [0] * (2 * n1 + 1)
        log = [-1] * Q
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = step(x)
        for i in range(n1, len(exp)):
            exp[i] = exp[i - n1]
        self._exp = exp
        self._log = log
        self._inv = [0] + [exp[(n1 - log[x]) % n1] for x in range(1, Q)]
        if p == 2:
            self._neg = None
        else:
            half = n1 // 2
            self._neg = [0] + [exp[log[x] + half] for x in range(1, Q)]
        self._zech = None
        if p != 2 and self.degree > 1:
            zech = [-1] * n1
            for i in range(n1):
                y = _add_one(exp[i], p)
                zech[i] = log[y] if y else -1
            self._zech = zech
        self._np_exp = np.array(exp, dtype=np.int64)
        self._np_log = np.array(log, dtype=np.int64)
        self._np_zech = np.array(self._zech, dtype=np.int64) if self._zech is not None else None
        self._np_neg = np.array(self._neg, dtype=np.int64) if self._neg is not None else None

    # -- scalar arithmetic on integer encodings -------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a - b) % self.p
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self._exp[self._log[a] + self.order - 1 - self._log[b]]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n (prime subfield element)."""
        return n % self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.order)

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    # -- vectorised arithmetic (numpy int64 arrays) ----------------------
    def vmul(self, a: np.ndarray, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self._np_log[a]
        lb = self._np_log[b]
        out = self._np_exp[np.where((la < 0) | (lb < 0), 0, la + lb)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a: np.ndarray, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.p
        a, b = np.broadcast_arrays(a, b)
        la = self._np_log[a]
        lb = self._np_log[b]
        n1 = self.order - 1
        z = self._np_zech[np.mod(lb - la, n1)]
        res = np.where(z < 0, 0, self._np_exp[np.where(z < 0, 0, la + z)])
        res = np.where(a == 0, b, np.where(b == 0, a, res))
        return res

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        la = self._np_log[a]
        out = self._np_exp[np.mod(la * e, self.order - 1)]
        return np.where(a == 0, 0, out)

    # -- structure -----------------------------------------------------
    def frobenius(self, x: int, j: int, q: int) -> int:
        """x^(q^j) for a subfield cardinality q."""
        self._check_subfield(q)
        if x == 0:
            return 0
        n1 = self.order - 1
        return self._exp[(self._log[x] * pow(q, j, n1)) % n1] if n1 > 1 else x

    def _check_subfield(self, q: int):
        p, b = _safe_prime_power(q)
        if p != self.p or self.degree % b != 0:
            raise InvalidSubfield(f"GF({q}) is not a subfield of GF({self.order})")
        return b

    def in_subfield(self, x: int, q: int) -> bool:
        self._check_subfield(q)
        return self.pow(x, q) == x

    def subfield_elements(self, q: int) -> list[int]:
        self._check_subfield(q)
        return [x for x in range(self.order) if self.pow(x, q) == x]

    def layer_orders(self) -> list[int]:
        out = [self.p]
        c = self.p
        for d in self.degrees:
            c = c ** d
            out.append(c)
        return out

    def subfield(self, q: int) -> "Embedding":
        """Subfield of cardinality q as its own context plus the embedding."""
        b = self._check_subfield(q)
        ctx = self
        while ctx is not None:
            if ctx.order == q:
                return Embedding(ctx, self, None)
            ctx = ctx.base
        sub = make_field(self.p, [b])
        # image of the generator: a root in self of sub's defining polynomial
        mod = list(sub.moduli[-1])
        lifted = [c for c in mod]  # prime-field coefficients embed as themselves
        root = None
        for x in range(self.order):
            if up.evaluate(self, lifted, x) == 0:
                root = x
                break
        table = [0] * sub.order
        for y in range(sub.order):
            digits = _digits(y, self.p, b)
            table[y] = up.evaluate(self, up.trim(digits), root)
        return Embedding(sub, self, table)

    def coords(self, x: int) -> list[int]:
        return _digits(x, self.p, self.degree)

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        return _undigits([c % self.p for c in coords], self.p)

    def format(self, x: int) -> str:
        if self.degree == 1:
            return str(x)
        return "[" + ",".join(str(c) for c in self.coords(x)) + "]"

    def __call__(self, value) -> "Elem":
        """Element from coordinates (list) or from an integer encoding."""
        if isinstance(value, Elem):
            if value.ctx is not self:
                raise MixedFields("element of another field")
            return value
        if isinstance(value, (list, tuple)):
            return Elem(self, self.from_coords(value))
        value = int(value)
        if not 0 <= value < self.order:
            value = self.from_int(value)
        return Elem(self, value)

    def elem(self, x: int) -> "Elem":
        return Elem(self, x)

    @property
    def key(self):
        return (self.p, self.degrees, self.moduli)

    def describe(self) -> str:
        if not self.degrees:
            return f"GF({self.p})"
        if len(self.degrees) == 1:
            return f"GF({self.p}^{self.degree})"
        return f"GF({self.base.order}^{self.degrees[-1]})/GF({self.base.order})"

    def __repr__(self):
        return f"FieldCtx({self.describe()}, moduli={[list(m) for m in self.moduli]})"


def _safe_prime_power(q):
    try:
        return prime_power(q)
    except NonPrimeCharacteristic as exc:
        raise InvalidSubfield(str(exc)) from None


def _digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(x % base)
        x //= base
    return out


def _undigits(ds: Sequence[int], base: int) -> int:
    x = 0
    for c in reversed(ds):
        x = x * base + c
    return x


def _add_one(x: int, p: int) -> int:
    low = x % p
    return x - low + (low + 1) % p


def _is_primitive(mul, g, n1, pf):
    if g == 0:
        return False
    if n1 == 1:
        return g == 1

    def power(a, e):
        r = 1
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    if power(g, n1) != 1:
        return False
    return all(power(g, n1 // r) != 1 for r in pf)


class Elem:
    """A field element value: owning context plus integer encoding."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, Elem):
            if other.ctx is not self.ctx:
                raise MixedFields(f"{other.ctx.describe()} vs {self.ctx.describe()}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return Elem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Elem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Elem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Elem(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Elem(self.ctx, self.ctx.div(self._other(other), self.value))

    def __neg__(self):
        return Elem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return Elem(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other) and (self.ctx.degree > 1 or 0 <= other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coords(self) -> list[int]:
        return self.ctx.coords(self.value)

    def __repr__(self):
        return self.ctx.format(self.value)


class Embedding:
    """A subfield context ``sub`` inside ``ext`` with the inclusion map."""

    def __init__(self, sub: FieldCtx, ext: FieldCtx, table: list[int] | None):
        self.sub = sub
        self.ext = ext
        self._table = table
        self._back = None if table is None else {y: x for x, y in enumerate(table)}

    @property
    def identity(self) -> bool:
        return self._table is None

    def to_ext(self, x: int) -> int:
        return x if self._table is None else self._table[x]

    def from_ext(self, y: int) -> int:
        if self._table is None:
            if y >= self.sub.order:
                raise InvalidSubfield(f"{self.ext.format(y)} is not in GF({self.sub.order})")
            return y
        try:
            return self._back[y]
        except KeyError:
            raise InvalidSubfield(f"{self.ext.format(y)} is not in GF({self.sub.order})") from None


# ---------------------------------------------------------------------------
# construction

def _default_modulus(B: FieldCtx, d: int) -> tuple[int, ...]:
    # smallest monic irreducible, coefficients enumerated low-to-high as a counter
    for code in range(B.order ** d):
        coeffs = _digits(code, B.order, d) + [1]
        if coeffs[0] == 0:
            continue
        if up.is_irreducible(B, coeffs):
            return tuple(coeffs)
    raise FallDegError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def _make_field(p: int, degrees: tuple[int, ...], moduli: tuple):
    if not degrees:
        return _intern(p, (), (), None)
    base = _make_field(p, degrees[:-1], moduli[:-1])
    d = degrees[-1]
    mod = moduli[-1]
    size = base.order ** d
    if size > FIELD_CAP:
        raise CapExceeded(f"field of size {size} exceeds cap {FIELD_CAP}")
    if mod is None:
        mod = _default_modulus(base, d)
    else:
        if len(mod) != d + 1 or mod[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {d}")
        if any(not (0 <= c < base.order) for c in mod):
            raise ReducibleModulus("modulus coefficients outside the base field")
        if not up.is_irreducible(base, list(mod)):
            raise ReducibleModulus(f"modulus {list(mod)} is reducible over GF({base.order})")
    resolved = tuple(base.moduli) + (tuple(mod),)
    return _intern(p, tuple(degrees), resolved, base)


_INTERNED: dict = {}


def _intern(p, degrees, moduli, base):
    key = (p, degrees, moduli)
    if key not in _INTERNED:
        _INTERNED[key] = FieldCtx(p, degrees, moduli, base)
    return _INTERNED[key]


def make_field(p: int, degrees: Iterable[int] = (1,), moduli=None) -> FieldCtx:
    """GF(p^(d_1 d_2 ...)) as an explicit tower.

    ``moduli`` optionally gives one monic polynomial per degree, each as a
    low-to-high coefficient list over the layer below (or a string such as
    ``"x^2+x+1"`` for a layer over the prime field).  Degrees equal to 1 add
    no layer.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    degrees = list(degrees)
    if any(d < 1 for d in degrees):
        raise ValueError("extension degrees must be >= 1")
    if moduli is None:
        moduli = [None] * len(degrees)
    moduli = list(moduli)
    if len(moduli) != len(degrees):
        raise ValueError("one modulus per degree")
    layers = []
    for d, m in zip(degrees, moduli):
        if d == 1:
            continue
        if isinstance(m, str):
            m = tuple(parse_univariate(m, p))
        elif m is not None:
            m = tuple(int(c) for c in m)
        layers.append((d, m))
    degs = tuple(d for d, _ in layers)
    if not degs:
        return _intern(p, (), (), None)
    # resolve layer by layer so that the tower base is shared
    base = _intern(p, (), (), None)
    resolved = []
    for i, (d, m) in enumerate(layers):
        base = _make_field(p, degs[: i + 1], tuple(resolved) + (m,))
        resolved = list(base.moduli)
    return base


def extend(F: FieldCtx, d: int) -> FieldCtx:
    """Degree-d extension of F whose lower layers are F's (identity embedding)."""
    if d == 1:
        return F
    return make_field(F.p, list(F.degrees) + [d], list(F.moduli) + [None])


def make_extension(q: int, n: int) -> FieldCtx:
    """GF(q^n) built as an explicit layer over GF(q)."""
    p, a = prime_power(q)
    return make_field(p, [a, n])


# ---------------------------------------------------------------------------
# operations

def arith(op: str, a: Elem, b) -> Elem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if isinstance(b, Elem) and b.ctx is not a.ctx:
            raise MixedFields("operands from different fields")
        return a / b
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError("exponent must be an integer")
        return a ** b
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: Elem, j: int, q: int) -> Elem:
    return Elem(x.ctx, x.ctx.frobenius(x.value, j, q))


def _det_rank(F: FieldCtx, rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = F.inv(m[rank][col])
        m[rank] = [F.mul(inv, v) for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(m[r], m[rank])]
        rank += 1
    return rank


def moore_matrix(F: FieldCtx, elems: Sequence[int], q: int) -> list[list[int]]:
    """Rows l: (e_j^(q^l))_j."""
    n = len(elems)
    return [[F.frobenius(e, l, q) for e in elems] for l in range(n)]


def is_subfield_basis(F: FieldCtx, elems: Sequence[int], q: int) -> bool:
    """Linear independence over GF(q) via the Moore determinant."""
    b = F._check_subfield(q)
    n = F.degree // b
    if len(elems) != n:
        return False
    return _det_rank(F, moore_matrix(F, elems, q)) == n


def find_normal_basis(ext: FieldCtx, q: int) -> Elem:
    """Smallest theta (in encoding order) with {theta^(q^j)} a basis over GF(q)."""
    b = ext._check_subfield(q)
    n = ext.degree // b
    if n == 1:
        return Elem(ext, 1)
    for theta in range(1, ext.order):
        conj = [ext.frobenius(theta, j, q) for j in range(n)]
        if is_subfield_basis(ext, conj, q):
            return Elem(ext, theta)
    raise FallDegError("no normal basis found")  # pragma: no cover


def normal_basis(ext: FieldCtx, q: int) -> list[int]:
    theta = find_normal_basis(ext, q).value
    n = ext.degree // ext._check_subfield(q)
    return [ext.frobenius(theta, j, q) for j in range(n)]


def _solve(F: FieldCtx, A: list[list[int]], y: list[int]) -> list[int]:
    n = len(A)
    m = [list(A[i]) + [y[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise NotABasis("basis is rank deficient")
        m[col], m[piv] = m[piv], m[col]
        inv = F.inv(m[col][col])
        m[col] = [F.mul(inv, v) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _solve_coords(F: FieldCtx, x: int, basis: Sequence[int], q: int) -> list[int]:
    # x = sum c_j basis_j with c_j in GF(q): apply Frobenius powers, solve the Moore system
    n = len(basis)
    A = moore_matrix(F, basis, q)
    y = [F.frobenius(x, l, q) for l in range(n)]
    return _solve(F, A, y)


class CoordinateMap:
    """Coordinates of GF(q^n) over its subfield GF(q) w.r.t. a fixed basis."""

    def __init__(self, ext: FieldCtx, basis: Sequence[int], q: int):
        b = ext._check_subfield(q)
        n = ext.degree // b
        if len(basis) != n:
            raise NotABasis(f"need {n} basis elements, got {len(basis)}")
        self.ext = ext
        self.q = q
        self.n = n
        self.basis = [int(a.value) if isinstance(a, Elem) else int(a) for a in basis]
        self.embedding = ext.subfield(q)
        A = moore_matrix(ext, self.basis, q)
        if _det_rank(ext, A) != n:
            raise NotABasis("basis is rank deficient")
        self._inv = _invert(ext, A)
        self._cache: dict[int, tuple[int, ...]] = {}

    def to_coords(self, x: int) -> tuple[int, ...]:
        """Subfield coordinates (as ``embedding.sub`` integers)."""
        c = self._cache.get(x)
        if c is not None:
            return c
        F = self.ext
        y = [F.frobenius(x, l, self.q) for l in range(self.n)]
        out = []
        for row in self._inv:
            acc = 0
            for a, b in zip(row, y):
                acc = F.add(acc, F.mul(a, b))
            out.append(self.embedding.from_ext(acc))
        c = tuple(out)
        self._cache[x] = c
        return c

    def from_coords(self, coords: Sequence[int]) -> int:
        F = self.ext
        acc = 0
        for c, a in zip(coords, self.basis):
            acc = F.add(acc, F.mul(self.embedding.to_ext(c), a))
        return acc


def _invert(F: FieldCtx, A: list[list[int]]) -> list[list[int]]:
    n = len(A)
    m = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise NotABasis("singular")
        m[col], m[piv] = m[piv], m[col]
        inv = F.inv(m[col][col])
        m[col] = [F.mul(inv, v) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(m[r], m[col])]
    return [row[n:] for row in m]


def to_subfield_coords(x: Elem, basis: Sequence, q: int) -> list[Elem]:
    cm = CoordinateMap(x.ctx, basis, q)
    sub = cm.embedding.sub
    return [Elem(sub, c) for c in cm.to_coords(x.value)]


def from_subfield_coords(coords: Sequence, basis: Sequence, q: int, ext: FieldCtx | None = None) -> Elem:
    if ext is None:
        ext = basis[0].ctx
    cm = CoordinateMap(ext, basis, q)
    vals = [c.value if isinstance(c, Elem) else int(c) for c in coords]
    return Elem(ext, cm.from_coords(vals))


# ---------------------------------------------------------------------------
# literals

_GF_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)\s*(?:/\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*\))?"
                    r"\s*(?:mod\s*=\s*(.+))?$")


def parse_univariate(text: str, p: int) -> list[int]:
    """Parse ``x^2+x+1`` (prime-field coefficients) into a low-to-high list."""
    s = text.replace(" ", "").replace("X", "x")
    if not s:
        raise ParseError("empty polynomial")
    terms = re.findall(r"([+-]?)([^+-]+)", s)
    if "".join(sign + body for sign, body in terms) != s:
        raise ParseError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for sign, body in terms:
        m = re.fullmatch(r"(?:(\d+)\*?)?(x(?:\^(\d+))?)?", body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"bad term {body!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        e = 0 if m.group(2) is None else int(m.group(3) or 1)
        if sign == "-":
            c = -c
        coeffs[e] = (coeffs.get(e, 0) + c) % p
    top = max(coeffs)
    return [coeffs.get(i, 0) for i in range(top + 1)]


def parse_field(text: str) -> FieldCtx:
    """``GF(p^a)``, ``GF(8)``, ``GF(p^a) mod=<poly>`` or ``GF(q^n)/GF(q)``."""
    m = _GF_RE.match(text)
    if not m:
        raise ParseError(f"bad field literal {text!r}")
    b1, e1, b2, e2, mod = m.groups()
    top = int(b1) ** int(e1 or 1)
    if b2 is not None:
        sub = int(b2) ** int(e2 or 1)
        p, a = prime_power(sub)
        p2, a2 = prime_power(top)
        if p2 != p or a2 % a:
            raise ParseError(f"GF({sub}) is not a subfield of GF({top})")
        if mod is not None:
            raise ParseError("mod= is only supported for single extensions")
        return make_field(p, [a, a2 // a])
    p, a = prime_power(top)
    if mod is not None:
        return make_field(p, [a], [mod.strip()])
    return make_field(p, [a])


def field_literal(F: FieldCtx) -> str:
    if not F.degrees:
        return f"GF({F.p})"
    if len(F.degrees) == 1:
        mod = "+".join(_term(c, i) for i, c in reversed(list(enumerate(F.moduli[0]))) if c)
        return f"GF({F.p}^{F.degree}) mod={mod}"
    if len(F.degrees) == 2 and F.moduli[1] == _default_modulus(F.base, F.degrees[1]) \
            and (len(F.base.degrees) == 0 or F.base.moduli[0] == _default_modulus(F.base.base, F.base.degrees[0])):
        return f"GF({F.base.order}^{F.degrees[-1]})/GF({F.base.order})"
    raise FallDegError("towers with custom moduli have no literal form")


def _term(c, i):
    cs = "" if (c == 1 and i > 0) else str(c)
    if i == 0:
        return str(c)
    if i == 1:
        return f"{cs}{'*' if cs else ''}x"
    return f"{cs}{'*' if cs else ''}x^{i}"


def parse_element(F: FieldCtx, text: str) -> int:
    """Inverse of :meth:`FieldCtx.format`: ``"3"`` or ``"[1,0,1]"``."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"bad element literal {text!r}")
        inner = s[1:-1].strip()
        coords = [int(c) for c in inner.split(",")] if inner else []
        if len(coords) > F.degree or any(not 0 <= c < F.p for c in coords):
            raise ParseError(f"bad element literal {text!r}")
        return F.from_coords(coords)
    try:
        return F.from_int(int(s))
    except ValueError as exc:
        raise ParseError(f"bad element literal {text!r}") from exc
