"""Constructible spaces V_{F,i}, degree falls and the last fall degree.

V_{F,i} is the smallest k-subspace of R_{<=i} that contains every generator
of degree <= i and is closed under g -> h*g whenever deg(h*g) <= i.  It is
built as a fixed point: multiplying by single variables is enough, and only
the part of the space inside R_{<=i-1} can be multiplied.

Coefficients in GF(p^a) are written in prime-field coordinates, so every
monomial owns ``a`` consecutive columns and the k-span of a polynomial f is
the GF(p)-span of beta_0*f, ..., beta_{a-1}*f for the power basis beta.
Columns are sorted by a degree-refining order, largest first; the
monomials of degree < i therefore form a suffix of the columns and the
rows of the reduced echelon form whose pivot lies in that suffix span
V_{F,i} intersected with R_{<=i-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

from .caps import get_caps
from .errors import CapExceeded, DegreeTooLarge, OracleInfeasible
from .field import FieldCtx
from .linalg import Echelon
from .poly import GREVLEX, MonomialOrder, Poly, PolyRing, PolySystem, monomials_upto


def _coord_table(F: FieldCtx) -> np.ndarray:
    return _coord_table_cached(F.p, F.degree, F.order)


@lru_cache(maxsize=32)
def _coord_table_cached(p: int, a: int, order: int) -> np.ndarray:
    vals = np.arange(order, dtype=np.int64)
    return (vals[:, None] // (p ** np.arange(a, dtype=np.int64))[None, :]) % p


class MonomialBasis:
    """Column layout for R_{<=degree}: monomial-major, prime-field digit minor."""

    def __init__(self, ring: PolyRing, degree: int, order: MonomialOrder = GREVLEX):
        if not order.degree_refining:
            raise ValueError("constructible spaces need a degree-refining order")
        self.ring = ring
        self.field = ring.field
        self.degree = degree
        self.order = order
        self.a = ring.field.degree
        cap = get_caps().matrix
        count = comb(ring.nvars + degree, degree) if degree >= 0 else 0
        if count * self.a > cap:
            raise CapExceeded(f"{count} monomials x {self.a} coordinates exceeds the matrix cap {cap}")
        self.monos = monomials_upto(ring.nvars, degree, order, cap=cap) if degree >= 0 else []
        self.index = {m: k for k, m in enumerate(self.monos)}
        self.ncols = len(self.monos) * self.a
        self._mult: dict = {}

    def suffix_start(self, c: int) -> int:
        """First column of the block of monomials of degree <= c."""
        if c >= self.degree:
            return 0
        if c < 0:
            return self.ncols
        top = sum(comb(self.ring.nvars + d - 1, d) for d in range(c + 1, self.degree + 1))
        return top * self.a

    def vector(self, f: Poly) -> np.ndarray:
        v = np.zeros(self.ncols, dtype=np.float64)
        if f.degree > self.degree:
            raise DegreeTooLarge(f"degree {f.degree} exceeds {self.degree}")
        table = _coord_table(self.field)
        a = self.a
        for m, c in f.terms.items():
            k = self.index[m] * a
            v[k:k + a] = table[c]
        return v

    def span_rows(self, f: Poly) -> np.ndarray:
        """GF(p) rows spanning the k-line through f."""
        F = self.field
        p = F.p
        rows = []
        for l in range(self.a):
            beta = p ** l
            rows.append(self.vector(f.scale(beta) if beta != 1 else f))
        return np.array(rows) if rows else np.zeros((0, self.ncols))

    def poly(self, vec) -> Poly:
        vec = np.asarray(vec).astype(np.int64)
        a = self.a
        weights = self.field.p ** np.arange(a, dtype=np.int64)
        enc = vec.reshape(-1, a) @ weights
        nz = np.flatnonzero(enc)
        return Poly(self.ring, {self.monos[k]: int(enc[k]) for k in nz})

    def multiplier(self, t: int):
        """(source columns, target columns) of multiplication by x_t on R_{<=degree-1}."""
        if t not in self._mult:
            start = self.suffix_start(self.degree - 1)
            src, dst = [], []
            a = self.a
            for k in range(start // a, len(self.monos)):
                m = self.monos[k]
                mm = list(m)
                mm[t] += 1
                j = self.index[tuple(mm)]
                for l in range(a):
                    src.append(k * a + l)
                    dst.append(j * a + l)
            self._mult[t] = (np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64))
        return self._mult[t]


@dataclass
class EchelonSpace:
    """V_{F,i} in reduced echelon form over the prime field."""

    degree: int
    basis: MonomialBasis
    echelon: Echelon
    log: list = dc_field(default_factory=list)

    @property
    def ring(self) -> PolyRing:
        return self.basis.ring

    @property
    def dim(self) -> int:
        """Dimension over the coefficient field k."""
        return self.echelon.rank // self.basis.a

    def dim_upto(self, c: int) -> int:
        """dim_k of V intersected with R_{<=c}."""
        return self.echelon.count_from(self.basis.suffix_start(c)) // self.basis.a

    def contains(self, g: Poly) -> bool:
        if g.degree > self.degree:
            raise DegreeTooLarge(f"deg {g.degree} > {self.degree}")
        if not g.terms:
            return True
        return bool(self.echelon.contains(self.basis.vector(g))[0])

    def contains_all(self, polys: Iterable[Poly]) -> bool:
        polys = [g for g in polys if g.terms]
        if not polys:
            return True
        if any(g.degree > self.degree for g in polys):
            raise DegreeTooLarge("polynomial degree exceeds the space degree")
        vecs = np.array([self.basis.vector(g) for g in polys])
        return bool(self.echelon.contains(vecs).all())

    def basis_polys(self) -> list[Poly]:
        """Prime-field echelon rows read back as polynomials (a GF(p)-basis)."""
        return [self.basis.poly(r) for r in self.echelon.rows]

    def low_polys(self, c: int) -> list[Poly]:
        """A GF(p)-spanning set of V intersected with R_{<=c}."""
        return [self.basis.poly(r) for r in self.echelon.rows_from(self.basis.suffix_start(c))]

    def reduce(self, g: Poly) -> Poly:
        return self.basis.poly(self.echelon.reduce(self.basis.vector(g))[0])

    def same_space(self, other: "EchelonSpace") -> bool:
        return (self.degree == other.degree and self.echelon.rank == other.echelon.rank
                and self.contains_all(other.basis_polys()))


def _nonzero(F) -> list[Poly]:
    polys = F.polys if isinstance(F, PolySystem) else list(F)
    return [f for f in polys if f.terms]


def _ring_of(F) -> PolyRing:
    if isinstance(F, PolySystem):
        return F.ring
    polys = list(F)
    if not polys:
        raise ValueError("cannot infer the ring of an empty list; pass a PolySystem")
    return polys[0].ring


def build_V(F, i: int, order: MonomialOrder = GREVLEX, start: EchelonSpace | None = None) -> EchelonSpace:
    """Row-echelon basis of V_{F,i}.

    ``start`` may be V_{F,i-1} (same order), which lies inside V_{F,i} and
    saves the work of rediscovering it.
    """
    if i < 0:
        raise ValueError("degree must be nonnegative")
    ring = _ring_of(F)
    basis = MonomialBasis(ring, i, order)
    p = ring.field.p
    E = Echelon(p, basis.ncols)
    log = []
    seeds = [f for f in _nonzero(F) if f.degree <= i]
    rows = [basis.span_rows(f) for f in seeds]
    if start is not None and start.echelon.rank:
        if start.degree != i - 1 or start.basis.order != order:
            raise ValueError("start space must be V_{F,i-1} for the same order")
        lifted = np.zeros((start.echelon.rank, basis.ncols))
        lifted[:, basis.suffix_start(i - 1):] = start.echelon.rows
        rows.append(lifted)
    if rows:
        E.insert(np.vstack(rows))
    log.append({"round": 0, "inserted": int(sum(r.shape[0] for r in rows)), "rank": E.rank})

    low = basis.suffix_start(i - 1)
    if i == 0 or low >= basis.ncols:
        return EchelonSpace(i, basis, E, log)
    done = Echelon(p, basis.ncols - low)
    rnd = 0
    while True:
        L = E.rows_from(low)[:, low:]
        if L.shape[0] == 0:
            break
        R = done.reduce(L)
        R = R[R.any(axis=1)]
        if R.shape[0] == 0:
            break
        done.insert(R)
        rnd += 1
        products = []
        for t in range(ring.nvars):
            src, dst = basis.multiplier(t)
            P = np.zeros((R.shape[0], basis.ncols))
            P[:, dst] = R[:, src - low]
            products.append(P)
        new = E.insert(np.vstack(products))
        log.append({"round": rnd, "multiplied": int(R.shape[0]), "new": int(new), "rank": E.rank})
    return EchelonSpace(i, basis, E, log)


def contains(V: EchelonSpace, g: Poly) -> bool:
    return V.contains(g)


# ---------------------------------------------------------------------------
# fall reports

@dataclass
class FallReport:
    """Per-degree dimension table plus the degrees c >= 1 where a fall occurs."""

    rows: list = dc_field(default_factory=list)   # {degree, dim, low_dim, fell}
    falls: list = dc_field(default_factory=list)
    horizon: int = 0

    @property
    def first_fall(self):
        return self.falls[0] if self.falls else None

    @property
    def last_fall(self) -> int:
        return self.falls[-1] if self.falls else 0

    def dims(self) -> dict:
        return {r["degree"]: r["dim"] for r in self.rows}

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "degrees": [{"degree": r["degree"], "dim": r["dim"], "fell": r["fell"]} for r in self.rows],
            "falls": list(self.falls),
            "first_fall_degree": self.first_fall,
            "last_fall_degree_within_horizon": self.last_fall,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class FallScanner:
    """Builds V_0, V_1, ... incrementally and records the falls."""

    def __init__(self, F, order: MonomialOrder = GREVLEX):
        self.F = F
        self.order = order
        self.report = FallReport()
        self.current: EchelonSpace | None = None

    def step(self) -> EchelonSpace:
        c = 0 if self.current is None else self.current.degree + 1
        V = build_V(self.F, c, self.order, start=self.current)
        prev_dim = 0 if self.current is None else self.current.dim
        low = V.dim_upto(c - 1) if c > 0 else 0
        fell = c >= 1 and low != prev_dim
        self.report.rows.append({"degree": c, "dim": V.dim, "low_dim": low, "fell": fell})
        if fell:
            self.report.falls.append(c)
        self.report.horizon = c
        self.current = V
        return V


def fall_report(F, horizon: int, order: MonomialOrder = GREVLEX) -> FallReport:
    """Falls of F at degrees 1..horizon; degree 0 is listed but never a fall."""
    scanner = FallScanner(F, order)
    for _ in range(horizon + 1):
        scanner.step()
    return scanner.report


@dataclass
class LastFallResult:
    value: int
    gb_degree: int              # smallest c with the reduced basis inside V_c
    report: FallReport
    groebner: list


def last_fall_info(F, order: MonomialOrder = GREVLEX, max_degree: int | None = None) -> LastFallResult:
    from .oracle import buchberger

    polys = _nonzero(F)
    if not polys:
        return LastFallResult(0, 0, FallReport(), [])
    ring = _ring_of(F)
    system = F if isinstance(F, PolySystem) else PolySystem(ring, polys)
    B = buchberger(system, order).polys
    scanner = FallScanner(system, order)
    top = max(g.degree for g in B)
    limit = max_degree if max_degree is not None else 10 ** 6
    while True:
        try:
            V = scanner.step()
        except CapExceeded as exc:
            raise OracleInfeasible(str(exc)) from exc
        if V.degree >= top and V.contains_all(B):
            break
        if V.degree >= limit:
            raise OracleInfeasible(f"Groebner basis not inside V_c for c <= {limit}")
    c = V.degree
    value = max((x for x in scanner.report.falls if x <= c), default=0)
    return LastFallResult(value, c, scanner.report, B)


def last_fall_degree(F, order: MonomialOrder = GREVLEX) -> int:
    return last_fall_info(F, order).value


def equivalent_mod(V: EchelonSpace, f: Poly, g: Poly) -> bool:
    """f and g agree modulo V (the relation written f ==_i g)."""
    return V.contains(f - g)
