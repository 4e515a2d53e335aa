"""Multi-HFE instances, the last-fall-degree attack and the sweep harness.

A secret system F over GF(q^n) in m variables is descended to GF(q); the
public key is P = T o F' o S, where S is a random invertible affine map of
the mn descended variables and T a random invertible linear map of the mn
polynomials.  A plaintext u in GF(q)^{mn} encrypts to y = P(u), and the
attack solves P - y together with the field equations.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from .descent import DescentMap, DescentSystem, descend_bar, descend_classic, theorem_bound, theorem_bound_m1
from .errors import (BoundExceeded, CapExceeded, FallDegError, InvalidParameters, NoUnivariateFound,
                     OracleInfeasible, ParameterCapExceeded)
from .field import make_extension
from .oracle import buchberger, is_zero_dimensional, quotient_dimension
from .poly import AffineMap, PolyRing, PolySystem, act_affine, field_equations
from .solver import solve_zero_dim

DESK_CAPS = {"q": (2, 3, 4, 5), "n": 12, "m": 2, "D": 6}


def _check_params(q: int, n: int, m: int, D: int):
    if q not in DESK_CAPS["q"]:
        raise ParameterCapExceeded(f"q={q} not in {DESK_CAPS['q']}")
    if not 1 <= n <= DESK_CAPS["n"]:
        raise ParameterCapExceeded(f"n={n} outside 1..{DESK_CAPS['n']}")
    if not 1 <= m <= DESK_CAPS["m"]:
        raise ParameterCapExceeded(f"m={m} outside 1..{DESK_CAPS['m']}")
    if not 1 <= D <= DESK_CAPS["D"]:
        raise ParameterCapExceeded(f"D={D} outside 1..{DESK_CAPS['D']}")


@dataclass
class HfeInstance:
    q: int
    n: int
    m: int
    D: int
    seed: int
    secret: PolySystem          # F - F(x*), vanishing at the planted point x*
    dmap: DescentMap
    S: AffineMap                # on GF(q)^{mn}
    T: list                     # invertible mn x mn matrix over GF(q)
    public: list                # P = T o F' o S, without the ciphertext
    plaintext: tuple            # u in GF(q)^{mn}
    ciphertext: tuple           # y = P(u)
    meta: dict = dc_field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.dmap.target_sub

    def attack_system(self) -> PolySystem:
        """P - y plus x^q - x for every descended variable."""
        R = self.ring
        polys = [p - R.const(y) if y else p for p, y in zip(self.public, self.ciphertext)]
        eqs = field_equations(R, self.q)
        return PolySystem(R, polys + eqs, field_equations=True,
                          meta={"q": self.q, "n": self.n, "m": self.m, "D": self.D, "seed": self.seed})

    def unscrambled(self, with_field_eqs: bool = True) -> DescentSystem:
        """Classic descent of the secret system (with x^{q^n} - x added)."""
        Rk = self.secret.ring
        polys = list(self.secret.polys) + field_equations(Rk, self.q ** self.n)
        return descend_classic(polys, self.dmap, with_field_eqs)

    def secret_point(self) -> tuple:
        """Planted zero of the secret system, over GF(q^n)."""
        z = self.S(self.plaintext)
        n = self.n
        return tuple(self.dmap.coords.from_coords(z[i * n:(i + 1) * n]) for i in range(self.m))

    def summary(self) -> dict:
        K = self.ring.field
        return {"q": self.q, "n": self.n, "m": self.m, "D": self.D, "seed": self.seed,
                "variables": self.m * self.n, "plaintext": [K.format(x) for x in self.plaintext],
                "ciphertext": [K.format(x) for x in self.ciphertext]}


def _random_invertible(F, size: int, rng: random.Random) -> list:
    return AffineMap.random(F, size, rng, translate=False).matrix


def _secret_polys(Rk: PolyRing, m: int, D: int, rng: random.Random) -> list:
    if m == 1:
        return [Rk.random_poly(rng, D, density=1.0)]
    return [Rk.random_poly(rng, D, density=0.7) for _ in range(m)]


def gen_instance(q: int, n: int, m: int, D: int, seed: int = 0) -> HfeInstance:
    """Seeded multi-HFE instance with a planted plaintext."""
    _check_params(q, n, m, D)
    rng = random.Random(f"hfe:{q}:{n}:{m}:{D}:{seed}")
    K = make_extension(q, n)
    dmap = DescentMap(K, q, m, "normal")
    Rk = dmap.source
    Rs = dmap.target_sub
    k1 = Rs.field
    N = m * n
    for _ in range(1000):
        polys = _secret_polys(Rk, m, D, rng)
        if m == 1:
            break
        try:
            B = buchberger(PolySystem(Rk, polys))
        except OracleInfeasible:
            continue
        if not B.is_unit() and is_zero_dimensional(B) and quotient_dimension(B) <= D ** m:
            break
    else:  # pragma: no cover
        raise FallDegError("could not draw a zero-dimensional secret system")
    S = AffineMap.random(k1, N, rng, translate=True)
    T = _random_invertible(k1, N, rng)
    u = tuple(k1.random_element(rng) for _ in range(N))
    # adjust constants so that the lifted point S(u) is a zero of the secret system
    inst = HfeInstance(q, n, m, D, seed, PolySystem(Rk, polys), dmap, S, T, [], u, ())
    x_star = inst.secret_point()
    adjusted = [f - Rk.const(f.evaluate(list(x_star))) for f in polys]
    inst.secret = PolySystem(Rk, adjusted, meta={"planted": list(x_star)})
    descended = descend_classic(adjusted, dmap, with_field_eqs=False).polys
    moved = [act_affine(S, f) for f in descended]
    public = []
    for row in T:
        acc = Rs.zero
        for c, g in zip(row, moved):
            if c:
                acc = acc + g.scale(c)
        public.append(acc)
    # publish a generic ciphertext: P(u) + y with y random, so the key has constants
    y = tuple(k1.random_element(rng) for _ in range(N))
    inst.public = [p + Rs.const(c) if c else p for p, c in zip(public, y)]
    inst.ciphertext = tuple(p.evaluate(list(u)) for p in inst.public)
    if inst.ciphertext != y:  # pragma: no cover - construction self-check
        raise FallDegError("planted plaintext does not encrypt to the ciphertext")
    inst.meta = {"planted": list(x_star)}
    return inst


# ---------------------------------------------------------------------------
# attack

@dataclass
class AttackResult:
    solutions: list
    recovered: bool
    solve_degree: int
    bound: int
    trace: dict
    seconds: float

    def to_json(self) -> dict:
        return asdict(self)


def default_bound(inst: HfeInstance) -> int:
    """Theorem bound for the instance (one-variable form when m = 1)."""
    q, m = inst.q, inst.m
    if m == 1:
        return theorem_bound_m1(inst.D, q)
    from .constructible import last_fall_degree
    B = buchberger(inst.secret)
    s = quotient_dimension(B)
    d_F = last_fall_degree(inst.secret)
    return theorem_bound(m, q, s, d_F, int(inst.secret.degree))


def attack(inst: HfeInstance, bound_hint: int | None = None, seed: int = 0) -> AttackResult:
    """Recover the plaintext by escalating the solver up to the bound."""
    bound = bound_hint if bound_hint is not None else default_bound(inst)
    system = inst.attack_system()
    e = inst.D ** inst.m
    t0 = time.perf_counter()
    try:
        Z, trace = solve_zero_dim(system, e=e, seed=seed, max_degree=bound, check_radical=False)
    except NoUnivariateFound as exc:
        raise BoundExceeded(f"no solution extraction up to the bound {bound}: {exc}") from exc
    dt = time.perf_counter() - t0
    if trace.d > bound:
        raise BoundExceeded(f"solve degree {trace.d} exceeds the bound {bound}")
    return AttackResult([list(p) for p in Z.points], tuple(inst.plaintext) in Z.as_set(),
                        trace.d, bound, trace.to_json(), dt)


# ---------------------------------------------------------------------------
# sweep

SWEEP_FIELDS = ["q", "n", "m", "D", "seed", "variables", "deg_classic", "deg_bar", "observed",
                "method", "bound", "solve_degree", "recovered", "seconds", "error"]


@dataclass
class SweepReport:
    rows: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"fields": SWEEP_FIELDS, "rows": self.rows}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({k: r.get(k, "") for k in SWEEP_FIELDS})
        return buf.getvalue()

    def violations(self) -> list:
        return [r for r in self.rows if r.get("observed") is not None and r.get("bound") is not None
                and r["observed"] > r["bound"]]


def parse_sweep_config(text: str) -> dict:
    """``key = v1, v2, ...`` lines; ``a..b`` expands to a range; ``#`` comments."""
    grid = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise InvalidParameters(f"expected key = values, got {raw!r}")
        vals = []
        for item in val.split(","):
            item = item.strip()
            if not item:
                continue
            if ".." in item:
                lo, hi = item.split("..")
                vals.extend(range(int(lo), int(hi) + 1))
            else:
                vals.append(int(item))
        grid[key.strip()] = vals
    return grid


def cell_seed(master: int, index: int) -> int:
    return int(np.random.SeedSequence([master, index]).generate_state(1)[0])


def _cells(grid: dict):
    keys = ("q", "n", "m", "D")
    if not grid or any(not grid.get(k) for k in keys):
        return []
    reps = grid.get("seeds", [1])[0]
    out = []
    for q in grid["q"]:
        for m in grid["m"]:
            for D in grid["D"]:
                for n in grid["n"]:
                    for r in range(reps):
                        out.append((q, n, m, D, r))
    return out


def run_cell(q: int, n: int, m: int, D: int, seed: int, oracle_vars: int = 6) -> dict:
    row = {"q": q, "n": n, "m": m, "D": D, "seed": seed, "variables": m * n, "error": ""}
    t0 = time.perf_counter()
    try:
        inst = gen_instance(q, n, m, D, seed)
        classic = inst.unscrambled()
        row["deg_classic"] = int(classic.degree)
        row["deg_bar"] = int(max((descend_bar(f, inst.dmap).degree for f in inst.secret.polys if f.terms),
                                 default=0))
        row["bound"] = default_bound(inst)
        res = attack(inst, row["bound"], seed)
        row["solve_degree"] = res.solve_degree
        row["recovered"] = res.recovered
        row["observed"], row["method"] = res.solve_degree, "solver"
        if m * n <= oracle_vars:
            from .constructible import last_fall_info
            try:
                info = last_fall_info(classic.system(), max_degree=row["bound"] + 4)
                row["observed"], row["method"] = info.value, "oracle"
            except (OracleInfeasible, CapExceeded):
                pass
    except FallDegError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def sweep(grid: dict, seed: int = 0, workers: int = 1, oracle_vars: int = 6) -> SweepReport:
    """Run every grid cell; rows come back in grid order."""
    cells = _cells(grid)
    for q, n, m, D, _ in cells:
        _check_params(q, n, m, D)
    args = [(q, n, m, D, cell_seed(seed, i), oracle_vars) for i, (q, n, m, D, _) in enumerate(cells)]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(run_cell, *zip(*args)))
    else:
        rows = [run_cell(*a) for a in args]
    return SweepReport(rows)


def instance_to_json(inst: HfeInstance) -> dict:
    from .poly import format_poly
    out = inst.summary()
    out["public"] = [format_poly(p) for p in inst.public]
    out["secret"] = [format_poly(f) for f in inst.secret.polys]
    out["S"] = {"matrix": inst.S.matrix, "translation": list(inst.S.translation)}
    out["T"] = inst.T
    out["basis"] = [inst.dmap.ext.format(b) for b in inst.dmap.basis]
    return out
