"""``falldeg`` command line.

Exit codes: 0 all checks pass, 2 falsification found, 3 infeasible or over
a cap, 64 usage or input error.  Reports go to stdout as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import experiments as ex
from .constructible import fall_report, last_fall_info
from .descent import DescentMap, descend_bar_system, descend_classic, tau
from .errors import (BoundExceeded, CapExceeded, FallDegError, NoUnivariateFound, NotRadical, OracleInfeasible,
                     ParameterCapExceeded, ParseError, TrialCapExceeded, FieldTooSmall)
from .formats import SystemFile, dump_system, load_system
from .hfe import attack, gen_instance, instance_to_json, parse_sweep_config, sweep
from .poly import field_equations

EXIT_OK, EXIT_FALSIFIED, EXIT_INFEASIBLE, EXIT_USAGE = 0, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "usage", "message": message}))
        raise SystemExit(EXIT_USAGE)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, default=str))


def _int_range(text: str) -> list[int]:
    """``3``, ``2..6`` or ``2,3,5``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_falldeg(args) -> int:
    sf = load_system(args.file)
    F = sf.system()
    if args.oracle:
        info = last_fall_info(F, max_degree=args.horizon)
        rep = info.report.to_json()
        rep.update({"method": "oracle", "last_fall_degree": info.value, "groebner_degree": info.gb_degree})
    else:
        rep = fall_report(F, args.horizon).to_json()
        rep["method"] = "horizon"
    _emit(rep)
    return EXIT_OK


def _descent_map_for(sf: SystemFile, q: int | None, basis: str) -> DescentMap:
    K = sf.ring.field
    if q is None:
        q = K.base.order if len(K.degrees) == 2 else K.p
    return DescentMap(K, q, sf.ring.nvars, basis)


def cmd_descend(args) -> int:
    sf = load_system(args.file)
    D = _descent_map_for(sf, args.q, args.basis)
    polys = list(sf.polys)
    if args.field_eqs:
        polys += field_equations(sf.ring, D.q ** D.n)
    if args.model == "classic":
        out = descend_classic(polys, D, with_field_eqs=args.field_eqs)
    else:
        out = descend_bar_system(polys, D, with_field_eqs=args.field_eqs)
    header = dict(D.header(), model=args.model)
    text = dump_system(SystemFile(out.ring, [f for f in list(out.polys) + list(out.field_eqs) if f.terms],
                                 args.field_eqs, header))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    from .solver import solve_zero_dim
    sf = load_system(args.file)
    F = sf.system()
    Z, trace = solve_zero_dim(F, d=args.d, e=args.e, seed=args.seed)
    K = Z.field
    _emit({"solutions": [[K.format(x) for x in pt] for pt in Z.points], "count": len(Z.points),
           "trace": trace.to_json()})
    return EXIT_OK


def cmd_tau(args) -> int:
    val = tau(args.r, args.c, args.t)
    if args.plain:
        print(val)
    else:
        _emit({"r": args.r, "c": args.c, "t": args.t, "tau": val})
    return EXIT_OK


def cmd_verify(args) -> int:
    th = args.suite
    qs = _int_range(args.q) if args.q else None
    ns = _int_range(args.n) if args.n else None
    seed = args.seed
    extra = {}
    if th == "8056":
        ds = _int_range(args.d) if args.d else [1, 2, 3]
        rep = ex.suite_one_variable_bound(q=(qs or [2])[0], degrees=ds, ns=ns or range(2, 7),
                            trials=args.trials or 25, seed=seed)
        const, cols = ex.constant_in_n(rep)
        extra = {"constant_in_n": const, "columns": {str(k): v for k, v in cols.items()}}
        ok = rep.ok and const
    elif th == "1235":
        ms = _int_range(args.m) if args.m else [1, 2]
        rep = ex.suite_general_bound(ms=ms, qs=qs or [2, 3], ns=ns or [2, 3], trials=args.trials or 2, seed=seed)
        ok = rep.ok
    elif th == "901":
        rep = ex.suite_gcd_certificate(qs=qs or [2], ns=ns or [2], trials=args.trials or 50, seed=seed)
        ok = rep.ok
    elif th == "yang":
        rep = ex.suite_model_relation(trials=args.trials or 25, seed=seed)
        ok = rep.ok
    else:
        pairs = [(q, m) for q in (qs or [2]) for m in (_int_range(args.m) if args.m else [1])]
        rep = ex.suite_bar_bounds(pairs=pairs, n=(ns or [2])[0], max_degree=args.max_degree,
                            randoms=args.trials if args.trials is not None else 100, seed=seed)
        ok = rep.ok
    out = rep.to_json()
    out.update(extra)
    out["pass"] = ok
    if not ok and args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump({"suite": th, "failures": rep.failures, **extra}, fh, indent=2, default=str)
    _emit(out)
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_hfe(args) -> int:
    if args.hfe_cmd == "gen":
        inst = gen_instance(args.q, args.n, args.m, args.D, args.seed)
        _emit(instance_to_json(inst))
        return EXIT_OK
    if args.hfe_cmd == "attack":
        inst = gen_instance(args.q, args.n, args.m, args.D, args.seed)
        res = attack(inst, args.bound, args.seed)
        K = inst.ring.field
        _emit({"instance": inst.summary(), "recovered": res.recovered, "solve_degree": res.solve_degree,
               "bound": res.bound, "solutions": [[K.format(x) for x in pt] for pt in res.solutions],
               "seconds": round(res.seconds, 3)})
        return EXIT_OK if res.recovered else EXIT_FALSIFIED
    with open(args.config, encoding="utf-8") as fh:
        grid = parse_sweep_config(fh.read())
    rep = sweep(grid, args.seed, workers=args.workers)
    if args.csv:
        sys.stdout.write(rep.to_csv())
    else:
        _emit(rep.to_json())
    bad = rep.violations() or [r for r in rep.rows if r.get("recovered") is False]
    return EXIT_FALSIFIED if bad else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="falldeg", description="Last fall degree, Weil descent and solving over finite fields.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("falldeg", help="fall report of a system file")
    s.add_argument("file")
    s.add_argument("--horizon", type=int, default=8)
    s.add_argument("--oracle", action="store_true", help="exact last fall degree via a Groebner basis")
    s.set_defaults(func=cmd_falldeg)

    s = sub.add_parser("descend", help="Weil descent of a system file")
    s.add_argument("file")
    s.add_argument("--model", choices=["classic", "bar"], default="classic")
    s.add_argument("--basis", choices=["normal", "polynomial"], default="normal")
    s.add_argument("--field-eqs", action="store_true")
    s.add_argument("--q", type=int, default=None, help="order of the target subfield")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_descend)

    s = sub.add_parser("solve", help="all rational zeros of a zero-dimensional radical system")
    s.add_argument("file")
    s.add_argument("--d", "--dbound", dest="d", type=int)
    s.add_argument("--e", "--ebound", dest="e", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("tau", help="the growth function tau(r, c, t)")
    s.add_argument("r", type=int)
    s.add_argument("c", type=int)
    s.add_argument("t", type=int)
    s.add_argument("--plain", action="store_true")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("verify", help="seeded property suites")
    s.add_argument("suite", choices=["1235", "8056", "yang", "901", "5551"])
    s.add_argument("--q")
    s.add_argument("--n")
    s.add_argument("--m")
    s.add_argument("--d")
    s.add_argument("--trials", type=int)
    s.add_argument("--max-degree", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dump", help="write failures to this file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hfe", help="multi-HFE instances and attack")
    hsub = s.add_subparsers(dest="hfe_cmd", required=True, parser_class=_Parser)
    for name in ("gen", "attack"):
        h = hsub.add_parser(name)
        h.add_argument("--q", type=int, default=2)
        h.add_argument("--n", type=int, default=3)
        h.add_argument("--m", type=int, default=1)
        h.add_argument("--D", type=int, default=3)
        h.add_argument("--seed", type=int, default=0)
        if name == "attack":
            h.add_argument("--bound", type=int)
    h = hsub.add_parser("sweep")
    h.add_argument("config")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--csv", action="store_true")
    h.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_hfe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _emit({"error": "ParseError", "message": exc.message, "line": exc.line, "column": exc.column})
        return EXIT_USAGE
    except OSError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_USAGE
    except BoundExceeded as exc:
        _emit({"error": "BoundExceeded", "message": str(exc)})
        return EXIT_FALSIFIED
    except (CapExceeded, OracleInfeasible, NoUnivariateFound, TrialCapExceeded, ParameterCapExceeded) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_INFEASIBLE
    except (NotRadical, FieldTooSmall, FallDegError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
