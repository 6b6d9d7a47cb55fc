"""Command-line interface: ``turanlab <command> [options]``.

Exit codes: 0 when everything passes, 1 when a verifier fails, 2 on usage
or input errors.  JSON output is key-sorted, and apart from the sweep's
``wall_time`` column, a run repeated with the same seed reproduces it byte
for byte.  Logs go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict

import numpy as np

from . import __version__, capacity, constants
from .errors import TuranError
from .geom import geometry_summary, load_polygon, local_depth, point_on_side, regular_polygon, tilted_frame
from .poly import load_poly
from .quad import QuadratureSpec, boundary_integral, g_set, sup_norm
from .report import reports_to_csv, reports_to_json
from .search import SearchConfig, rows_to_csv, sweep
from .verify import (
    SUITES,
    run_suite,
    upper_witness,
    verify_acute,
    verify_disk,
    verify_g_mass,
    verify_local_depth,
    verify_nikolskii,
    verify_oneside,
    verify_polygon_theorem,
)

log = logging.getLogger("turanlab")


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- helpers


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise UsageError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _point(text: str) -> complex:
    vals = _floats(text)
    if len(vals) != 2:
        raise UsageError(f"expected a point 'x,y', got {text!r}")
    return complex(vals[0], vals[1])


def _spec(args) -> QuadratureSpec:
    return QuadratureSpec(nodes=args.nodes, panels=args.panels, rtol=args.rtol, max_depth=args.max_depth)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _meta(args, K=None, q=None) -> dict:
    meta = {"command": args.command, "seed": getattr(args, "seed", None),
            "quadrature": asdict(_spec(args)), "version": __version__}
    if q is not None:
        if K is not None:
            gs = geometry_summary(K, q)
            nn, clause = constants.n0(q, gs.d, gs.h0)
        else:
            nn, clause = constants.n0(q, clauses=("min_degree", "corner_decay"))
        meta.update(n0=nn, n0_clause=clause)
    log.info("seed=%s quadrature=%s n0_clause=%s version=%s", meta["seed"], meta["quadrature"],
             meta.get("n0_clause"), __version__)
    return meta


def _dump(doc: dict) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True)


def _flat_csv(doc: dict) -> str:
    buf = io.StringIO()
    flat = {k: (json.dumps(_jsonable(v), sort_keys=True) if isinstance(v, (dict, list)) else _jsonable(v))
            for k, v in doc.items()}
    writer = csv.DictWriter(buf, fieldnames=sorted(flat), lineterminator="\n")
    writer.writeheader()
    writer.writerow(flat)
    return buf.getvalue()


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_doc(args, doc: dict, meta: dict):
    if args.format == "csv":
        _emit(args, _flat_csv(doc))
    else:
        _emit(args, _dump({"meta": meta, **doc}))


def _polygon(args):
    if not getattr(args, "polygon", None):
        raise UsageError("--polygon is required")
    return load_polygon(args.polygon)


# ---------------------------------------------------------------- commands


def cmd_geom(args) -> int:
    K = _polygon(args)
    gs = geometry_summary(K, args.q)
    _emit_doc(args, gs.to_dict(), _meta(args, K, args.q))
    return 0


def cmd_constants(args) -> int:
    c = constants.constants(args.alpha, args.q, args.d, args.omega)
    _emit_doc(args, c.to_dict(), _meta(args, q=args.q))
    return 0


def cmd_depth(args) -> int:
    K = _polygon(args)
    z = _point(args.point)
    _emit_doc(args, {"point": z, "depth": local_depth(K, z)}, _meta(args))
    return 0


def cmd_frame(args) -> int:
    K = _polygon(args)
    fr = tilted_frame(K, args.vertex, point_on_side(K, args.vertex, args.zeta))
    doc = asdict(fr)
    doc["ratio"] = fr.ratio
    _emit_doc(args, doc, _meta(args))
    return 0


def cmd_norm(args) -> int:
    K = _polygon(args)
    p = load_poly(args.poly)
    spec = _spec(args)
    ip = boundary_integral(p, K, args.q, "p", spec)
    idp = boundary_integral(p, K, args.q, "dp", spec)
    doc = {
        "n": p.n,
        "q": args.q,
        "log_norm_p": ip.log_value / args.q,
        "log_norm_dp": idp.log_value / args.q,
        "norm_p": math.exp(ip.log_value / args.q),
        "norm_dp": math.exp(idp.log_value / args.q),
        "M_q": math.exp((idp.log_value - ip.log_value) / args.q),
        "rel_err": (ip.rel_err + idp.rel_err) / args.q,
        "sup_p": sup_norm(p, K).value,
    }
    _emit_doc(args, doc, _meta(args, K, args.q))
    return 0


def cmd_gset(args) -> int:
    K = _polygon(args)
    p = load_poly(args.poly)
    G = g_set(p, K, args.q)
    doc = dict(G.to_json(), measure=G.measure(), perimeter=K.perimeter)
    _emit_doc(args, doc, _meta(args, K, args.q))
    return 0


def _single_report(args, K, p):
    spec = _spec(args)
    name = args.suite
    if name == "disk":
        return verify_disk(p)
    if name == "nikolskii":
        return verify_nikolskii(p, K, args.q, spec)
    if name == "g-mass":
        return verify_g_mass(p, K, args.q, spec)
    if name == "local-depth":
        return verify_local_depth(p, K, args.q, spec)
    if name == "polygon":
        return verify_polygon_theorem(p, K, args.q, spec)
    if name == "oneside":
        return verify_oneside(p, K, args.vertex or 0, args.q, spec)
    if name == "acute":
        return verify_acute(p, K, args.vertex or 0, args.r, args.q, spec)
    raise UsageError(f"--poly is not supported for suite {name!r}")


def cmd_verify(args) -> int:
    K = load_polygon(args.polygon) if args.polygon else None
    if K is None and args.suite != "disk":
        raise UsageError(f"suite {args.suite!r} needs --polygon")
    if args.poly:
        reports = [_single_report(args, K, load_poly(args.poly))]
    elif args.suite == "witness":
        reports = [upper_witness(K, args.n, args.q, _spec(args))[1]]
    else:
        reports = run_suite(args.suite, K, args.n, args.q, args.count, args.seed, _spec(args),
                            vertex=args.vertex, zeta=args.zeta, omega=args.omega, r=args.r,
                            family=args.family)
    meta = _meta(args, K, args.q)
    meta.update(suite=args.suite, n=args.n, q=args.q, count=len(reports))
    for rep in reports:
        log.debug(rep.line())
    failures = sum(not r.passed for r in reports)
    if failures:
        log.warning("%d of %d cases failed", failures, len(reports))
    if args.format == "csv":
        _emit(args, reports_to_csv(reports))
    else:
        _emit(args, reports_to_json(reports, **_jsonable(meta)))
    return 1 if failures else 0


def cmd_sweep(args) -> int:
    K = _polygon(args)
    n_list, q_list = _ints(args.n), _floats(args.q)
    cfg = SearchConfig(n=min(n_list), q=q_list[0], restarts=args.restarts, seed=args.seed,
                       max_evals=args.max_evals, audit_rtol=args.rtol)
    rows = sweep(K, n_list, q_list, cfg)
    if args.format == "json":
        meta = _meta(args, K, q_list[0])
        meta.update(config=asdict(cfg))
        _emit(args, _dump({"meta": meta, "rows": [r.to_dict() for r in rows]}))
    else:
        _meta(args, K, q_list[0])
        _emit(args, rows_to_csv(rows))
    return 0


def _capacity_set(args):
    if args.segment:
        v = _floats(args.segment)
        if len(v) == 2:
            a, b = complex(v[0]), complex(v[1])
        elif len(v) == 4:
            a, b = complex(v[0], v[1]), complex(v[2], v[3])
        else:
            raise UsageError("--segment takes 'a,b' or 'x1,y1,x2,y2'")
        return capacity.Segment(a, b), {"set": "segment", "closed_form": abs(b - a) / 4}
    if args.regular is not None:
        K = regular_polygon(args.regular, args.side)
        return K, {"set": f"regular {args.regular}-gon",
                   "closed_form": capacity.transfinite_diameter_regular(args.regular, args.side)}
    if args.disk is not None:
        if not args.disk > 0:
            raise UsageError("disk radius must be positive")
        return capacity.Disk(0j, args.disk), {"set": "disk", "closed_form": args.disk}
    if args.intervals:
        ivs = []
        for chunk in args.intervals.split(";"):
            v = _floats(chunk)
            if len(v) != 2:
                raise UsageError("--intervals takes 'a,b;c,d;...'")
            ivs.append(tuple(v))
        J = capacity.IntervalUnion(tuple(ivs))
        return J, {"set": "intervals", "polya_bound": J.measure / 4}
    if args.polygon:
        return load_polygon(args.polygon), {"set": "polygon"}
    raise UsageError("choose one of --segment, --regular, --disk, --intervals, --polygon")


def cmd_capacity(args) -> int:
    M, doc = _capacity_set(args)
    res = capacity.fekete_diameter(M, args.k, restarts=args.restarts, seed=args.seed)
    doc.update(k=res.k, delta=res.delta, converged=res.converged, points=res.points)
    if args.chebyshev:
        ch = capacity.chebyshev_number(M, args.k, seed=args.seed)
        doc.update(chebyshev=ch.value, chebyshev_converged=ch.converged)
    _emit_doc(args, doc, _meta(args))
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"],
                        help="output format (default: csv for sweep, json otherwise)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--verbose", "-v", action="count", default=0)
    common.add_argument("--seed", type=int, default=0)
    qg = common.add_argument_group("quadrature")
    qg.add_argument("--rtol", type=float, default=1e-9)
    qg.add_argument("--nodes", type=int, default=16)
    qg.add_argument("--panels", type=int, default=8)
    qg.add_argument("--max-depth", type=int, default=12)

    parser = argparse.ArgumentParser(prog="turanlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"turanlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geom", parents=[common], help="geometry summary and polygon constants")
    p.add_argument("--polygon")
    p.add_argument("--q", type=float, default=2.0)
    p.set_defaults(func=cmd_geom)

    p = sub.add_parser("constants", parents=[common], help="closed-form constants")
    p.add_argument("--alpha", type=float, help="vertex angle in radians")
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--omega", type=float)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("depth", parents=[common], help="local depth at a boundary point")
    p.add_argument("--polygon")
    p.add_argument("--point", required=True, help="x,y")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("frame", parents=[common], help="tilted frame at a point near a vertex")
    p.add_argument("--polygon")
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--zeta", type=float, required=True, help="distance |V zeta| along [V, W]")
    p.set_defaults(func=cmd_frame)

    for name, func, text in (("norm", cmd_norm, "L^q norms and oscillation of a polynomial"),
                             ("gset", cmd_gset, "large-value set of a polynomial")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--polygon")
        p.add_argument("--poly", required=True, help="JSON file with zeros")
        p.add_argument("--q", type=float, default=2.0)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="run a verifier suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--polygon")
    p.add_argument("--poly", help="verify this polynomial instead of random ones")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--vertex", type=int)
    p.add_argument("--zeta", type=float, help="distance |V zeta| (tne)")
    p.add_argument("--omega", type=float)
    p.add_argument("--r", type=float, help="disk radius (acute)")
    p.add_argument("--family", help="zero family for random polynomials")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="minimise M_q over zeros for several n, q")
    p.add_argument("--polygon")
    p.add_argument("--n", required=True, help="comma-separated degrees")
    p.add_argument("--q", default="2", help="comma-separated exponents")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-evals", type=int, default=1500)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("capacity", parents=[common], help="Fekete diameter of a planar set")
    p.add_argument("--segment", help="a,b or x1,y1,x2,y2")
    p.add_argument("--regular", type=int, help="regular k-gon")
    p.add_argument("--side", type=float, default=1.0)
    p.add_argument("--disk", type=float, nargs="?", const=1.0, help="radius (default 1)")
    p.add_argument("--intervals", help="a,b;c,d;...")
    p.add_argument("--polygon")
    p.add_argument("--k", type=int, default=40)
    p.add_argument("--restarts", type=int, default=3)
    p.add_argument("--chebyshev", action="store_true")
    p.set_defaults(func=cmd_capacity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "json"
    level = logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    if args.command == "verify" and args.count < 1:
        parser.error("--count must be positive")
    try:
        return args.func(args)
    except (UsageError, TuranError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        kind = type(exc).__name__
        print(f"turanlab {args.command}: error: {kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
