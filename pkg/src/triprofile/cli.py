"""Command-line interface.

Subcommands: census, boundary, member, construct, sweep, optimize, verify.
Exit codes: 0 success, 1 domain error, 2 I/O or parse error.  Floats are
serialized with 17 significant digits so CSV output round-trips exactly.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import boundary as bnd
from . import constructions as cons
from . import optimizer as opt
from . import verify as ver
from .census import (census_fast, densities, graphon_densities, read_edge_list,
                     read_step_graphon, write_edge_list)
from .errors import DomainError, InputFormatError

__all__ = ["main"]


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _verdict_word(v: bnd.MembershipVerdict, tol: float) -> str:
    # the inside/outside decision honors the caller tolerance (10/n for
    # finite graphs); "boundary" is only reported within a tight band so a
    # generous finite-size tolerance does not label everything boundary
    if abs(v.slack) <= min(tol, 1e-9):
        return "boundary"
    return "inside" if v.inside else "outside"


def _print_verdicts(out, d, tol: float) -> None:
    coords = {
        "s03": (d.d0, d.d3),
        "s12": (d.d1, d.d2),
        "s13": (d.d1, d.d3),
        "s23": (d.d2, d.d3),
    }
    for region, (x, y) in coords.items():
        v = bnd.membership(region, x, y, tol)
        out.write(f"{region}: {_verdict_word(v, tol)} slack={_fmt(v.slack)} "
                  f"binding={v.binding}\n")


def cmd_census(args) -> int:
    out = sys.stdout
    if args.graphon:
        w = read_step_graphon(args.input)
        d = graphon_densities(w)
        tol = args.tol if args.tol is not None else 1e-9
        out.write(f"blocks: {w.num_blocks}\n")
    else:
        g = read_edge_list(args.input)
        c = census_fast(g)
        d = densities(c)
        tol = args.tol if args.tol is not None else 10.0 / g.n
        out.write(f"n: {g.n}\n")
        out.write(f"m: {g.m}\n")
        out.write(f"counts: {c.c0},{c.c1},{c.c2},{c.c3}\n")
    out.write("densities: " + ",".join(_fmt(v) for v in d.profile) + "\n")
    out.write(f"d_e: {_fmt(d.d_e)}\n")
    _print_verdicts(out, d, tol)
    return 0


def cmd_boundary(args) -> int:
    if args.samples < 2:
        raise DomainError("--samples must be at least 2")
    rows = bnd.sample_boundary(args.region, args.samples)
    lines = ["param,x,y,branch"]
    lines += [f"{_fmt(p)},{_fmt(x)},{_fmt(y)},{branch}" for p, x, y, branch in rows]
    payload = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(payload)
    return 0


def cmd_member(args) -> int:
    tol = args.tol if args.tol is not None else 1e-9
    v = bnd.membership(args.region, args.x, args.y, tol)
    sys.stdout.write(f"verdict: {_verdict_word(v, tol)}\n")
    sys.stdout.write(f"slack: {_fmt(v.slack)}\n")
    sys.stdout.write(f"binding: {v.binding}\n")
    return 0


def _parse_params(pairs) -> dict:
    params = {}
    for item in pairs or []:
        if "=" not in item:
            raise DomainError(f"--param expects key=value (got {item!r})")
        key, _, raw = item.partition("=")
        try:
            params[key.strip()] = float(raw)
        except ValueError:
            raise DomainError(f"parameter {key!r} is not a number: {raw!r}") from None
    return params


def cmd_construct(args) -> int:
    spec = cons.FamilySpec(args.family, _parse_params(args.param),
                           n=args.n, seed=args.seed)
    g = cons.realize(spec)
    write_edge_list(g, args.out)
    lim = graphon_densities(cons.limit_graphon(spec))
    fin = densities(census_fast(g))
    dev = max(abs(u - v) for u, v in zip(fin.profile + (fin.d_e,),
                                         lim.profile + (lim.d_e,)))
    summary = {
        "family": spec.family,
        "params": spec.params,
        "n": spec.n,
        "seed": spec.seed,
        "limit": {"d0": lim.d0, "d1": lim.d1, "d2": lim.d2, "d3": lim.d3,
                  "d_e": lim.d_e},
        "census": {"d0": fin.d0, "d1": fin.d1, "d2": fin.d2, "d3": fin.d3,
                   "d_e": fin.d_e},
        "max_deviation": dev,
    }
    sidecar = args.out + ".summary.json"
    with open(sidecar, "w", encoding="utf-8", newline="\n") as f:
        json.dump(summary, f, indent=1, sort_keys=True)
        f.write("\n")
    sys.stdout.write(f"wrote: {args.out} ({g.n} vertices, {g.m} edges)\n")
    sys.stdout.write(f"summary: {sidecar}\n")
    sys.stdout.write(f"max_deviation: {_fmt(dev)}\n")
    return 0


def _parse_grid(pairs) -> dict:
    grids = {}
    for item in pairs or []:
        if "=" not in item:
            raise DomainError(f"--param-grid expects key=v1,v2,... (got {item!r})")
        key, _, raw = item.partition("=")
        try:
            grids[key.strip()] = [float(tok) for tok in raw.split(",") if tok != ""]
        except ValueError:
            raise DomainError(f"grid for {key!r} is not numeric: {raw!r}") from None
        if not grids[key.strip()]:
            raise DomainError(f"grid for {key!r} is empty")
    return grids


def cmd_sweep(args) -> int:
    grids = _parse_grid(args.param_grid)
    if not grids:
        raise DomainError("at least one --param-grid is required")
    try:
        n_list = [int(tok) for tok in args.n_list.split(",") if tok != ""]
    except ValueError:
        raise DomainError(f"--n-list is not a list of integers: {args.n_list!r}") from None
    if not n_list:
        raise DomainError("--n-list must name at least one size")
    seeds = [int(tok) for tok in (args.seeds or "0").split(",") if tok != ""]
    if not seeds:
        raise DomainError("--seeds must name at least one seed")

    keys = sorted(grids)
    combos = [{}]
    for key in keys:
        combos = [dict(c, **{key: v}) for c in combos for v in grids[key]]

    lines = ["family,params,n,seed,d0,d1,d2,d3,d_e,"
             "lim_d0,lim_d1,lim_d2,lim_d3,lim_d_e,max_dev"]
    for params in combos:
        lim = graphon_densities(cons.limit_graphon(
            cons.FamilySpec(args.family, params)))
        label = ";".join(f"{k}={_fmt(params[k])}" for k in keys)
        for n in n_list:
            for seed in seeds:
                spec = cons.FamilySpec(args.family, params, n=n, seed=seed)
                fin = densities(census_fast(cons.realize(spec)))
                dev = max(abs(u - v) for u, v in
                          zip(fin.profile + (fin.d_e,), lim.profile + (lim.d_e,)))
                row = [args.family, label, str(n), str(seed)]
                row += [_fmt(v) for v in fin.profile + (fin.d_e,)]
                row += [_fmt(v) for v in lim.profile + (lim.d_e,)]
                row.append(_fmt(dev))
                lines.append(",".join(row))
    payload = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(payload)
    return 0


def cmd_optimize(args) -> int:
    res = opt.maximize_grid(args.alpha, grid=args.grid, refine_tol=args.refine_tol)
    out = sys.stdout
    out.write(f"alpha: {_fmt(args.alpha)}\n")
    out.write(f"analytic_value: {_fmt(res.analytic_value)}\n")
    out.write(f"grid_value: {_fmt(res.value)}\n")
    out.write(f"gap: {_fmt(res.analytic_value - res.value)}\n")
    out.write("best_x: " + ",".join(_fmt(v) for v in res.best.x) + "\n")
    out.write("best_y: " + ",".join(_fmt(v) for v in res.best.y) + "\n")
    out.write(f"stationarity_residual: {_fmt(res.stationarity_residual)}\n")
    out.write("candidates:\n")
    for cand in sorted(res.candidates, key=lambda c: -c.value):
        mark = " (attains max)" if cand.attains_max else ""
        out.write(f"  {_fmt(cand.value)}  {cand.label}{mark}\n")
    return 0


def cmd_verify(args) -> int:
    try:
        results = ver.run_suite(args.suite)
    except KeyError:
        raise DomainError(
            f"unknown suite {args.suite!r}; valid: all, census, boundary, "
            "constructions, optimizer") from None
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{status} {r.name}: {r.detail}\n")
    if failed:
        sys.stderr.write(f"first failing invariant: {failed[0].name}\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triprofile",
        description="3-vertex density profiles, region boundaries, extremal "
                    "constructions and the clique-structure maximization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="census a graph or step-graphon file")
    p.add_argument("input", help="edge-list file (or JSON document with --graphon)")
    p.add_argument("--graphon", action="store_true",
                   help="treat the input as a step-graphon document")
    p.add_argument("--tol", type=float, default=None,
                   help="membership tolerance (default 10/n for graphs, 1e-9 "
                        "for graphons)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("boundary", help="sample a region boundary as CSV")
    p.add_argument("--region", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("member", help="test a point against a region")
    p.add_argument("--region", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("construct", help="realize a construction family")
    p.add_argument("--family", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="edge-list output path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="finite-vs-limit deviation table")
    p.add_argument("--family", required=True)
    p.add_argument("--param-grid", action="append", metavar="KEY=V1,V2,...")
    p.add_argument("--n-list", required=True)
    p.add_argument("--seeds", default=None)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="grid-verify the clique-structure maximum")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--refine-tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", default="all",
                   choices=["all", "census", "boundary", "constructions",
                            "optimizer"])
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except InputFormatError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
