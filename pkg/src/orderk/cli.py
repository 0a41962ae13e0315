"""Command-line entry point: ``orderk <command> [options]``.

Exit codes: 0 success or passing report, 1 failed check, 2 usage or I/O
error, 3 degenerate or unsupported input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import coordinates as co
from . import geom_core as gc
from . import interp1d as i1
from . import interp2d as i2
from . import io as oio
from . import verify as ver
from . import voronoi as vo
from .errors import DegenerateInput, OrderkError, OrderOutOfRange, ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument helpers


def _point(text: str) -> tuple:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from None
    return x, y


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _random_spec(text: str) -> int:
    key, _, val = text.partition("=")
    if key.strip() != "n" or not val.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected n=<count>, got {text!r}")
    return int(val)


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _mode(args) -> str:
    if args.mode is not None:
        return args.mode
    env = os.environ.get("ORDERK_MODE")
    if env is not None and env.strip().lower() not in gc.MODES:
        raise UsageError(f"ORDERK_MODE must be one of {', '.join(gc.MODES)}, got {env!r}")
    return gc.default_mode()


def _load(args, dim: int | None = None, values: bool = False) -> oio.PointSetFile:
    if args.input is None:
        raise UsageError("--input is required")
    f = oio.load_points(args.input)
    if dim is not None and f.dim != dim:
        raise UsageError(f"{args.input}: expected a {dim}-D point set, got dim={f.dim}")
    if values and f.values is None:
        raise UsageError(f"{args.input}: a value column is required")
    return f


def _check_k(k, lo: int, hi: int, name: str = "--k"):
    if k is None:
        raise UsageError(f"{name} is required")
    if not lo <= k <= hi:
        raise UsageError(f"{name} must lie in {lo}..{hi}, got {k}")


def _require_general(s: gc.PointSet, mode: str):
    bad = gc.validate_general_position(s, mode)
    if bad:
        raise DegenerateInput("point set is not in general position: " + ", ".join(map(str, bad[:5])), bad)


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Commands


def cmd_build(args) -> int:
    s = _load(args, dim=2).points
    _check_k(args.k, 1, s.n - 1)
    mode = _mode(args)
    d = vo.build_diagram(s, args.k, gc.bounding_box(s, args.bbox_scale), mode=mode)
    _emit(_dumps(oio.diagram_to_dict(d)), args.out)
    if args.svg:
        from . import plotting

        plotting.save_figure(plotting.plot_diagram(d), args.svg)
    return EXIT_OK


def cmd_region(args) -> int:
    s = _load(args, dim=2).points
    _check_k(args.k, 1, s.n - 1)
    _check_k(args.l, 0, s.n - 1, "--l")
    r = vo.region(s, args.k, args.l, gc.bounding_box(s, args.bbox_scale), mode=_mode(args))
    _emit(_dumps(oio.region_to_dict(r)), args.out)
    return EXIT_OK


def _weights_dict(w: co.WeightVector) -> dict:
    return {
        "site": w.site,
        "k": w.k,
        "denominator": w.denominator,
        "weights": {str(j): v for j, v in sorted(w.entries.items())},
        "sum": w.total,
    }


def cmd_coords(args) -> int:
    s = _load(args).points
    k = 1 if args.k is None else args.k
    mode = _mode(args)
    if s.dim == 1:
        _check_k(k, 1, s.n - 2)
        _check_k(args.l, 0, s.n - 1, "--l")
        out = _weights_dict(co.generalized_weights(s, k, args.l))
        _emit(_dumps(out), args.out)
        return EXIT_OK
    _require_general(s, mode)
    cache = vo.CellCache(s, gc.bounding_box(s, args.bbox_scale))
    if args.kind == "aurenhammer":
        _check_k(k, 2, s.n - 2)
        reports = []
        for c in cache.diagram(k):
            if not c.bounded:
                continue
            r = co.aurenhammer_identity(s, k, c, cache)
            reports.append(
                {
                    "owners": list(c.owners),
                    "area": r.area,
                    "lhs_terms": [list(t) for t in r.lhs_terms],
                    "rhs_terms": [list(t) for t in r.rhs_terms],
                    "point": list(co.h_point(r)),
                    "residual": r.residual,
                }
            )
        _emit(_dumps({"k": k, "cells": reports}), args.out)
        return EXIT_OK
    _check_k(args.l, 0, s.n - 1, "--l")
    if args.kind == "sibson":
        w = co.sibson_weights(s, args.l, cache)
    else:
        _check_k(k, 1, s.n - 2)
        w = co.generalized_weights(s, k, args.l, cache)
    out = _weights_dict(w)
    out["residual"] = w.residual(s.points)
    _emit(_dumps(out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    mode = _mode(args)
    if args.input is not None and args.random is not None:
        raise UsageError("use either --input or --random, not both")
    degenerate = False
    if args.input is not None:
        s = _load(args).points
        sets = [s] if s.dim == 2 else []
        degenerate = bool(gc.validate_general_position(s, mode))
    else:
        n = args.random or 10
        if n < 4:
            raise UsageError("--random needs n >= 4")
        rng = np.random.default_rng(args.seed)
        sets = [ver.random_point_set(n, rng, gc.ROBUST) for _ in range(args.trials)]
    grid = args.grid if args.oracle == "grid" else None
    if args.oracle == "grid" and grid is None:
        grid = 2000
    report = ver.run_suite(
        sets,
        kmax=args.kmax,
        seed=args.seed,
        grid=grid,
        quads=args.quads,
        line_trials=args.line_trials,
        mode=mode,
        workers=args.workers,
    )
    report.meta["mode"] = mode
    sys.stdout.write(report.to_text())
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json())
        (out / "report.csv").write_text(report.to_csv())
        from . import plotting

        plotting.save_figure(plotting.plot_report(report), out / "report.svg")
    if not report.passed:
        return EXIT_FAIL
    return EXIT_DEGENERATE if degenerate else EXIT_OK


def cmd_interp(args) -> int:
    f = _load(args, dim=2, values=True)
    if not args.query:
        raise UsageError("--query x,y is required")
    klist = args.klist or [args.k or 1]
    for k in klist:
        _check_k(k, 1, f.points.n - 1)
    data = i2.ScatterData(f.points, f.values)
    mode = _mode(args)
    rows = []
    failed = None
    for q in args.query:
        try:
            interp = i2.Interpolator(data, q, mode, args.bbox_scale)
            results = []
            for k in klist:
                try:
                    results.append(interp(k))
                except OrderkError as exc:
                    results.append(exc)
        except OrderkError as exc:
            results = [exc] * len(klist)
        for k, r in zip(klist, results):
            if isinstance(r, Exception):
                failed = failed or r
                rows.append({"x": q[0], "y": q[1], "k": k, "value": None, "error": f"{type(r).__name__}: {r}"})
            else:
                rows.append(
                    {
                        "x": q[0],
                        "y": q[1],
                        "k": k,
                        "value": r.value,
                        "support": r.support,
                        "weights": {str(j): w for j, w in sorted(r.weights.entries.items())},
                    }
                )
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "k", "value", "support", "error"])
        for r in rows:
            value = "" if r["value"] is None else repr(r["value"])
            w.writerow([repr(r["x"]), repr(r["y"]), r["k"], value, " ".join(map(str, r.get("support", []))), r.get("error", "")])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_dumps(rows), args.out)
    if failed is not None:
        print(f"error: {failed}", file=sys.stderr)
        return _exit_for(failed)
    return EXIT_OK


def cmd_interp1d(args) -> int:
    f = _load(args, dim=1, values=True)
    samples = i1.Samples1D.from_arrays([p[0] for p in f.points.points], f.values)
    orders = args.order or [1, 2, 3]
    funcs = {1: i1.g1, 2: i1.g2, 3: i1.g3}
    rows = []
    failed = None
    for x in args.x or []:
        row = {"x": x}
        for o in orders:
            try:
                row[f"g{o}"] = funcs[o](x, samples)
            except OrderkError as exc:
                failed = failed or exc
                row[f"g{o}"] = None
                row[f"g{o}_error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    if rows:
        _emit(_dumps(rows), args.out)
    if args.emit_curve:
        data = i1.curve(samples, num=args.num, gap=args.gap)
        path = Path(args.emit_curve)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "g1", "g2", "g3"])
            for r in data:
                w.writerow([repr(float(v)) for v in r])
        from . import plotting

        plotting.save_figure(plotting.plot_curve(data, samples.sorted()), path.with_suffix(".svg"))
    if not rows and not args.emit_curve:
        raise UsageError("give --x and/or --emit-curve")
    if failed is not None:
        print(f"error: {failed}", file=sys.stderr)
        return _exit_for(failed)
    return EXIT_OK


def cmd_render(args) -> int:
    from . import plotting

    if args.out is None:
        raise UsageError("--out is required for render")
    f = _load(args)
    if f.dim == 1:
        if f.values is None:
            raise UsageError("a 1-D render needs a value column")
        samples = i1.Samples1D.from_arrays([p[0] for p in f.points.points], f.values)
        fig = plotting.plot_curve(i1.curve(samples, num=args.num, gap=args.gap), samples.sorted())
    else:
        s = f.points
        mode = _mode(args)
        _require_general(s, mode)
        cache = vo.CellCache(s, gc.bounding_box(s, args.bbox_scale))
        if args.l is not None:
            _check_k(args.l, 0, s.n - 1, "--l")
            kmax = args.kmax or 3
            _check_k(kmax, 1, s.n - 1, "--kmax")
            regions = [vo.region(s, k, args.l, cache=cache, check=False) for k in range(1, kmax + 1)]
            fig = plotting.plot_regions(regions, s)
        else:
            k = args.k or 1
            _check_k(k, 1, s.n - 1)
            fig = plotting.plot_diagram(cache.diagram(k))
    plotting.save_figure(fig, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="point-set file (CSV or JSON)")
    common.add_argument("--mode", choices=gc.MODES, help="predicate mode (default: $ORDERK_MODE or robust)")
    common.add_argument("--bbox-scale", type=_positive_float, default=gc.DEFAULT_BBOX_SCALE,
                        help="bounding-box side in set diameters (default 20)")
    common.add_argument("--out", help="output file (directory for verify)")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="orderk", description="Order-k Voronoi diagrams and natural-neighbour coordinates.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="order-k diagram as JSON")
    b.add_argument("--k", type=int)
    b.add_argument("--svg", help="also render the diagram to this file")
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("region", parents=[common], help="region of one site as JSON")
    r.add_argument("--k", type=int)
    r.add_argument("--l", type=int, help="site index")
    r.set_defaults(func=cmd_region)

    c = sub.add_parser("coords", parents=[common], help="coordinates of a site")
    c.add_argument("--k", type=int)
    c.add_argument("--l", type=int, help="site index")
    c.add_argument("--kind", choices=("generalized", "sibson", "aurenhammer"), default="generalized")
    c.set_defaults(func=cmd_coords)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--random", type=_random_spec, metavar="n=N", help="generate random sets of N points")
    v.add_argument("--trials", type=int, default=1, help="number of random sets")
    v.add_argument("--kmax", type=int, default=4)
    v.add_argument("--oracle", choices=("none", "grid"), default="none")
    v.add_argument("--grid", type=int, help="grid resolution of the oracle (implies --oracle grid)")
    v.add_argument("--quads", type=int, default=100)
    v.add_argument("--line-trials", type=int, default=200)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("interp", parents=[common], help="planar natural-neighbour interpolation")
    i.add_argument("--query", type=_point, action="append", help="x,y (repeatable)")
    i.add_argument("--k", type=int)
    i.add_argument("--klist", type=_int_list, help="several orders, e.g. 1,2,3")
    i.add_argument("--csv", action="store_true", help="one CSV row per (query, k)")
    i.set_defaults(func=cmd_interp)

    j = sub.add_parser("interp1d", parents=[common], help="1-D estimates g1, g2, g3")
    j.add_argument("--x", type=float, action="append", help="query abscissa (repeatable)")
    j.add_argument("--order", type=_int_list, help="subset of 1,2,3")
    j.add_argument("--emit-curve", metavar="CSV", help="write a curve across the middle gap (plus an SVG beside it)")
    j.add_argument("--gap", type=int, help="sorted index of the gap's left sample")
    j.add_argument("--num", type=int, default=101, help="curve sample count")
    j.set_defaults(func=cmd_interp1d)

    f = sub.add_parser("render", parents=[common], help="draw a diagram, nested regions or a 1-D curve")
    f.add_argument("--k", type=int)
    f.add_argument("--kmax", type=int)
    f.add_argument("--l", type=int, help="site whose nested regions to draw")
    f.add_argument("--gap", type=int)
    f.add_argument("--num", type=int, default=101)
    f.set_defaults(func=cmd_render)
    return p


def _exit_for(exc: BaseException) -> int:
    if isinstance(exc, (UsageError, ParseError, OrderOutOfRange, FileNotFoundError)):
        return EXIT_USAGE
    if isinstance(exc, OrderkError):
        return EXIT_DEGENERATE
    return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.grid is not None:
        args.oracle = "grid"
    if args.command == "interp1d" and args.order and not set(args.order) <= {1, 2, 3}:
        parser.error("--order takes values from 1,2,3")
    try:
        return args.func(args)
    except (UsageError, ParseError, OrderOutOfRange, FileNotFoundError) as exc:
        print(f"orderk {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OrderkError as exc:
        print(f"orderk {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"orderk {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
