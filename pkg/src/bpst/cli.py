"""Command line surface: solve, exact, gen, bench.

Exit codes: 0 success, 2 parse/usage errors, 3 infeasible input
(monochromatic or degenerate), 4 internal invariant violations.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .errors import (BpstError, DegenerateInstance, DegenerateSpec, Infeasible,
                     InstanceTooLarge, InvariantViolation, MonochromaticInstance,
                     ParseError)
from .fileio import (exact_result_text, read_instance, result_text,
                     write_instance_text)
from .generate import FAMILIES, GenSpec, generate
from .instance import format_sq
from .pipeline import solve
from .svg import render_stages, render_svg
from .verify import exact_bottleneck_planar_bst


def _build_parser():
    ap = argparse.ArgumentParser(prog="bpst",
                                 description="Bottleneck planar bichromatic spanning trees")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="run the approximation pipeline on a point file")
    sp.add_argument("input")
    sp.add_argument("-o", "--output", help="result file path (default: stdout)")
    sp.add_argument("--svg", help="write the final tree as SVG")
    sp.add_argument("--trace", help="write the per-decision trace log")
    sp.add_argument("--stages", help="directory for per-stage SVG dumps")
    sp.add_argument("--grid-offset-seed", type=int, default=0)

    ep = sub.add_parser("exact", help="exact optimum by brute force (small n)")
    ep.add_argument("input")
    ep.add_argument("-o", "--output")
    ep.add_argument("--max-n", type=int, default=10)

    gp = sub.add_parser("gen", help="generate a seeded instance")
    gp.add_argument("--family", choices=FAMILIES, required=True)
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--clusters", type=int, default=0)
    gp.add_argument("--spread", type=float, default=1.0)
    gp.add_argument("--spacing", default="1")
    gp.add_argument("--pattern", default="random")
    gp.add_argument("-o", "--output", required=True)

    bp = sub.add_parser("bench", help="solve every point file in a directory")
    bp.add_argument("corpus")
    bp.add_argument("-o", "--output", help="CSV path (default: stdout)")
    bp.add_argument("--exact-max-n", type=int, default=9)
    return ap


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args):
    inst = read_instance(args.input)
    trace = []
    result = solve(inst, offset_seed=args.grid_offset_seed, trace=trace)
    _emit(result_text(result), args.output)
    if args.svg:
        _emit(render_svg(inst=inst, cell_complex=result.cell_complex,
                         edges=result.edges), args.svg)
    if args.trace:
        _emit("\n".join(trace) + ("\n" if trace else ""), args.trace)
    if args.stages:
        os.makedirs(args.stages, exist_ok=True)
        for name, text in render_stages(result).items():
            with open(os.path.join(args.stages, name + ".svg"), "w",
                      encoding="utf-8") as fh:
                fh.write(text)
    return 0


def _cmd_exact(args):
    inst = read_instance(args.input)
    exact = exact_bottleneck_planar_bst(inst, max_n=args.max_n)
    _emit(exact_result_text(inst, exact), args.output)
    return 0


def _cmd_gen(args):
    spec = GenSpec(family=args.family, n=args.n, seed=args.seed,
                   clusters=args.clusters, spread=args.spread,
                   spacing=args.spacing, pattern=args.pattern)
    inst = generate(spec)
    _emit(write_instance_text(inst), args.output)
    return 0


def _cmd_bench(args):
    rows = ["instance,n,lambda,opt,bottleneck,ratio,ms,status"]
    names = sorted(f for f in os.listdir(args.corpus) if f.endswith(".pts"))
    import math
    from .instance import SCALE
    for name in names:
        path = os.path.join(args.corpus, name)
        t0 = time.perf_counter()
        try:
            inst = read_instance(path)
            result = solve(inst)
            ms = int((time.perf_counter() - t0) * 1000)
            lam = math.sqrt(result.lambda_sq) / SCALE
            bot = math.sqrt(result.report.bottleneck_sq) / SCALE
            if result.report.bottleneck_sq > 128 * result.lambda_sq:
                raise InvariantViolation("ratio bound exceeded")
            ratio = bot / lam if lam else 0.0
            opt = ""
            if inst.n <= args.exact_max_n:
                ex = exact_bottleneck_planar_bst(inst, max_n=args.exact_max_n)
                opt = f"{math.sqrt(ex.opt_sq) / SCALE:.9g}"
            rows.append(f"{name},{inst.n},{lam:.9g},{opt},{bot:.9g},"
                        f"{ratio:.9g},{ms},ok")
        except BpstError as e:
            ms = int((time.perf_counter() - t0) * 1000)
            rows.append(f"{name},,,,,,{ms},error:{type(e).__name__}")
    _emit("\n".join(rows) + "\n", args.output)
    return 0


_HANDLERS = {"solve": _cmd_solve, "exact": _cmd_exact,
             "gen": _cmd_gen, "bench": _cmd_bench}


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ParseError, DegenerateSpec, InstanceTooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (MonochromaticInstance, DegenerateInstance, Infeasible) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 4
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
