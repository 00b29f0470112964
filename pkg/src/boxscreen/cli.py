"""Command line interface: gen / solve / bench / compare-t."""

import argparse
import json
import sys

import numpy as np

from . import bench as bench_mod
from .driver import solve, trace_to_csv
from .duality import select_translation_vector
from .errors import BoxScreenError
from .generate import GenSpec, generate
from .problem_io import _read_csv_array, load_problem, save_problem
from .solvers import SolverConfig

_T_CHOICES = "neg-ones, neg-column=J, neg-mean-column, solve-linear, custom=FILE"


def _build_parser():
    parser = argparse.ArgumentParser(prog="boxscreen")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a synthetic problem to files")
    g.add_argument("--family", choices=["bvls", "nnls"], required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--b", type=float, default=1.0, help="box half-width (bvls)")
    g.add_argument("--sparsity", type=float, default=0.05)
    g.add_argument("--noise-std", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-prefix", required=True)

    s = sub.add_parser("solve", help="solve one problem instance")
    s.add_argument("--a", required=True, help="matrix file (.mtx or CSV)")
    s.add_argument("--y", required=True, help="data vector CSV")
    s.add_argument("--bounds", default="nn",
                   help="'nn', 'box:lo:hi' or a two-column CSV")
    s.add_argument("--solver", choices=["pg", "cd", "active-set"], default="cd")
    s.add_argument("--screen", choices=["on", "off"], default="on")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--t-strategy", default="neg-ones",
                   help=f"one of: {_T_CHOICES}")
    s.add_argument("--inner-passes", type=int, default=1)
    s.add_argument("--max-rounds", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trace-out", default=None)
    s.add_argument("--result-out", default=None)
    s.add_argument("--normalize-columns", action="store_true")

    b = sub.add_parser("bench", help="run a benchmark sweep from a spec file")
    b.add_argument("--spec", required=True, help="JSON sweep description")
    b.add_argument("--out-prefix", required=True)

    c = sub.add_parser("compare-t",
                       help="screening ratio per round for several t choices")
    c.add_argument("--a", default=None)
    c.add_argument("--y", default=None)
    c.add_argument("--bounds", default="nn")
    c.add_argument("--gen-m", type=int, default=None)
    c.add_argument("--gen-n", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--strategies", default="neg-ones,neg-mean-column")
    c.add_argument("--solver", choices=["pg", "cd", "active-set"], default="cd")
    c.add_argument("--tol", type=float, default=1e-6)
    c.add_argument("--out", required=True)
    return parser


def _parse_t_strategy(p, text):
    if "=" in text:
        name, arg = text.split("=", 1)
        if name == "neg-column":
            return select_translation_vector(p, "neg-column", column=int(arg))
        if name == "custom":
            t = _read_csv_array(arg, ncols=1).ravel()
            return select_translation_vector(p, "custom", t=t)
        raise BoxScreenError(f"unknown t strategy {text!r}")
    if text in ("neg-ones", "neg-mean-column", "solve-linear"):
        return select_translation_vector(p, text)
    raise BoxScreenError(f"unknown t strategy {text!r}; use {_T_CHOICES}")


def _cmd_gen(args):
    spec = GenSpec(family=args.family, m=args.m, n=args.n,
                   box_halfwidth=args.b, sparsity=args.sparsity,
                   noise_std=args.noise_std, seed=args.seed)
    paths = save_problem(generate(spec), args.out_prefix)
    print("wrote", *paths)
    return 0


def _cmd_solve(args):
    p = load_problem(args.a, args.y, args.bounds,
                     normalize_columns=args.normalize_columns)
    tv = _parse_t_strategy(p, args.t_strategy) if p.j_inf.size else None
    cfg = SolverConfig(kind=args.solver, inner_passes=args.inner_passes,
                       max_rounds=args.max_rounds, gap_tol=args.tol)
    result = solve(p, cfg, screening=args.screen == "on", tv=tv)
    if args.trace_out:
        trace_to_csv(result.trace, args.trace_out)
    if args.result_out:
        result.to_json(args.result_out, indent=2)
    status = "converged" if result.converged else "NOT converged"
    print(f"{status}: gap={result.gap:.3e} rounds={result.rounds} "
          f"ratio={result.trace[-1].screening_ratio:.3f}")
    return 0


def _cmd_bench(args):
    with open(args.spec) as fh:
        spec = json.load(fh)
    cells = [GenSpec(**cell) for cell in spec["cells"]]
    report = bench_mod.run_bench(cells, spec.get("solvers", ["cd"]),
                                 repetitions=spec.get("repetitions", 5),
                                 gap_tol=spec.get("gap_tol", 1e-6))
    report.rows_to_csv(args.out_prefix + "_rows.csv")
    report.speedups_to_csv(args.out_prefix + "_speedups.csv")
    report.to_json(args.out_prefix + ".json")
    print(f"wrote {args.out_prefix}_rows.csv, {args.out_prefix}_speedups.csv, "
          f"{args.out_prefix}.json")
    return 0


def _cmd_compare_t(args):
    if args.a is not None:
        p = load_problem(args.a, args.y, args.bounds)
    elif args.gen_m and args.gen_n:
        p = generate(GenSpec(family="nnls", m=args.gen_m, n=args.gen_n,
                             seed=args.seed))
    else:
        raise BoxScreenError("compare-t needs --a/--y or --gen-m/--gen-n")
    strategies = []
    for text in args.strategies.split(","):
        text = text.strip()
        if text.startswith("neg-column="):
            strategies.append(("neg-column", {"column": int(text.split("=")[1])}))
        else:
            strategies.append(text)
    rounds, curves = bench_mod.compare_t(p, strategies, solver=args.solver,
                                         gap_tol=args.tol)
    bench_mod.compare_t_to_csv(rounds, curves, args.out)
    print(f"wrote {args.out} ({len(curves)} strategies, {len(rounds)} rounds)")
    return 0


_COMMANDS = {"gen": _cmd_gen, "solve": _cmd_solve, "bench": _cmd_bench,
             "compare-t": _cmd_compare_t}


def cli_main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return _COMMANDS[args.command](args)
    except BoxScreenError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except np.linalg.LinAlgError as exc:
        print(f"error: linear algebra failure: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
