"""Benchmark runner: paired screening-on/off timings and speedup reports."""

import csv
import hashlib
import json
import os
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .driver import solve
from .duality import select_translation_vector
from .generate import PRNG_NAME, generate
from .solvers import SolverConfig

THREADS_ENV = "BOXSCREEN_THREADS"


def instance_hash(p):
    h = hashlib.sha256()
    h.update(p.a_matrix.tobytes())
    h.update(p.y.tobytes())
    h.update(p.lower.tobytes())
    h.update(p.upper.tobytes())
    return h.hexdigest()[:16]


@dataclass
class BenchRow:
    solver: str
    screening: bool
    family: str
    m: int
    n: int
    seed: int
    elapsed: float
    rounds: int
    gap: float
    screening_ratio: float
    instance: str


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)
    speedups: list = field(default_factory=list)
    meta: dict = field(default_factory=lambda: {"prng": PRNG_NAME})

    def to_json(self, path=None, indent=2):
        d = {"meta": self.meta,
             "rows": [vars(r) for r in self.rows],
             "speedups": self.speedups}
        text = json.dumps(d, indent=indent)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text

    def rows_to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["solver", "screening", "family", "m", "n",
                             "seed", "elapsed_s", "rounds", "gap",
                             "ratio", "instance"])
            for r in self.rows:
                writer.writerow([r.solver, "on" if r.screening else "off",
                                 r.family, r.m, r.n, r.seed,
                                 f"{r.elapsed:.9f}", r.rounds,
                                 f"{r.gap:.17g}",
                                 f"{r.screening_ratio:.17g}", r.instance])

    def speedups_to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["solver", "family", "m", "n", "seed",
                             "elapsed_off_s", "elapsed_on_s", "speedup",
                             "ratio_on"])
            for s in self.speedups:
                writer.writerow([s["solver"], s["family"], s["m"], s["n"],
                                 s["seed"], f"{s['elapsed_off']:.9f}",
                                 f"{s['elapsed_on']:.9f}",
                                 f"{s['speedup']:.6g}",
                                 f"{s['ratio_on']:.17g}"])


def _timed_run(p, solver, screening, repetitions, gap_tol, tv=None):
    times, last = [], None
    for _ in range(repetitions):
        cfg = SolverConfig(kind=solver, gap_tol=gap_tol)
        res = solve(p, cfg, screening=screening, tv=tv)
        times.append(res.trace[-1].elapsed)
        last = res
    return statistics.median(times), last


def _bench_cell(spec, solver, repetitions, gap_tol):
    p = generate(spec)
    tv = select_translation_vector(p, "neg-ones") if p.j_inf.size else None
    inst = instance_hash(p)
    t_off, r_off = _timed_run(p, solver, False, repetitions, gap_tol, tv)
    t_on, r_on = _timed_run(p, solver, True, repetitions, gap_tol, tv)
    rows = [
        BenchRow(solver, False, spec.family, spec.m, spec.n, spec.seed,
                 t_off, r_off.rounds, r_off.gap,
                 r_off.trace[-1].screening_ratio, inst),
        BenchRow(solver, True, spec.family, spec.m, spec.n, spec.seed,
                 t_on, r_on.rounds, r_on.gap,
                 r_on.trace[-1].screening_ratio, inst),
    ]
    speedup = {"solver": solver, "family": spec.family, "m": spec.m,
               "n": spec.n, "seed": spec.seed, "elapsed_off": t_off,
               "elapsed_on": t_on, "speedup": t_off / t_on,
               "ratio_on": r_on.trace[-1].screening_ratio,
               "instance": inst}
    return rows, speedup


def run_bench(specs, solvers, repetitions=5, gap_tol=1e-6):
    """Paired screening-off / screening-on sweep over (spec, solver) cells.

    Each timed solve runs on a single thread; independent cells may run in
    parallel up to the BOXSCREEN_THREADS cap (default: sequential). Failed
    cells are reported and skipped rather than aborting the sweep.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    cells = [(spec, solver) for spec in specs for solver in solvers]
    report = BenchReport()
    report.meta.update({"repetitions": repetitions, "gap_tol": gap_tol})
    n_threads = int(os.environ.get(THREADS_ENV, "1"))

    def run_cell(cell):
        spec, solver = cell
        try:
            return _bench_cell(spec, solver, repetitions, gap_tol)
        except Exception as exc:  # keep the sweep alive
            return ([], {"solver": solver, "family": spec.family,
                         "m": spec.m, "n": spec.n, "seed": spec.seed,
                         "error": f"{type(exc).__name__}: {exc}"})

    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(run_cell, cells))
    else:
        results = [run_cell(c) for c in cells]
    for rows, speedup in results:
        report.rows.extend(rows)
        if "error" in speedup:
            report.meta.setdefault("errors", []).append(speedup)
        else:
            report.speedups.append(speedup)
    return report


def compare_t(p, strategies, solver="cd", gap_tol=1e-6, columns=None):
    """Screening-ratio-per-round curves for several translation strategies.

    All curves are padded to a common round grid (shorter runs repeat their
    final ratio) so they can be plotted against each other directly.
    Returns (rounds, {strategy_label: ratio_list}).
    """
    curves = {}
    for strat in strategies:
        if isinstance(strat, tuple):
            name, kwargs = strat
        else:
            name, kwargs = strat, {}
        tv = select_translation_vector(p, name, **kwargs)
        cfg = SolverConfig(kind=solver, gap_tol=gap_tol)
        res = solve(p, cfg, screening=True, tv=tv)
        label = name if not kwargs else f"{name}:{kwargs.get('column')}"
        curves[label] = [rec.screening_ratio for rec in res.trace]
    n_rounds = max(len(c) for c in curves.values())
    for label, c in curves.items():
        c.extend([c[-1]] * (n_rounds - len(c)))
    return list(range(1, n_rounds + 1)), curves


def compare_t_to_csv(rounds, curves, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round"] + list(curves))
        for i, rnd in enumerate(rounds):
            writer.writerow([rnd] + [f"{curves[k][i]:.17g}" for k in curves])
