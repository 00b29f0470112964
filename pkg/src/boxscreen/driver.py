"""Screening-solver loop: primal update, dual point, safe radius, screening.

Per round, the dual point and the gap are evaluated on the reduced problem
(preserved columns, saturated part folded into z). Screening a coordinate
safely is exactly what makes the reduced problem equivalent to the original
one, so the safe sphere of the reduced problem is itself safe for the
preserved coordinates; this keeps the whole screening step at
O(m * (|preserved| + 1)). Convergence is only declared after a full
from-scratch duality-gap certificate on the original problem.
"""

import csv
import json
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from .duality import (clamp_gap, dual_point_bvlr, dual_point_nnlr,
                      select_translation_vector)
from .model import PrimalPoint, QuadraticLoss
from .screening import (ScreeningState, apply_screening, gap_safe_radius,
                        safe_screen_test)
from .solvers import (ActiveSetState, SolverConfig, Workspace,
                      active_set_step, auto_step_size, cd_sweep, pg_step)


@dataclass
class TraceRecord:
    round: int
    elapsed: float
    primal: float
    dual: float
    gap: float
    preserved_count: int
    screening_ratio: float
    newly_screened_lower: int = 0
    newly_screened_upper: int = 0


@dataclass
class SolveResult:
    x: np.ndarray
    theta: np.ndarray
    gap: float
    rounds: int
    converged: bool
    trace: list = field(default_factory=list)
    sat_lower: np.ndarray = field(default_factory=lambda: np.empty(0, int))
    sat_upper: np.ndarray = field(default_factory=lambda: np.empty(0, int))

    def to_dict(self):
        d = asdict(self)
        d["x"] = self.x.tolist()
        d["theta"] = self.theta.tolist()
        d["sat_lower"] = self.sat_lower.tolist()
        d["sat_upper"] = self.sat_upper.tolist()
        return d

    def to_json(self, path=None, indent=None):
        text = json.dumps(self.to_dict(), indent=indent)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


TRACE_CSV_COLUMNS = ("round", "elapsed_s", "primal", "dual", "gap",
                     "preserved", "ratio")


def trace_to_csv(trace, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_CSV_COLUMNS)
        for rec in trace:
            writer.writerow([rec.round, f"{rec.elapsed:.9f}",
                             f"{rec.primal:.17g}", f"{rec.dual:.17g}",
                             f"{rec.gap:.17g}", rec.preserved_count,
                             f"{rec.screening_ratio:.17g}"])


def record_trace(trace, round_idx, elapsed, primal, dual, gap, st, n,
                 newly_lower=0, newly_upper=0):
    rec = TraceRecord(round_idx, elapsed, primal, dual, gap,
                      st.preserved_count, st.screening_ratio(n),
                      newly_lower, newly_upper)
    trace.append(rec)
    return rec


class _Timer:
    """Monotonic stopwatch with pause/resume (for the offline-gap baseline)."""

    def __init__(self):
        self._start = time.perf_counter()
        self._excluded = 0.0
        self._pause_at = None

    def pause(self):
        self._pause_at = time.perf_counter()

    def resume(self):
        self._excluded += time.perf_counter() - self._pause_at
        self._pause_at = None

    def elapsed(self):
        now = self._pause_at if self._pause_at is not None else time.perf_counter()
        return now - self._start - self._excluded


def _certified_gap(p, pt, tv):
    """Duality gap recomputed from scratch on the full problem."""
    fresh = PrimalPoint(pt.x.copy(), ax_cache=p.a_matrix @ pt.x)
    if p.j_inf.size:
        return dual_point_nnlr(p, tv, fresh)
    return dual_point_bvlr(p, fresh)


def _reduced_dual(p, st, ws, theta, v):
    """Dual objective of the reduced problem (preserved columns, y - z)."""
    val = float(theta @ ws.resid_target) - 0.5 * float(theta @ theta)
    idx = ws.idx
    val -= float(p.lower[idx] @ np.minimum(v, 0.0))
    fin = ~p.j_inf_mask[idx]
    if fin.any():
        val -= float(p.upper[idx][fin] @ np.maximum(v[fin], 0.0))
    return val


def solve(p, cfg=None, screening=True, tv=None, loss=QuadraticLoss):
    """Run the chosen primal solver with (or without) dynamic safe screening.

    With screening off, the gap is still evaluated each round so both modes
    share the stopping criterion, but its cost is excluded from the timing
    (offline-gap convention for baselines).
    """
    cfg = cfg or SolverConfig()
    alpha = loss.alpha
    n, m = p.n, p.m
    if p.j_inf.size and tv is None:
        tv = select_translation_vector(p, "neg-ones")

    if cfg.kind == "active-set":
        # free variables must start on a bound for the passive/bound split
        x0 = p.lower.copy()
        max_rounds = cfg.max_rounds or 10 * n
    else:
        x0 = np.clip(np.zeros(n), p.lower, p.upper)
        max_rounds = cfg.max_rounds or 10**6
    pt = PrimalPoint(x0)
    st = ScreeningState(p)
    as_state = ActiveSetState(n) if cfg.kind == "active-set" else None
    step = cfg.step_size
    step_basis = n
    if cfg.kind == "pg" and step is None:
        step = auto_step_size(p.a_matrix, alpha, cfg.power_iters)

    trace = []
    timer = _Timer()
    ws = Workspace(p, st, pt)
    a_t_theta_full = np.zeros(n)
    converged = False
    theta_out = np.zeros(m)
    gap_out = np.inf
    rounds = 0

    for rnd in range(1, max_rounds + 1):
        rounds = rnd
        optimal = False
        if cfg.kind == "pg":
            pg_step(ws, step, cfg.inner_passes)
        elif cfg.kind == "cd":
            cd_sweep(ws, cfg.inner_passes)
        else:
            passive = as_state.passive[ws.idx]
            optimal = active_set_step(ws, passive, st.col_norms[ws.idx])
            as_state.passive[ws.idx] = passive

        if not screening:
            timer.pause()

        idx = ws.idx
        theta = -ws.resid
        atz = -ws.grad
        if p.j_inf.size:
            inf_here = p.j_inf_mask[idx]
            att = tv.a_t_t[idx]
            if inf_here.any():
                eps = float(np.max(np.maximum(atz[inf_here], 0.0)
                                   / np.abs(att[inf_here])))
            else:
                eps = 0.0
            if eps > 0.0:
                theta = theta + eps * tv.t
            v = atz + eps * att
        else:
            v = atz
        primal = 0.5 * float(ws.resid @ ws.resid)
        dual_val = _reduced_dual(p, st, ws, theta, v)
        gap = clamp_gap(primal - dual_val)
        theta_out, gap_out = theta, gap

        if gap < cfg.gap_tol:
            ws.sync(pt)
            ds = _certified_gap(p, pt, tv)
            theta_out, gap_out = ds.theta, ds.gap
            if ds.gap < cfg.gap_tol:
                converged = True

        # screening runs even on the stopping round (the loop body precedes
        # the gap check), so a final zero-radius sweep still fires
        n_lo = n_up = 0
        if screening:
            st.radius = gap_safe_radius(gap, alpha)
            a_t_theta_full[idx] = v
            # absorb inner-product round-off so a zero radius cannot screen
            # coordinates whose a_j' theta is noise around zero
            slack = 1e-12 * max(1.0, float(np.linalg.norm(theta)))
            new_lo, new_up = safe_screen_test(st, a_t_theta_full, p, slack)
            n_lo, n_up = new_lo.size, new_up.size
            if n_lo or n_up:
                ws.sync(pt)
                apply_screening(st, new_lo, new_up, pt, p)
                if as_state is not None:
                    mask = np.zeros(n, dtype=bool)
                    mask[st.preserved] = True
                    as_state.drop_screened(mask)
                ws.refresh(p, st, pt)
                # the old step stays valid for any submatrix; re-estimate
                # only after a sizeable shrink to amortize the power method
                if (cfg.kind == "pg" and cfg.step_size is None
                        and st.preserved.size < 0.5 * step_basis):
                    step = auto_step_size(ws.a_act, alpha, cfg.power_iters)
                    step_basis = st.preserved.size

        if not screening:
            timer.resume()

        record_trace(trace, rnd, timer.elapsed(), primal, dual_val, gap,
                     st, n, n_lo, n_up)
        if converged:
            break
        if optimal:
            # active set reports KKT-optimal; trust the certified gap only
            ws.sync(pt)
            ds = _certified_gap(p, pt, tv)
            theta_out, gap_out = ds.theta, ds.gap
            converged = ds.gap < cfg.gap_tol
            break

    ws.sync(pt)
    return SolveResult(x=pt.x.copy(), theta=np.asarray(theta_out).copy(),
                       gap=gap_out, rounds=rounds, converged=converged,
                       trace=trace, sat_lower=st.sat_lower.copy(),
                       sat_upper=st.sat_upper.copy())
