"""Primal updaters: projected gradient, cyclic coordinate descent, active set.

The updaters operate on a :class:`Workspace` holding the preserved-column
submatrix, the running residual A x - y and the restricted gradient
A' residual. The driver keeps one workspace alive across rounds and
refreshes it only when screening shrinks the preserved set, so a round
costs O(m * |preserved|) rather than O(m n).
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .errors import SingularSubproblem, StepSizeTooLarge

_SOLVER_KINDS = ("pg", "cd", "active-set")


@dataclass
class SolverConfig:
    kind: str = "cd"
    step_size: float | None = None  # None = auto via power iteration
    power_iters: int = 50
    inner_passes: int = 1
    max_rounds: int | None = None
    gap_tol: float = 1e-6

    def __post_init__(self):
        if self.kind not in _SOLVER_KINDS:
            raise ValueError(f"unknown solver kind {self.kind!r}")
        if self.gap_tol <= 0:
            raise ValueError("gap_tol must be positive")
        if self.inner_passes < 1:
            raise ValueError("inner_passes must be >= 1")


class ActiveSetState:
    """Passive (free) set bookkeeping for the active-set solver."""

    def __init__(self, n):
        self.passive = np.zeros(n, dtype=bool)

    def drop_screened(self, preserved_mask):
        self.passive &= preserved_mask


class Workspace:
    """Preserved-column view of the problem plus running residual/gradient."""

    def __init__(self, p, st, pt):
        self.refresh(p, st, pt)

    def refresh(self, p, st, pt):
        idx = st.preserved
        self.idx = idx
        self.a_act = np.asfortranarray(p.a_matrix[:, idx])
        self.lo = p.lower[idx]
        self.hi = p.upper[idx]
        self.sq = st.col_norms[idx] ** 2
        self.x = pt.x[idx].copy()
        self.resid_offset = st.z - p.y
        self.resid_target = p.y - st.z
        self.resid = self.a_act @ self.x + self.resid_offset
        self.grad = self.a_act.T @ self.resid

    def sync(self, pt):
        pt.x[self.idx] = self.x
        pt.ax_cache = None  # recompute from x when needed


def spectral_norm_estimate(a_sub, power_iters=50, seed=0):
    """Largest singular value of a_sub estimated by power iteration on A'A."""
    a_sub = np.asarray(a_sub, dtype=float)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(a_sub.shape[1])
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(power_iters):
        w = a_sub.T @ (a_sub @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        sigma = np.sqrt(nw)
    return float(sigma)


def auto_step_size(a_sub, alpha, power_iters=50):
    """Safe projected-gradient step 0.99 * alpha / sigma^2.

    The power-iteration estimate is inflated by 1/0.999 so it remains a
    valid upper bound on the spectral norm.
    """
    sigma = spectral_norm_estimate(a_sub, power_iters=power_iters) / 0.999
    if sigma == 0.0:
        return 1.0
    return 0.99 * alpha / sigma**2


def pg_step(ws, step_size, passes=1):
    """Projected-gradient passes: x <- clip(x - eta * grad, lo, hi).

    Keeps ws.resid and ws.grad consistent with the final x; the objective
    must be non-increasing for a valid step size.
    """
    obj = 0.5 * float(ws.resid @ ws.resid)
    for _ in range(passes):
        ws.x = np.clip(ws.x - step_size * ws.grad, ws.lo, ws.hi)
        ws.resid = ws.a_act @ ws.x + ws.resid_offset
        new_obj = 0.5 * float(ws.resid @ ws.resid)
        if new_obj > obj + 1e-9:
            raise StepSizeTooLarge(
                f"objective rose from {obj:.6e} to {new_obj:.6e}")
        obj = new_obj
        ws.grad = ws.a_act.T @ ws.resid


def cd_sweep(ws, passes=1):
    """Cyclic coordinate-descent sweeps with incremental residual updates.

    Each coordinate moves to its box-clipped exact minimizer; the residual
    is corrected in O(m) per changed coordinate and ws.grad is refreshed
    once at the end.
    """
    x, resid, a_act = ws.x, ws.resid, ws.a_act
    lo, hi, sq = ws.lo, ws.hi, ws.sq
    for _ in range(passes):
        for k in range(x.size):
            col = a_act[:, k]
            step = float(col @ resid) / sq[k]
            new = min(max(x[k] - step, lo[k]), hi[k])
            delta = new - x[k]
            if delta != 0.0:
                resid += delta * col
                x[k] = new
    ws.grad = a_act.T @ resid


def _restricted_ls(a_act, rhs, passive):
    cols = np.flatnonzero(passive)
    a_p = a_act[:, cols]
    gram = a_p.T @ a_p
    try:
        chol = sla.cho_factor(gram)
    except sla.LinAlgError:
        raise SingularSubproblem(
            "passive-column least-squares system is singular")
    return cols, sla.cho_solve(chol, a_p.T @ rhs)


def active_set_step(ws, passive, col_norms):
    """One outer active-set iteration (bounded-variable Lawson-Hanson).

    Frees the bound coordinate whose multiplier most violates optimality,
    solves the unconstrained least squares on the passive columns and backs
    off along the segment until every passive coordinate is within bounds,
    shrinking the passive set at each hit. ``passive`` is a boolean mask
    over the workspace columns, updated in place.

    Returns True when the current point already satisfies the optimality
    conditions (nothing to free).
    """
    x, a_act, lo, hi = ws.x, ws.a_act, ws.lo, ws.hi
    w = -ws.grad  # w = A'(y - z - A x) restricted
    scale = max(np.linalg.norm(ws.resid), 1.0)
    tol = 1e-10 * col_norms * scale
    at_lower = ~passive & (x <= lo)
    at_upper = ~passive & ~np.isinf(hi) & (x >= hi)
    viol = np.where(at_lower & (w > tol), w, 0.0)
    viol = np.maximum(viol, np.where(at_upper & (w < -tol), -w, 0.0))
    if not viol.any():
        return True

    passive[int(np.argmax(viol))] = True
    yhat = ws.resid_target
    for _ in range(2 * x.size + 2):
        fixed = ~passive
        rhs = yhat - a_act[:, fixed] @ x[fixed] if fixed.any() else yhat
        cols, s = _restricted_ls(a_act, rhs, passive)
        below = s < lo[cols]
        above = s > hi[cols]
        if not below.any() and not above.any():
            x[cols] = s
            break
        # back off along the segment from x to s until the first bound hit
        xp = x[cols]
        with np.errstate(divide="ignore", invalid="ignore"):
            steps = np.where(below, (lo[cols] - xp) / (s - xp),
                             np.where(above, (hi[cols] - xp) / (s - xp),
                                      np.inf))
        alpha = float(np.min(steps))
        alpha = min(max(alpha, 0.0), 1.0)
        x[cols] = xp + alpha * (s - xp)
        hit = steps <= alpha + 1e-12
        x[cols[hit & below]] = lo[cols[hit & below]]
        x[cols[hit & above]] = hi[cols[hit & above]]
        passive[cols[hit]] = False
    else:
        raise SingularSubproblem("active-set inner loop failed to make progress")

    ws.resid = a_act @ x + ws.resid_offset
    ws.grad = a_act.T @ ws.resid
    return False


def pg_update(p, st, pt, cfg, step_size):
    """Spec-level projected-gradient update on the preserved set.

    Builds a one-shot workspace; the driver uses :func:`pg_step` on a
    persistent one instead. Returns (residual, restricted gradient).
    """
    ws = Workspace(p, st, pt)
    pg_step(ws, step_size, cfg.inner_passes)
    ws.sync(pt)
    pt.ax_cache = ws.resid + p.y
    return ws.resid, ws.grad


def cd_update(p, st, pt, cfg):
    """Spec-level coordinate-descent update on the preserved set."""
    ws = Workspace(p, st, pt)
    cd_sweep(ws, cfg.inner_passes)
    ws.sync(pt)
    pt.ax_cache = ws.resid + p.y
    return ws.resid, ws.grad


def active_set_update(p, st, pt, as_state, cfg):
    """Spec-level single outer active-set iteration on the preserved set.

    Returns (residual, restricted gradient, optimal_flag).
    """
    ws = Workspace(p, st, pt)
    passive = as_state.passive[st.preserved]
    optimal = active_set_step(ws, passive, st.col_norms[st.preserved])
    as_state.passive[st.preserved] = passive
    ws.sync(pt)
    pt.ax_cache = ws.resid + p.y
    return ws.resid, ws.grad, optimal
