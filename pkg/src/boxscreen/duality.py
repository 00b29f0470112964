"""Dual objective, dual feasibility, duality gap, and dual feasible points.

Two routes produce a dual candidate from a primal iterate:

* dual scaling (all upper bounds finite): theta = y - A x directly, since
  the dual problem is then unconstrained;
* dual translation (some upper bounds infinite): the gradient point is
  shifted along a strictly interior direction t of the dual feasible set
  until every constrained inner product a_j' theta becomes non-positive.
"""

import numpy as np
from scipy import linalg as sla

from .errors import (DimensionMismatch, DualInfeasible, InternalConsistency,
                     NoInteriorPoint, NotInterior, SingularGram, WrongVariant)
from .model import conj_loss, eval_primal, grad_loss

# a_j' theta <= FEASIBILITY_TOL is accepted as dual feasible; the translation
# guarantees <= 0 in exact arithmetic, this only absorbs accumulation error.
FEASIBILITY_TOL = 1e-12

# weak-duality slack: gaps in (-GAP_ROUNDOFF, 0) are treated as round-off.
GAP_ROUNDOFF = 1e-9

STRATEGIES = ("neg-ones", "neg-column", "neg-mean-column", "solve-linear", "custom")


class DualState:
    """Dual point together with its objective value, gap and cached A' theta."""

    __slots__ = ("theta", "d_value", "gap", "a_t_theta_cache")

    def __init__(self, theta, d_value, gap, a_t_theta_cache):
        self.theta = theta
        self.d_value = d_value
        self.gap = gap
        self.a_t_theta_cache = a_t_theta_cache


class TranslationVector:
    """Strictly interior direction of the dual feasible set, with A' t cached.

    Construction verifies max_j a_j' t < -strict_tol * ||a_j||, raising
    NoInteriorPoint otherwise.
    """

    def __init__(self, p, t, strategy="custom", strict_tol=1e-10):
        t = np.array(t, dtype=float).ravel()
        if t.shape[0] != p.m:
            raise DimensionMismatch(f"t has length {t.shape[0]}, expected {p.m}")
        a_t_t = p.a_matrix.T @ t
        if np.any(a_t_t >= -strict_tol * p.col_norms):
            raise NoInteriorPoint(
                f"strategy {strategy!r} did not yield a strictly interior t "
                f"(max a_j' t = {a_t_t.max():.3e})")
        self.t = t
        self.a_t_t = a_t_t
        self.strategy = strategy


def select_translation_vector(p, strategy="neg-ones", column=None, t=None):
    """Build an interior translation vector by one of the known recipes.

    neg-ones        t = -1 (valid for entrywise nonnegative A without zero
                    columns);
    neg-column      t = -a_j for the given column (valid when row j of the
                    Gram matrix is strictly positive);
    neg-mean-column t = -(1/n) sum_j a_j, validated a posteriori;
    solve-linear    least-norm solution of A' t = -1 (needs rank(A) = n <= m);
    custom          user-supplied t, validated.
    """
    a = p.a_matrix
    if strategy == "neg-ones":
        cand = -np.ones(p.m)
    elif strategy == "neg-column":
        if column is None:
            raise ValueError("neg-column strategy needs a column index")
        cand = -a[:, int(column)].copy()
    elif strategy == "neg-mean-column":
        cand = -a.mean(axis=1)
    elif strategy == "solve-linear":
        b = -np.ones(p.n)
        gram = a.T @ a
        try:
            chol = sla.cho_factor(gram)
        except sla.LinAlgError:
            raise SingularGram("A' A is singular; solve-linear needs rank(A) = n <= m")
        cand = a @ sla.cho_solve(chol, b)
        # Cholesky can succeed on a numerically near-singular Gram matrix;
        # a bad solve is caught by the interiority check below.
        if not np.allclose(a.T @ cand, b, atol=1e-6 * max(1.0, abs(b).max())):
            raise SingularGram("A' t = b could not be solved accurately")
    elif strategy == "custom":
        if t is None:
            raise ValueError("custom strategy needs an explicit t")
        cand = np.asarray(t, dtype=float)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    return TranslationVector(p, cand, strategy=strategy)


def eval_dual(p, theta, a_t_theta=None):
    """Dual objective.

    D(theta) = sum_i theta_i y_i - theta_i^2/2
               - sum_j lower_j * min(0, [A' theta]_j)
               - sum_{j: upper_j finite} upper_j * max(0, [A' theta]_j)

    The first sum is -sum_i conj_loss(-theta_i, y_i) for the quadratic loss;
    for coordinates with infinite upper bound the positive-part term is
    omitted (the feasibility constraint replaces it).
    """
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.shape[0] != p.m:
        raise DimensionMismatch(f"theta has length {theta.shape[0]}, expected {p.m}")
    if a_t_theta is None:
        a_t_theta = p.a_matrix.T @ theta
    val = -float(np.sum(conj_loss(-theta, p.y)))
    val -= float(p.lower @ np.minimum(a_t_theta, 0.0))
    finite = ~p.j_inf_mask
    if finite.any():
        val -= float(p.upper[finite] @ np.maximum(a_t_theta[finite], 0.0))
    return val


def is_dual_feasible(p, theta, tol=FEASIBILITY_TOL):
    """True iff a_j' theta <= tol for every j with infinite upper bound."""
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.shape[0] != p.m:
        raise DimensionMismatch(f"theta has length {theta.shape[0]}, expected {p.m}")
    if p.j_inf.size == 0:
        return True
    prods = p.a_matrix[:, p.j_inf].T @ theta
    return bool(np.all(prods <= tol))


def duality_gap(p, pt, theta):
    """Gap P(x) - D(theta) for a feasible primal-dual pair.

    Weak duality makes this nonnegative up to round-off; values below
    -1e-9 indicate an inconsistent pair and raise.
    """
    if not is_dual_feasible(p, theta):
        raise DualInfeasible("theta is not dual feasible")
    gap = eval_primal(p, pt) - eval_dual(p, theta)
    if gap < -GAP_ROUNDOFF:
        raise InternalConsistency(f"duality gap {gap:.3e} below round-off slack")
    return gap


def clamp_gap(gap):
    """Clamp round-off-negative gaps to zero; reject anything more negative."""
    if gap < -GAP_ROUNDOFF:
        raise InternalConsistency(f"duality gap {gap:.3e} below round-off slack")
    return max(gap, 0.0)


def dual_point_bvlr(p, pt):
    """Dual scaling: theta = -grad F(A x; y) = y - A x (needs all u finite)."""
    if p.j_inf.size:
        raise WrongVariant("dual scaling needs every upper bound finite")
    ax = pt.ax_cache if pt.ax_cache is not None else p.a_matrix @ pt.x
    theta = -grad_loss(ax, p.y)
    a_t_theta = p.a_matrix.T @ theta
    d_value = eval_dual(p, theta, a_t_theta)
    gap = clamp_gap(eval_primal(p, pt) - d_value)
    return DualState(theta, d_value, gap, a_t_theta)


def dual_translate(p, tv, z):
    """Shift z along t until every a_j' z becomes non-positive.

    Returns z + eps * t with eps = max_j max(0, a_j' z) / |a_j' t|; a z that
    is already feasible is returned unchanged (eps computes to exactly 0).
    """
    z = np.asarray(z, dtype=float).ravel()
    if z.shape[0] != p.m:
        raise DimensionMismatch(f"z has length {z.shape[0]}, expected {p.m}")
    if np.any(tv.a_t_t >= 0):
        raise NotInterior("translation vector is not strictly interior")
    a_t_z = p.a_matrix.T @ z
    eps = float(np.max(np.maximum(a_t_z, 0.0) / np.abs(tv.a_t_t)))
    return z + eps * tv.t


def dual_point_nnlr(p, tv, pt):
    """Dual translation: theta = Xi_t(-grad F(A x; y)).

    A' theta is assembled from A' z and the precomputed A' t, so the dual
    update costs no extra matrix products beyond the gradient point's.
    """
    ax = pt.ax_cache if pt.ax_cache is not None else p.a_matrix @ pt.x
    zgrad = -grad_loss(ax, p.y)
    if np.any(tv.a_t_t >= 0):
        raise NotInterior("translation vector is not strictly interior")
    a_t_z = p.a_matrix.T @ zgrad
    # only the infinite-upper columns constrain dual feasibility; finite
    # bounds enter the objective through their positive-part terms instead
    j = p.j_inf
    if j.size:
        eps = float(np.max(np.maximum(a_t_z[j], 0.0) / np.abs(tv.a_t_t[j])))
    else:
        eps = 0.0
    theta = zgrad + eps * tv.t
    a_t_theta = a_t_z + eps * tv.a_t_t
    d_value = eval_dual(p, theta, a_t_theta)
    gap = clamp_gap(eval_primal(p, pt) - d_value)
    return DualState(theta, d_value, gap, a_t_theta)
