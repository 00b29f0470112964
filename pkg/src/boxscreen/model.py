"""Problem container and the quadratic loss (value, derivative, conjugate)."""

import numpy as np

from .errors import DimensionMismatch, InfeasiblePoint


def eval_loss(z, y):
    """Squared-error data fit 0.5*(z - y)^2. Accepts scalars or arrays."""
    d = np.asarray(z, dtype=float) - np.asarray(y, dtype=float)
    return 0.5 * d * d if d.ndim else 0.5 * float(d) ** 2


def grad_loss(z, y):
    """Derivative of the squared-error fit w.r.t. its first argument: z - y."""
    d = np.asarray(z, dtype=float) - np.asarray(y, dtype=float)
    return d if d.ndim else float(d)


def conj_loss(u, y):
    """Fenchel conjugate of z -> 0.5*(z - y)^2, namely u*y + 0.5*u^2.

    Satisfies Fenchel-Young: eval_loss(z, y) + conj_loss(u, y) >= z*u,
    with equality iff u = z - y.
    """
    u = np.asarray(u, dtype=float)
    y = np.asarray(y, dtype=float)
    v = u * y + 0.5 * u * u
    return v if v.ndim else float(v)


class QuadraticLoss:
    """Separable quadratic data-fit term.

    ``alpha`` is the strong-concavity constant of the associated dual
    (equivalently, 1/alpha is the Lipschitz constant of the derivative);
    it equals 1 for the plain squared error.
    """

    alpha = 1.0

    value = staticmethod(eval_loss)
    grad = staticmethod(grad_loss)
    conjugate = staticmethod(conj_loss)


class Problem:
    """Immutable box-constrained linear regression instance.

    min 0.5*||A x - y||^2  s.t.  lower <= x <= upper, with upper entries
    allowed to be +inf. Zero columns are rejected (they would make the
    screening column norms degenerate and the fit for that variable vacuous).
    """

    def __init__(self, a_matrix, y, lower, upper):
        a = np.array(a_matrix, dtype=float, order="F")
        y = np.array(y, dtype=float).ravel()
        if a.ndim != 2:
            raise DimensionMismatch("A must be a 2-d matrix")
        m, n = a.shape
        if m < 1 or n < 1:
            raise DimensionMismatch("A must have at least one row and column")
        if y.shape[0] != m:
            raise DimensionMismatch(f"y has length {y.shape[0]}, expected {m}")
        lower = np.broadcast_to(np.asarray(lower, dtype=float), (n,)).copy()
        upper = np.broadcast_to(np.asarray(upper, dtype=float), (n,)).copy()
        if np.isnan(a).any() or np.isnan(y).any():
            raise ValueError("NaN entries in A or y")
        if np.isnan(lower).any() or np.isnan(upper).any():
            raise ValueError("NaN entries in bounds")
        if not np.all(np.isfinite(lower)):
            raise ValueError("lower bounds must be finite")
        if np.isinf(a).any() or np.isinf(y).any():
            raise ValueError("A and y must be finite")
        if not np.all(lower < upper):
            raise ValueError("need lower_j < upper_j for every coordinate")
        self.a_matrix = a
        self.y = y
        self.lower = lower
        self.upper = upper
        self.m = m
        self.n = n
        self.j_inf_mask = np.isinf(upper)
        self.j_inf = np.flatnonzero(self.j_inf_mask)
        for arr in (self.a_matrix, self.y, self.lower, self.upper,
                    self.j_inf_mask, self.j_inf):
            arr.setflags(write=False)

    @property
    def col_norms(self):
        norms = np.linalg.norm(self.a_matrix, axis=0)
        return norms

    def is_box_feasible(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionMismatch(f"x has shape {x.shape}, expected ({self.n},)")
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


class PrimalPoint:
    """Box-feasible primal candidate with an optional cached forward product."""

    def __init__(self, x, ax_cache=None):
        self.x = np.array(x, dtype=float).ravel()
        self.ax_cache = None if ax_cache is None else np.array(ax_cache, dtype=float).ravel()


def eval_primal(p, pt):
    """Primal objective 0.5*||A x - y||^2, using the cached A x when present.

    Box feasibility is checked exactly (no tolerance).
    """
    if not p.is_box_feasible(pt.x):
        raise InfeasiblePoint("primal point violates the box constraint")
    ax = pt.ax_cache if pt.ax_cache is not None else p.a_matrix @ pt.x
    if ax.shape != (p.m,):
        raise DimensionMismatch("ax_cache has wrong length")
    r = ax - p.y
    return 0.5 * float(r @ r)
