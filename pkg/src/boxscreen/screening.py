"""Gap safe sphere radius, screening tests, and preserved-set bookkeeping."""

import math

import numpy as np

from .errors import (DimensionMismatch, IndexOutOfPreserved, NegativeGap,
                     ZeroColumn)


def gap_safe_radius(gap, alpha):
    """Safe sphere radius sqrt(2 * gap / alpha); gap must be clamped first."""
    if gap < 0:
        raise NegativeGap(f"gap {gap:.3e} is negative; clamp before the radius")
    return math.sqrt(2.0 * gap / alpha)


class ScreeningState:
    """Preserved set, saturated sets, saturated contribution z and column norms.

    The preserved set is a compact index array (original column indices in
    their original order); screened indices are removed by compaction and
    never re-enter. ``z`` accumulates A_S x_S over screened columns so that
    forward products cost O(m * (|preserved| + 1)).
    """

    def __init__(self, p):
        norms = p.col_norms
        if np.any(norms == 0.0):
            raise ZeroColumn(f"zero column at index {int(np.argmin(norms))}")
        self.preserved = np.arange(p.n)
        self.sat_lower = np.empty(0, dtype=int)
        self.sat_upper = np.empty(0, dtype=int)
        self.z = np.zeros(p.m)
        self.col_norms = norms
        self.radius = math.inf

    @property
    def preserved_count(self):
        return int(self.preserved.size)

    def screening_ratio(self, n):
        return (n - self.preserved.size) / n


def safe_screen_test(st, a_t_theta, p, slack=0.0):
    """Sphere test on the preserved coordinates.

    ``a_t_theta`` is a length-n vector whose preserved entries hold
    a_j' theta for the current dual point (other entries are ignored).
    Returns the newly identified lower- and upper-saturated index sets;
    inequalities are strict, matching the safe rule exactly.

    ``slack`` widens the threshold by slack * ||a_j|| per column. The driver
    sets it to a multiple of eps * ||theta|| so that a computed gap of
    exactly zero (radius zero) cannot screen coordinates whose inner
    product is pure round-off; it only ever makes the test more
    conservative.
    """
    a_t_theta = np.asarray(a_t_theta, dtype=float)
    if a_t_theta.shape[0] != p.n:
        raise DimensionMismatch("a_t_theta must have length n")
    idx = st.preserved
    v = a_t_theta[idx]
    thr = (st.radius + slack) * st.col_norms[idx]
    new_lower = idx[v < -thr]
    upper_ok = ~p.j_inf_mask[idx]
    new_upper = idx[(v > thr) & upper_ok]
    return new_lower, new_upper


def apply_screening(st, new_lower, new_upper, pt, p):
    """Fix newly screened coordinates at their bounds and fold them into z.

    Shrinks the preserved set; screened coordinates never return.
    """
    new_lower = np.asarray(new_lower, dtype=int)
    new_upper = np.asarray(new_upper, dtype=int)
    if new_lower.size == 0 and new_upper.size == 0:
        return st
    newly = np.concatenate([new_lower, new_upper])
    if not np.isin(newly, st.preserved).all():
        raise IndexOutOfPreserved("screened index not in the preserved set")
    pt.x[new_lower] = p.lower[new_lower]
    pt.x[new_upper] = p.upper[new_upper]
    if new_lower.size:
        st.z += p.a_matrix[:, new_lower] @ p.lower[new_lower]
    if new_upper.size:
        st.z += p.a_matrix[:, new_upper] @ p.upper[new_upper]
    st.sat_lower = np.concatenate([st.sat_lower, new_lower])
    st.sat_upper = np.concatenate([st.sat_upper, new_upper])
    keep = ~np.isin(st.preserved, newly)
    st.preserved = st.preserved[keep]
    return st


def forward_product(st, p, x_preserved):
    """A x restricted to the preserved columns plus the saturated part z."""
    x_preserved = np.asarray(x_preserved, dtype=float)
    if x_preserved.shape[0] != st.preserved.size:
        raise DimensionMismatch("x_preserved must match the preserved set size")
    if st.preserved.size == 0:
        return st.z.copy()
    return p.a_matrix[:, st.preserved] @ x_preserved + st.z
