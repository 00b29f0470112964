"""Primal updater tests: projected gradient, coordinate descent, active set."""

import itertools

import numpy as np
import pytest

from boxscreen import (ActiveSetState, PrimalPoint, Problem, ScreeningState,
                       SolverConfig, active_set_update, auto_step_size,
                       cd_update, pg_update, solve, spectral_norm_estimate)
from boxscreen.errors import StepSizeTooLarge
from conftest import make_instance


def brute_force_box_ls(p):
    """Exhaustive oracle: enumerate all lower/free/upper patterns per
    coordinate, solve the free part by least squares, keep the best feasible
    candidate. Exact for full-column-rank instances with n small."""
    best = np.inf
    best_x = None
    choices = []
    for j in range(p.n):
        opts = ["lower", "free"]
        if np.isfinite(p.upper[j]):
            opts.append("upper")
        choices.append(opts)
    for pattern in itertools.product(*choices):
        x = np.zeros(p.n)
        free = [j for j, c in enumerate(pattern) if c == "free"]
        for j, c in enumerate(pattern):
            if c == "lower":
                x[j] = p.lower[j]
            elif c == "upper":
                x[j] = p.upper[j]
        rhs = p.y - p.a_matrix @ x
        if free:
            sol, *_ = np.linalg.lstsq(p.a_matrix[:, free], rhs, rcond=None)
            x[free] = sol
        if not p.is_box_feasible(x):
            continue
        r = p.a_matrix @ x - p.y
        obj = 0.5 * float(r @ r)
        if obj < best:
            best, best_x = obj, x
    return best, best_x


class TestSpectralNorm:
    def test_identity(self):
        assert spectral_norm_estimate(np.eye(3)) == pytest.approx(1.0, abs=1e-6)

    def test_diag(self):
        assert spectral_norm_estimate(np.diag([3.0, 1.0])) == pytest.approx(3.0, abs=1e-4)

    def test_vs_svd(self, rng):
        for _ in range(10):
            a = rng.standard_normal((20, 10))
            true = np.linalg.svd(a, compute_uv=False)[0]
            est = spectral_norm_estimate(a)
            assert abs(est - true) / true < 1e-3

    def test_auto_step_is_safe(self, rng):
        a = rng.standard_normal((15, 8))
        eta = auto_step_size(a, 1.0)
        true = np.linalg.svd(a, compute_uv=False)[0]
        assert eta <= 1.0 / true**2


class TestProjectedGradient:
    def test_stationary_point_unmoved(self):
        # interior x with zero gradient stays put
        p = Problem(np.eye(2), [0.5, 0.5], -1.0, 1.0)
        st = ScreeningState(p)
        pt = PrimalPoint(np.array([0.5, 0.5]))
        pg_update(p, st, pt, SolverConfig(kind="pg"), step_size=0.5)
        np.testing.assert_allclose(pt.x, [0.5, 0.5])

    def test_explicit_1d_step(self):
        p = Problem([[1.0]], [3.0], 0.0, 1.0)
        st = ScreeningState(p)
        pt = PrimalPoint(np.array([0.0]))
        pg_update(p, st, pt, SolverConfig(kind="pg"), step_size=1.0)
        assert pt.x[0] == 1.0

    def test_objective_non_increasing(self, rng):
        p = make_instance(rng, 20, 10, "bvls")
        st = ScreeningState(p)
        pt = PrimalPoint(np.clip(np.zeros(10), p.lower, p.upper))
        eta = auto_step_size(p.a_matrix, 1.0)
        prev = np.inf
        for _ in range(100):
            resid, _ = pg_update(p, st, pt, SolverConfig(kind="pg"), eta)
            obj = 0.5 * float(resid @ resid)
            assert obj <= prev + 1e-12
            prev = obj

    def test_too_large_step_raises(self, rng):
        a = rng.standard_normal((10, 6))
        p = Problem(a, rng.standard_normal(10) * 5, -10.0, 10.0)
        st = ScreeningState(p)
        pt = PrimalPoint(np.zeros(6))
        sigma = np.linalg.svd(a, compute_uv=False)[0]
        with pytest.raises(StepSizeTooLarge):
            for _ in range(50):
                pg_update(p, st, pt, SolverConfig(kind="pg"), 2.5 / sigma**2)


class TestCoordinateDescent:
    def test_1d_exact_optimum(self):
        p = Problem([[1.0]], [2.0], 0.0, np.inf)
        st = ScreeningState(p)
        pt = PrimalPoint(np.array([0.0]))
        cd_update(p, st, pt, SolverConfig(kind="cd"))
        assert pt.x[0] == 2.0

    def test_coordinate_optimal_unchanged(self):
        p = Problem(np.eye(2), [1.0, 0.0], 0.0, np.inf)
        st = ScreeningState(p)
        pt = PrimalPoint(np.array([1.0, 0.0]))
        cd_update(p, st, pt, SolverConfig(kind="cd"))
        np.testing.assert_allclose(pt.x, [1.0, 0.0])

    def test_kkt_at_convergence(self, rng):
        p = make_instance(rng, 15, 8, "nnls")
        res = solve(p, SolverConfig(kind="cd", gap_tol=1e-10), screening=False)
        g = p.a_matrix.T @ (p.y - p.a_matrix @ res.x)
        at_lower = res.x <= p.lower + 1e-9
        assert np.all(g[at_lower] < 1e-5)
        assert np.all(np.abs(g[~at_lower]) < 1e-5)

    def test_objective_non_increasing(self, rng):
        p = make_instance(rng, 12, 9, "mixed")
        st = ScreeningState(p)
        pt = PrimalPoint(np.clip(np.zeros(9), p.lower, p.upper))
        prev = np.inf
        for _ in range(60):
            resid, _ = cd_update(p, st, pt, SolverConfig(kind="cd"))
            obj = 0.5 * float(resid @ resid)
            assert obj <= prev + 1e-12
            prev = obj


class TestActiveSet:
    def test_two_iteration_example(self):
        p = Problem(np.eye(2), [1.0, -1.0], 0.0, np.inf)
        res = solve(p, SolverConfig(kind="active-set"), screening=False)
        np.testing.assert_allclose(res.x, [1.0, 0.0], atol=1e-12)

    def test_immediate_optimality(self):
        # w <= 0 everywhere at x = 0: nothing enters the passive set
        p = Problem(np.eye(2), [-1.0, -2.0], 0.0, np.inf)
        st = ScreeningState(p)
        pt = PrimalPoint(np.zeros(2))
        as_state = ActiveSetState(2)
        *_, optimal = active_set_update(p, st, pt, as_state,
                                        SolverConfig(kind="active-set"))
        assert optimal
        np.testing.assert_allclose(pt.x, [0.0, 0.0])

    def test_matches_brute_force_oracle(self, rng):
        for i in range(25):
            n = int(rng.integers(2, 7))
            m = n + int(rng.integers(2, 8))
            kind = ("nnls", "bvls", "mixed")[i % 3]
            p = make_instance(rng, m, n, kind)
            res = solve(p, SolverConfig(kind="active-set"), screening=False)
            obj = 0.5 * float(np.sum((p.a_matrix @ res.x - p.y) ** 2))
            best, _ = brute_force_box_ls(p)
            assert obj <= best + 1e-8 * max(1.0, best)

    def test_outer_iteration_budget(self, rng):
        for _ in range(10):
            p = make_instance(rng, 20, 10, "nnls")
            res = solve(p, SolverConfig(kind="active-set"), screening=False)
            assert res.converged
            assert res.rounds <= 10 * 11


class TestSolverAgreement:
    def test_three_solvers_same_objective(self, rng):
        from boxscreen import select_translation_vector
        for kind in ("nnls", "bvls", "mixed"):
            # Gaussian columns keep the Hessian well conditioned so PG
            # reaches tight gaps quickly; nonneg instances would crawl
            a = rng.standard_normal((40, 10))
            y = rng.standard_normal(40)
            lower = np.zeros(10) if kind != "bvls" else np.full(10, -1.0)
            upper = np.full(10, np.inf)
            if kind == "bvls":
                upper = np.full(10, 1.0)
            elif kind == "mixed":
                upper[:5] = 1.5
            p = Problem(a, y, lower, upper)
            tv = (select_translation_vector(p, "solve-linear")
                  if p.j_inf.size else None)
            objs = []
            for sk in ("pg", "cd", "active-set"):
                res = solve(p, SolverConfig(kind=sk, gap_tol=1e-10,
                                            inner_passes=20),
                            screening=False, tv=tv)
                assert res.converged
                objs.append(0.5 * float(np.sum((p.a_matrix @ res.x - p.y) ** 2)))
            ref = objs[-1]
            for o in objs:
                assert abs(o - ref) <= 1e-7 * max(1.0, abs(ref))


class TestSolverConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(kind="newton")
        with pytest.raises(ValueError):
            SolverConfig(gap_tol=0.0)
        with pytest.raises(ValueError):
            SolverConfig(inner_passes=0)
