"""Loss, conjugate, and primal-objective unit tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxscreen import (PrimalPoint, Problem, QuadraticLoss, conj_loss,
                       eval_loss, eval_primal, grad_loss)
from boxscreen.errors import DimensionMismatch, InfeasiblePoint

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


class TestEvalLoss:
    def test_zero_at_fit(self):
        assert eval_loss(1.0, 1.0) == 0.0

    def test_examples(self):
        assert eval_loss(2.0, 0.0) == 2.0
        assert eval_loss(0.0, 3.0) == 4.5

    @given(finite, finite)
    def test_nonneg_and_zero_iff_fit(self, z, y):
        v = eval_loss(z, y)
        assert v >= 0.0
        if z == y:
            assert v == 0.0
        elif v == 0.0:
            # squaring can underflow for differences below ~1e-154
            assert abs(z - y) < 1e-150

    def test_vectorized(self):
        z = np.array([1.0, 2.0, 0.0])
        y = np.array([1.0, 0.0, 3.0])
        np.testing.assert_allclose(eval_loss(z, y), [0.0, 2.0, 4.5])


class TestGradLoss:
    def test_examples(self):
        assert grad_loss(1.0, 1.0) == 0.0
        assert grad_loss(2.0, 0.0) == 2.0
        assert grad_loss(0.0, 3.0) == -3.0

    def test_finite_difference(self, rng):
        h = 1e-5
        for _ in range(200):
            z, y = rng.uniform(-10, 10, 2)
            fd = (eval_loss(z + h, y) - eval_loss(z - h, y)) / (2 * h)
            assert abs(grad_loss(z, y) - fd) < 1e-6

    def test_lipschitz_exact(self, rng):
        # |f'(z1) - f'(z2)| <= (1/alpha)|z1 - z2| holds with equality here
        for _ in range(200):
            z1, z2, y = rng.uniform(-50, 50, 3)
            lhs = abs(grad_loss(z1, y) - grad_loss(z2, y))
            assert lhs <= (1.0 / QuadraticLoss.alpha) * abs(z1 - z2) + 1e-12


class TestConjLoss:
    def test_examples(self):
        assert conj_loss(0.0, 5.0) == 0.0
        assert conj_loss(1.0, 1.0) == 1.5
        assert conj_loss(-1.0, -1.0) == 1.5

    def test_fenchel_young(self, rng):
        z = rng.uniform(-10, 10, 10**4)
        u = rng.uniform(-10, 10, 10**4)
        y = rng.uniform(-10, 10, 10**4)
        slack = eval_loss(z, y) + conj_loss(u, y) - z * u
        assert slack.min() >= -1e-12

    def test_fenchel_young_equality(self, rng):
        z = rng.uniform(-10, 10, 1000)
        y = rng.uniform(-10, 10, 1000)
        u = z - y
        slack = eval_loss(z, y) + conj_loss(u, y) - z * u
        assert np.abs(slack).max() < 1e-9


class TestQuadraticLoss:
    def test_alpha(self):
        assert QuadraticLoss.alpha == 1.0

    def test_zero_at_data(self, rng):
        for y in rng.uniform(-5, 5, 20):
            assert QuadraticLoss.value(y, y) == 0.0
            assert QuadraticLoss.grad(y, y) == 0.0


class TestProblem:
    def test_basic_construction(self):
        p = Problem(np.eye(2), [1.0, 2.0], 0.0, np.inf)
        assert p.m == 2 and p.n == 2
        np.testing.assert_array_equal(p.j_inf, [0, 1])

    def test_j_inf_partial(self):
        p = Problem(np.eye(3), np.zeros(3), 0.0, [1.0, np.inf, 2.0])
        np.testing.assert_array_equal(p.j_inf, [1])

    def test_rejects_equal_bounds(self):
        with pytest.raises(ValueError):
            Problem(np.eye(2), np.zeros(2), [0.0, 0.0], [1.0, 0.0])

    def test_rejects_nan(self):
        a = np.eye(2)
        a2 = a.copy()
        a2[0, 0] = np.nan
        with pytest.raises(ValueError):
            Problem(a2, np.zeros(2), 0.0, 1.0)
        with pytest.raises(ValueError):
            Problem(a, [np.nan, 0.0], 0.0, 1.0)

    def test_rejects_infinite_lower(self):
        with pytest.raises(ValueError):
            Problem(np.eye(2), np.zeros(2), -np.inf, 1.0)

    def test_rejects_bad_shapes(self):
        with pytest.raises(DimensionMismatch):
            Problem(np.zeros(3), np.zeros(3), 0.0, 1.0)
        with pytest.raises(DimensionMismatch):
            Problem(np.eye(2), np.zeros(3), 0.0, 1.0)

    def test_immutability(self):
        p = Problem(np.eye(2), np.zeros(2), 0.0, 1.0)
        with pytest.raises(ValueError):
            p.a_matrix[0, 0] = 5.0

    def test_is_box_feasible(self):
        p = Problem(np.eye(2), np.zeros(2), 0.0, 1.0)
        assert p.is_box_feasible([0.0, 1.0])
        assert not p.is_box_feasible([-1e-16, 0.5])


class TestEvalPrimal:
    def test_exact_fit(self):
        p = Problem(np.eye(2), [1.0, 1.0], 0.0, 2.0)
        assert eval_primal(p, PrimalPoint([1.0, 1.0])) == 0.0

    def test_partial_fit(self):
        p = Problem(np.eye(2), [1.0, 1.0], 0.0, 2.0)
        assert eval_primal(p, PrimalPoint([1.0, 0.0])) == 0.5

    def test_rectangular(self):
        p = Problem([[1.0], [1.0]], [2.0, 0.0], 0.0, 2.0)
        assert eval_primal(p, PrimalPoint([1.0])) == 1.0

    def test_infeasible_raises(self):
        p = Problem(np.eye(2), np.zeros(2), 0.0, 1.0)
        with pytest.raises(InfeasiblePoint):
            eval_primal(p, PrimalPoint([-1e-15, 0.0]))

    def test_cache_agreement(self, rng):
        for _ in range(25):
            m, n = rng.integers(1, 12, 2)
            a = rng.standard_normal((m, n))
            y = rng.standard_normal(m)
            p = Problem(a, y, -2.0, 2.0)
            x = rng.uniform(-2, 2, n)
            plain = eval_primal(p, PrimalPoint(x))
            cached = eval_primal(p, PrimalPoint(x, ax_cache=a @ x))
            assert abs(plain - cached) <= 1e-10 * max(1.0, abs(plain))
