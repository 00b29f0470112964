"""Scikit-learn style estimator wrapping the screening solver."""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .driver import solve
from .duality import select_translation_vector
from .model import Problem
from .solvers import SolverConfig


class BoxConstrainedRegression(RegressorMixin, BaseEstimator):
    """Least squares with box constraints, accelerated by safe screening.

    Parameters
    ----------
    lower, upper : float or array-like
        Coordinate bounds; ``upper`` may contain ``np.inf``. The defaults
        give non-negative least squares.
    solver : {'pg', 'cd', 'active-set'}
        Primal updater interleaved with the screening step.
    screening : bool
        Disable to run the plain solver (same stopping criterion).
    tol : float
        Duality-gap stopping tolerance.
    t_strategy : str
        Interior translation-vector recipe for problems with infinite
        upper bounds ('neg-ones', 'neg-column', 'neg-mean-column',
        'solve-linear').
    """

    def __init__(self, lower=0.0, upper=np.inf, solver="cd", screening=True,
                 tol=1e-6, max_rounds=None, inner_passes=1, step_size=None,
                 t_strategy="neg-ones", t_column=None):
        self.lower = lower
        self.upper = upper
        self.solver = solver
        self.screening = screening
        self.tol = tol
        self.max_rounds = max_rounds
        self.inner_passes = inner_passes
        self.step_size = step_size
        self.t_strategy = t_strategy
        self.t_column = t_column

    def fit(self, X, y):
        X, y = check_X_y(X, y, y_numeric=True)
        problem = Problem(X, y, self.lower, self.upper)
        cfg = SolverConfig(kind=self.solver, step_size=self.step_size,
                           inner_passes=self.inner_passes,
                           max_rounds=self.max_rounds, gap_tol=self.tol)
        tv = None
        if problem.j_inf.size:
            tv = select_translation_vector(problem, self.t_strategy,
                                           column=self.t_column)
        result = solve(problem, cfg, screening=self.screening, tv=tv)
        self.coef_ = result.x
        self.dual_coef_ = result.theta
        self.gap_ = result.gap
        self.n_iter_ = result.rounds
        self.converged_ = result.converged
        self.trace_ = result.trace
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        return X @ self.coef_
