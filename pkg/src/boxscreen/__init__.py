"""Safe screening for non-negative and bounded-variable least squares."""

from .driver import SolveResult, TraceRecord, solve, trace_to_csv
from .duality import (DualState, TranslationVector, dual_point_bvlr,
                      dual_point_nnlr, dual_translate, duality_gap, eval_dual,
                      is_dual_feasible, select_translation_vector)
from .estimator import BoxConstrainedRegression
from .generate import GenSpec, gen_bvls, gen_nnls, generate
from .model import (PrimalPoint, Problem, QuadraticLoss, conj_loss, eval_loss,
                    eval_primal, grad_loss)
from .problem_io import load_problem, save_problem
from .screening import (ScreeningState, apply_screening, forward_product,
                        gap_safe_radius, safe_screen_test)
from .solvers import (ActiveSetState, SolverConfig, active_set_update,
                      auto_step_size, cd_update, pg_update,
                      spectral_norm_estimate)

__all__ = [
    "BoxConstrainedRegression", "DualState", "GenSpec", "PrimalPoint",
    "Problem", "QuadraticLoss", "ScreeningState", "SolveResult",
    "SolverConfig", "ActiveSetState", "TraceRecord", "TranslationVector",
    "active_set_update", "apply_screening", "auto_step_size", "cd_update",
    "conj_loss", "dual_point_bvlr", "dual_point_nnlr", "dual_translate",
    "duality_gap", "eval_dual", "eval_loss", "eval_primal", "forward_product",
    "gap_safe_radius", "gen_bvls", "gen_nnls", "generate", "grad_loss",
    "is_dual_feasible", "load_problem", "pg_update", "safe_screen_test",
    "save_problem", "select_translation_vector", "solve",
    "spectral_norm_estimate", "trace_to_csv",
]

__version__ = "0.1.0"
