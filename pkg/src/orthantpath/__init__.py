"""Exact lasso, adaptive-lasso and elastic-net regularization paths by orthants."""

from .errors import *  # noqa: F401,F403
from .linalg import (
    Dataset,
    GramMask,
    OrthantSign,
    apply_sign,
    as_orthant,
    masked_pseudo_inverse,
    masked_pseudo_inverse_ridge,
    orthant_string,
    parse_orthant,
)
from .lasso import (
    PenaltyWeights,
    adaptive_weights,
    beta_hat_lasso,
    c2u_lasso,
    criterion_L,
    criterion_Lhat,
    lambda_max_lasso,
    lasso_path,
    ols_fit,
    shrink_step,
)
from .enet import (
    EnetConfig,
    Solver,
    beta_hat_enet,
    breakpoint_function,
    c2u_enet,
    criterion_E,
    criterion_Ehat,
    enet_path,
    lambda_max_enet,
    solve_breakpoint,
)
from .oracle import LambdaGrid, OrthantFit, all_orthant_fit, all_orthant_path, enumerate_valid_moves
from .dataio import BreakpointTable, load_csv, prepare
from .path import PathBreakpoint, RegPath, ShrinkCandidate

__version__ = "0.1.0"
