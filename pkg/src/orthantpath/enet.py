"""Exact elastic-net path.

In orthant ``c`` the elastic-net criterion is again a quadratic in ``u``,
now with the ridge-shifted matrix ``S(lam) = C X'X C + lam*(1-alpha)*C^2``:

    C^2 u(lam) = S(lam)^- (C X'Y - alpha*lam*C^2 1).

Trajectories are rational in ``lam``, so breakpoints are roots of
``f_i(lam) = (C^2 u(lam))_i`` and are found numerically.  The sequential
tracer is the same one the lasso uses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence

import numpy as np

from .errors import ConvergenceFailure
from .linalg import (
    Dataset,
    GramMask,
    OrthantSign,
    SpectralBlock,
    apply_sign,
    as_orthant,
    check_alpha,
    masked_pseudo_inverse_ridge,
)
from .path import (
    ACCEPTED,
    NEGATIVE_C2U,
    NO_ROOT,
    NOT_ABOVE_CURRENT,
    RegPath,
    ShrinkCandidate,
    ShrinkEvaluation,
    not_above,
    sign_tolerance,
    trace_path,
)
from .lasso import ols_fit


class Solver(str, enum.Enum):
    BISECTION = "bisection"
    SECANT = "secant"


@dataclass(frozen=True)
class EnetConfig:
    """Elastic-net mixing and root-solver settings.

    ``tol`` is an absolute tolerance on lambda.  ``scan_points`` is the
    number of cells of the coarse grid used to bracket the first sign
    change of ``f_i`` before refining.
    """

    alpha: float = 0.5
    tol: float = 1e-8
    solver: Solver = Solver.BISECTION
    max_iters: int = 200
    scan_points: int = 64

    def __post_init__(self):
        check_alpha(self.alpha)
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.scan_points < 1:
            raise ValueError("scan_points must be at least 1")
        object.__setattr__(self, "solver", Solver(self.solver))


def lambda_max_enet(gm: GramMask, alpha: float) -> float:
    return float(np.abs(gm.xty).max() / alpha)


def c2u_enet(c: Sequence[int], lam: float, gm: GramMask, cfg: EnetConfig) -> np.ndarray:
    c = np.asarray(as_orthant(c), dtype=float)
    sm = masked_pseudo_inverse_ridge(gm.gram, c, lam, cfg.alpha)
    return sm @ (c * gm.xty - cfg.alpha * lam * c * c)


def beta_hat_enet(c: Sequence[int], lam: float, gm: GramMask, cfg: EnetConfig) -> np.ndarray:
    return apply_sign(c, c2u_enet(c, lam, gm, cfg))


def criterion_E(data: Dataset, lam: float, alpha: float, beta) -> float:
    beta = np.asarray(beta, dtype=float)
    r = data.Y - data.X @ beta
    return (
        0.5 * float(r @ r)
        + lam * alpha * float(np.abs(beta).sum())
        + 0.5 * lam * (1.0 - alpha) * float(beta @ beta)
    )


def _gram_criterion(gm: GramMask, yty: float, lam: float, alpha: float, beta) -> float:
    return (
        0.5 * yty
        - float(beta @ gm.xty)
        + 0.5 * float(beta @ gm.gram @ beta)
        + lam * alpha * float(np.abs(beta).sum())
        + 0.5 * lam * (1.0 - alpha) * float(beta @ beta)
    )


def criterion_Ehat(c: Sequence[int], lam: float, gm: GramMask, yty: float, alpha: float) -> float:
    """Closed-form minimum of the orthant criterion.

    Completing the square gives ``Ehat = (Y'Y - r' S(lam)^- r) / 2`` with
    ``r = C X'Y - alpha*lam*C^2 1``.  Only meaningful where the minimiser
    lies in the orthant.
    """
    cf = np.asarray(as_orthant(c), dtype=float)
    sm = masked_pseudo_inverse_ridge(gm.gram, cf, lam, alpha)
    r = cf * gm.xty - alpha * lam * cf * cf
    return 0.5 * (yty - float(r @ sm @ r))


def breakpoint_function(c: Sequence[int], i: int, lam: float, gm: GramMask, cfg: EnetConfig) -> float:
    """``f_i(lam) = (C^2 u(lam))_i``; its roots are candidate exits for coordinate ``i``."""
    c = as_orthant(c)
    if c[i] == 0:
        raise ValueError(f"coordinate {i} is not active in the orthant")
    return float(c2u_enet(c, lam, gm, cfg)[i])


def _bisect(f, a, b, fa, fb, tol, max_iters):
    it = 0
    while b - a > tol:
        if it >= max_iters:
            raise ConvergenceFailure(f"bisection did not reach tol={tol} in {max_iters} iterations")
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
        it += 1
    # one false-position step inside the final bracket; exact for affine f
    if fb != fa:
        r = a - fa * (b - a) / (fb - fa)
        if a <= r <= b:
            return r
    return 0.5 * (a + b)


def _secant(f, a, b, fa, fb, tol, max_iters):
    """Secant iteration started from the bracket ends.

    Falls back to bisection on the original bracket if an iterate leaves
    it or becomes non-finite.
    """
    x0, f0, x1, f1 = a, fa, b, fb
    for _ in range(max_iters):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not np.isfinite(x2) or x2 < a or x2 > b:
            break
        f2 = f(x2)
        if f2 == 0.0 or abs(x2 - x1) < tol:
            return x2
        x0, f0, x1, f1 = x1, f1, x2, f2
    else:
        raise ConvergenceFailure(f"secant did not reach tol={tol} in {max_iters} iterations")
    return _bisect(f, a, b, fa, fb, tol, max_iters)


class _EnetSolver:
    """Breakpoint root solves with per-orthant spectral caches."""

    def __init__(self, gm: GramMask, yty: float, cfg: EnetConfig):
        self.gm = gm
        self.yty = yty
        self.cfg = cfg
        self.tau = sign_tolerance(gm)
        self.lam_max = lambda_max_enet(gm, cfg.alpha)
        self._blocks = {}

    def block(self, c: OrthantSign) -> SpectralBlock:
        if c not in self._blocks:
            self._blocks[c] = SpectralBlock(self.gm.gram, c)
        return self._blocks[c]

    def c2u_many(self, c: OrthantSign, lams) -> np.ndarray:
        cf = np.asarray(c, dtype=float)
        a = self.cfg.alpha
        return self.block(c).c2u(cf * self.gm.xty, a * cf * cf, lams, shift_rate=1.0 - a)

    def bracket(self, c: OrthantSign, i: int, lo: float, hi: float):
        """First sign change of ``f_i`` on a uniform grid over ``[lo, hi]``.

        Returns ``(a, b, fa, fb)``, or ``(r, r, 0, 0)`` for a grid point that
        is an exact root, or None.  A zero value at ``lo`` itself is skipped:
        roots at the current lambda are rejected by screening anyway.
        """
        grid = np.linspace(lo, hi, self.cfg.scan_points + 1)
        fv = self.c2u_many(c, grid)[:, i]
        ztol = 1e-13 * max(1.0, float(np.abs(fv).max()))
        sg = np.sign(fv)
        sg[np.abs(fv) <= ztol] = 0
        start = 1 if sg[0] == 0 else 0
        if start >= grid.size:
            return None
        if sg[start] == 0:
            return grid[start], grid[start], 0.0, 0.0
        for k in range(start + 1, grid.size):
            if sg[k] == 0:
                return grid[k], grid[k], 0.0, 0.0
            if sg[k] != sg[start]:
                return grid[k - 1], grid[k], fv[k - 1], fv[k]
        return None

    def root(self, c: OrthantSign, i: int, lam_current: float) -> Optional[float]:
        if lam_current >= self.lam_max:
            return None
        br = self.bracket(c, i, lam_current, self.lam_max)
        if br is None:
            return None
        a, b, fa, fb = br
        if a == b:
            return float(a)

        def f(lam):
            return float(self.c2u_many(c, [lam])[0, i])

        solve = _bisect if self.cfg.solver is Solver.BISECTION else _secant
        return float(solve(f, a, b, fa, fb, self.cfg.tol, self.cfg.max_iters))

    def certify(self, cand: ShrinkCandidate) -> bool:
        """Zero coordinates satisfy ``|X_j'(Y - X beta)| <= alpha * lam``.

        The slack allows for the root tolerance on lambda.
        """
        beta = cand.beta_hat
        z = beta == 0
        g = self.gm.xty[z] - self.gm.gram[z] @ beta
        slack = self.tau + 1e3 * self.cfg.tol * max(1.0, float(np.abs(self.gm.gram).max()))
        return bool(np.all(np.abs(g) <= self.cfg.alpha * cand.lambda_hat + slack))

    def __call__(self, c: OrthantSign, i: int, lam_current: float) -> ShrinkEvaluation:
        if c[i] == 0:
            raise ValueError(f"coordinate {i} is not active in the orthant")
        lam_star = self.root(c, i, lam_current)
        if lam_star is None:
            return ShrinkEvaluation(c, i, np.nan, NO_ROOT)
        c2u = c2u_enet(c, lam_star, self.gm, self.cfg)
        c2u[i] = 0.0
        if np.any(c2u < -self.tau):
            return ShrinkEvaluation(c, i, lam_star, NEGATIVE_C2U)
        if not_above(lam_star, lam_current):
            return ShrinkEvaluation(c, i, lam_star, NOT_ABOVE_CURRENT)
        c2u[np.abs(c2u) <= self.tau] = 0.0
        beta = apply_sign(c, c2u)
        crit = _gram_criterion(self.gm, self.yty, lam_star, self.cfg.alpha, beta)
        return ShrinkEvaluation(c, i, lam_star, ACCEPTED, ShrinkCandidate(lam_star, beta, crit, c, i))


def evaluate_breakpoint(c, i: int, lam_current: float, gm: GramMask, yty: float, cfg: EnetConfig) -> ShrinkEvaluation:
    return _EnetSolver(gm, yty, cfg)(as_orthant(c), i, lam_current)


def solve_breakpoint(c, i: int, lam_current: float, gm: GramMask, cfg: EnetConfig, yty: float = 0.0):
    """Smallest root of ``f_i`` in ``(lam_current, lam_max]`` as a screened candidate.

    ``yty`` only shifts the reported criterion; pass ``Y'Y`` to get the
    true elastic-net criterion value.
    """
    return evaluate_breakpoint(c, i, lam_current, gm, yty, cfg).candidate


def enet_path(data: Dataset, cfg: EnetConfig, log: Optional[list] = None) -> RegPath:
    gm = data.gram_mask
    beta0 = ols_fit(data)
    beta0[np.abs(beta0) <= 1e-12] = 0.0
    crit0 = _gram_criterion(gm, data.yty, 0.0, cfg.alpha, beta0)
    solver = _EnetSolver(gm, data.yty, cfg)
    bps = trace_path(beta0, crit0, solver, log)
    return RegPath(
        method="enet",
        breakpoints=tuple(bps),
        alpha=cfg.alpha,
        beta_fn=partial(beta_hat_enet, gm=gm, cfg=cfg),
    )
