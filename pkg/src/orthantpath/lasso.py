"""Exact lasso and adaptive-lasso paths.

Inside orthant ``c`` the penalty ``lam * sum(w_j |beta_j|)`` is linear, so
the criterion is a quadratic in ``u`` (``beta = c * u``) minimised by

    C^2 u(lam) = S^- (C X'Y - lam * C^2 w),     S = C X'X C,

a straight line in ``lam``.  Breakpoints are where a coordinate of that line
reaches zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence

import numpy as np

from .errors import ZeroOlsCoefficient
from .linalg import Dataset, GramMask, OrthantSign, apply_sign, as_orthant, masked_pseudo_inverse
from .path import (
    ACCEPTED,
    NEGATIVE_C2U,
    NOT_ABOVE_CURRENT,
    ZERO_DENOMINATOR,
    RegPath,
    ShrinkCandidate,
    ShrinkEvaluation,
    not_above,
    sign_tolerance,
    trace_path,
)


@dataclass(frozen=True, eq=False)
class PenaltyWeights:
    """Per-coefficient L1 weights; all ones is the plain lasso."""

    w: np.ndarray
    gamma: Optional[float] = None

    def __post_init__(self):
        w = np.array(self.w, dtype=float).ravel()
        if not (np.all(np.isfinite(w)) and np.all(w > 0)):
            raise ValueError("penalty weights must be positive and finite")
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @classmethod
    def unit(cls, p: int) -> "PenaltyWeights":
        return cls(np.ones(p))


def _weights(w, p) -> np.ndarray:
    if w is None:
        return np.ones(p)
    if isinstance(w, PenaltyWeights):
        return w.w
    return np.asarray(w, dtype=float)


def ols_fit(data: Dataset) -> np.ndarray:
    gm = data.gram_mask
    return masked_pseudo_inverse(gm.gram, (1,) * data.p) @ gm.xty


def c2u_lasso(c: Sequence[int], lam: float, gm: GramMask, w=None) -> np.ndarray:
    c = np.asarray(as_orthant(c), dtype=float)
    sm = masked_pseudo_inverse(gm.gram, c)
    return sm @ (c * gm.xty - lam * c * c * _weights(w, gm.p))


def beta_hat_lasso(c: Sequence[int], lam: float, gm: GramMask, w=None) -> np.ndarray:
    return apply_sign(c, c2u_lasso(c, lam, gm, w))


def criterion_L(data: Dataset, lam: float, beta, w=None) -> float:
    beta = np.asarray(beta, dtype=float)
    r = data.Y - data.X @ beta
    return 0.5 * float(r @ r) + lam * float(_weights(w, data.p) @ np.abs(beta))


def criterion_Lhat(c: Sequence[int], lam: float, gm: GramMask, yty: float, w=None) -> float:
    """Minimum of the orthant criterion, a quadratic in ``lam``.

    With ``S^-`` zero off the active block,
    ``2*Lhat = Y'Y - Y'X C S^- C X'Y + 2 lam w' S^- C X'Y - lam^2 w' S^- w``.
    """
    c = np.asarray(as_orthant(c), dtype=float)
    sm = masked_pseudo_inverse(gm.gram, c)
    w = _weights(w, gm.p)
    cxty = c * gm.xty
    return 0.5 * (
        yty - cxty @ sm @ cxty + 2.0 * lam * (w @ sm @ cxty) - lam * lam * (w @ sm @ w)
    )


def _gram_criterion(gm: GramMask, yty: float, lam: float, beta, w) -> float:
    return (
        0.5 * yty
        - float(beta @ gm.xty)
        + 0.5 * float(beta @ gm.gram @ beta)
        + lam * float(w @ np.abs(beta))
    )


def lambda_max_lasso(gm: GramMask, w=None) -> float:
    return float(np.max(np.abs(gm.xty) / _weights(w, gm.p)))


class _LassoShrinker:
    """Shrink evaluations with ``S^-`` and ``lambda*_i`` memoised per orthant.

    ``lambda*_i`` for a given ``(c', i)`` does not depend on the current
    lambda; only the final ordering check does.
    """

    def __init__(self, gm: GramMask, yty: float, w):
        self.gm = gm
        self.yty = yty
        self.w = _weights(w, gm.p)
        self.tau = sign_tolerance(gm)
        self._lines = {}
        self._shrinks = {}

    def line(self, c: OrthantSign):
        """Start and direction of ``C^2 u(lam) = a - lam * b`` in orthant ``c``."""
        if c not in self._lines:
            cf = np.asarray(c, dtype=float)
            sm = masked_pseudo_inverse(self.gm.gram, cf)
            self._lines[c] = (sm @ (cf * self.gm.xty), sm @ (cf * cf * self.w))
        return self._lines[c]

    def _shrink(self, c: OrthantSign, i: int):
        key = (c, i)
        if key in self._shrinks:
            return self._shrinks[key]
        a, b = self.line(c)
        den = b[i]
        if den == 0 or abs(den) <= 1e-14 * np.abs(b).max():
            res = (np.nan, None, ZERO_DENOMINATOR)
        else:
            lam_star = float(a[i] / den)
            c2u = a - lam_star * b
            c2u[i] = 0.0
            if np.any(c2u < -self.tau):
                res = (lam_star, None, NEGATIVE_C2U)
            else:
                c2u[np.abs(c2u) <= self.tau] = 0.0
                beta = apply_sign(c, c2u)
                crit = _gram_criterion(self.gm, self.yty, lam_star, beta, self.w)
                res = (lam_star, ShrinkCandidate(lam_star, beta, crit, c, i), ACCEPTED)
        self._shrinks[key] = res
        return res

    def certify(self, cand: ShrinkCandidate) -> bool:
        """Zero coordinates of the candidate satisfy ``|X_j'(Y - X beta)| <= lam * w_j``."""
        beta = cand.beta_hat
        z = beta == 0
        g = self.gm.xty[z] - self.gm.gram[z] @ beta
        return bool(np.all(np.abs(g) <= cand.lambda_hat * self.w[z] + self.tau))

    def __call__(self, c: OrthantSign, i: int, lam_current: float) -> ShrinkEvaluation:
        if c[i] == 0:
            raise ValueError(f"coordinate {i} is not active in the orthant")
        lam_star, cand, verdict = self._shrink(c, i)
        if verdict == ACCEPTED and not_above(lam_star, lam_current):
            verdict, cand = NOT_ABOVE_CURRENT, None
        return ShrinkEvaluation(c, i, lam_star, verdict, cand)


def evaluate_shrink(c, i: int, lam_current: float, gm: GramMask, yty: float, w=None) -> ShrinkEvaluation:
    """One shrink evaluation with its verdict, accepted or not."""
    return _LassoShrinker(gm, yty, w)(as_orthant(c), i, lam_current)


def shrink_step(c_prime, i: int, lam_current: float, gm: GramMask, yty: float, w=None):
    """Candidate move driving coordinate ``i`` of ``c_prime`` to zero, or None.

    ``lambda*_i = (S^- C X'Y)_i / (S^- C^2 w)_i``; the candidate is dropped
    when the denominator vanishes, when ``C^2 u`` at ``lambda*_i`` has a
    negative entry, or when ``lambda*_i`` does not exceed ``lam_current``.
    """
    return evaluate_shrink(c_prime, i, lam_current, gm, yty, w).candidate


def adaptive_weights(data: Dataset, gamma: float) -> PenaltyWeights:
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    ols = np.abs(ols_fit(data))
    if np.any(ols < 1e-12):
        raise ZeroOlsCoefficient("an OLS coefficient is zero; its adaptive weight would be infinite")
    return PenaltyWeights(ols ** (-gamma), gamma=gamma)


def lasso_path(data: Dataset, w=None, log: Optional[list] = None) -> RegPath:
    """Breakpoints of the (weighted) lasso path from OLS to zero.

    Pass a list as ``log`` to receive one :class:`~orthantpath.path.StepRecord`
    per outer iteration.
    """
    gm = data.gram_mask
    wv = _weights(w, data.p)
    beta0 = ols_fit(data)
    beta0[np.abs(beta0) <= 1e-12] = 0.0
    crit0 = _gram_criterion(gm, data.yty, 0.0, beta0, wv)
    shrinker = _LassoShrinker(gm, data.yty, wv)
    bps = trace_path(beta0, crit0, shrinker, log)
    gamma = w.gamma if isinstance(w, PenaltyWeights) else None
    method = "adaptive" if gamma is not None or np.any(wv != 1.0) else "lasso"
    return RegPath(
        method=method,
        breakpoints=tuple(bps),
        gamma=gamma,
        weights=wv,
        beta_fn=partial(_segment_beta, shrinker),
    )


def _segment_beta(shrinker: _LassoShrinker, c: OrthantSign, lam: float) -> np.ndarray:
    a, b = shrinker.line(c)
    return apply_sign(c, a - lam * b)
