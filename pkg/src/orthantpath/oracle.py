"""Exhaustive all-orthant solver.

For each lambda every one of the 3^p orthants is solved in closed form,
solutions that leave their orthant are screened out, and the survivor with
the smallest criterion is the exact minimiser.  Exponential in p, so only
useful as ground truth for the sequential tracers.

Linear algebra here goes through an eigendecomposition of each active
block (not the Cholesky route the tracers use), so the two sides share no
numerical code beyond numpy itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Sequence

import numpy as np

from .enet import EnetConfig, _EnetSolver, lambda_max_enet
from .errors import DimensionCap
from .lasso import PenaltyWeights, lambda_max_lasso
from .linalg import Dataset, OrthantSign, SpectralBlock, sign_pattern
from .path import sign_tolerance

DEFAULT_MAX_P = 14
CRITERION_TIE_RTOL = 1e-14


@dataclass(frozen=True)
class LambdaGrid:
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("lambda grid is empty")
        if any(not np.isfinite(v) or v < 0 for v in vals):
            raise ValueError("lambda grid values must be finite and nonnegative")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("lambda grid must be strictly increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_range(cls, start: float, stop: float, step: float) -> "LambdaGrid":
        """Inclusive ``start, start+step, ..., <= stop``."""
        if step <= 0:
            raise ValueError("grid step must be positive")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return cls(tuple(start + k * step for k in range(max(n, 0))))

    @classmethod
    def parse(cls, text: str) -> "LambdaGrid":
        """``'start:stop:step'`` or a comma-separated list."""
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError(f"grid range must be start:stop:step, got {text!r}")
            return cls.from_range(*(float(x) for x in parts))
        return cls(tuple(float(x) for x in text.split(",") if x.strip()))


@dataclass(frozen=True, eq=False)
class OrthantFit:
    lam: float
    orthant: OrthantSign
    beta: np.ndarray
    criterion: float
    valid: bool


@dataclass(frozen=True)
class Move:
    """One screened shrink: ``orthant_from`` loses ``coordinate`` at ``lam``."""

    orthant_from: OrthantSign
    orthant_to: OrthantSign
    lam: float
    coordinate: int


def all_orthants(p: int) -> Iterator[OrthantSign]:
    """Mixed-radix enumeration of {-1, 0, +1}^p, first coordinate most significant."""
    return itertools.product((-1, 0, 1), repeat=p)


def _mode_params(mode, p):
    """(alpha, weights, shift_rate, is_enet) for a lasso or enet mode."""
    if isinstance(mode, EnetConfig):
        return mode.alpha, np.ones(p), 1.0 - mode.alpha, True
    if mode is None:
        return 1.0, np.ones(p), 0.0, False
    w = mode.w if isinstance(mode, PenaltyWeights) else np.asarray(mode, dtype=float)
    return 1.0, w, 0.0, False


def lambda_max(data: Dataset, mode=None) -> float:
    if isinstance(mode, EnetConfig):
        return lambda_max_enet(data.gram_mask, mode.alpha)
    return lambda_max_lasso(data.gram_mask, _mode_params(mode, data.p)[1])


def _check_cap(p, max_p):
    if p > max_p:
        raise DimensionCap(f"p={p} exceeds the exhaustive-search cap of {max_p} (3^p orthants)")


def evaluate_orthants(data: Dataset, lams: Sequence[float], mode=None, max_p: int = DEFAULT_MAX_P):
    """Solve every orthant at every lambda.

    Yields ``(orthant, beta, criterion, valid)`` with arrays of shape
    (len(lams), p), (len(lams),) and (len(lams),).
    """
    _check_cap(data.p, max_p)
    gm = data.gram_mask
    lams = np.asarray(lams, dtype=float)
    alpha, w, shift, _ = _mode_params(mode, data.p)
    tau = sign_tolerance(gm)
    for c in all_orthants(data.p):
        cf = np.asarray(c, dtype=float)
        c2u = SpectralBlock(gm.gram, c).c2u(cf * gm.xty, alpha * cf * cf * w, lams, shift)
        beta = cf * c2u + 0.0
        crit = (
            0.5 * data.yty
            - beta @ gm.xty
            + 0.5 * np.einsum("kp,pq,kq->k", beta, gm.gram, beta)
            + lams * (alpha * (np.abs(beta) @ w) + 0.5 * (1.0 - alpha) * (beta * beta).sum(axis=1))
        )
        valid = np.all(c2u >= -tau, axis=1)
        yield c, beta, crit, valid


def all_orthant_path(data: Dataset, grid, mode=None, max_p: int = DEFAULT_MAX_P) -> List[OrthantFit]:
    """Exact minimiser at each grid lambda.

    Ties within ``CRITERION_TIE_RTOL`` go to the orthant with fewer nonzero
    signs, then to the earlier orthant in enumeration order.  The grid must
    lie within ``[0, lambda_max]``.
    """
    if not isinstance(grid, LambdaGrid):
        grid = LambdaGrid(tuple(np.atleast_1d(grid)))
    lams = np.asarray(grid.values)
    lmax = lambda_max(data, mode)
    if lams[-1] > lmax * (1 + 1e-12):
        raise ValueError(f"grid extends past lambda_max={lmax:.10g}")
    k = lams.size
    best_crit = np.full(k, np.inf)
    best_nnz = np.full(k, np.iinfo(np.int64).max)
    best_c: list = [None] * k
    best_beta = np.zeros((k, data.p))
    for c, beta, crit, valid in evaluate_orthants(data, lams, mode, max_p):
        nnz = sum(1 for s in c if s)
        seen = np.isfinite(best_crit)
        tol = np.where(seen, CRITERION_TIE_RTOL * np.maximum(1.0, np.abs(best_crit)), 0.0)
        better = valid & (crit < best_crit - tol)
        tie = valid & seen & ~better & (np.abs(crit - best_crit) <= tol) & (nnz < best_nnz)
        take = better | tie
        for j in np.flatnonzero(take):
            best_crit[j] = crit[j]
            best_nnz[j] = nnz
            best_c[j] = c
            best_beta[j] = beta[j]
    return [
        OrthantFit(float(lams[j]), best_c[j], best_beta[j].copy(), float(best_crit[j]), True)
        for j in range(k)
    ]


def all_orthant_fit(data: Dataset, lam: float, mode=None, max_p: int = DEFAULT_MAX_P) -> OrthantFit:
    """Exact minimiser at a single lambda; lambdas past lambda_max give zero."""
    _check_cap(data.p, max_p)
    if lam > lambda_max(data, mode):
        return OrthantFit(float(lam), (0,) * data.p, np.zeros(data.p), 0.5 * data.yty, True)
    return all_orthant_path(data, LambdaGrid((float(lam),)), mode, max_p)[0]


def enumerate_valid_moves(data: Dataset, mode=None, max_p: int = DEFAULT_MAX_P) -> List[Move]:
    """Every screened shrink over all orthant/coordinate pairs.

    A move is kept when its lambda is nonnegative and the orthant solution
    there has no negative ``C^2 u`` entry.  For the elastic net the first
    root of the breakpoint function in ``(0, lambda_max]`` is used.
    """
    _check_cap(data.p, max_p)
    gm = data.gram_mask
    alpha, w, shift, is_enet = _mode_params(mode, data.p)
    tau = sign_tolerance(gm)
    solver = _EnetSolver(gm, data.yty, mode) if is_enet else None
    moves = []
    for c in all_orthants(data.p):
        if not any(c):
            continue
        cf = np.asarray(c, dtype=float)
        block = SpectralBlock(gm.gram, c)
        if not is_enet:
            at0, at1 = block.c2u(cf * gm.xty, cf * cf * w, [0.0, 1.0])
            slope = at0 - at1
        for i in np.flatnonzero(cf):
            if is_enet:
                lam = solver.root(c, int(i), 0.0)
                if lam is None:
                    continue
                c2u = block.c2u(cf * gm.xty, alpha * cf * cf, [lam], shift)[0]
            else:
                if abs(slope[i]) <= 1e-14 * np.abs(slope).max():
                    continue
                lam = at0[i] / slope[i]
                c2u = at0 - lam * slope
            c2u[i] = 0.0
            if lam < 0 or np.any(c2u < -tau):
                continue
            c2u[np.abs(c2u) <= tau] = 0.0
            moves.append(Move(c, sign_pattern(cf * c2u), float(lam), int(i)))
    return moves
