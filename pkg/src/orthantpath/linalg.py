"""Sign-masked Gram algebra.

An orthant of R^p is identified by a sign vector ``c`` with entries in
{-1, 0, +1}; points inside it are ``c * u`` with ``u > 0``.  Everything the
path tracers need reduces to the generalized inverse of the masked Gram
matrix ``S = C X'X C`` (optionally shifted by ``mu * C^2``), which is zero
outside the active block and the ordinary inverse inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np
from scipy import linalg as sla

from .errors import DimensionMismatch, InvalidAlpha, RankDeficient, SingularSubmatrix

OrthantSign = Tuple[int, ...]

RANK_RTOL = 1e-12

_SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}
_CHAR_SIGNS = {"-": -1, "0": 0, "+": 1, "−": -1}


def as_orthant(signs) -> OrthantSign:
    """Validate a sign vector and return it as a hashable tuple of ints."""
    arr = np.asarray(signs)
    if arr.ndim != 1:
        raise ValueError("orthant sign vector must be one-dimensional")
    out = []
    for s in arr.tolist():
        if s not in (-1, 0, 1):
            raise ValueError(f"orthant entries must be -1, 0 or +1, got {s!r}")
        out.append(int(s))
    return tuple(out)


def orthant_string(c: Sequence[int]) -> str:
    """``(1, 0, -1)`` -> ``'+0-'``."""
    return "".join(_SIGN_CHARS[int(s)] for s in c)


def parse_orthant(text: str) -> OrthantSign:
    try:
        return tuple(_CHAR_SIGNS[ch] for ch in text.strip())
    except KeyError as exc:
        raise ValueError(f"bad orthant string {text!r}") from exc


def sign_pattern(beta, tol: float = 0.0) -> OrthantSign:
    """Orthant of ``beta``; entries with ``|beta_j| <= tol`` map to 0."""
    beta = np.asarray(beta, dtype=float)
    s = np.sign(beta)
    s[np.abs(beta) <= tol] = 0
    return tuple(int(v) for v in s)


def apply_sign(c: Sequence[int], v) -> np.ndarray:
    """Elementwise ``c * v``, i.e. the diagonal map ``C v``."""
    c = np.asarray(c, dtype=float)
    v = np.asarray(v, dtype=float)
    if c.shape != v.shape:
        raise DimensionMismatch(f"sign vector has length {c.shape}, vector {v.shape}")
    # + 0.0 turns -0.0 into 0.0
    return c * v + 0.0


def _check_len(c, p):
    if len(c) != p:
        raise DimensionMismatch(f"orthant has length {len(c)}, expected {p}")


def _active_inverse(gram, c, shift):
    """Inverse of the signed active block, scattered into a p x p frame.

    The unsigned block ``G_aa + shift*I`` is SPD, so it is Cholesky
    factorized; the signed inverse is ``D inv(G_aa + shift*I) D`` with
    ``D = diag(c_a)`` because ``D^-1 = D``.
    """
    gram = np.asarray(gram, dtype=float)
    p = gram.shape[0]
    if gram.shape != (p, p):
        raise DimensionMismatch(f"gram must be square, got {gram.shape}")
    _check_len(c, p)
    out = np.zeros((p, p))
    cs = np.asarray(c, dtype=float)
    act = np.flatnonzero(cs)
    if act.size == 0:
        return out
    block = gram[np.ix_(act, act)]
    if shift:
        block = block + shift * np.eye(act.size)
    try:
        factor = sla.cho_factor(block, lower=True, check_finite=True)
    except (np.linalg.LinAlgError, sla.LinAlgError) as exc:
        raise SingularSubmatrix(
            f"active Gram block for orthant {orthant_string(c)} is not positive definite"
        ) from exc
    inv = sla.cho_solve(factor, np.eye(act.size))
    inv = 0.5 * (inv + inv.T)
    d = cs[act]
    out[np.ix_(act, act)] = d[:, None] * inv * d[None, :]
    return out


def masked_pseudo_inverse(gram, c: Sequence[int]) -> np.ndarray:
    """Generalized inverse of ``S = C gram C``.

    Satisfies ``S S^- = S^- S = C^2``; rows and columns at zero signs are
    exactly zero.
    """
    return _active_inverse(gram, c, 0.0)


def masked_pseudo_inverse_ridge(gram, c: Sequence[int], lam: float, alpha: float) -> np.ndarray:
    """Generalized inverse of ``S(lam) = C gram C + lam*(1-alpha)*C^2``."""
    check_alpha(alpha)
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    return _active_inverse(gram, c, lam * (1.0 - alpha))


def check_alpha(alpha: float) -> None:
    if not (0.0 < alpha <= 1.0):
        raise InvalidAlpha(f"alpha must lie in (0, 1], got {alpha}")


class SpectralBlock:
    """Eigendecomposition of one orthant's active Gram block.

    Lets ``S(lam)^- v`` be applied for many ``lam`` at once, which the
    breakpoint scans and the exhaustive oracle lean on.
    """

    def __init__(self, gram, c: Sequence[int]):
        gram = np.asarray(gram, dtype=float)
        self.p = gram.shape[0]
        _check_len(c, self.p)
        self.c = np.asarray(c, dtype=float)
        self.active = np.flatnonzero(self.c)
        self.d = self.c[self.active]
        if self.active.size:
            evals, evecs = np.linalg.eigh(gram[np.ix_(self.active, self.active)])
            if evals[0] <= RANK_RTOL * max(evals[-1], 0.0):
                raise SingularSubmatrix(
                    f"active Gram block for orthant {orthant_string(c)} is singular"
                )
        else:
            evals, evecs = np.zeros(0), np.zeros((0, 0))
        self.evals = evals
        # rows of D V, so that S(mu)^- = (DV) diag(1/(e+mu)) (DV)'
        self.dv = self.d[:, None] * evecs

    def c2u(self, signed_rhs_fixed, signed_rhs_slope, lams, shift_rate=0.0) -> np.ndarray:
        """Evaluate ``S(lam)^- (a - lam*b)`` on the active block for each lam.

        ``signed_rhs_fixed`` and ``signed_rhs_slope`` are full length-p
        vectors already multiplied by C (resp. C^2); the ridge shift is
        ``shift_rate * lam``.  Returns an array of shape (len(lams), p).
        """
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        out = np.zeros((lams.size, self.p))
        if not self.active.size:
            return out
        qa = self.dv.T @ signed_rhs_fixed[self.active]
        qb = self.dv.T @ signed_rhs_slope[self.active]
        coef = (qa[None, :] - lams[:, None] * qb[None, :]) / (
            self.evals[None, :] + shift_rate * lams[:, None]
        )
        out[:, self.active] = coef @ self.dv.T
        return out


@dataclass(frozen=True, eq=False)
class GramMask:
    """Cached ``X'X`` and ``X'Y`` shared by every orthant evaluation of a fit."""

    gram: np.ndarray
    xty: np.ndarray

    def __post_init__(self):
        gram = np.array(self.gram, dtype=float)
        xty = np.array(self.xty, dtype=float).ravel()
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1] or gram.shape[0] != xty.size:
            raise DimensionMismatch(f"gram {gram.shape} and xty {xty.shape} do not agree")
        if not np.allclose(gram, gram.T, rtol=0, atol=1e-12 * max(1.0, np.abs(gram).max())):
            raise ValueError("gram matrix must be symmetric")
        gram.flags.writeable = False
        xty.flags.writeable = False
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "xty", xty)

    @property
    def p(self) -> int:
        return self.xty.size


@dataclass(frozen=True, eq=False)
class Dataset:
    """Design matrix and response, with provenance of centering/scaling.

    Construction checks shapes, that the columns of X are numerically
    independent, and (when ``centered``) that columns and response have
    zero mean.
    """

    X: np.ndarray
    Y: np.ndarray
    centered: bool = False
    scale_factor: float = 1.0

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        Y = np.array(self.Y, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2:
            raise DimensionMismatch(f"X must be a matrix, got shape {X.shape}")
        Y = Y.ravel()
        n, p = X.shape
        if n < 1 or p < 1:
            raise DimensionMismatch(f"need n >= 1 and p >= 1, got {X.shape}")
        if Y.size != n:
            raise DimensionMismatch(f"X has {n} rows but Y has {Y.size} entries")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise ValueError("data contain non-finite values")
        if not self.scale_factor > 0:
            raise ValueError("scale_factor must be positive")
        if self.centered:
            tol_x = 1e-10 * np.abs(X).max(axis=0)
            if np.any(np.abs(X.mean(axis=0)) > tol_x):
                raise ValueError("centered=True but X columns do not have zero mean")
            if abs(Y.mean()) > 1e-10 * np.abs(Y).max():
                raise ValueError("centered=True but Y does not have zero mean")
        evals = np.linalg.eigvalsh(X.T @ X)
        if evals[0] < RANK_RTOL * evals[-1] or evals[-1] <= 0:
            raise RankDeficient(
                f"columns of X are numerically dependent "
                f"(eigenvalue ratio {evals[0] / evals[-1] if evals[-1] > 0 else 0:.3g})"
            )
        X.flags.writeable = False
        Y.flags.writeable = False
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @cached_property
    def gram_mask(self) -> GramMask:
        return GramMask(self.X.T @ self.X, self.X.T @ self.Y)

    @cached_property
    def yty(self) -> float:
        return float(self.Y @ self.Y)

    def column(self, j: int) -> "Dataset":
        """Single-column sub-problem (used for one-variable checks)."""
        return Dataset(self.X[:, [j]], self.Y, self.centered, self.scale_factor)
