"""Path containers and the sequential shrink/reactivate tracer.

The tracer is penalty-agnostic: it is handed an ``evaluate(c_prime, i,
lam_current)`` callable that performs one shrink evaluation (closed form
for the lasso, a root solve for the elastic net) and returns a
:class:`ShrinkEvaluation`.  Everything else (neighbour enumeration,
candidate selection, orthant bookkeeping) is shared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NoValidCandidate
from .linalg import GramMask, OrthantSign, orthant_string, sign_pattern

# Verdicts of a single shrink evaluation.  The order of the checks follows
# the shrinkage step: denominator, sign screening, then lambda ordering.
ACCEPTED = "accepted"
ZERO_DENOMINATOR = "zero_denominator"
NEGATIVE_C2U = "negative_c2u"
NOT_ABOVE_CURRENT = "not_above_current"
NO_ROOT = "no_root"

TIE_RTOL = 1e-10


def sign_tolerance(gm: GramMask) -> float:
    """Entries of C^2 u above ``-tau`` pass screening; ``|entry| <= tau`` clamps to 0."""
    return 1e-9 * max(1.0, float(np.abs(gm.xty).max()))


def not_above(lam_hat: float, lam_current: float) -> bool:
    return lam_hat <= lam_current + 1e-12 * (1.0 + lam_current)


@dataclass(frozen=True, eq=False)
class ShrinkCandidate:
    lambda_hat: float
    beta_hat: np.ndarray
    criterion: float
    orthant_from: OrthantSign
    coordinate: int

    @property
    def orthant_to(self) -> OrthantSign:
        return sign_pattern(self.beta_hat)


@dataclass(frozen=True, eq=False)
class ShrinkEvaluation:
    """Instrumented outcome of one shrink evaluation, accepted or not.

    ``lambda_star`` is NaN when no value could be computed (zero
    denominator, or no sign change for a root solve).
    """

    orthant_from: OrthantSign
    coordinate: int
    lambda_star: float
    verdict: str
    candidate: Optional[ShrinkCandidate] = None


@dataclass(frozen=True, eq=False)
class PathBreakpoint:
    lam: float
    beta: np.ndarray
    criterion: float
    segment_orthant: Optional[OrthantSign]

    @property
    def orthant(self) -> OrthantSign:
        return sign_pattern(self.beta)


@dataclass
class StepRecord:
    """All evaluations of one outer iteration, for move ledgers."""

    orthant: OrthantSign
    lam: float
    moves: List[Tuple[str, ShrinkEvaluation]] = field(default_factory=list)
    selected: Optional[int] = None

    def lines(self) -> List[str]:
        out = []
        for k, (kind, ev) in enumerate(self.moves):
            frm = orthant_string(ev.orthant_from)
            to = list(ev.orthant_from)
            to[ev.coordinate] = 0
            verdict = "selected" if k == self.selected else ev.verdict
            label = f"S from {frm}" if kind == "S" else f"R to {frm}"
            out.append(
                f"{orthant_string(self.orthant)} {self.lam:.3f} | {label} -> "
                f"{orthant_string(to)} | {ev.lambda_star:.3f} | i={ev.coordinate + 1} | {verdict}"
            )
        return out


@dataclass(frozen=True, eq=False)
class RegPath:
    """Ordered breakpoints plus what is needed to evaluate between them."""

    method: str
    breakpoints: Tuple[PathBreakpoint, ...]
    alpha: float = 1.0
    gamma: Optional[float] = None
    weights: Optional[np.ndarray] = None
    beta_fn: Optional[Callable[[OrthantSign, float], np.ndarray]] = field(default=None, repr=False)

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([b.lam for b in self.breakpoints])

    @property
    def betas(self) -> np.ndarray:
        return np.vstack([b.beta for b in self.breakpoints])

    @property
    def criteria(self) -> np.ndarray:
        return np.array([b.criterion for b in self.breakpoints])

    @property
    def p(self) -> int:
        return self.breakpoints[0].beta.size

    def segments(self):
        """Yield ``(lam_lo, lam_hi, orthant)`` for each segment."""
        for lo, hi in zip(self.breakpoints[:-1], self.breakpoints[1:]):
            yield lo.lam, hi.lam, hi.segment_orthant

    def coef(self, lam: float) -> np.ndarray:
        """Coefficients at ``lam`` from the orthant formula of its segment."""
        bps = self.breakpoints
        if lam < 0:
            raise ValueError("lambda must be nonnegative")
        if lam >= bps[-1].lam:
            return np.zeros(self.p)
        k = int(np.searchsorted(self.lambdas, lam, side="right"))
        if bps[k - 1].lam == lam:
            return bps[k - 1].beta.copy()
        return self.beta_fn(bps[k].segment_orthant, lam)

    def sample(self, per_segment: int):
        """Uniform samples on each segment, endpoints included.

        Returns a list of ``(lam, beta, orthant)`` tuples in increasing lam.
        Endpoints carry the stored breakpoint coefficients, so exact zeros
        stay exact.
        """
        if per_segment < 2:
            raise ValueError("need at least two samples per segment")
        out = []
        for lo, hi in zip(self.breakpoints[:-1], self.breakpoints[1:]):
            seg = hi.segment_orthant
            lams = np.linspace(lo.lam, hi.lam, per_segment)
            out.append((lo.lam, lo.beta.copy(), seg))
            out.extend((float(lam), self.beta_fn(seg, float(lam)), seg) for lam in lams[1:-1])
            out.append((hi.lam, hi.beta.copy(), seg))
        return out


Evaluator = Callable[[OrthantSign, int, float], ShrinkEvaluation]


def _reactivations(c: OrthantSign, lam: float, evaluate: Evaluator, j: int):
    out = []
    for k in (-1, 1):
        cp = c[:j] + (k,) + c[j + 1:]
        for i, ci in enumerate(cp):
            if ci != 0:
                out.append(("R", evaluate(cp, i, lam)))
    return out


def neighbour_evaluations(c: OrthantSign, lam: float, evaluate: Evaluator, travel: Optional[OrthantSign] = None):
    """Run every reactivation and shrink evaluation around orthant ``c``.

    Order: first each zero coordinate (ascending) contributes the two
    reactivated orthants (-1 first) shrunk along each of their active
    coordinates; then the direct shrinks of ``c`` follow, coordinates
    ascending.

    ``travel`` is the orthant the path is actually moving through when it
    differs from the sign pattern of the current point (right after a
    coefficient has been reactivated).  Its own reactivations are appended,
    since they are not neighbours of ``c``.
    """
    moves = []
    for j, cj in enumerate(c):
        if cj == 0:
            moves.extend(_reactivations(c, lam, evaluate, j))
    for j, cj in enumerate(c):
        if cj != 0:
            moves.append(("S", evaluate(c, j, lam)))
    if travel is not None and travel != c:
        for j, tj in enumerate(travel):
            if tj == 0:
                moves.extend(_reactivations(travel, lam, evaluate, j))
    return moves


def select_candidate(
    moves: Sequence[Tuple[str, ShrinkEvaluation]],
    certify: Optional[Callable[[ShrinkCandidate], bool]] = None,
) -> Optional[int]:
    """Index of the winning accepted move, or None.

    Smallest lambda wins; within ``TIE_RTOL`` relative the candidate with
    more exact zeros wins, then the lower coordinate, then the earlier one.
    When ``certify`` is given, accepted candidates whose point fails the
    optimality conditions at their own lambda are passed over.
    """
    accepted = [k for k, (_, ev) in enumerate(moves) if ev.verdict == ACCEPTED]
    if certify is not None:
        accepted = [k for k in accepted if certify(moves[k][1].candidate)]
    if not accepted:
        return None
    lam_min = min(moves[k][1].lambda_star for k in accepted)
    tied = [
        k for k in accepted if moves[k][1].lambda_star - lam_min <= TIE_RTOL * abs(lam_min)
    ]

    def key(k):
        cand = moves[k][1].candidate
        return (-int(np.count_nonzero(cand.beta_hat == 0)), cand.coordinate, k)

    return min(tied, key=key)


def _enters(travel: OrthantSign, cand: ShrinkCandidate) -> bool:
    """True when the coordinate reaching zero is one reactivated from ``travel``."""
    i = cand.coordinate
    return travel[i] == 0 and cand.orthant_from[i] != 0


def segment_orthant(travel: OrthantSign, cand: ShrinkCandidate) -> OrthantSign:
    """Orthant the path traverses just before ``cand.lambda_hat``.

    Normally the orthant the candidate was shrunk from.  When the
    coordinate reaching zero is the one that was reactivated, the candidate
    marks the path entering that orthant, so it was still in ``travel``.
    """
    return travel if _enters(travel, cand) else cand.orthant_from


def trace_path(
    beta0: np.ndarray,
    criterion0: float,
    evaluate: Evaluator,
    log: Optional[list] = None,
) -> List[PathBreakpoint]:
    """Follow the path from ``beta0`` at lambda = 0 until every coefficient is zero.

    ``evaluate`` may expose ``certify(candidate) -> bool``; see
    :func:`select_candidate`.
    """
    p = beta0.size
    certify = getattr(evaluate, "certify", None)
    c = sign_pattern(beta0)
    travel = c
    lam = 0.0
    out = [PathBreakpoint(0.0, np.array(beta0, dtype=float), float(criterion0), None)]
    max_moves = 3 ** p + 1
    moves_done = 0
    while any(travel):
        moves = neighbour_evaluations(c, lam, evaluate, travel)
        k = select_candidate(moves, certify)
        if log is not None:
            log.append(StepRecord(c, lam, moves, k))
        if k is None:
            raise NoValidCandidate(
                f"no valid move out of orthant {orthant_string(c)} at lambda={lam:.10g}"
            )
        cand = moves[k][1].candidate
        out.append(PathBreakpoint(cand.lambda_hat, cand.beta_hat, cand.criterion, segment_orthant(travel, cand)))
        lam = cand.lambda_hat
        c = sign_pattern(cand.beta_hat)
        travel = cand.orthant_from if _enters(travel, cand) else c
        moves_done += 1
        if moves_done > max_moves:
            raise NoValidCandidate(f"path did not terminate after {max_moves} moves")
    return out
