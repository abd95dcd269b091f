"""ROC frontiers from classifier scores and the mode-collapse-region
frontier for discrete distributions.

The MCR frontier asks, for each budget epsilon on Q-mass, how much P-mass
a single event A can capture: the upper-left boundary of
{(Q(A), P(A)) : A subset of the support}. On atoms this is a bi-objective
(min Q(A), max P(A)) subset problem; the frontier is computed by a
Pareto-merge sweep over atoms, which matches exhaustive subset
enumeration exactly while staying polynomial in practice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .estimator import ErrorRatePoint, ScoredTestSet, error_rates_from_scores
from .measures import DiscreteDistribution


@dataclass(frozen=True)
class ROCPoint:
    fpr: float
    tpr: float

    def __post_init__(self):
        if not (0.0 <= self.fpr <= 1.0 and 0.0 <= self.tpr <= 1.0):
            raise InputError("fpr and tpr must lie in [0, 1]")


def _upper_left_frontier(pairs: np.ndarray) -> np.ndarray:
    """Pareto-dominant subset of (x, y) pairs: keep a point unless another
    one has x' <= x and y' >= y with strict improvement in one. Returned
    sorted by x ascending."""
    order = np.lexsort((-pairs[:, 1], pairs[:, 0]))
    kept = []
    best_y = -np.inf
    for i in order:
        x, y = pairs[i]
        if y > best_y:
            kept.append((x, y))
            best_y = y
    return np.asarray(kept)


def roc_from_scores(scored: ScoredTestSet) -> list[ROCPoint]:
    """Upper-left ROC staircase from the threshold sweep, as (fpr, tpr)."""
    rates = error_rates_from_scores(scored)
    pairs = np.asarray([(p.fpr, 1.0 - p.fnr) for p in rates])
    frontier = _upper_left_frontier(pairs)
    return [ROCPoint(float(x), float(y)) for x, y in frontier]


def mcr_frontier_discrete(p: DiscreteDistribution, q: DiscreteDistribution,
                          resolution: int = 0) -> list[tuple[float, float]]:
    """Frontier of achievable (epsilon = Q(A), delta = P(A)) pairs.

    `resolution`, when positive, caps the number of returned points by
    keeping an evenly spaced subset (endpoints always included); 0 means
    return the full frontier.
    """
    if len(p) != len(q):
        raise InputError(
            f"support length mismatch: {len(p)} vs {len(q)}"
        )
    if resolution < 0:
        raise InputError("resolution must be >= 0")
    # Pareto merge: maintain the non-dominated (eps, delta) set while
    # adding atoms one at a time.
    frontier = np.zeros((1, 2))
    for qi, pi in zip(q.weights, p.weights):
        merged = np.concatenate([frontier, frontier + (qi, pi)], axis=0)
        frontier = _upper_left_frontier(merged)
    if resolution and len(frontier) > resolution:
        idx = np.unique(np.round(
            np.linspace(0, len(frontier) - 1, resolution)).astype(int))
        frontier = frontier[idx]
    return [(float(e), float(d)) for e, d in frontier]


def mixed_error_from_roc(points: list[ROCPoint], lam: float) -> float:
    """min over the ROC set of lam*fpr + (1 - tpr); agrees with the
    per-lambda minimization over the underlying error rates."""
    return min(lam * pt.fpr + (1.0 - pt.tpr) for pt in points)
