"""Exact precision-recall mathematics on discrete distributions.

Precision alpha and recall beta between two histograms P and Q on a shared
finite support are tied together by the ratio lambda = alpha / beta:

    alpha_lambda = sum_i min(lambda * p_i, q_i)        beta_lambda = alpha_lambda / lambda

The achievable (alpha, beta) region is the downward closure of the curve
traced by lambda in (0, inf), with the two degenerate endpoints
alpha_inf = Q(supp P) and beta_0 = P(supp Q).

``prd_membership`` implements the definition-level test directly (largest
common component measure) and is kept independent of the parameterized
curve so the two routes can be checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .accel import alpha_grid
from .errors import InputError

NORMALIZATION_TOL = 1e-9
MEMBERSHIP_SLACK = 1e-9
SUPPORT_EPS = 1e-12


@dataclass(frozen=True)
class DiscreteDistribution:
    """Probability weights over an implicit support 0..k-1."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise InputError("weights must be a nonempty 1-D vector")
        if not np.all(np.isfinite(w)):
            raise InputError("weights must be finite")
        if np.any(w < 0):
            raise InputError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > NORMALIZATION_TOL:
            raise InputError(
                f"weights must sum to 1 within {NORMALIZATION_TOL}, got {w.sum()!r}"
            )
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.size

    @property
    def support_mask(self) -> np.ndarray:
        return self.weights > SUPPORT_EPS


@dataclass(frozen=True)
class PRPoint:
    """One point of a precision-recall curve, indexed by lam = alpha/beta."""

    lam: float  # in [0, inf]
    alpha: float
    beta: float

    def __post_init__(self):
        if self.lam < 0 or math.isnan(self.lam):
            raise InputError("lam must be in [0, inf]")
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise InputError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class LambdaGrid:
    """Strictly increasing positive ratio values, optionally with the
    lam=0 and lam=inf endpoint markers."""

    values: np.ndarray
    include_endpoints: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise InputError("grid values must be a nonempty 1-D vector")
        if not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise InputError("grid values must be finite and > 0")
        if np.any(np.diff(v) <= 0):
            raise InputError("grid values must be strictly increasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class PRCurve:
    """A finite precision-recall curve: parallel (lam, alpha, beta) arrays
    sorted by lam ascending."""

    lam: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=np.float64)
        alpha = np.asarray(self.alpha, dtype=np.float64)
        beta = np.asarray(self.beta, dtype=np.float64)
        if not (lam.shape == alpha.shape == beta.shape) or lam.ndim != 1:
            raise InputError("lam, alpha, beta must be 1-D arrays of equal length")
        if lam.size == 0:
            raise InputError("a curve needs at least one point")
        if np.any(np.diff(lam) < 0):
            raise InputError("curve must be sorted by lam")
        for a in (lam, alpha, beta):
            a.setflags(write=False)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __len__(self):
        return self.lam.size

    def points(self) -> list[PRPoint]:
        return [PRPoint(float(l), float(a), float(b))
                for l, a, b in zip(self.lam, self.alpha, self.beta)]


def _check_shared_support(p: DiscreteDistribution, q: DiscreteDistribution):
    if len(p) != len(q):
        raise InputError(
            f"support length mismatch: {len(p)} vs {len(q)}"
        )


def min_measure(p, q) -> np.ndarray:
    """Elementwise minimum of two weight vectors (largest common mass)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise InputError(f"support length mismatch: {p.shape} vs {q.shape}")
    return np.minimum(p, q)


def exact_pr_point(p: DiscreteDistribution, q: DiscreteDistribution,
                   lam: float) -> PRPoint:
    """Exact curve point at a finite positive ratio lam."""
    _check_shared_support(p, q)
    if not (lam > 0 and math.isfinite(lam)):
        raise InputError("lam must be a finite positive real; "
                         "use exact_pr_endpoints for lam in {0, inf}")
    alpha = float(np.minimum(lam * p.weights, q.weights).sum())
    beta = alpha / lam
    return PRPoint(lam, min(alpha, 1.0), min(beta, 1.0))


def exact_pr_endpoints(p: DiscreteDistribution, q: DiscreteDistribution):
    """The lam=0 and lam=inf curve endpoints.

    At lam=0 only recall survives: beta_0 = P(supp Q). At lam=inf only
    precision survives: alpha_inf = Q(supp P).
    """
    _check_shared_support(p, q)
    beta0 = float(p.weights[q.support_mask].sum())
    alpha_inf = float(q.weights[p.support_mask].sum())
    return (PRPoint(0.0, 0.0, min(beta0, 1.0)),
            PRPoint(math.inf, min(alpha_inf, 1.0), 0.0))


def exact_pr_curve(p: DiscreteDistribution, q: DiscreteDistribution,
                   grid: LambdaGrid) -> PRCurve:
    """Exact curve over a ratio grid, plus endpoints when the grid asks."""
    _check_shared_support(p, q)
    lams = grid.values
    alpha = alpha_grid(lams, p.weights, q.weights)
    beta = alpha / lams
    alpha = np.minimum(alpha, 1.0)
    beta = np.minimum(beta, 1.0)
    if grid.include_endpoints:
        p0, pinf = exact_pr_endpoints(p, q)
        lams = np.concatenate(([p0.lam], lams, [pinf.lam]))
        alpha = np.concatenate(([p0.alpha], alpha, [pinf.alpha]))
        beta = np.concatenate(([p0.beta], beta, [pinf.beta]))
    return PRCurve(lams, alpha, beta)


def prd_membership(p: DiscreteDistribution, q: DiscreteDistribution,
                   alpha: float, beta: float) -> bool:
    """Definition-level membership test for (alpha, beta).

    (alpha, beta) is achievable iff some probability measure mu satisfies
    P >= beta*mu and Q >= alpha*mu; the maximal mu mass under those
    constraints is sum_i min(p_i/beta, q_i/alpha).
    """
    _check_shared_support(p, q)
    if alpha < 0 or beta < 0:
        raise InputError("alpha and beta must be nonnegative")
    if alpha == 0.0 and beta == 0.0:
        return True
    if beta == 0.0:
        _, pinf = exact_pr_endpoints(p, q)
        return alpha <= pinf.alpha + MEMBERSHIP_SLACK
    if alpha == 0.0:
        p0, _ = exact_pr_endpoints(p, q)
        return beta <= p0.beta + MEMBERSHIP_SLACK
    mass = float(np.minimum(p.weights / beta, q.weights / alpha).sum())
    return mass >= 1.0 - MEMBERSHIP_SLACK


def symmetry_swap(curve: PRCurve) -> PRCurve:
    """Map each (lam, alpha, beta) to (1/lam, beta, alpha), re-sorted.

    Swapping the roles of P and Q mirrors the curve across the diagonal:
    alpha_lam(P, Q) = beta_{1/lam}(Q, P).
    """
    with np.errstate(divide="ignore"):
        inv = np.where(curve.lam == 0.0, math.inf,
                       np.where(np.isinf(curve.lam), 0.0, 1.0 / curve.lam))
    order = np.argsort(inv, kind="stable")
    return PRCurve(inv[order], curve.beta[order], curve.alpha[order])
