"""Synthetic benchmark generators with analytically known curves.

Gaussian clusters stand in for image classes: every cluster is an
isotropic unit-variance Gaussian in d=16 whose centers are pairwise at
least 10 sigma apart. Clusters shared by P and Q sit on the hyperplane
x0 = 0; clusters exclusive to one side are pushed to x0 = +OFFSET (P)
or x0 = -OFFSET (Q), so the partitions a linear classifier must resolve
are separable by construction while the class combinatorics of the
class-subset / class-overlap / reweighting setups are preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .data import SampleSet
from .errors import InputError
from .estimator import PairedDataset
from .measures import LambdaGrid, PRCurve, NORMALIZATION_TOL

CLUSTER_DIM = 16
CLUSTER_OFFSET = 20.0  # x0 displacement of side-exclusive clusters
TAG_SPACING = 20.0     # per-cluster tag displacement in the remaining dims


@dataclass(frozen=True)
class MixtureSpec:
    """Isotropic Gaussian mixture: (mean, stddev, weight) components."""

    means: np.ndarray      # c x d
    stddevs: np.ndarray    # c
    weights: np.ndarray    # c, summing to 1

    def __post_init__(self):
        m = np.ascontiguousarray(self.means, dtype=np.float64)
        s = np.asarray(self.stddevs, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] < 1:
            raise InputError("means must be a c x d matrix")
        if s.shape != (m.shape[0],) or w.shape != (m.shape[0],):
            raise InputError("stddevs and weights must have one entry per component")
        if np.any(s <= 0):
            raise InputError("stddevs must be > 0")
        if np.any(w < 0) or abs(w.sum() - 1.0) > NORMALIZATION_TOL:
            raise InputError("weights must be nonnegative and sum to 1")
        for a in (m, s, w):
            a.setflags(write=False)
        object.__setattr__(self, "means", m)
        object.__setattr__(self, "stddevs", s)
        object.__setattr__(self, "weights", w)

    @property
    def d(self) -> int:
        return self.means.shape[1]


@dataclass(frozen=True)
class TheoreticalCurveSpec:
    """Rectangular reference curve: precision cap and recall cap."""

    max_precision: float
    max_recall: float

    def __post_init__(self):
        for name in ("max_precision", "max_recall"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise InputError(f"{name} must lie in [0, 1]")


def sample_mixture(spec: MixtureSpec, n: int, seed: int) -> SampleSet:
    """n i.i.d. draws; labels record the component index."""
    if n < 1:
        raise InputError("n must be >= 1")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    comp = rng.choice(spec.means.shape[0], size=n, p=spec.weights)
    noise = rng.standard_normal((n, spec.d))
    feats = spec.means[comp] + spec.stddevs[comp, None] * noise
    return SampleSet(feats, labels=comp)


def _cluster_center(index: int, x0: float) -> np.ndarray:
    """Deterministic center: x0 on the split axis plus a unique tag in the
    remaining dims, keeping all pairwise distances >= TAG_SPACING."""
    c = np.zeros(CLUSTER_DIM)
    c[0] = x0
    axis = 1 + index % (CLUSTER_DIM - 1)
    mult = 1 + index // (CLUSTER_DIM - 1)
    c[axis] = TAG_SPACING * mult
    return c


def _uniform_cluster_spec(indices, x0_values) -> MixtureSpec:
    means = np.stack([_cluster_center(i, x0)
                      for i, x0 in zip(indices, x0_values)])
    c = means.shape[0]
    return MixtureSpec(means, np.ones(c), np.full(c, 1.0 / c))


def class_subset_experiment(q_classes: int, per_class: int, seed: int,
                            total_classes: int = 5):
    """P uniform over the first `total_classes` clusters, Q uniform over
    the first `q_classes`; rectangle caps (min(1, 5/q), min(1, q/5))."""
    if not (1 <= q_classes <= 9):
        raise InputError("q_classes must lie in 1..9")
    if per_class < 1:
        raise InputError("per_class must be >= 1")
    shared = min(total_classes, q_classes)
    p_ids = list(range(total_classes))
    q_ids = list(range(q_classes))
    # shared clusters at x0=0, side-exclusive ones displaced
    p_x0 = [0.0 if i < shared else CLUSTER_OFFSET for i in p_ids]
    q_x0 = [0.0 if i < shared else -CLUSTER_OFFSET for i in q_ids]
    n = total_classes * per_class
    real = sample_mixture(_uniform_cluster_spec(p_ids, p_x0), n, seed)
    fake = sample_mixture(_uniform_cluster_spec(q_ids, q_x0), n, seed + 1)
    spec = TheoreticalCurveSpec(
        max_precision=min(1.0, total_classes / q_classes),
        max_recall=min(1.0, q_classes / total_classes),
    )
    return PairedDataset(real.features, fake.features), spec


def class_overlap_experiment(total_classes: int, ratio: float,
                             per_class: int, seed: int):
    """P and Q each uniform over `total_classes` clusters sharing exactly
    ratio*total_classes of them; rectangle caps (ratio, ratio)."""
    if total_classes < 1 or per_class < 1:
        raise InputError("total_classes and per_class must be >= 1")
    if not (0.0 <= ratio <= 1.0):
        raise InputError("ratio must lie in [0, 1]")
    shared_f = ratio * total_classes
    shared = round(shared_f)
    if abs(shared_f - shared) > 1e-9:
        raise InputError(
            f"ratio*total_classes must be an integer, got {shared_f!r}")
    p_ids = list(range(total_classes))
    q_ids = list(range(shared)) + list(range(total_classes,
                                             2 * total_classes - shared))
    p_x0 = [0.0 if i < shared else CLUSTER_OFFSET for i in p_ids]
    q_x0 = [0.0 if i < shared else -CLUSTER_OFFSET for i in q_ids]
    n = total_classes * per_class
    real = sample_mixture(_uniform_cluster_spec(p_ids, p_x0), n, seed)
    fake = sample_mixture(_uniform_cluster_spec(q_ids, q_x0), n, seed + 1)
    return PairedDataset(real.features, fake.features), \
        TheoreticalCurveSpec(ratio, ratio)


def reweighting_experiment(weight_a: float, per_side: int, seed: int):
    """P = weight_a*A + (1-weight_a)*B over two far clusters, Q = A only.

    Exact frontier: alpha = min(weight_a*lam, 1), i.e. full precision up
    to recall weight_a followed by a sharp transition.
    """
    if not (0.0 < weight_a < 1.0):
        raise InputError("weight_a must lie strictly in (0, 1)")
    if per_side < 1:
        raise InputError("per_side must be >= 1")
    means = np.stack([_cluster_center(0, 0.0),
                      _cluster_center(1, CLUSTER_OFFSET)])
    p_spec = MixtureSpec(means, np.ones(2),
                         np.asarray([weight_a, 1.0 - weight_a]))
    q_spec = MixtureSpec(means[:1], np.ones(1), np.ones(1))
    real = sample_mixture(p_spec, per_side, seed)
    fake = sample_mixture(q_spec, per_side, seed + 1)
    return PairedDataset(real.features, fake.features), \
        TheoreticalCurveSpec(1.0, weight_a)


def disjoint_split_experiment(clusters: int, per_side: int, seed: int,
                              side_offset: float = 3.0):
    """`clusters` tight clusters split alternately between P and Q.

    Unlike the class experiments, the side displacement is kept small
    (default 3 sigma per side) and the interleaved tag shells make the
    two sides geometrically entangled: a pooled k-means with fewer bins
    than clusters is forced to merge across sides, while a linear
    classifier can still separate them along the split axis. True
    overlap is zero, so the exact curve sits at the origin for all
    finite ratios.
    """
    if clusters < 2 or clusters % 2 != 0:
        raise InputError("clusters must be an even count >= 2")
    if per_side < 1:
        raise InputError("per_side must be >= 1")
    p_ids = list(range(0, clusters, 2))
    q_ids = list(range(1, clusters, 2))
    real = sample_mixture(_uniform_cluster_spec(
        p_ids, [side_offset] * len(p_ids)), per_side, seed)
    fake = sample_mixture(_uniform_cluster_spec(
        q_ids, [-side_offset] * len(q_ids)), per_side, seed + 1)
    return PairedDataset(real.features, fake.features), \
        TheoreticalCurveSpec(0.0, 0.0)


def gaussian_optimal_curve(mu1: float, mu2: float, sigma: float,
                           grid: LambdaGrid) -> PRCurve:
    """Closed-form optimal curve for N(mu1, sigma^2) vs N(mu2, sigma^2).

    The optimal test at ratio lam thresholds at
    z* = (mu1+mu2)/2 + sigma^2*ln(lam)/(mu2-mu1); alpha is the mixed
    error lam*P(miss) + Q(false alarm) via Gaussian tail integrals.
    """
    if not sigma > 0:
        raise InputError("sigma must be > 0")
    lams = grid.values
    if mu1 == mu2:
        alpha_pre = lams.copy()
    else:
        lo, hi = (mu1, mu2) if mu1 < mu2 else (mu2, mu1)
        # the classifier votes P on the lo side; exchanging mu1/mu2 is a
        # reflection and leaves the error probabilities unchanged
        zstar = 0.5 * (lo + hi) + sigma * sigma * np.log(lams) / (hi - lo)
        miss_p = 1.0 - ndtr((zstar - lo) / sigma)   # P-sample on the Q side
        fa_q = ndtr((zstar - hi) / sigma)           # Q-sample on the P side
        alpha_pre = lams * miss_p + fa_q
    alpha = np.minimum(alpha_pre, 1.0)
    beta = np.minimum(alpha_pre / lams, 1.0)
    if grid.include_endpoints:
        lams = np.concatenate(([0.0], lams, [math.inf]))
        alpha = np.concatenate(([0.0], alpha, [1.0]))
        beta = np.concatenate(([1.0], beta, [0.0]))
    return PRCurve(lams, alpha, beta)


def theoretical_rectangle_curve(spec: TheoreticalCurveSpec,
                                grid: LambdaGrid) -> PRCurve:
    """Exact frontier for uniform class-subset/overlap constructions:
    alpha = min(lam*b, a), beta = min(b, a/lam)."""
    a, b = spec.max_precision, spec.max_recall
    lams = grid.values
    alpha = np.minimum(lams * b, a)
    beta = np.minimum(b, a / lams if a > 0 else np.zeros_like(lams))
    if grid.include_endpoints:
        lams = np.concatenate(([0.0], lams, [math.inf]))
        alpha = np.concatenate(([0.0], alpha, [a]))
        beta = np.concatenate(([b], beta, [0.0]))
    return PRCurve(lams, alpha, beta)
