"""Classifier-based estimation of the precision-recall curve.

Pipeline over a paired dataset (X_i from P, Y_i from Q):

1. paired Bernoulli split: a fair coin per pair decides which element
   trains and which one tests, with complementary origin labels;
2. train the linear median ensemble on the train half;
3. score the test half and sweep every observed score as a threshold
   into (fpr, fnr) error-rate points;
4. alpha_lambda = min over points of (lambda*fpr + fnr), beta = alpha/lambda.

Two virtual error points (1,0) and (0,1) are always appended so the
sweep covers thresholds outside the observed score range; without them a
constant classifier would push beta past 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .accel import min_mixed_error
from .ensemble import LabeledTrainSet, TrainingConfig, predict, train
from .errors import InputError
from .measures import LambdaGrid, PRCurve


@dataclass(frozen=True)
class PairedDataset:
    """Equal-size sample matrices drawn from P (real) and Q (fake)."""

    real_features: np.ndarray
    fake_features: np.ndarray

    def __post_init__(self):
        X = np.ascontiguousarray(self.real_features, dtype=np.float64)
        Y = np.ascontiguousarray(self.fake_features, dtype=np.float64)
        if X.ndim != 2 or Y.ndim != 2:
            raise InputError("feature sets must be n x d matrices")
        if X.shape != Y.shape:
            raise InputError(
                f"real and fake shapes must match, got {X.shape} vs {Y.shape}"
            )
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise InputError("features must be finite")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "real_features", X)
        object.__setattr__(self, "fake_features", Y)

    @property
    def n(self) -> int:
        return self.real_features.shape[0]

    @property
    def d(self) -> int:
        return self.real_features.shape[1]


@dataclass(frozen=True)
class SplitResult:
    train: LabeledTrainSet
    test: LabeledTrainSet


@dataclass(frozen=True)
class ScoredTestSet:
    """Classifier scores on held-out samples with their origin bits."""

    scores: np.ndarray
    origins: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.scores, dtype=np.float64)
        u = np.asarray(self.origins)
        if s.ndim != 1 or u.shape != s.shape:
            raise InputError("scores and origins must be 1-D of equal length")
        if not np.all((s >= 0.0) & (s <= 1.0)):
            raise InputError("scores must lie in [0, 1]")
        if not np.all((u == 0) | (u == 1)):
            raise InputError("origins must be 0/1 bits")
        u = np.asarray(u, dtype=np.int64)
        s.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "scores", s)
        object.__setattr__(self, "origins", u)


@dataclass(frozen=True)
class ErrorRatePoint:
    """(empirical type I rate, empirical type II rate) at one threshold."""

    fpr: float
    fnr: float

    def __post_init__(self):
        if not (0.0 <= self.fpr <= 1.0 and 0.0 <= self.fnr <= 1.0):
            raise InputError("fpr and fnr must lie in [0, 1]")


def default_lambda_grid(resolution: int) -> LambdaGrid:
    """Ratio grid lam_i = tan(i*pi / (2*(resolution+1))), i = 1..resolution.

    Angularly uniform in the (beta, alpha) quadrant and closed under
    lam -> 1/lam.
    """
    if resolution < 2:
        raise InputError("resolution must be >= 2")
    i = np.arange(1, resolution + 1, dtype=np.float64)
    return LambdaGrid(np.tan(i * math.pi / (2.0 * (resolution + 1))))


def create_train_test(data: PairedDataset, seed: int) -> SplitResult:
    """Paired Bernoulli split: per pair i, a fair coin U_i sends X_i to the
    train set with label 1 (and Y_i to test with label 0) or vice versa."""
    if data.n < 2:
        raise InputError("need at least 2 sample pairs to split")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    u = rng.integers(0, 2, size=data.n)
    pick = u[:, None].astype(bool)
    train_feats = np.where(pick, data.real_features, data.fake_features)
    test_feats = np.where(pick, data.fake_features, data.real_features)
    return SplitResult(
        train=LabeledTrainSet(train_feats, u),
        test=LabeledTrainSet(test_feats, 1 - u),
    )


def error_rates_from_scores(scored: ScoredTestSet) -> list[ErrorRatePoint]:
    """Threshold sweep over the distinct observed scores.

    At threshold t: fpr = fraction of origin-1 entries with score < t,
    fnr = fraction of origin-0 entries with score >= t. The virtual
    endpoints (1,0) and (0,1) are appended.
    """
    real = np.sort(scored.scores[scored.origins == 1])
    fake = np.sort(scored.scores[scored.origins == 0])
    if real.size == 0 or fake.size == 0:
        raise InputError("scored set must contain both origins")
    thresholds = np.unique(scored.scores)
    fpr = np.searchsorted(real, thresholds, side="left") / real.size
    fnr = 1.0 - np.searchsorted(fake, thresholds, side="left") / fake.size
    points = [ErrorRatePoint(float(a), float(b)) for a, b in zip(fpr, fnr)]
    points.append(ErrorRatePoint(1.0, 0.0))
    points.append(ErrorRatePoint(0.0, 1.0))
    return points


def estimate_prd(error_rates: list[ErrorRatePoint],
                 grid: LambdaGrid) -> PRCurve:
    """Minimize the mixed error lambda*fpr + fnr per grid ratio."""
    if len(error_rates) == 0:
        raise InputError("error_rates must be nonempty")
    fpr = np.ascontiguousarray([p.fpr for p in error_rates])
    fnr = np.ascontiguousarray([p.fnr for p in error_rates])
    alpha_pre = min_mixed_error(grid.values, fpr, fnr)
    alpha = np.minimum(alpha_pre, 1.0)
    beta = np.minimum(alpha_pre / grid.values, 1.0)
    return PRCurve(grid.values, alpha, beta)


def estimate_pr_curve(data: PairedDataset, config: TrainingConfig,
                      grid: LambdaGrid):
    """Full pipeline; returns (curve, model, scored test set)."""
    if data.n < 4:
        raise InputError("need at least 4 sample pairs")
    split = create_train_test(data, config.seed)
    model = train(split.train, config)
    scores = predict(model, split.test.features)
    scored = ScoredTestSet(scores, split.test.targets.astype(np.int64))
    curve = estimate_prd(error_rates_from_scores(scored), grid)
    return curve, model, scored
