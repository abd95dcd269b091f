"""K-means discretization baseline.

Both sample sets are pooled, clustered once, and each set's hard cluster
assignments are normalized into a histogram; the exact discrete curve of
the two histograms is then the baseline estimate. Lloyd iterations start
from k-means++ seeding, the best of several restarts by within-cluster
sum of squares wins, and empty clusters are repaired by stealing the
farthest point from the largest cluster.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .accel import assign_to_centroids
from .data import SampleSet
from .errors import InputError
from .measures import DiscreteDistribution, LambdaGrid, PRCurve, exact_pr_curve
from .parallel import thread_cap

MAX_ITER = 300


@dataclass(frozen=True)
class KMeansModel:
    centroids: np.ndarray

    def __post_init__(self):
        C = np.ascontiguousarray(self.centroids, dtype=np.float64)
        if C.ndim != 2 or C.shape[0] < 1:
            raise InputError("centroids must be a k x d matrix with k >= 1")
        if not np.all(np.isfinite(C)):
            raise InputError("centroids must be finite")
        C.setflags(write=False)
        object.__setattr__(self, "centroids", C)

    @property
    def k(self) -> int:
        return self.centroids.shape[0]

    def assign(self, X: np.ndarray) -> np.ndarray:
        """Nearest-centroid labels, ties resolved to the lowest index."""
        X = np.ascontiguousarray(X, dtype=np.float64)
        labels, _ = assign_to_centroids(X, self.centroids)
        return labels


def _kmeans_pp_init(X: np.ndarray, k: int, rng: np.random.Generator):
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]))
    centroids[0] = X[rng.integers(n)]
    closest = np.sum((X - centroids[0]) ** 2, axis=1)
    for c in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            # all points coincide with chosen centroids; any pick works
            idx = rng.integers(n)
        else:
            idx = int(np.searchsorted(np.cumsum(closest / total),
                                      rng.random(), side="right"))
            idx = min(idx, n - 1)
        centroids[c] = X[idx]
        closest = np.minimum(closest, np.sum((X - centroids[c]) ** 2, axis=1))
    return centroids


def _repair_empty(X, centroids, labels, dists, empty):
    counts = np.bincount(labels, minlength=centroids.shape[0])
    for c in empty:
        largest = int(np.argmax(counts))
        members = np.flatnonzero(labels == largest)
        far = members[int(np.argmax(dists[members]))]
        centroids[c] = X[far]
        labels[far] = c
        counts[largest] -= 1
        counts[c] += 1


def _lloyd(X: np.ndarray, k: int, rng: np.random.Generator):
    centroids = _kmeans_pp_init(X, k, rng)
    labels = np.full(X.shape[0], -1, dtype=np.int64)
    for _ in range(MAX_ITER):
        new_labels, dists = assign_to_centroids(X, centroids)
        empty = np.flatnonzero(np.bincount(new_labels, minlength=k) == 0)
        if empty.size:
            _repair_empty(X, centroids, new_labels, dists, empty)
        if np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels
        for c in range(k):
            members = labels == c
            if np.any(members):
                centroids[c] = X[members].mean(axis=0)
    _, dists = assign_to_centroids(X, centroids)
    return centroids, float(dists.sum())


def fit_kmeans(pooled: np.ndarray, k: int, seed: int,
               restarts: int = 10) -> KMeansModel:
    """Best-of-restarts Lloyd clustering, deterministic given seed."""
    X = np.ascontiguousarray(pooled, dtype=np.float64)
    if X.ndim != 2:
        raise InputError("pooled must be an n x d matrix")
    if k < 1:
        raise InputError("k must be >= 1")
    if restarts < 1:
        raise InputError("restarts must be >= 1")
    if X.shape[0] < k:
        raise InputError(f"need at least k={k} points, got {X.shape[0]}")

    def run(r: int):
        rng = np.random.default_rng(
            np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, r]))
        return _lloyd(X, k, rng)

    workers = min(thread_cap(), restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(r) for r in range(restarts)]
    # deterministic winner: lowest WCSS, earliest restart on ties
    best = min(range(restarts), key=lambda r: (results[r][1], r))
    return KMeansModel(results[best][0])


def histogram_prd(real: SampleSet, fake: SampleSet, k: int,
                  grid: LambdaGrid, seed: int,
                  restarts: int = 10) -> PRCurve:
    """Exact discrete curve of the two cluster-assignment histograms."""
    if real.d != fake.d:
        raise InputError("real and fake must share the feature dimension")
    model = fit_kmeans(
        np.concatenate([real.features, fake.features], axis=0), k, seed,
        restarts=restarts)
    p = np.bincount(model.assign(real.features), minlength=k) / real.n
    q = np.bincount(model.assign(fake.features), minlength=k) / fake.n
    return exact_pr_curve(DiscreteDistribution(p), DiscreteDistribution(q),
                          grid)
