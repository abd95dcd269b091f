"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

import prdcurves as pr

DYADIC_SCALE = 2 ** 20


def random_dyadic_pair(rng: np.random.Generator, max_support: int = 12):
    """Two random distributions whose weights are multiples of 2^-20.

    Dyadic weights make subset sums exact in binary floating point, so
    dynamic-programming frontiers can be compared to brute-force
    enumeration with equality instead of tolerances.
    """
    k = int(rng.integers(1, max_support + 1))

    def one():
        cuts = np.sort(rng.integers(0, DYADIC_SCALE + 1, size=k - 1))
        parts = np.diff(np.concatenate(([0], cuts, [DYADIC_SCALE])))
        return parts.astype(np.float64) / DYADIC_SCALE

    return (pr.DiscreteDistribution(one()), pr.DiscreteDistribution(one()))


def random_pair(rng: np.random.Generator, max_support: int = 12):
    """Two random distributions on a shared support, some atoms zeroed."""
    k = int(rng.integers(1, max_support + 1))

    def one():
        w = rng.random(k)
        w[rng.random(k) < 0.25] = 0.0
        if w.sum() == 0.0:
            w[rng.integers(k)] = 1.0
        return w / w.sum()

    return (pr.DiscreteDistribution(one()), pr.DiscreteDistribution(one()))


def blob_pair(rng: np.random.Generator, n: int, d: int, gap: float):
    """Two Gaussian blobs separated by `gap` along the first axis,
    placed symmetrically about the origin."""
    X = rng.standard_normal((n, d))
    Y = rng.standard_normal((n, d))
    X[:, 0] -= gap / 2.0
    Y[:, 0] += gap / 2.0
    return X, Y


def distance_to_polyline(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Euclidean distance from each row of `points` to a polyline."""
    best = np.full(points.shape[0], np.inf)
    for s, e in zip(poly[:-1], poly[1:]):
        seg = e - s
        denom = max(float(seg @ seg), 1e-300)
        t = np.clip(((points - s) @ seg) / denom, 0.0, 1.0)
        proj = s + t[:, None] * seg
        best = np.minimum(best, np.linalg.norm(points - proj, axis=1))
    return best


def rectangle_polyline(spec: pr.TheoreticalCurveSpec) -> np.ndarray:
    """The rectangle frontier as a (beta, alpha) polyline."""
    a, b = spec.max_precision, spec.max_recall
    return np.asarray([(b, 0.0), (b, a), (0.0, a)])


def brute_force_mcr(p: pr.DiscreteDistribution, q: pr.DiscreteDistribution):
    """All-subsets (epsilon, delta) frontier for supports up to ~16 atoms."""
    k = len(p)
    pairs = []
    for mask in range(1 << k):
        sel = [(mask >> i) & 1 == 1 for i in range(k)]
        pairs.append((float(q.weights[sel].sum()), float(p.weights[sel].sum())))
    pairs = np.asarray(pairs)
    order = np.lexsort((-pairs[:, 1], pairs[:, 0]))
    frontier = []
    best = -np.inf
    for i in order:
        e, d = pairs[i]
        if d > best:
            frontier.append((e, d))
            best = d
    return frontier
