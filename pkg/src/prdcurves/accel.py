"""Hot numeric kernels, numba-compiled with a pure-numpy fallback.

The backend is chosen once at import time from the environment variable
``PRD_BACKEND``:

* ``numba`` (default): inner loops are compiled with ``@njit(cache=True)``.
* ``numpy``: no JIT; vectorized numpy implementations are used instead.

If numba is not importable the numpy path is selected automatically.
Results are deterministic within a backend; the two backends may differ in
the last floating-point ulp because summation orders differ.

``benchmarks/bench_backends.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

BACKEND = os.environ.get("PRD_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise RuntimeError(f"PRD_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        BACKEND = "numpy"

if BACKEND == "numpy":

    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit."""
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


# ---------------------------------------------------------------------------
# alpha over a lambda grid: alpha_j = sum_i min(lam_j * p_i, q_i)


@njit(cache=True)
def _alpha_grid_loop(lams, p, q):
    out = np.empty(lams.shape[0])
    for j in range(lams.shape[0]):
        s = 0.0
        for i in range(p.shape[0]):
            a = lams[j] * p[i]
            s += a if a < q[i] else q[i]
        out[j] = s
    return out


def _alpha_grid_numpy(lams, p, q):
    return np.minimum(lams[:, None] * p[None, :], q[None, :]).sum(axis=1)


# ---------------------------------------------------------------------------
# per-lambda minimum of mixed error rates: alpha_j = min_i (lam_j*fpr_i + fnr_i)


@njit(cache=True)
def _min_mixed_error_loop(lams, fpr, fnr):
    out = np.empty(lams.shape[0])
    for j in range(lams.shape[0]):
        best = np.inf
        for i in range(fpr.shape[0]):
            v = lams[j] * fpr[i] + fnr[i]
            if v < best:
                best = v
        out[j] = best
    return out


def _min_mixed_error_numpy(lams, fpr, fnr):
    return np.min(lams[:, None] * fpr[None, :] + fnr[None, :], axis=1)


# ---------------------------------------------------------------------------
# Adam loop for a single logistic-regression ensemble member.
#
# `order` holds one row of sample indices per epoch (the seeded shuffle is
# drawn outside so the kernel stays RNG-free). Weight decay couples into the
# gradient classically and is not applied to the bias. The learning rate
# decays linearly to zero across epochs.


def _train_member_impl(X, y, order, lr0, weight_decay, batch,
                       beta1, beta2, eps):
    n, d = X.shape
    epochs = order.shape[0]
    w = np.zeros(d)
    b = 0.0
    mw = np.zeros(d)
    vw = np.zeros(d)
    mb = 0.0
    vb = 0.0
    t = 0
    for e in range(epochs):
        lr = lr0 * (1.0 - e / epochs)
        for s in range(0, n, batch):
            idx = order[e, s:s + batch]
            Xb = X[idx]
            m = idx.shape[0]
            z = Xb @ w + b
            r = np.empty(m)
            for i in range(m):
                if z[i] >= 0.0:
                    pi = 1.0 / (1.0 + np.exp(-z[i]))
                else:
                    ez = np.exp(z[i])
                    pi = ez / (1.0 + ez)
                r[i] = (pi - y[idx[i]]) / m
            gw = r @ Xb + weight_decay * w
            gb = np.sum(r)
            t += 1
            mw = beta1 * mw + (1.0 - beta1) * gw
            vw = beta2 * vw + (1.0 - beta2) * gw * gw
            mb = beta1 * mb + (1.0 - beta1) * gb
            vb = beta2 * vb + (1.0 - beta2) * gb * gb
            c1 = 1.0 - beta1 ** t
            c2 = 1.0 - beta2 ** t
            w = w - lr * (mw / c1) / (np.sqrt(vw / c2) + eps)
            b = b - lr * (mb / c1) / (np.sqrt(vb / c2) + eps)
    return w, b


_train_member_loop = njit(cache=True, nogil=True)(_train_member_impl)


# ---------------------------------------------------------------------------
# k-means assignment step: nearest centroid, ties to the lowest index.


@njit(cache=True)
def _assign_loop(X, centroids):
    n, d = X.shape
    k = centroids.shape[0]
    labels = np.empty(n, np.int64)
    dists = np.empty(n)
    for i in range(n):
        best = 0
        bd = np.inf
        for c in range(k):
            s = 0.0
            for j in range(d):
                diff = X[i, j] - centroids[c, j]
                s += diff * diff
            if s < bd:
                bd = s
                best = c
        labels[i] = best
        dists[i] = bd
    return labels, dists


def _assign_numpy(X, centroids):
    # squared distances without the n*k*d intermediate
    sq = (np.sum(X * X, axis=1)[:, None]
          - 2.0 * X @ centroids.T
          + np.sum(centroids * centroids, axis=1)[None, :])
    labels = np.argmin(sq, axis=1)
    dists = np.maximum(sq[np.arange(X.shape[0]), labels], 0.0)
    return labels.astype(np.int64), dists


if BACKEND == "numba":
    alpha_grid = _alpha_grid_loop
    min_mixed_error = _min_mixed_error_loop
    train_member = _train_member_loop
    assign_to_centroids = _assign_loop
else:
    alpha_grid = _alpha_grid_numpy
    min_mixed_error = _min_mixed_error_numpy
    train_member = _train_member_impl
    assign_to_centroids = _assign_numpy
