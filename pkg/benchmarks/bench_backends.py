"""Timing comparison of the numba and numpy kernel backends.

Each backend runs in a fresh subprocess so that PRD_BACKEND is honored
at import time and numba compilation cost can be reported separately
from steady-state throughput.

Usage:
    python benchmarks/bench_backends.py [--repeats 5]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from prdcurves import accel

repeats = int(sys.argv[1])
rng = np.random.default_rng(0)

lams = np.sort(np.tan(np.linspace(0.01, np.pi / 2 - 0.01, 1001)))
p = rng.random(5000); p /= p.sum()
q = rng.random(5000); q /= q.sum()
fpr = rng.random(4000)
fnr = rng.random(4000)
X = rng.standard_normal((4000, 16))
y = (rng.random(4000) < 0.5).astype(np.float64)
order = np.stack([rng.permutation(4000) for _ in range(50)]).astype(np.int64)
cent = rng.standard_normal((50, 16))

cases = {
    "alpha_grid(1001 x 5000)":
        lambda: accel.alpha_grid(lams, p, q),
    "min_mixed_error(1001 x 4000)":
        lambda: accel.min_mixed_error(lams, fpr, fnr),
    "train_member(4000 x 16, 50 epochs)":
        lambda: accel.train_member(X, y, order, 1e-3, 0.1, 64,
                                   0.9, 0.999, 1e-8),
    "assign_to_centroids(4000 x 16, k=50)":
        lambda: accel.assign_to_centroids(X, cent),
}

out = {"backend": accel.BACKEND, "timings": {}}
for name, fn in cases.items():
    t0 = time.perf_counter()
    fn()
    first = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["timings"][name] = {"first_call_s": first, "best_s": best}
json.dump(out, sys.stdout)
"""


def run_backend(backend, repeats):
    env = dict(os.environ, PRD_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeats)],
                          capture_output=True, text=True, env=env, check=True)
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(
        description="Benchmark numba vs numpy kernel backends.")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed repetitions per kernel (best is kept)")
    args = parser.parse_args()

    results = {b: run_backend(b, args.repeats) for b in ("numba", "numpy")}
    for backend, res in results.items():
        if res["backend"] != backend:
            print(f"warning: requested {backend}, got {res['backend']} "
                  "(numba not importable?)", file=sys.stderr)

    name_w = max(len(n) for n in results["numpy"]["timings"])
    header = (f"{'kernel':<{name_w}}  {'numba first':>11}  "
              f"{'numba best':>10}  {'numpy best':>10}  {'speedup':>7}")
    print(header)
    print("-" * len(header))
    for name in results["numpy"]["timings"]:
        nb = results["numba"]["timings"][name]
        np_ = results["numpy"]["timings"][name]
        speedup = np_["best_s"] / nb["best_s"] if nb["best_s"] > 0 else 0.0
        print(f"{name:<{name_w}}  {nb['first_call_s']:>10.3f}s "
              f"{nb['best_s']*1e3:>9.2f}ms {np_['best_s']*1e3:>9.2f}ms "
              f"{speedup:>6.1f}x")


if __name__ == "__main__":
    main()
