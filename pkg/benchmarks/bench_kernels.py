"""Time the hot kernels with numba enabled and disabled.

Each mode runs in its own interpreter because the backend is chosen at
import time from STRATA_DISABLE_NUMBA.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from strata import _accel, exact
from strata.families import complete_binary_tree, grid, grid3d, random_three_track_layout

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
three_track = [random_three_track_layout(9, rng)[0] for _ in range(20)]
cases = {
    "pathwidth cbt(3) n=15": lambda: exact.pathwidth_exact(complete_binary_tree(3)),
    "pathwidth grid 3x6 n=18": lambda: exact.pathwidth_exact(grid(3, 6)),
    "layered pw grid3d(2) n=8": lambda: exact.layered_pathwidth_exact(grid3d(2)),
    "layered pw 20 random 3-track n=9": lambda: [exact.layered_pathwidth_exact(g) for g in three_track],
    "track number grid3d(2)": lambda: exact.track_number_exact(grid3d(2)),
}
out = {"numba": _accel.USE_NUMBA}
for name, fn in cases.items():
    fn()  # warm up (jit compilation)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("STRATA_DISABLE_NUMBA", None)
    if disable:
        env["STRATA_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if not fast.pop("numba"):
        print("numba is not installed; both columns use numpy")
    slow.pop("numba")
    width = max(map(len, fast))
    print(f"{'case':<{width}}  {'numba s':>10}  {'numpy s':>10}  {'speedup':>8}")
    for name in fast:
        a, b = fast[name], slow[name]
        print(f"{name:<{width}}  {a:>10.4f}  {b:>10.4f}  {b / a if a else float('nan'):>7.1f}x")


if __name__ == "__main__":
    main()
