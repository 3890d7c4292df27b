"""Compiled kernels against the pure-numpy fallback.

Each backend runs in its own interpreter, because the choice is fixed at
import time.  The timed work is a planar frequency scan; one warm-up point
keeps compilation and cache loading out of the numbers.

    python benchmarks/bench_accel.py [--points 101] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from decaykit import backend
from decaykit.cli import ScanSpec, run_scan
points, repeat = int(sys.argv[1]), int(sys.argv[2])
spec = ScanSpec(model="planar", axis="omega", start=0.5, stop=1.5, points=points, qz=0.1, tol=1e-8)
run_scan(ScanSpec(model="planar", qz=0.1, points=2))
times = []
for _ in range(repeat):
    t = time.perf_counter()
    rows = run_scan(spec)
    times.append(time.perf_counter() - t)
print(json.dumps({"backend": backend(), "best": min(times),
                  "checksum": sum(r["gamma_over_gamma0"] for r in rows)}))
"""


def run(disable_jit, points, repeat):
    env = dict(os.environ)
    env.pop("DECAYKIT_DISABLE_JIT", None)
    if disable_jit:
        env["DECAYKIT_DISABLE_JIT"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKER, str(points), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args()
    fast = run(False, a.points, a.repeat)
    slow = run(True, a.points, a.repeat)
    for r in (fast, slow):
        print(f"{r['backend']:>6}: {r['best']:8.3f} s for {a.points} points "
              f"({1e3 * r['best'] / a.points:.2f} ms/point)")
    print(f"speed-up: {slow['best'] / fast['best']:.1f}x")
    drift = abs(fast["checksum"] - slow["checksum"]) / abs(slow["checksum"])
    print(f"results agree to {drift:.1e} (relative, summed rate column)")


if __name__ == "__main__":
    main()
