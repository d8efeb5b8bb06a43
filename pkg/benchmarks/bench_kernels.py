#!/usr/bin/env python3
"""Benchmark the compiled multiplication kernels against the pure-Python
fallback.

Runs each workload in a fresh subprocess (once per backend, selected with
TUTTEVAL_PURE) so import-time kernel selection is exercised exactly as in
normal use, and prints a per-kernel timing table with the speedup.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
from tutteval import kernels
from tutteval.exactnum import Rat

repeat = int(sys.argv[1])
rng = random.Random(20240824)


def rand_map(n, keyfn):
    out = {}
    while len(out) < n:
        out[keyfn(rng)] = Rat(rng.randrange(-999, 1000) or 1,
                              rng.randrange(1, 40))
    return out


workloads = {
    "mul_trunc3": (
        lambda: (rand_map(400, lambda r: (r.randrange(12), r.randrange(8),
                                          r.randrange(6))),
                 rand_map(400, lambda r: (r.randrange(12), r.randrange(8),
                                          r.randrange(6)))),
        lambda A, B: kernels.mul_trunc3(A, B, 20, 8),
    ),
    "mul_trunc2": (
        lambda: (rand_map(350, lambda r: (r.randrange(40), r.randrange(16))),
                 rand_map(350, lambda r: (r.randrange(40), r.randrange(16)))),
        lambda A, B: kernels.mul_trunc2(A, B, 44, 18),
    ),
    "mul_poly": (
        lambda: (rand_map(250, lambda r: tuple(r.randrange(6)
                                               for _ in range(6))),
                 rand_map(250, lambda r: tuple(r.randrange(6)
                                               for _ in range(6)))),
        lambda A, B: kernels.mul_poly(A, B),
    ),
}

result = {"backend": kernels.BACKEND, "times": {}, "checks": {}}
for name, (gen, run) in workloads.items():
    A, B = gen()
    run(A, B)  # warm-up
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = run(A, B)
        dt = time.perf_counter() - t0
        best = dt if best is None or dt < best else best
    result["times"][name] = best
    # order-independent digest so the two backends can be cross-checked
    result["checks"][name] = str(sum(hash(k) * hash(v)
                                     for k, v in out.items()) % (10 ** 12))
print(json.dumps(result))
"""


def run_backend(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["TUTTEVAL_PURE"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)],
                         capture_output=True, text=True, env=env, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="timed repetitions per kernel (best-of)")
    args = ap.parse_args()

    fast = run_backend(pure=False, repeat=args.repeat)
    slow = run_backend(pure=True, repeat=args.repeat)
    print(f"compiled backend: {fast['backend']}")
    print(f"fallback backend: {slow['backend']}")
    if fast["backend"] == slow["backend"]:
        print("note: compiled module unavailable; comparing python to itself")

    print(f"\n{'kernel':<12} {'compiled':>12} {'python':>12} {'speedup':>9}")
    for name in fast["times"]:
        a, b = fast["times"][name], slow["times"][name]
        match = fast["checks"][name] == slow["checks"][name]
        flag = "" if match else "  RESULTS DIFFER"
        print(f"{name:<12} {a * 1e3:>10.2f}ms {b * 1e3:>10.2f}ms "
              f"{b / a:>8.2f}x{flag}")
        if not match:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
