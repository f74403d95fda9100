#!/usr/bin/env python3
"""Wall-clock comparison of the compiled and pure-Python trial loops.

Runs the same sweep through both backends, reports best-of-N timings and the
speedup, and verifies that the two produce identical summaries.
"""

import argparse
import time

from qhubsim import ModelParams, SweepSpec, compiled_available, run_sweep


def time_sweep(spec, backend, repeats):
    timings = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = run_sweep(spec, backend=backend)
        timings.append(time.perf_counter() - t0)
    return min(timings), result


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2500)
    ap.add_argument("--grid", default="2,4,8,16,32,64,128")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    grid = tuple(sorted({int(s) for s in args.grid.split(",") if s.strip()}))
    spec = SweepSpec(
        grid=grid, params=ModelParams(trials=args.trials, master_seed=args.seed)
    )
    points = len(grid) * len(spec.policies)
    print(f"sweep: {points} points x {args.trials} trials, best of {args.repeats} runs")

    t_py, r_py = time_sweep(spec, "python", args.repeats)
    print(f"  python   backend: {t_py * 1000:9.1f} ms")
    if not compiled_available():
        print("  compiled backend: not built (pure-Python install)")
        return
    t_c, r_c = time_sweep(spec, "compiled", args.repeats)
    print(f"  compiled backend: {t_c * 1000:9.1f} ms")
    print(f"  speedup: {t_py / t_c:.1f}x")
    if r_py != r_c:
        raise SystemExit("ERROR: backends disagree on summaries")
    print("  summaries identical across backends")


if __name__ == "__main__":
    main()
