"""Benchmark the compiled RK4 core against the pure-NumPy fallback.

Runs the same matched-cavity scenario through both kernels and reports
wall time, steps/s and the relative deviation of the recorded field.

    python benchmarks/compare_backends.py [--steps N] [--classes N] [--repeat K]
"""

import argparse
import time

import numpy as np

from ringbloch import DetuningGrid, backends, simulate
from ringbloch.scenarios import build_config


def bench(args):
    window = (0.0, args.steps * 2e-9)
    spacing = 0.9 * 2 * np.pi / window[1]  # keep recurrence past the window
    grid = DetuningGrid(n=args.classes, spacing=spacing)
    sigma = window[1] / 50.0
    cfg = build_config(area_scaled=1.0, grid=grid, sigma=sigma,
                       center=8.0 * sigma, window=window, dt=2e-9)

    results = {}
    for name in backends.available_backends():
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            rec = simulate(cfg, backend=name)
            times.append(time.perf_counter() - t0)
        results[name] = (min(times), rec)

    print(f"{args.steps} RK4 steps x {args.classes} detuning classes "
          f"(best of {args.repeat}):")
    for name, (dt_run, _) in sorted(results.items()):
        print(f"  {name:>9}: {dt_run:8.3f} s   {args.steps / dt_run:12.0f} steps/s")
    if len(results) == 2:
        speedup = results["python"][0] / results["compiled"][0]
        a = results["compiled"][1].omega_cav.samples
        b = results["python"][1].omega_cav.samples
        dev = np.abs(a - b).max() / np.abs(a).max()
        print(f"  speedup: {speedup:.1f}x; max relative field deviation {dev:.2e}")
    else:
        print("  (compiled core not built; only the fallback was timed)")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=25000)
    parser.add_argument("--classes", type=int, default=257)
    parser.add_argument("--repeat", type=int, default=3)
    bench(parser.parse_args())


if __name__ == "__main__":
    main()
