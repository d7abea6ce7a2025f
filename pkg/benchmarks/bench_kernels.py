#!/usr/bin/env python3
"""Time the compiled chord-integration kernel against the pure-numpy fallback.

Both backends share one contract (composite Simpson along each chord,
bilinear sampling, zero outside the grid), so besides the timings the script
reports the maximum absolute difference over all rays.

Example:
    python3 benchmarks/bench_kernels.py --nx 512 --rays 4000 --intervals 1024
"""
import argparse
import time

import numpy as np

from tentomo._kernels import backend, chord_integrals, numpy_chord_integrals
from tentomo.phantoms import solenoidal_vector, synthetic_scalar, vortex_vector


def make_components(m, nx):
    if m == 0:
        return synthetic_scalar(nx, nx).data
    if m == 1:
        return solenoidal_vector(nx, nx).data
    a = solenoidal_vector(nx, nx).data
    b = vortex_vector(nx, nx).data
    return np.stack([a[0] * b[0], 0.5 * (a[0] * b[1] + a[1] * b[0]), a[1] * b[1]])


def make_rays(count, seed):
    rng = np.random.default_rng(seed)
    beta = rng.uniform(0.0, 2.0 * np.pi, count)
    phi = beta + rng.uniform(-1.25, 1.25, count)
    return beta, phi


def best_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nx", type=int, default=512, help="grid side length")
    ap.add_argument("--rays", type=int, default=4000)
    ap.add_argument("--intervals", type=int, default=1024)
    ap.add_argument("--m", type=int, default=1, choices=[0, 1, 2],
                    help="tensor rank of the timed field")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    comps = make_components(args.m, args.nx)
    betas, phis = make_rays(args.rays, args.seed)

    if backend() != "cython":
        print("note: compiled extension unavailable; 'compiled' numbers below "
              "run the fallback too")

    ref = numpy_chord_integrals(comps, betas, phis, args.intervals)
    fast = chord_integrals(comps, betas, phis, args.intervals)
    diff = np.max(np.abs(ref - fast))

    t_numpy = best_time(
        lambda: numpy_chord_integrals(comps, betas, phis, args.intervals),
        args.repeats)
    t_fast = best_time(
        lambda: chord_integrals(comps, betas, phis, args.intervals),
        args.repeats)

    rays_per_s = args.rays / t_fast
    print(f"grid {args.nx}x{args.nx}, m={args.m}, {args.rays} rays, "
          f"{args.intervals} intervals, best of {args.repeats}")
    print(f"  numpy fallback : {t_numpy * 1e3:9.2f} ms")
    print(f"  {backend():15s}: {t_fast * 1e3:9.2f} ms "
          f"({rays_per_s / 1e3:.0f}k rays/s)")
    print(f"  speedup        : {t_numpy / t_fast:9.2f}x")
    print(f"  max |diff|     : {diff:9.2e}")


if __name__ == "__main__":
    main()
