"""Benchmark the exact-phase and float-phase S-matrix evaluation modes.

The exact mode accumulates phases as rationals and applies one complex
exponential per entry; the float mode sums raw floating phases. This
script times both on a medium-size label set and reports the worst
entrywise disagreement, so speed/accuracy tradeoffs stay visible.

Usage: python benchmarks/bench_phase_modes.py [--type A2] [--pq 4,3]
       [--repeats 3] [--threads N]
"""

import argparse
import time

import numpy as np

from kacfusion import LevelData, build_root_system, build_smatrix


def run(name, p, q, repeats, threads):
    rs = build_root_system(name)
    ld = LevelData.from_pq(rs, p, q)
    sizes = {}
    results = {}
    for exact in (True, False):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            sm = build_smatrix(ld, exact=exact, threads=threads)
            best = min(best, time.perf_counter() - t0)
        mode = "exact" if exact else "float"
        sizes[mode] = len(sm.labels)
        results[mode] = (best, sm.matrix)
    n = sizes["exact"]
    t_exact, m_exact = results["exact"]
    t_float, m_float = results["float"]
    diff = float(np.abs(m_exact - m_float).max())
    print(f"{name} (p,q)=({p},{q}): {n} x {n} S-matrix, best of {repeats}")
    print(f"  exact phases  {t_exact * 1e3:9.2f} ms")
    print(f"  float phases  {t_float * 1e3:9.2f} ms"
          f"  (exact/float time ratio {t_exact / t_float:.2f})")
    print(f"  max entry disagreement {diff:.3e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="A2")
    ap.add_argument("--pq", default="4,3")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    p, q = (int(v) for v in args.pq.split(","))
    run(args.type, p, q, args.repeats, args.threads)


if __name__ == "__main__":
    main()
