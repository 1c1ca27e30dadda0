#!/usr/bin/env python3
"""Benchmark the two sweep backends and check that they agree.

The six-parameter grid walk dominates region computation, so the package
ships a compiled kernel with a pure-numpy fallback selected at import.
This script times both on the same channels and verifies the resulting
union polygons are identical.

Usage: python benchmarks/benchmark_sweep.py [--resolution N]
"""

import argparse
import time

import numpy as np

from secmux import _backend, _sweep_numpy
from secmux.gaussian import GaussianIC, SweepConfig, sweep_union

CHANNELS = {
    "symmetric tau=0.2 P=10": GaussianIC(0.2, 0.2, 10.0, 10.0),
    "asymmetric tau=(0.1,0.3) P=(80,10)": GaussianIC(0.1, 0.3, 80.0, 10.0),
}


def run(resolution: int) -> None:
    cfg = SweepConfig(resolution=resolution)
    total = resolution**6
    print(f"grid: {resolution} points per axis, {total} parameter points per sweep")
    if _backend.BACKEND_NAME == "numpy":
        print("compiled kernel not built; only the numpy backend is available")

    for label, channel in CHANNELS.items():
        for kind in ("hk", "secure_secret"):
            stamps = {}
            polys = {}
            backends = [("numpy", _sweep_numpy)]
            if _backend.BACKEND_NAME != "numpy":
                backends.insert(0, ("compiled", _backend.ACTIVE))
            for name, impl in backends:
                start = time.perf_counter()
                polys[name] = sweep_union(channel, cfg, kind, backend=impl)
                stamps[name] = time.perf_counter() - start
            line = f"{label:38s} {kind:14s} " + "  ".join(
                f"{name}: {stamps[name]:7.2f}s" for name in stamps
            )
            if len(polys) == 2:
                a = np.sort(polys["compiled"].vertices, axis=0)
                b = np.sort(polys["numpy"].vertices, axis=0)
                same = a.shape == b.shape and np.allclose(a, b, atol=1e-12)
                speedup = stamps["numpy"] / stamps["compiled"]
                line += f"  speedup: {speedup:5.1f}x  identical: {same}"
                if not same:
                    raise SystemExit(f"backend mismatch on {label} {kind}")
            print(line)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--resolution", type=int, default=9,
                        help="grid points per axis (default 9; 21 matches the figures)")
    run(parser.parse_args().resolution)
