"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat N]

Compilation happens (or is loaded from cache) during a warm-up call and is
not counted.  Each pair of results is checked for agreement before timing.
"""
import argparse
import math
import time

import numpy as np

from sewitness import kernels
from sewitness._accel import backend
from sewitness.detection import affine_decomposition, family_states
from sewitness.robustness import _target, ball_grid
from sewitness.states import werner_like


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--spacing", type=float, default=0.005, help="grid oracle spacing")
    args = ap.parse_args()
    if backend() != "numba":
        raise SystemExit("numba is disabled (SEWITNESS_DISABLE_NUMBA is set); nothing to compare")

    alpha = 1.0
    rs, rp = family_states(werner_like(0.3), alpha)
    amat, b0 = affine_decomposition(rs, rp, alpha).real_system()
    pts = ball_grid()
    target = _target(rs, rp)
    c4, s4 = math.cos(4 * alpha), math.sin(4 * alpha)
    rng = np.random.default_rng(0)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    herm = g + g.conj().T

    cases = [
        (f"grid_min (spacing {args.spacing})",
         lambda: kernels.grid_min(amat, b0, args.spacing, use_numba=True),
         lambda: kernels.grid_min(amat, b0, args.spacing, use_numba=False)),
        (f"robust_grid ({len(pts)}^2 pairs)",
         lambda: kernels.robust_grid(pts, target, c4, s4, use_numba=True),
         lambda: kernels.robust_grid(pts, target, c4, s4, use_numba=False)),
        ("jacobi_eigh 4x4 x 1000",
         lambda: [kernels.jacobi_eigh(herm) for _ in range(1000)],
         lambda: [kernels.jacobi_eigh.py_func(herm) for _ in range(1000)]),
    ]

    print(f"{'kernel':<32}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fast, slow in cases:
        a, b = fast(), slow()
        if name.startswith("grid_min"):
            assert abs(a[0] - b[0]) <= 1e-12
        elif name.startswith("robust_grid"):
            assert np.allclose(a, b, rtol=0, atol=1e-12)
        t_fast = best_of(fast, args.repeat)
        t_slow = best_of(slow, args.repeat)
        print(f"{name:<32}{t_fast:>12.4f}{t_slow:>12.4f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
