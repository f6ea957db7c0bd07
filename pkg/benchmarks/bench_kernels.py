#!/usr/bin/env python3
"""Timing comparison of the numba and numpy CMI kernels.

Runs the raw grid kernel and a full two-stage qs search through each path.
Run without RQCX_NO_NUMBA so both implementations are importable.
"""

import time

import numpy as np

from rqcx import kernels
from rqcx.families import FamilySpec, make_state
from rqcx.oracle import qs_oracle
from rqcx.states import xstate_to_matrix

GRID = 32
REPEATS = 5


def time_fn(fn, *args, repeats=REPEATS):
    fn(*args)  # warm-up (triggers jit compilation on the numba path)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def main():
    rng = np.random.default_rng(0)
    n = GRID * GRID
    x = rng.uniform(-0.5, 0.5, n)
    y = rng.uniform(-0.5, 0.5, n)
    w = rng.uniform(-0.9, 0.9, (n, n))

    t_np = time_fn(kernels.cmi_table_numpy, x, y, w)
    print(f"cmi_table ({n}x{n} settings)")
    print(f"  numpy : {t_np * 1e3:8.2f} ms")
    if kernels.NUMBA_AVAILABLE:
        t_nb = time_fn(kernels.cmi_table_numba, x, y, w)
        print(f"  numba : {t_nb * 1e3:8.2f} ms   (speedup x{t_np / t_nb:.2f})")
    else:
        print("  numba : unavailable (import failed or RQCX_NO_NUMBA set)")

    rho = xstate_to_matrix(make_state(FamilySpec("werner", 0.7)))
    saved_table, saved_flat = kernels.cmi_table, kernels.cmi_flat
    try:
        kernels.cmi_table, kernels.cmi_flat = kernels.cmi_table_numpy, kernels.cmi_flat_numpy
        t_np = time_fn(qs_oracle, rho, GRID, 4, repeats=3)
        print(f"qs_oracle (grid={GRID}, refine=4)")
        print(f"  numpy : {t_np * 1e3:8.2f} ms")
        if kernels.NUMBA_AVAILABLE:
            kernels.cmi_table, kernels.cmi_flat = kernels.cmi_table_numba, kernels.cmi_flat_numba
            t_nb = time_fn(qs_oracle, rho, GRID, 4, repeats=3)
            print(f"  numba : {t_nb * 1e3:8.2f} ms   (speedup x{t_np / t_nb:.2f})")
    finally:
        kernels.cmi_table, kernels.cmi_flat = saved_table, saved_flat


if __name__ == "__main__":
    main()
