"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--n N] [--repeat R]``.
Reports the best-of-R time per call and the largest absolute difference
between the two backends on the same inputs.
"""

import argparse
import timeit

import numpy as np

from qslbattery import _pykernels
from qslbattery.dynamics import ModelParams, build_trajectory
from qslbattery.kernels import compiled_backend


def _inputs(n):
    grid = build_trajectory(ModelParams(), 3.0, n)
    rho = grid.rho
    cols = (rho[:, 0, 0].real.copy(), rho[:, 1, 1].real.copy(),
            rho[:, 0, 1].real.copy(), rho[:, 0, 1].imag.copy())
    ref = tuple(float(c[0]) for c in cols)
    y = np.sin(grid.times) ** 2
    return grid.times, cols, ref, y


def _cases(mod, times, cols, ref, y):
    h = float(times[1] - times[0])
    return {
        "decoherence": lambda: mod.decoherence(times, 0.5, 10.0),
        "hermitian_eigvals": lambda: mod.hermitian_eigvals(*cols),
        "hermitian_norms": lambda: mod.hermitian_norms(*cols),
        "fidelity_to": lambda: mod.fidelity_to(ref, *cols),
        "affinity_to": lambda: mod.affinity_to(ref, *cols),
        "entropy_logs": lambda: mod.entropy_logs(*cols, 1e-12),
        "ergotropy_split": lambda: mod.ergotropy_split(*cols, 1.0),
        "cumulative_simpson": lambda: mod.cumulative_simpson(y, h),
    }


def _max_diff(a, b):
    if isinstance(a, tuple):
        return max(_max_diff(x, y) for x, y in zip(a, b))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000, help="samples per call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if compiled_backend is None:
        raise SystemExit("compiled backend unavailable; build the extension first")

    data = _inputs(args.n)
    py = _cases(_pykernels, *data)
    cy = _cases(compiled_backend, *data)
    print(f"{'kernel':<20}{'python ms':>12}{'cython ms':>12}{'speedup':>10}{'max |diff|':>13}")
    for name in py:
        t_py = min(timeit.repeat(py[name], number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(cy[name], number=1, repeat=args.repeat)) * 1e3
        diff = _max_diff(py[name](), cy[name]())
        print(f"{name:<20}{t_py:>12.3f}{t_cy:>12.3f}{t_py / t_cy:>10.2f}{diff:>13.2e}")


if __name__ == "__main__":
    main()
