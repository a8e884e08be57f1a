"""Compare the jitted and pure-numpy word kernels.

    python3 benchmarks/bench_kernels.py [--n 3] [--words 2000] [--length 12]

The jitted column is blank when numba is unavailable or disabled with
NILTL_DISABLE_NUMBA=1.
"""

import argparse
import time

import numpy as np

from niltl import _kernels


def _time(fn, args_list, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--length", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    words = [rng.integers(0, args.n + 1, size=args.length).astype(np.int64) for _ in range(args.words)]
    cases = {
        "layer_depths": [(w,) for w in words],
        "below_matrix": [(w,) for w in words],
        "is_minuscule": [(w, args.n) for w in words],
        "act_on_configs": [(w, args.n) for w in words],
    }
    jitted = {
        "layer_depths": _kernels.layer_depths,
        "below_matrix": _kernels.below_matrix,
        "is_minuscule": _kernels.is_minuscule_kernel,
        "act_on_configs": _kernels.act_on_configs,
    }
    print(f"n={args.n} words={args.words} length={args.length} numba={_kernels.HAVE_NUMBA}")
    print(f"{'kernel':<16}{'pure (s)':>12}{'jitted (s)':>12}{'speedup':>10}")
    for name, arg_list in cases.items():
        pure = _time(_kernels.PY_KERNELS[name], arg_list, args.repeat)
        if _kernels.HAVE_NUMBA:
            fast = jitted[name]
            fast(*arg_list[0])  # compile outside the timed region
            jit = _time(fast, arg_list, args.repeat)
            print(f"{name:<16}{pure:>12.4f}{jit:>12.4f}{pure / jit:>9.1f}x")
        else:
            print(f"{name:<16}{pure:>12.4f}{'':>12}{'':>10}")


if __name__ == "__main__":
    main()
