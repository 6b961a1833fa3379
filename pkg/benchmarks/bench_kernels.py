"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat N]

Both variants are imported directly, so CHOIKIT_NUMBA does not matter here.
Results are checked for agreement before timing.
"""
import argparse
import timeit

import numpy as np

from choikit import _kernels as K


def cases(rng):
    for m, n, k in [(2, 2, 1), (3, 3, 2), (4, 4, 2), (6, 6, 3), (8, 8, 4)]:
        t = rng.standard_normal((n * n, m * m)) + 1j * rng.standard_normal((n * n, m * m))
        c = rng.standard_normal((m * n, m * n)) + 1j * rng.standard_normal((m * n, m * n))
        a = rng.standard_normal((m, k)) + 1j * rng.standard_normal((m, k))
        b = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        yield (m, n, k), {
            "realign": (t, m, n),
            "unrealign": (c, m, n),
            "reduce_second": (c, b, m, n),
            "reduce_first": (c, a, m, n),
        }


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--repeat", type=int, default=2000)
    args = parser.parse_args()
    if K.numba is None:
        print("numba is not installed; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':<14} {'m x n, k':<10} {'numpy us':>10} {'numba us':>10} {'speedup':>8}")
    for (m, n, k), inputs in cases(rng):
        for name, call_args in inputs.items():
            fast = getattr(K, f"{name}_numba")
            slow = getattr(K, f"{name}_numpy")
            assert np.allclose(fast(*call_args), slow(*call_args))  # also triggers compilation
            t_np = min(timeit.repeat(lambda: slow(*call_args), number=args.repeat, repeat=3))
            t_nb = min(timeit.repeat(lambda: fast(*call_args), number=args.repeat, repeat=3))
            us_np, us_nb = 1e6 * t_np / args.repeat, 1e6 * t_nb / args.repeat
            print(f"{name:<14} {f'{m}x{n}, {k}':<10} {us_np:>10.2f} {us_nb:>10.2f} {us_np / us_nb:>7.1f}x")


if __name__ == "__main__":
    main()
