"""Time the sublattice census with the numba kernel against the numpy fallback.

    python3 benchmarks/bench_lattice.py --n 3 --p 3 --emax 3 --repeat 3

The first numba call includes compilation (cached on disk afterwards), so it is
reported separately.  Both backends must return the same histogram.
"""

import argparse
import time

from padicgerm._accel import NUMBA_AVAILABLE
from padicgerm._lattice import lattice_census


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--emax", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    run = lambda backend: lattice_census(args.n, args.p, args.emax, backend=backend)  # noqa: E731
    print(f"census n={args.n} p={args.p} emax={args.emax}")

    t_np, ref = best_of(lambda: run("numpy"), args.repeat)
    print(f"numpy : {t_np:8.3f} s  ({sum(ref.values())} bases, {len(ref)} types)")

    if not NUMBA_AVAILABLE:
        print("numba : not installed")
        return
    t0 = time.perf_counter()
    run("numba")
    print(f"numba first call (compile + run): {time.perf_counter() - t0:8.3f} s")
    t_nb, got = best_of(lambda: run("numba"), args.repeat)
    print(f"numba : {t_nb:8.3f} s  speedup x{t_np / t_nb:.1f}")
    assert got == ref, "backends disagree"


if __name__ == "__main__":
    main()
