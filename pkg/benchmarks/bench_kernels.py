"""Compare the compiled and numpy trial kernels on identical work.

    python benchmarks/bench_kernels.py --trials 20000 --n 16 64 128

Both backends consume the same counter-based stream, so the script also
checks that their error counters agree exactly.
"""

import argparse
import time

import numpy as np

from risnoma.montecarlo import SimPoint, engine, kernels
from risnoma.transceiver import ImpairmentProfile


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--n", type=int, nargs="+", default=[16, 64, 128])
    ap.add_argument("--cells", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if kernels.simulate_trials_ext is None:
        print("compiled kernel not built; only the numpy backend is available")
    profile = ImpairmentProfile.from_level(0.15, args.cells)
    print(f"{'N':>5} {'python s':>10} {'cython s':>10} {'speedup':>8} {'Mtrial/s':>9}  counters")
    for n in args.n:
        pt = SimPoint(snr_db=60, n_elements=n, profile=profile, trials=args.trials)
        t_py, c_py = _time(lambda: engine._run_chunk(pt, 0, args.trials, "python"), args.repeat)
        if kernels.simulate_trials_ext is None:
            print(f"{n:>5} {t_py:>10.3f} {'-':>10} {'-':>8} {args.trials / t_py / 1e6:>9.3f}")
            continue
        t_cy, c_cy = _time(lambda: engine._run_chunk(pt, 0, args.trials, "cython"), args.repeat)
        same = "identical" if np.array_equal(c_py, c_cy) else "MISMATCH"
        print(f"{n:>5} {t_py:>10.3f} {t_cy:>10.3f} {t_py / t_cy:>8.2f} {args.trials / t_cy / 1e6:>9.3f}  {same}")


if __name__ == "__main__":
    main()
