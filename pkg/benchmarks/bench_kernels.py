"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Each kernel is run on the same random input through both implementations; the
outputs must agree exactly.  With --end-to-end the Tate-Drinfeld coefficients
are also timed in two subprocesses, one with DRINFELD_DISABLE_NUMBA=1.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from drinfeld import _kernels as K


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_conv3(rng, repeat):
    rows = []
    for n, T, e, p in [(32, 8, 1, 2), (64, 16, 1, 2), (64, 8, 2, 3), (128, 16, 1, 3)]:
        a = rng.integers(0, p, size=(n, T, e), dtype=np.int64)
        b = rng.integers(0, p, size=(n, T, e), dtype=np.int64)
        t_np, r_np = best_of(lambda: K._conv3_numpy(a, b, p, n), repeat)
        if K.HAVE_NUMBA:
            K._conv3_compiled(a, b, p, n)  # compile outside the timing
            t_nb, r_nb = best_of(lambda: K._conv3_compiled(a, b, p, n), repeat)
            same = bool(np.array_equal(r_np, r_nb))
        else:
            t_nb, same = float("nan"), True
        rows.append((f"conv3 {n}x{T}x{e} p={p}", t_np, t_nb, same))
    return rows


def bench_rref(rng, repeat):
    rows = []
    for n, p in [(40, 2), (80, 3), (160, 2)]:
        m = rng.integers(0, p, size=(n, n), dtype=np.int64)
        inv = K.inverse_table(p)
        t_np, r_np = best_of(lambda: K._rref_numpy(m, p, inv), repeat)
        if K.HAVE_NUMBA:
            K._rref_compiled(m, p, inv)
            t_nb, r_nb = best_of(lambda: K._rref_compiled(m, p, inv), repeat)
            same = bool(np.array_equal(r_np[0], r_nb[0]) and np.array_equal(r_np[1], r_nb[1]))
        else:
            t_nb, same = float("nan"), True
        rows.append((f"rref {n}x{n} p={p}", t_np, t_nb, same))
    return rows


_E2E = ("import time; from drinfeld import tate; t0 = time.perf_counter(); "
        "[tate.cusp_data(q, 64) for q in (2, 3)]; print(time.perf_counter() - t0)")


def end_to_end():
    out = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, DRINFELD_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", _E2E], env=env, capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.strip())
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    print(f"backend in this process: {K.backend()}")
    print(f"{'kernel':<26}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}  agree")
    ok = True
    for name, t_np, t_nb, same in bench_conv3(rng, args.repeat) + bench_rref(rng, args.repeat):
        ok &= same
        print(f"{name:<26}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.1f}  {same}")
    if args.end_to_end:
        e2e = end_to_end()
        print(f"cusp_data(q, 64), q in (2, 3): numba {e2e['numba']:.2f} s, numpy {e2e['numpy']:.2f} s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
