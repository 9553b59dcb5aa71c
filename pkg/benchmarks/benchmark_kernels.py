#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallbacks.

The package picks a backend once at import (MAGICWALK_NO_NUMBA=1 forces
numpy); here we import both modules directly and race them on the same
inputs. Numba is warmed up first so compilation never lands in a timing.

Usage:
    python3 benchmarks/benchmark_kernels.py
    python3 benchmarks/benchmark_kernels.py --repeats 9 --json results.json
"""
import argparse
import json
import time

import numpy as np

from magicwalk.kernels import numpy_backend

try:
    from magicwalk.kernels import numba_backend
except ImportError:
    numba_backend = None


def best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_state(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return (v / np.linalg.norm(v)).astype(np.complex128)


def run_case(label, make_args, call, repeats, rows):
    t_np, ref = best_of(lambda: call(numpy_backend, *make_args()), repeats)
    if numba_backend is not None:
        t_nb, out = best_of(lambda: call(numba_backend, *make_args()), repeats)
        agree = np.allclose(ref, out, rtol=1e-12, atol=1e-300)
    else:
        t_nb, agree = np.inf, True
    speed = t_np / t_nb if t_nb > 0 else 0.0
    print(f"{label:>28} {t_np*1e3:>12.3f} {t_nb*1e3:>12.3f} {speed:>9.1f}x"
          f"{'' if agree else '   MISMATCH'}")
    rows.append({"case": label, "numpy_ms": t_np * 1e3,
                 "numba_ms": t_nb * 1e3, "speedup": speed, "agree": bool(agree)})


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5, help="best-of-N timing")
    ap.add_argument("--json", default=None, help="dump rows to this file")
    opts = ap.parse_args()

    rng = np.random.default_rng(7)

    if numba_backend is not None:
        # first call compiles; keep it out of the table
        buf = np.zeros(16, dtype=np.complex128)
        buf[0] = 1.0
        numba_backend.pauli_transform(buf, 2)
        numba_backend.bessel_downward(8, 1.0)
        numba_backend.bruteforce_total(random_state(rng, 4))
    else:
        print("numba backend unavailable; numpy column only\n")

    print(f"{'kernel':>28} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>10}")
    print("-" * 66)

    rows = []
    for L in (8, 10, 12):
        psi = random_state(rng, 1 << L)
        rho = np.outer(psi, psi.conj()).reshape(-1).astype(np.complex128)
        run_case(f"pauli_transform L={L}",
                 lambda rho=rho: (rho.copy(),),
                 lambda be, b, L=L: be.pauli_transform(b, L),
                 opts.repeats, rows)

    for z, kmax in ((5.0, 64), (80.0, 256), (300.0, 700)):
        run_case(f"bessel_downward z={z:g} k={kmax}",
                 lambda: (),
                 lambda be, z=z, kmax=kmax: be.bessel_downward(kmax, z),
                 opts.repeats, rows)

    for n in (12, 18, 24):
        psi = random_state(rng, n)
        run_case(f"bruteforce_total n={n}",
                 lambda psi=psi: (),
                 lambda be, psi=psi: be.bruteforce_total(psi),
                 opts.repeats, rows)

    if opts.json:
        with open(opts.json, "w") as fh:
            json.dump(rows, fh, indent=2)
        print(f"\nwrote {opts.json}")


if __name__ == "__main__":
    main()
