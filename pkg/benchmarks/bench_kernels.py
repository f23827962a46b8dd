"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the two hot loops: Horner evaluation of h, h', h'' over the default
4096 x 16 oracle grid, and the log of (a; q)_inf for q near 1.
"""
import argparse
import timeit

import numpy as np

from jacksonq import kernels
from jacksonq.oracle import DiskGrid
from jacksonq.qbessel import FamilyKind, series_h
from jacksonq.qcore import QDomain


def bench(label, fn, repeat):
    times = timeit.repeat(fn, number=1, repeat=repeat)
    return label, min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    s = series_h(FamilyKind.SECOND, QDomain(0.3, 1.0))
    coeffs = np.ascontiguousarray(s.power_coeffs())
    z = np.ascontiguousarray(DiskGrid().points())
    # a long polynomial as well, to separate per-point from per-term cost
    long_coeffs = np.ascontiguousarray(np.r_[0.0, 1.0, 0.5 ** np.arange(1, 63)].astype(complex))

    backends = kernels.available_backends()
    rows = []
    for name, mod in sorted(backends.items()):
        rows.append((name,) + bench(f"horner N={coeffs.size - 1} on {z.size} pts",
                                    lambda: mod.horner_derivs(coeffs, z), args.repeat))
        rows.append((name,) + bench(f"horner N={long_coeffs.size - 1} on {z.size} pts",
                                    lambda: mod.horner_derivs(long_coeffs, z), args.repeat))
        rows.append((name,) + bench("log (q;q)_inf q=0.999 x100",
                                    lambda: [mod.log_qpoch_inf(0.999, 0.999, 1e-16, 2_000_000) for _ in range(100)],
                                    args.repeat))

    print(f"active backend: {kernels.BACKEND}")
    print(f"{'backend':<8} {'case':<34} {'best of ' + str(args.repeat):>12}")
    for name, label, t in rows:
        print(f"{name:<8} {label:<34} {t * 1e3:>10.2f} ms")
    if "cython" in backends:
        by = {(n, l): t for n, l, t in rows}
        for label in dict.fromkeys(l for _, l, _ in rows):
            print(f"speedup {label}: {by['python', label] / by['cython', label]:.1f}x")


if __name__ == "__main__":
    main()
