"""Timing comparison of the compiled and pure-Python kernels.

Run after an editable install:

    python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from stepscatter._kernels import _pure

try:
    from stepscatter._kernels import _core
except ImportError:
    _core = None


def _time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_series(mod):
    a, b, c = 0.5 + 1.0j, 0.25 - 0.5j, 1.75 + 0.1j
    def run():
        for w in np.linspace(-0.45, 0.45, 200):
            mod.hyp2f1_series(a, b, c, float(w), 20000, 1e-16)
    return _time(run)


def bench_rk4(mod):
    k2 = np.sqrt(2.0)
    psi0 = complex(np.cos(k2 * 26.0), np.sin(k2 * 26.0))
    dpsi0 = 1j * k2 * psi0
    def run():
        mod.rk4_scatter(0.0, 1.0, 0.0, -1.0, 2.0, 2.0, 26.0, -26.0, 200000,
                        psi0, dpsi0, 0, None, None)
    return _time(run)


def main():
    rows = [("pure", _pure)]
    if _core is not None:
        rows.append(("compiled", _core))
    else:
        print("compiled kernel not built; timing the pure backend only")
    print(f"{'kernel':<24} " + " ".join(f"{name:>12}" for name, _ in rows) + "  speedup")
    for label, bench in (("hyp2f1_series x200", bench_series),
                         ("rk4_scatter 2e5 steps", bench_rk4)):
        times = [bench(mod) for _, mod in rows]
        ratio = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{label:<24} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + ratio)


if __name__ == "__main__":
    main()
