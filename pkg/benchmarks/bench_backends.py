"""Time the compiled window-sum kernel against the NumPy fallback.

Both backends share one contract, so this doubles as a cross-check: the
six dyadic sums must agree to near machine precision at every size.

Run from the repository root:

    python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from latticesum import _core_py

try:
    from latticesum import _core
except ImportError:
    _core = None

# a generic k point and plane offset, nothing special about the values
QX, QY = 0.83, 1.31
OFFSET = 1.5


def best_of(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    if _core is None:
        print("compiled backend not built; run pip install -e . first")
        return 1
    print(f"{'cutoff':>8} {'terms':>10} {'compiled':>12} {'numpy':>12} "
          f"{'speedup':>8} {'max |diff|':>11}")
    for cutoff in (100, 300, 1000):
        t_c, r_c = best_of(lambda: _core.window_sums(QX, QY, cutoff, OFFSET, False))
        t_py, r_py = best_of(lambda: _core_py.window_sums(QX, QY, cutoff, OFFSET, False))
        diff = max(abs(a - b) for a, b in zip(r_c, r_py))
        terms = (2 * cutoff + 1) ** 2
        print(f"{cutoff:>8} {terms:>10} {t_c * 1e3:>10.2f} ms {t_py * 1e3:>10.2f} ms "
              f"{t_py / t_c:>7.1f}x {diff:>11.2e}")
        assert diff < 1e-12 * max(abs(np.complex128(v)) for v in r_c)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
