"""Compare the compiled and pure-Python kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import timeit

import numpy as np

from densecap import _backend, states


def _hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def cases(rng):
    for n in (4, 9, 16, 36):
        h = _hermitian(rng, n)
        yield f"jacobi_eigh n={n}", lambda k, h=h: k.jacobi_eigh(h)
    for da, db, n_symbols in ((2, 2, 4), (3, 3, 9)):
        rho = np.ascontiguousarray(states.random_mixed(da, db, seed=rng).mat)
        x = rng.standard_normal(n_symbols * (da * da + 1))
        yield (
            f"holevo_objective {da}x{db} K={n_symbols}",
            lambda k, x=x, rho=rho, a=(n_symbols, da, db): k.holevo_objective(x, rho, *a, 1e-12, 100),
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {name: _backend.load(name) for name in _backend.available()}
    if "cython" not in backends:
        print("compiled backend not built; timing the Python fallback only")
    rng = np.random.default_rng(0)

    header = f"{'kernel':<32}" + "".join(f"{name + ' (us)':>16}" for name in backends) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, fn in cases(rng):
        times = {}
        for name, mod in backends.items():
            timer = timeit.Timer(lambda: fn(mod))
            number, _ = timer.autorange()
            times[name] = min(timer.repeat(args.repeat, number)) / number * 1e6
        row = f"{label:<32}" + "".join(f"{t:>16.1f}" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
