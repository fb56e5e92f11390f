"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_core.py [--repeat 5] [--sizes 20,50,100]

Each kernel is timed with ``timeit`` on identical inputs; the table reports
the best-of-``repeat`` wall time per call and the speed-up of the compiled
version. Outputs of the two kernels are compared before timing.
"""
import argparse
import timeit

import numpy as np

from spectral_turan import _fallback
from spectral_turan.graph import gen_gnp

try:
    from spectral_turan import _core
except ImportError:
    _core = None


def best_time(fn, repeat: int) -> float:
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def cases(sizes):
    for n in sizes:
        a = gen_gnp(n, 0.5, n).adjacency(dtype=np.float64)
        yield f"jacobi_eigh n={n}", "jacobi_eigh", (a,)
    for n, p in ((40, 0.5), (80, 0.5), (60, 0.8)):
        a = gen_gnp(n, p, n).adjacency(dtype=bool)
        yield f"max_clique n={n} p={p}", "max_clique", (a,)
    yield "regular_codes n=6", "regular_codes", (6,)
    yield "regular_codes n=7", "regular_codes", (7,)


def same_output(name, x, y) -> bool:
    if name == "jacobi_eigh":
        return np.allclose(np.sort(x[0]), np.sort(y[0]), atol=1e-9)
    if name == "max_clique":
        return x[0] == y[0]
    return np.array_equal(np.asarray(x), np.asarray(y))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="20,50,100", help="comma-separated Jacobi matrix sizes")
    args = ap.parse_args(argv)
    if _core is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'kernel':28s} {'cython':>12s} {'python':>12s} {'speed-up':>9s}")
    for label, name, call_args in cases(sizes):
        fast, slow = getattr(_core, name), getattr(_fallback, name)
        if not same_output(name, fast(*call_args), slow(*call_args)):
            raise SystemExit(f"{label}: kernels disagree")
        tc = best_time(lambda: fast(*call_args), args.repeat)
        tp = best_time(lambda: slow(*call_args), args.repeat)
        print(f"{label:28s} {tc * 1e3:10.3f}ms {tp * 1e3:10.3f}ms {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
