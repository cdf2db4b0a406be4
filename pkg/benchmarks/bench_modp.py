"""Benchmark: compiled mod-p kernels against the numpy fallback.

Times rank / rref / matmul on dense random matrices at the sizes the
symmetrizer-rank engine actually produces (tensor powers of small modules),
plus one end-to-end Nichols computation.  Run as

    python3 benchmarks/bench_modp.py

To time the whole package on the fallback path, set QUIVERHOPF_PURE=1.
"""

import random
import time

import numpy as np

from quiverhopf import linalg, make_rsr, parse_group, parse_ramification
from quiverhopf.yd import nichols_dims, yd_from_rsr

P = 241
SIZES = [32, 81, 128, 243]
REPEATS = 3


def random_matrix(rng, n):
    return np.array([[rng.randrange(P) for _ in range(n)] for _ in range(n)],
                    dtype=np.int64)


def monomial_matrix(rng, n):
    # one nonzero per row: the shape of braid-lift operators
    m = np.zeros((n, n), dtype=np.int64)
    cols = list(range(n))
    rng.shuffle(cols)
    for i, c in enumerate(cols):
        m[i, c] = rng.randrange(1, P)
    return m


def timeit(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = random.Random(0)
    have_ext = linalg.BACKEND == "compiled"
    print(f"active backend: {linalg.BACKEND}")
    header = f"{'kernel':<10}{'n':>6}{'numpy':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in SIZES:
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        ma = monomial_matrix(rng, n)
        mb = monomial_matrix(rng, n)
        rows = [
            ("rank", lambda: linalg._py_rank(a, P),
             (lambda: linalg._modp.rank_mod(a, P)) if have_ext else None),
            ("rref", lambda: linalg._py_rref(a, P),
             (lambda: linalg._modp.rref_mod(a, P)) if have_ext else None),
            ("matmul", lambda: (a @ b) % P,
             (lambda: linalg._modp.matmul_mod(a, b, P)) if have_ext else None),
            ("monomial", lambda: (ma @ mb) % P,
             (lambda: linalg._modp.matmul_mod(ma, mb, P)) if have_ext else None),
        ]
        for name, py_fn, ext_fn in rows:
            t_py = timeit(py_fn)
            if ext_fn is None:
                print(f"{name:<10}{n:>6}{t_py * 1e3:>10.2f}ms{'-':>12}{'-':>10}")
            else:
                t_ext = timeit(ext_fn)
                print(f"{name:<10}{n:>6}{t_py * 1e3:>10.2f}ms"
                      f"{t_ext * 1e3:>10.2f}ms{t_py / t_ext:>9.1f}x")

    g = parse_group("S3")
    rsr = make_rsr(g, parse_ramification(g, "(0 1):1"), None, {1: (1,)})
    v = yd_from_rsr(rsr)
    t = timeit(lambda: nichols_dims(v, 5))
    print(f"\nend-to-end: Nichols dimensions to degree 5 on the 3-dim "
          f"module: {t:.2f}s ({linalg.BACKEND} backend)")


if __name__ == "__main__":
    main()
