"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_backends.py [--repeat 5] [--skip-decode]

Kernel timings call both implementations directly. The end-to-end row runs
Example-2 erasure decoding in a subprocess per backend, selected through
RMLRC_BACKEND.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from rmlrc._kernels import numba_impl, numpy_impl
from rmlrc.gf import get_field

DECODE_SNIPPET = """
import time, numpy as np
from rmlrc import LocallyRepairableCode, derive_params
c = LocallyRepairableCode(derive_params(15, 28, 3, 3, 4, 8))
f = c.field.random(np.random.default_rng(0), 28)
cw = c.encode(f)
c.reconstruct(cw.available([0, 5, 10, 14]))
t = time.perf_counter()
for pat in ([0, 1, 5, 6], [2, 3, 9, 14], [0, 5, 10, 14]):
    assert np.array_equal(c.reconstruct(cw.available(pat)), f)
print((time.perf_counter() - t) / 3)
"""


def best_of(fn, repeat: int) -> float:
    fn()  # warm-up, includes JIT compilation for numba
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_cases(rng):
    F = get_field(3, 36)
    mt, red, fr, inv = F._mt, F._red, F._fr[1], F._inv
    A, B = F.random(rng, 20000), F.random(rng, 20000)
    A[~A.any(axis=1)] = 1
    V = F.random(rng, 500, 24)
    P = F.random(rng, 28)
    y = F.random(rng, 28)
    return {
        "ext_mul 20k products": lambda K: K.ext_mul(A, B, mt, red),
        "ext_inv 2k inverses": lambda K: K.ext_inv(A[:2000], fr, mt, red, inv),
        "rank_fq 500 x (24, 36)": lambda K: K.rank_fq(V, mt, inv),
        "moore + solve 28 x 28": lambda K: K.solve_ext(K.moore(P, 28, fr, mt), y, fr, mt, red, inv),
    }


def decode_time(backend: str) -> float:
    env = dict(os.environ, RMLRC_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", DECODE_SNIPPET], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-decode", action="store_true")
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    rows = []
    for name, fn in kernel_cases(rng).items():
        t_nb = best_of(lambda: fn(numba_impl), args.repeat)
        t_np = best_of(lambda: fn(numpy_impl), args.repeat)
        rows.append((name, t_nb, t_np))
    if not args.skip_decode:
        rows.append(("Example-2 decode (per pattern)", decode_time("numba"), decode_time("numpy")))
    print(f"{'case':34s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, a, b in rows:
        print(f"{name:34s} {a * 1e3:10.2f} {b * 1e3:10.2f} {b / a:8.1f}x")


if __name__ == "__main__":
    main()
