"""Compare the numba kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Part 1 times each kernel in-process on both implementations (after a warm-up
call so JIT compilation is excluded).  Part 2 runs an end-to-end workload in
two subprocesses, one with ``COXHILBERT_DISABLE_NUMBA=1``.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from coxhilbert import kernels

END_TO_END = """
import time
from coxhilbert import MultigradedIdeal, RingElement, RingSpec, hilbert_value, kernels
from coxhilbert.ideal import hilbert_function

def plucker(block):
    terms = []
    for sign, (a, b) in ((1, (0, 5)), (-1, (1, 4)), (1, (2, 3))):
        e = [0] * 12
        e[6 * block + a] += 1
        e[6 * block + b] += 1
        terms.append((sign, tuple(e)))
    return RingElement(tuple(terms))

ring = RingSpec((5, 5), (plucker(0), plucker(1)))
gens = ["x[1][0]", "x[1][2]", "x[2][0]", "x[1][1]^2", "x[2][1]^2"]
mono = RingSpec((3, 3, 3))
mono_gens = ["x[1][0]^3", "x[2][1]^2*x[2][2]", "x[3][0]*x[3][3]^2", "x[1][1]*x[2][1]*x[3][1]"]

def workload():
    # fresh ideal objects so the per-ideal value cache does not help
    t0 = time.perf_counter()
    for e in [(3, 1), (1, 3), (2, 2)]:
        hilbert_value(MultigradedIdeal.from_monomials(ring, gens), e, allow_probabilistic=True)
    t1 = time.perf_counter()
    ideal = MultigradedIdeal.from_monomials(mono, mono_gens)
    for a in range(2, 12):
        hilbert_function(ideal, (a, a + 1, a + 2))
    return t1 - t0, time.perf_counter() - t1

workload()  # JIT compilation or cache load
t_rank, t_count = workload()
print(f"{kernels.active.name:6s} modular rank {t_rank:.3f}s  monomial counting {t_count:.3f}s")
"""


def _uncached(fn):
    return getattr(fn, "__wrapped__", fn)


def cases(rng: np.random.Generator):
    mons = np.ascontiguousarray(kernels.numpy_impl.compositions(12, 6), dtype=np.int64)
    gens = rng.integers(0, 4, size=(40, 6)).astype(np.int64)
    dense = rng.integers(0, 2**20, size=(300, 300)).astype(np.int64)
    dense[150:] = (dense[:150] * 3) % 2147483629
    return [
        ("compositions(14, 7)", lambda impl: _uncached(impl.compositions)(14, 7)),
        (f"divisor_matrix {mons.shape[0]}x{len(gens)}", lambda impl: impl.divisor_matrix(mons, gens)),
        (f"divisible_mask {mons.shape[0]}x{len(gens)}", lambda impl: impl.divisible_mask(mons, gens)),
        ("rank_mod_p 300x300", lambda impl: impl.rank_mod_p(dense, 2147483629)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    impls = [kernels.numpy_impl] + ([kernels.numba_impl] if kernels.numba_impl is not None else [])
    if len(impls) == 1:
        print("numba is not installed; only the numpy path is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':34s}" + "".join(f"{impl.name:>12s}" for impl in impls) + "     speedup")
    for name, run in cases(rng):
        results = [run(impl) for impl in impls]  # warm-up, and JIT compile
        if len(results) == 2:
            a, b = results
            same = np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b
            assert same, f"{name}: implementations disagree"
        times = [min(timeit.repeat(lambda: run(impl), number=1, repeat=args.repeat)) for impl in impls]
        speedup = f"{times[0] / times[1]:10.1f}x" if len(times) == 2 else ""
        print(f"{name:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speedup)

    print("\nend to end (fresh interpreters, timed after a warm-up call):")
    for disable in ("1", "0"):
        env = dict(os.environ, COXHILBERT_DISABLE_NUMBA=disable)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True)
        print("  " + (out.stdout.strip() or out.stderr.strip().splitlines()[-1]))


if __name__ == "__main__":
    main()
