"""Time the compiled rational kernels against the pure reference.

Run from the repository root after an editable install:

    python3 benchmarks/bench_backends.py [--repeat N] [--seed S]

Loads both backends directly (ignoring HERMK_PURE) and reports wall
times per kernel on identical inputs, plus the speedup. Entries mix
small integers and proper fractions so normalization costs show up.
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from hermk._qkernels import pure

try:
    from hermk._qkernels import _fast as fast
except ImportError:
    fast = None


def rand_matrix(rng: random.Random, rows: int, cols: int, with_dens: bool):
    dens = (1, 1, 2, 3) if with_dens else (1,)
    return [
        [Fraction(rng.randrange(-9, 10), rng.choice(dens)) for _ in range(cols)]
        for _ in range(rows)
    ]


def bench(label: str, call, repeat: int) -> float:
    best = min(_timed(call) for _ in range(repeat))
    return best


def _timed(call) -> float:
    t0 = time.perf_counter()
    call()
    return time.perf_counter() - t0


CASES = (
    ("matmul 40x40", lambda rng: _matmul_case(rng, 40)),
    ("rref 40x60", lambda rng: _rref_case(rng, 40, 60)),
    ("det 30x30", lambda rng: _det_case(rng, 30)),
    ("permanent 11x11", lambda rng: _perm_case(rng, 11)),
)


def _matmul_case(rng, n):
    a = rand_matrix(rng, n, n, True)
    b = rand_matrix(rng, n, n, True)
    return lambda impl: impl.matmul(a, b)


def _rref_case(rng, r, c):
    a = rand_matrix(rng, r, c, True)
    return lambda impl: impl.rref(a)


def _det_case(rng, n):
    a = rand_matrix(rng, n, n, True)
    return lambda impl: impl.det(a)


def _perm_case(rng, n):
    a = rand_matrix(rng, n, n, False)
    return lambda impl: impl.permanent(a)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=20260816)
    args = parser.parse_args()

    if fast is None:
        print("compiled backend not built; run pip install -e . first")
        return 1

    print(f"{'case':18} {'pure':>10} {'fast':>10} {'speedup':>8}")
    for label, make in CASES:
        rng = random.Random(args.seed)
        runner = make(rng)
        if _canon(runner(pure)) != _canon(runner(fast)):
            print(f"{label:18} BACKENDS DISAGREE")
            return 1
        tp = bench(label, lambda: runner(pure), args.repeat)
        tf = bench(label, lambda: runner(fast), args.repeat)
        print(f"{label:18} {tp * 1e3:9.1f}ms {tf * 1e3:9.1f}ms {tp / tf:7.1f}x")
    return 0


def _canon(result):
    # rref returns (rows, pivots); matmul a matrix; det and permanent scalars
    if isinstance(result, tuple):
        rows, pivots = result
        return [[Fraction(x) for x in row] for row in rows], list(pivots)
    if isinstance(result, list):
        return [[Fraction(x) for x in row] for row in result]
    return Fraction(result)


if __name__ == "__main__":
    raise SystemExit(main())
