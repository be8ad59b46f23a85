"""The two rational kernel backends implement one contract.

Fixed expected values below are hand-computed (cofactor and Ryser
expansions) and cross-checked with sympy.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from hermk._qkernels import BACKEND, pure

try:
    from hermk._qkernels import _fast as fast
except ImportError:
    fast = None

INT_M = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
FRAC_M = [
    [Fraction(1, 2), Fraction(1, 3)],
    [Fraction(1, 4), Fraction(1, 5)],
]

BACKENDS = [pure] if fast is None else [pure, fast]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_det_fixed(impl):
    assert impl.det(INT_M) == -3
    assert impl.det(FRAC_M) == Fraction(1, 60)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_permanent_fixed(impl):
    assert impl.permanent(INT_M) == 463
    assert impl.permanent(FRAC_M) == Fraction(11, 60)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_rref_fixed(impl):
    rows, pivots = impl.rref([[2, 4, 1, 3], [1, 2, 0, 1], [3, 6, 2, 5]])
    assert [list(map(Fraction, r)) for r in rows] == [
        [1, 2, 0, 1],
        [0, 0, 1, 1],
    ]
    assert list(pivots) == [0, 2]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_matmul_fixed(impl):
    got = impl.matmul([[1, 2], [3, 4], [5, 6]], [[1, 0, 2], [0, 1, 3]])
    assert [list(map(Fraction, r)) for r in got] == [
        [1, 2, 8],
        [3, 4, 18],
        [5, 6, 28],
    ]


def _rand_matrix(rng, rows, cols):
    return [
        [Fraction(rng.randrange(-6, 7), rng.choice((1, 1, 2, 3))) for _ in range(cols)]
        for _ in range(rows)
    ]


@pytest.mark.skipif(fast is None, reason="compiled backend not built")
def test_backends_agree_on_random_inputs():
    rng = random.Random(20260816)
    for _ in range(25):
        r, c = rng.randrange(1, 7), rng.randrange(1, 7)
        a = _rand_matrix(rng, r, c)
        b = _rand_matrix(rng, c, rng.randrange(1, 7))
        pm = pure.matmul(a, b)
        fm = fast.matmul(a, b)
        assert [[Fraction(x) for x in row] for row in pm] == [
            [Fraction(x) for x in row] for row in fm
        ]
        pr, pp = pure.rref(a)
        fr, fp = fast.rref(a)
        assert list(pp) == list(fp)
        assert [[Fraction(x) for x in row] for row in pr] == [
            [Fraction(x) for x in row] for row in fr
        ]
        sq = _rand_matrix(rng, r, r)
        assert Fraction(pure.det(sq)) == Fraction(fast.det(sq))
        assert Fraction(pure.permanent(sq)) == Fraction(fast.permanent(sq))


def _selected_backend(env_value: str | None) -> str:
    env = dict(os.environ)
    env.pop("HERMK_PURE", None)
    if env_value is not None:
        env["HERMK_PURE"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "from hermk._qkernels import BACKEND; print(BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return out.stdout.strip()


def test_env_var_forces_pure_backend():
    assert _selected_backend("1") == "pure"


def test_default_prefers_compiled_backend():
    expected = "pure" if fast is None else "fast"
    assert _selected_backend(None) == expected


def test_this_process_selected_a_known_backend():
    assert BACKEND in ("pure", "fast")
