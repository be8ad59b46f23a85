"""Tensor, symmetric, and exterior powers with their induced metrics.

Fixed Grams are hand-computed permanents/determinants of the minor
matrices <e_i, e_j>; the skew metric [[1, 1/2], [1/2, 1]] exercises
off-diagonal terms.
"""

from __future__ import annotations

import math
from fractions import Fraction

from hermk import linalg as la
from hermk.core import MetrizedSpace, standard_space
from hermk.multilinear import (
    ext_power,
    iota_map,
    j_map,
    pi_map,
    rho_map,
    sym_power,
    tensor_of_maps,
    tensor_of_spaces,
    tensor_power,
)

F = Fraction

SKEW = MetrizedSpace(("x", "y"), la.mat([[1, F(1, 2)], [F(1, 2), 1]]))


def test_dimensions_match_counting():
    v = standard_space(3)
    for k in range(4):
        assert tensor_power(v, k).space.dim == 3**k
        assert sym_power(v, k).space.dim == math.comb(3 + k - 1, k)
        assert ext_power(v, k).space.dim == math.comb(3, k)


def test_standard_metric_grams():
    v = standard_space(2)
    assert tensor_power(v, 2).space.gram == la.identity(4)
    # basis e0e0, e0e1, e1e1: permanent minors give 2, 1, 2
    assert sym_power(v, 2).space.gram == la.mat([[2, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert ext_power(v, 2).space.gram == ((F(1),),)


def test_skew_metric_grams():
    s2 = sym_power(SKEW, 2).space
    assert s2.gram == la.mat(
        [
            [2, 1, F(1, 2)],
            [1, F(5, 4), 1],
            [F(1, 2), 1, 2],
        ]
    )
    e2 = ext_power(SKEW, 2).space
    assert e2.gram == ((F(3, 4),),)


def test_word_enumeration_orders():
    v = standard_space(2)
    assert [w.indices for w in tensor_power(v, 2).words] == [
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
    ]
    assert [w.indices for w in sym_power(v, 2).words] == [(0, 0), (0, 1), (1, 1)]
    assert [w.indices for w in ext_power(v, 3).words] == []


def test_pi_iota_composite_is_factorial():
    for dim in (1, 2, 3):
        v = standard_space(dim)
        for p in (1, 2, 3):
            comp = pi_map(v, p).compose(iota_map(v, p))
            n = comp.domain.dim
            assert comp.matrix.entries == la.scale(
                la.identity(n), F(math.factorial(p))
            )


def test_rho_j_composite_is_factorial():
    for dim in (2, 3):
        v = standard_space(dim)
        for p in (1, 2):
            comp = rho_map(v, p).compose(j_map(v, p))
            n = comp.domain.dim
            assert comp.matrix.entries == la.scale(
                la.identity(n), F(math.factorial(p))
            )


def test_iota_explicit_small_case():
    v = standard_space(2)
    io = iota_map(v, 2)
    # e0 e1 goes to e0(x)e1 + e1(x)e0
    col = [row[1] for row in io.matrix.entries]
    assert col == [F(0), F(1), F(1), F(0)]


def test_j_explicit_small_case():
    v = standard_space(2)
    jm = j_map(v, 2)
    col = [row[0] for row in jm.matrix.entries]
    assert col == [F(0), F(1), F(-1), F(0)]


def test_rho_kills_repeats_and_signs_shuffles():
    v = standard_space(2)
    r = rho_map(v, 2)
    # columns ordered e0e0, e0e1, e1e0, e1e1 target basis e0^e1
    assert r.matrix.entries == ((F(0), F(1), F(-1), F(0)),)


def test_normalized_variants_are_isometric_embeddings():
    for space in (standard_space(2), SKEW):
        for p in (1, 2):
            assert iota_map(space, p, normalized=True).is_isometry_onto_image()
            assert j_map(space, p, normalized=True).is_isometry_onto_image()


def test_tensor_of_spaces_and_maps():
    a = standard_space(2, tag="a")
    b = MetrizedSpace((("b", 0),), ((F(4),),))
    t = tensor_of_spaces(a, b)
    assert t.dim == 2
    assert t.gram == la.mat([[4, 0], [0, 4]])
    f = tensor_of_maps(
        pi_map(a, 1),
        rho_map(b, 1),
    )
    assert f.matrix.entries == la.identity(2)
