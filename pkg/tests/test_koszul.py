"""Transform complexes: exactness, sections, norms, and splitting data.

Frozen matrices are hand-derived from the generating rules
e_a ^ e_b -> e_a (x) e_b - e_b (x) e_a (antisymmetrization into the
tensor factor) and e_a (x) e_b -> e_a e_b (multiplication into the
symmetric factor); norms cross-check the product-of-factorials closed
form against the Gram computation.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from hermk import linalg as la
from hermk.core import (
    MetrizedSpace,
    ShortExactMetrized,
    SpaceMap,
    ZERO_SPACE,
    is_hermitian_split,
    standard_space,
)
from hermk.instances import random_spd_gram
from hermk.koszul import (
    HermitianComplex,
    alternating_object_sum,
    koszul_complex,
    koszul_iterated,
    koszul_section,
    koszul_sum_isometry,
    koszul_sum_rhs,
    lambda_rescale,
    mu_decompose,
    norm_ratio,
    norm_ratio_all,
    psicomp_tree,
    secondary_euler,
    secondary_euler_pair_identity,
    ses_boundary,
    transposed_koszul,
)

F = Fraction

SKEW = MetrizedSpace(("x", "y"), la.mat([[1, F(1, 2)], [F(1, 2), 1]]))


def _random_space(rng: random.Random, dim: int) -> MetrizedSpace:
    labels = tuple(f"v{i}" for i in range(dim))
    return MetrizedSpace(labels, random_spd_gram(rng, dim))


def test_line_complex_is_frozen():
    c = koszul_complex(standard_space(1), 2)
    assert [o.dim for o in c.objects] == [0, 1, 1]
    # the only degree-1 map sends e0 (x) e0 to e0 e0 with coefficient 1
    assert c.maps[0].matrix.entries == ((),)
    assert c.maps[1].matrix.entries == ((1,),)
    assert c.maps[1].matrix.scale_sq == 1


def test_plane_complex_is_frozen():
    c = koszul_complex(standard_space(2), 2)
    assert [o.dim for o in c.objects] == [1, 4, 3]
    # e0 ^ e1 -> e0 (x) e1 - e1 (x) e0 in the basis
    # (e0 (x) e0, e0 (x) e1, e1 (x) e0, e1 (x) e1)
    assert c.maps[0].matrix.entries == ((0,), (1,), (-1,), (0,))
    assert c.maps[0].matrix.scale_sq == 1
    # e_a (x) e_b -> e_a e_b in the basis (e0 e0, e0 e1, e1 e1)
    assert c.maps[1].matrix.entries == (
        (1, 0, 0, 0),
        (0, 1, 1, 0),
        (0, 0, 0, 1),
    )
    assert c.maps[1].matrix.scale_sq == 1


def test_object_dimensions_count_words():
    for dim in (1, 2, 3):
        v = standard_space(dim)
        for k in (1, 2, 3):
            c = koszul_complex(v, k)
            for p, obj in enumerate(c.objects):
                expected = math.comb(dim + p - 1, p) * math.comb(dim, k - p)
                assert obj.dim == expected


def test_complexes_are_exact_for_any_metric():
    # construction re-validates exactness when acyclic=True is passed
    rng = random.Random(31)
    for dim in (1, 2, 3):
        spaces = [standard_space(dim), _random_space(rng, dim)]
        for v in spaces:
            for k in (1, 2, 3):
                assert koszul_complex(v, k).acyclic
    assert koszul_complex(SKEW, 3).acyclic


def test_section_identity():
    rng = random.Random(37)
    for dim in (1, 2, 3):
        for v in (standard_space(dim), _random_space(rng, dim)):
            for k in (1, 2, 3):
                c = koszul_complex(v, k)
                for p in range(k):
                    phi = c.maps[p]
                    psi = koszul_section(v, k, p)
                    assert psi.domain == c.objects[p + 1]
                    assert psi.codomain == c.objects[p]
                    assert phi.compose(psi).compose(phi).matrix == phi.matrix


def test_section_degree_bounds():
    v = standard_space(2)
    with pytest.raises(ValueError):
        koszul_section(v, 2, 2)
    with pytest.raises(ValueError):
        koszul_section(v, 2, -1)


def _closed_form_norm(label, k: int, p: int) -> Fraction:
    """Product of the symmetric-word factorials times the shifted degree
    count k - p + sum of multiplicities wedged in."""
    sym_word, ext_word = label
    mult = Counter(sym_word.indices)
    base = math.prod(math.factorial(c) for c in mult.values())
    return F(base * (k - p + sum(mult[j] for j in ext_word.indices)))


def test_norms_match_closed_form_and_ratio_is_degree():
    for dim in (1, 2, 3):
        v = standard_space(dim)
        for k in (1, 2, 3):
            c = koszul_complex(v, k)
            for p in range(k):
                seen = set()
                for idx, i_sq, q_sq in norm_ratio_all(v, k, p):
                    seen.add(idx)
                    assert i_sq / q_sq == k
                    expected = _closed_form_norm(c.objects[p].labels[idx], k, p)
                    assert i_sq == expected
                    assert q_sq == expected / k
                nonzero_cols = {
                    idx
                    for idx in range(c.objects[p].dim)
                    if any(row[idx] for row in c.maps[p].matrix.entries)
                }
                assert seen == nonzero_cols


def test_norm_helpers_frozen_plane_values():
    v = standard_space(2)
    assert norm_ratio_all(v, 2, 0) == [(0, F(2), F(1))]
    assert norm_ratio_all(v, 2, 1) == [
        (0, F(2), F(1)),
        (1, F(1), F(1, 2)),
        (2, F(1), F(1, 2)),
        (3, F(2), F(1)),
    ]
    assert norm_ratio(v, 2, 1, (1, 0, 0, 0)) == 2
    with pytest.raises(ValueError):
        norm_ratio(v, 2, 1, (0, 1, -1, 0))  # kernel vector


def test_mu_structure_of_plane_complex():
    c = lambda_rescale(koszul_complex(standard_space(2), 2), 2)
    parts = mu_decompose(c)
    dims = [
        (sign, (s.sub.dim, s.total.dim, s.quot.dim)) for sign, s in parts
    ]
    assert dims == [(-1, (0, 1, 1)), (1, (1, 4, 3))]


def test_rescaled_mu_splits_and_unrescaled_does_not():
    rng = random.Random(41)
    for dim in (1, 2):
        for v in (standard_space(dim), _random_space(rng, dim)):
            for k in (2, 3):
                c = koszul_complex(v, k)
                rescaled = mu_decompose(lambda_rescale(c, k))
                assert all(is_hermitian_split(s) for _, s in rescaled)
                assert any(not is_hermitian_split(s) for _, s in mu_decompose(c))


def test_mu_of_zero_complex_is_empty():
    zero = SpaceMap(ZERO_SPACE, ZERO_SPACE, la.zeros(0, 0))
    c = HermitianComplex((ZERO_SPACE, ZERO_SPACE), (zero,), acyclic=True)
    assert mu_decompose(c) == []


def test_sum_isometry():
    rng = random.Random(43)
    pairs = [
        (standard_space(1), standard_space(1)),
        (standard_space(1), standard_space(2)),
        (standard_space(2), standard_space(1)),
        (SKEW, standard_space(1)),
        (_random_space(rng, 2), _random_space(rng, 1)),
    ]
    for v, w in pairs:
        for k in (1, 2, 3):
            assert koszul_sum_isometry(v, w, k)


def test_sum_isometry_rejects_doctored_candidate():
    v, w = standard_space(1), standard_space(2)
    # swapping the summands permutes labels the matching cannot find
    assert not koszul_sum_isometry(v, w, 2, rhs=koszul_sum_rhs(w, v, 2))


def test_secondary_euler_rank_is_dimension():
    for dim in (1, 2, 3):
        v = standard_space(dim)
        for k in (1, 2, 3):
            s = secondary_euler(koszul_complex(v, k))
            assert s.rank() == dim
            for coeff, obj in s.items():
                assert isinstance(coeff, int)
                assert obj.dim > 0


def test_alternating_sums_vanish_on_exact_data():
    v = standard_space(2)
    c = koszul_complex(v, 3)
    assert alternating_object_sum(c).rank() == 0
    for _, ses in mu_decompose(lambda_rescale(c, 3)):
        assert ses_boundary(ses).rank() == 0


def test_formal_sum_drops_zero_terms_and_adds():
    v = standard_space(2)
    s = secondary_euler(koszul_complex(v, 2))
    assert (s - s).is_zero()
    assert s.scaled(3).rank() == 3 * s.rank()
    assert s.coefficient(ZERO_SPACE) == 0


def test_iterated_pair_identity():
    for va, wb in ((1, 1), (2, 1), (1, 2)):
        v, w = standard_space(va), standard_space(wb)
        for k in (2, 3):
            for i in range(1, k):
                b = koszul_iterated(v, w, i, k)
                assert secondary_euler_pair_identity(b, i, k)


def test_transposed_complex_is_exact_with_isometric_swaps():
    for dim in (1, 2):
        for k in (1, 2, 3):
            c, swaps = transposed_koszul(standard_space(dim), k)
            assert c.acyclic
            assert len(swaps) == k + 1
            assert all(s.is_isometry() for s in swaps)


def test_recursion_trace_witnesses():
    nodes = psicomp_tree(2)
    assert Counter(n.kind for n in nodes) == {"iso": 4, "ses": 2}
    assert {n.stage for n in nodes} == {"expand-sym m=2", "peel p=1"}
    for n in nodes:
        assert n.sign in (-1, 1)
        if n.kind == "iso":
            assert n.iso is not None and n.iso.is_isometry()
        else:
            assert isinstance(n.ses, ShortExactMetrized)


def test_recursion_trace_scales_to_higher_degree():
    nodes = psicomp_tree(3)
    kinds = Counter(n.kind for n in nodes)
    assert kinds["iso"] > 0 and kinds["ses"] > 0
    assert any(n.stage == "expand-sym m=3" for n in nodes)
    assert all(n.iso.is_isometry() for n in nodes if n.kind == "iso")


def test_recursion_trace_rejects_degree_zero():
    with pytest.raises(ValueError):
        psicomp_tree(0)
