"""Symmetric-function identities and the graded operations they shadow.

Frozen rewrites (p2, p3, h2, h3 in the elementary basis) are the
classical Newton expansions, cross-checked against a computer-algebra
expansion before freezing. Identity tests compare full monomial
expansions, the module's own equality oracle.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from hermk.symfun import (
    ChernRootBundle,
    GradedElement,
    MonoPoly,
    SymPoly,
    adams_chern_commute,
    complete_from_compositions,
    compositions,
    e_monomials,
    formal_chern_character,
    graded_adams,
    graded_mul,
    h_monomials,
    koszul_euler_identity,
    newton_power_sum,
    p_monomials,
    plain_roots,
    scale_roots,
    sym_gen,
    sym_one,
)

F = Fraction


def test_generator_monomials_in_two_variables():
    assert e_monomials(2, 2).terms == {(1, 1): 1}
    assert h_monomials(2, 2).terms == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert p_monomials(2, 2).terms == {(2, 0): 1, (0, 2): 1}
    assert p_monomials(3, 2).terms == {(3, 0): 1, (0, 3): 1}
    assert e_monomials(3, 2).is_zero()  # e_k vanishes beyond nvars


def test_newton_rewrites_are_frozen():
    assert sym_gen("p", 2).rewrite("e").term_dict() == {(1, 1): F(1), (2,): F(-2)}
    assert sym_gen("p", 3).rewrite("e").term_dict() == {
        (1, 1, 1): F(1),
        (1, 2): F(-3),
        (3,): F(3),
    }
    assert sym_gen("h", 2).rewrite("e").term_dict() == {(1, 1): F(1), (2,): F(-1)}
    assert sym_gen("h", 3).rewrite("e").term_dict() == {
        (1, 1, 1): F(1),
        (1, 2): F(-2),
        (3,): F(1),
    }


def test_rewrites_preserve_expansion():
    n = 6
    for basis in ("e", "h", "p"):
        for target in ("e", "h", "p"):
            for k in range(1, 6):
                g = sym_gen(basis, k)
                assert g.rewrite(target).expand(n) == g.expand(n)


def test_rewrites_round_trip():
    for basis in ("e", "h", "p"):
        for target in ("e", "h", "p"):
            for k in range(1, 5):
                g = sym_gen(basis, k)
                assert g.rewrite(target).rewrite(basis) == g


def test_sympoly_arithmetic_and_validation():
    a = sym_gen("e", 1)
    assert a.mul(a).term_dict() == {(1, 1): F(1)}
    assert a.add(a.scaled(-1)).is_zero()
    assert sym_one("e").term_dict() == {(): F(1)}
    with pytest.raises(ValueError):
        sym_gen("e", 0)
    with pytest.raises(ValueError):
        SymPoly.make("q", {})
    with pytest.raises(ValueError):
        a.add(sym_gen("h", 1))
    with pytest.raises(ValueError):
        a.mul(sym_gen("p", 1))


def test_compositions_enumeration():
    assert compositions(1) == [(1,)]
    assert compositions(3) == [(3,), (1, 2), (1, 1, 1), (2, 1)]
    for k in range(1, 9):
        comps = compositions(k)
        assert len(comps) == 2 ** (k - 1)
        assert len(set(comps)) == len(comps)
        assert all(sum(c) == k and min(c) >= 1 for c in comps)
    with pytest.raises(ValueError):
        compositions(0)


def test_newton_power_sum_matches_generator():
    for k in range(1, 7):
        n = max(k, 3)
        assert newton_power_sum(k).expand(n) == sym_gen("p", k).expand(n)
        assert newton_power_sum(k).basis == "e"


def test_complete_from_compositions_matches_generator():
    for k in range(1, 7):
        n = max(k, 3)
        assert complete_from_compositions(k).expand(n) == sym_gen("h", k).expand(n)


def test_koszul_euler_identity_holds_in_range():
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert koszul_euler_identity(k, n)
    with pytest.raises(ValueError):
        koszul_euler_identity(3, 2)


def test_graded_adams_scales_by_degree_powers():
    x = GradedElement({0: F(1), 1: F(2), 3: F(1, 3)})
    y = graded_adams(x, 3)
    assert y.parts == {0: F(1), 1: F(6), 3: F(9)}
    assert graded_adams(x, 0).parts == {0: F(1)}
    with pytest.raises(ValueError):
        graded_adams(x, -1)


def test_graded_adams_is_multiplicative():
    x = GradedElement({0: F(1), 1: F(1, 2), 2: F(3)})
    y = GradedElement({1: F(2), 2: F(-1)})
    for k in range(5):
        lhs = graded_adams(graded_mul(x, y), k)
        rhs = graded_mul(graded_adams(x, k), graded_adams(y, k))
        assert lhs == rhs


def test_chern_character_of_one_plain_root():
    ch = formal_chern_character(plain_roots(1, 3))
    assert ch.parts[0] == MonoPoly.unit(1)
    assert ch.parts[1].terms == {(1,): F(1)}
    assert ch.parts[2].terms == {(2,): F(1, 2)}
    assert ch.parts[3].terms == {(3,): F(1, 6)}


def test_adams_commutes_with_chern_character():
    for nroots in range(1, 5):
        for trunc in range(7):
            b = plain_roots(nroots, trunc)
            for k in range(5):
                assert adams_chern_commute(b, k)


def test_adams_commutes_for_scaled_roots():
    b = ChernRootBundle((F(2), F(-1, 2), F(0), F(3, 2)), 5)
    for k in range(1, 5):
        assert adams_chern_commute(b, k)
        assert scale_roots(b, k).root_scales == tuple(k * s for s in b.root_scales)


def test_chern_character_multiplicativity_shadow():
    # ch respects the graded product degreewise, so adams distributes
    b = plain_roots(2, 4)
    x = formal_chern_character(b)
    for k in range(4):
        assert graded_adams(graded_mul(x, x), k) == graded_mul(
            graded_adams(x, k), graded_adams(x, k)
        )


def test_truncation_window_is_validated():
    with pytest.raises(ValueError):
        ChernRootBundle((F(1),), 9)
    with pytest.raises(ValueError):
        ChernRootBundle((F(1),), -1)
    assert plain_roots(2, 8).truncation == 8
