"""Symmetric-function identities behind the graded Adams operations.

Polynomials in the elementary (e), complete homogeneous (h), and power
sum (p) generators, with full monomial expansion in n underlying
variables as the equality oracle. The classical recurrences convert
between the bases; the alternating composition expansion rewrites h_k
in elementary terms; and the signed sum matching the secondary Euler
characteristic of the degree-k transform complex reproduces the k-th
power sum. Graded elements model classes that Adams operations scale
by k^p in degree p, and formal Chern characters over symbolic roots
verify that the operations commute with ch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

__all__ = [
    "MonoPoly",
    "SymPoly",
    "sym_gen",
    "sym_one",
    "e_monomials",
    "h_monomials",
    "p_monomials",
    "compositions",
    "newton_power_sum",
    "complete_from_compositions",
    "koszul_euler_identity",
    "GradedElement",
    "graded_adams",
    "graded_mul",
    "ChernRootBundle",
    "plain_roots",
    "scale_roots",
    "formal_chern_character",
    "adams_chern_commute",
]


class MonoPoly:
    """Polynomial over Q in nvars commuting variables, keyed by
    exponent tuples. The canonical expansion target for equality."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=()):
        self.nvars = nvars
        acc: dict = {}
        for expo, coeff in dict(terms).items():
            if coeff:
                acc[expo] = acc.get(expo, Fraction(0)) + coeff
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def unit(cls, nvars: int) -> "MonoPoly":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "MonoPoly") -> "MonoPoly":
        acc = dict(self.terms)
        for expo, coeff in other.terms.items():
            acc[expo] = acc.get(expo, Fraction(0)) + coeff
        return MonoPoly(self.nvars, acc)

    def mul(self, other: "MonoPoly") -> "MonoPoly":
        acc: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return MonoPoly(self.nvars, acc)

    def scaled(self, c) -> "MonoPoly":
        return MonoPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MonoPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MonoPoly(nvars={self.nvars}, terms={len(self.terms)})"


def _expo(nvars: int, pairs) -> tuple:
    out = [0] * nvars
    for i, d in pairs:
        out[i] += d
    return tuple(out)


@lru_cache(maxsize=None)
def e_monomials(k: int, n: int) -> MonoPoly:
    """Elementary symmetric polynomial e_k in n variables."""
    if k == 0:
        return MonoPoly.unit(n)
    if k > n:
        return MonoPoly(n)
    terms = {_expo(n, ((i, 1) for i in sel)): Fraction(1) for sel in combinations(range(n), k)}
    return MonoPoly(n, terms)


@lru_cache(maxsize=None)
def h_monomials(k: int, n: int) -> MonoPoly:
    """Complete homogeneous symmetric polynomial h_k in n variables."""
    if k == 0:
        return MonoPoly.unit(n)
    terms: dict = {}
    for sel in combinations_with_replacement(range(n), k):
        terms[_expo(n, ((i, 1) for i in sel))] = Fraction(1)
    return MonoPoly(n, terms)


@lru_cache(maxsize=None)
def p_monomials(k: int, n: int) -> MonoPoly:
    """Power sum p_k in n variables."""
    if k == 0:
        return MonoPoly(n, {(0,) * n: Fraction(n)})
    return MonoPoly(n, {_expo(n, ((i, k),)): Fraction(1) for i in range(n)})


_GEN_MONOMIALS = {"e": e_monomials, "h": h_monomials, "p": p_monomials}


@dataclass(frozen=True)
class SymPoly:
    """Polynomial with rational coefficients in one generator family.

    terms maps a sorted tuple of generator degrees (a monomial in the
    generators, e.g. (1, 1, 3) for g1^2 g3) to its coefficient. The
    empty tuple is the constant term.
    """

    basis: str
    terms: tuple  # tuple of (degrees, Fraction), canonically sorted

    @staticmethod
    def make(basis: str, terms) -> "SymPoly":
        if basis not in _GEN_MONOMIALS:
            raise ValueError(f"unknown basis {basis!r}")
        acc: dict = {}
        for degs, coeff in dict(terms).items():
            key = tuple(sorted(degs))
            if any(d < 1 for d in key):
                raise ValueError("generator degrees must be >= 1")
            acc[key] = acc.get(key, Fraction(0)) + coeff
        pruned = tuple(sorted((k, c) for k, c in acc.items() if c))
        return SymPoly(basis, pruned)

    def term_dict(self) -> dict:
        return dict(self.terms)

    def add(self, other: "SymPoly") -> "SymPoly":
        if self.basis != other.basis:
            raise ValueError("mixed-basis addition needs a rewrite first")
        acc = self.term_dict()
        for degs, coeff in other.terms:
            acc[degs] = acc.get(degs, Fraction(0)) + coeff
        return SymPoly.make(self.basis, acc)

    def mul(self, other: "SymPoly") -> "SymPoly":
        if self.basis != other.basis:
            raise ValueError("mixed-basis product needs a rewrite first")
        acc: dict = {}
        for da, ca in self.terms:
            for db, cb in other.terms:
                key = tuple(sorted(da + db))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return SymPoly.make(self.basis, acc)

    def scaled(self, c) -> "SymPoly":
        return SymPoly.make(self.basis, {d: c * v for d, v in self.terms})

    def expand(self, n: int) -> MonoPoly:
        """Monomial expansion in n variables: the equality oracle."""
        out = MonoPoly(n)
        for degs, coeff in self.terms:
            prod = MonoPoly.unit(n)
            for d in degs:
                prod = prod.mul(_GEN_MONOMIALS[self.basis](d, n))
            out = out.add(prod.scaled(coeff))
        return out

    def rewrite(self, target: str) -> "SymPoly":
        """Express the same symmetric function in another basis."""
        if target not in _GEN_MONOMIALS:
            raise ValueError(f"unknown basis {target!r}")
        if target == self.basis:
            return self
        out = sym_one(target).scaled(0)
        for degs, coeff in self.terms:
            prod = sym_one(target)
            for d in degs:
                prod = prod.mul(_gen_rewrite(self.basis, d, target))
            out = out.add(prod.scaled(coeff))
        return out

    def is_zero(self) -> bool:
        return not self.terms


def sym_gen(basis: str, k: int) -> SymPoly:
    """The single generator of degree k (e_k, h_k, or p_k)."""
    if k < 1:
        raise ValueError("generators have degree >= 1")
    return SymPoly.make(basis, {(k,): Fraction(1)})


def sym_one(basis: str) -> SymPoly:
    return SymPoly.make(basis, {(): Fraction(1)})


@lru_cache(maxsize=None)
def _h_in_e(k: int) -> SymPoly:
    # h_k = sum_{i=1..k} (-1)^(i-1) e_i h_{k-i}
    if k == 0:
        return sym_one("e")
    out = sym_one("e").scaled(0)
    for i in range(1, k + 1):
        out = out.add(sym_gen("e", i).mul(_h_in_e(k - i)).scaled((-1) ** (i - 1)))
    return out


@lru_cache(maxsize=None)
def _p_in_e(k: int) -> SymPoly:
    # p_k = sum_{i=1..k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k
    out = sym_gen("e", k).scaled((-1) ** (k - 1) * k)
    for i in range(1, k):
        out = out.add(sym_gen("e", i).mul(_p_in_e(k - i)).scaled((-1) ** (i - 1)))
    return out


@lru_cache(maxsize=None)
def _e_in_h(k: int) -> SymPoly:
    # e_k = sum_{i=1..k} (-1)^(i-1) h_i e_{k-i}
    if k == 0:
        return sym_one("h")
    out = sym_one("h").scaled(0)
    for i in range(1, k + 1):
        out = out.add(sym_gen("h", i).mul(_e_in_h(k - i)).scaled((-1) ** (i - 1)))
    return out


@lru_cache(maxsize=None)
def _e_in_p(k: int) -> SymPoly:
    # k e_k = sum_{i=1..k} (-1)^(i-1) p_i e_{k-i}
    if k == 0:
        return sym_one("p")
    out = sym_one("p").scaled(0)
    for i in range(1, k + 1):
        out = out.add(sym_gen("p", i).mul(_e_in_p(k - i)).scaled((-1) ** (i - 1)))
    return out.scaled(Fraction(1, k))


def _gen_rewrite(basis: str, k: int, target: str) -> SymPoly:
    if basis == "e":
        return {"h": _e_in_h, "p": _e_in_p}[target](k)
    via_e = {"h": _h_in_e, "p": _p_in_e}[basis](k)
    return via_e if target == "e" else via_e.rewrite(target)


def compositions(k: int) -> list[tuple[int, ...]]:
    """All ordered tuples of positive integers summing to k
    (2^(k-1) of them)."""
    if k < 1:
        raise ValueError("compositions need k >= 1")
    out = [(k,)]
    for head in range(1, k):
        out.extend((head,) + rest for rest in compositions(k - head))
    return out


def newton_power_sum(k: int) -> SymPoly:
    """The k-th power sum written in the elementary basis through the
    alternating recurrence p_k = p_{k-1}e_1 - p_{k-2}e_2 + ...
    + (-1)^(k-1) k e_k."""
    if k < 1:
        raise ValueError("power sums need k >= 1")
    return _p_in_e(k)


def complete_from_compositions(k: int) -> SymPoly:
    """sum over compositions (i_1..i_l) of (-1)^(l+k) e_{i_1}...e_{i_l};
    equals h_k."""
    acc: dict = {}
    for comp in compositions(k):
        key = tuple(sorted(comp))
        acc[key] = acc.get(key, Fraction(0)) + (-1) ** (len(comp) + k)
    return SymPoly.make("e", acc)


def koszul_euler_identity(k: int, n: int) -> bool:
    """Does sum_{p=0}^{k-1} (-1)^(k-p+1) (k-p) h_p e_{k-p} expand to the
    power sum p_k in n variables? This is the K0-level shadow of the
    secondary Euler characteristic of the degree-k transform complex
    computing the k-th Adams operation."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    acc = MonoPoly(n)
    for p in range(k):
        term = h_monomials(p, n).mul(e_monomials(k - p, n))
        acc = acc.add(term.scaled((-1) ** (k - p + 1) * (k - p)))
    return acc == p_monomials(k, n)


# -- graded classes and the Chern character --------------------------------


def _coeff_zero(c) -> bool:
    return c.is_zero() if isinstance(c, MonoPoly) else not c


class GradedElement:
    """Finitely supported map degree -> coefficient. Coefficients are
    rationals, or monomial polynomials when the element carries
    symbolic root data."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        self.parts = {p: c for p, c in dict(parts).items() if not _coeff_zero(c)}

    def degrees(self):
        return sorted(self.parts)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __repr__(self):
        return f"GradedElement(degrees={self.degrees()})"


def graded_adams(x: GradedElement, k: int) -> GradedElement:
    """Scale the degree-p part by k^p."""
    if k < 0:
        raise ValueError("graded operations need k >= 0")
    return GradedElement(
        {
            p: c.scaled(Fraction(k) ** p) if isinstance(c, MonoPoly) else c * k**p
            for p, c in x.parts.items()
        }
    )


def graded_mul(x: GradedElement, y: GradedElement) -> GradedElement:
    """Degree-additive product."""
    acc: dict = {}
    for p, cx in x.parts.items():
        for q, cy in y.parts.items():
            prod = cx.mul(cy) if isinstance(cx, MonoPoly) else cx * cy
            if p + q in acc:
                prev = acc[p + q]
                acc[p + q] = prev.add(prod) if isinstance(prev, MonoPoly) else prev + prod
            else:
                acc[p + q] = prod
    return GradedElement(acc)


@dataclass(frozen=True)
class ChernRootBundle:
    """Formal roots s_i * x_i (x_i symbolic, s_i rational multipliers)
    with expansions truncated beyond degree truncation."""

    root_scales: tuple
    truncation: int

    def __post_init__(self):
        if self.truncation < 0 or self.truncation > 8:
            raise ValueError("truncation degree must be in 0..8")

    @property
    def nroots(self) -> int:
        return len(self.root_scales)

    def power_sum(self, m: int) -> MonoPoly:
        """p_m of the roots as a polynomial in the symbolic generators."""
        n = self.nroots
        terms: dict = {}
        for i, s in enumerate(self.root_scales):
            key = _expo(n, ((i, m),))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(s) ** m
        return MonoPoly(n, terms)


def plain_roots(n: int, truncation: int) -> ChernRootBundle:
    return ChernRootBundle((Fraction(1),) * n, truncation)


def scale_roots(b: ChernRootBundle, k: int) -> ChernRootBundle:
    return ChernRootBundle(tuple(Fraction(k) * s for s in b.root_scales), b.truncation)


def formal_chern_character(b: ChernRootBundle) -> GradedElement:
    """sum_{m <= truncation} p_m(roots) / m! as a graded element."""
    fact = 1
    parts = {}
    for m in range(b.truncation + 1):
        if m:
            fact *= m
        parts[m] = b.power_sum(m).scaled(Fraction(1, fact))
    return GradedElement(parts)


def adams_chern_commute(b: ChernRootBundle, k: int) -> bool:
    """Scaling the degree-m part by k^m agrees with scaling every root
    by k: the graded operations commute with the Chern character."""
    return graded_adams(formal_chern_character(b), k) == formal_chern_character(
        scale_roots(b, k)
    )
