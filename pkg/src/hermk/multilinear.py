"""Tensor, symmetric, and exterior powers of metrized spaces.

Bases are words in the underlying basis positions: arbitrary length-k
words for the tensor power, weakly increasing words for the symmetric
power, strictly increasing words for the exterior power, all ordered
lexicographically. The tensor power carries the Kronecker-power Gram.
The symmetric and exterior powers sit inside it through the
(anti)symmetrization inclusions, normalized by 1/sqrt(k!); with that
normalization their Grams come out as the permanent, respectively the
determinant, of the submatrices G[I, J] of the underlying Gram. For an
orthonormal underlying basis the symmetric Gram is diagonal with entry
prod_i m_i! (m_i = multiplicity of i in the word) and the exterior
basis is orthonormal.

Permanents go through Ryser enumeration: exponential in k, fine at the
k <= 6 scales this package targets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import linalg as la
from .core import MetrizedSpace, SpaceMap, ZERO_SPACE


@dataclass(frozen=True)
class PowerBasisWord:
    """A basis word of a power space; doubles as the basis label."""

    kind: str  # "tensor" | "sym" | "ext"
    indices: tuple[int, ...]

    def __repr__(self):
        return f"{self.kind}{list(self.indices)}"


@dataclass(frozen=True)
class PowerSpace:
    underlying: MetrizedSpace
    degree: int
    kind: str
    space: MetrizedSpace

    @property
    def words(self) -> tuple[PowerBasisWord, ...]:
        return self.space.labels

    def index(self, indices) -> int:
        return self.space.labels.index(PowerBasisWord(self.kind, tuple(indices)))


def _words(kind: str, dim: int, k: int):
    if kind == "tensor":
        return list(itertools.product(range(dim), repeat=k))
    if kind == "sym":
        return list(itertools.combinations_with_replacement(range(dim), k))
    if kind == "ext":
        return list(itertools.combinations(range(dim), k))
    raise ValueError(kind)


def _labels(kind: str, words) -> tuple[PowerBasisWord, ...]:
    return tuple(PowerBasisWord(kind, w) for w in words)


def tensor_power(v: MetrizedSpace, k: int) -> PowerSpace:
    """T^k v with the k-fold Kronecker power metric."""
    if k < 0:
        raise ValueError("power degree must be >= 0")
    words = _words("tensor", v.dim, k)
    gram = reduce(la.kron, [v.gram] * k, la.identity(1))
    space = MetrizedSpace(_labels("tensor", words), gram, check=False)
    return PowerSpace(v, k, "tensor", space)


def sym_power(v: MetrizedSpace, k: int) -> PowerSpace:
    """S^k v; Gram entry (I, J) = permanent of G[I, J]."""
    if k < 0:
        raise ValueError("power degree must be >= 0")
    words = _words("sym", v.dim, k)
    gram = _power_gram(v.gram, words, la.permanent)
    space = MetrizedSpace(_labels("sym", words), gram, check=False)
    return PowerSpace(v, k, "sym", space)


def ext_power(v: MetrizedSpace, k: int) -> PowerSpace:
    """Lambda^k v; Gram entry (I, J) = determinant of G[I, J].

    k > dim v yields the zero-dimensional space.
    """
    if k < 0:
        raise ValueError("power degree must be >= 0")
    words = _words("ext", v.dim, k)
    gram = _power_gram(v.gram, words, la.det)
    space = MetrizedSpace(_labels("ext", words), gram, check=False) if words else ZERO_SPACE
    return PowerSpace(v, k, "ext", space)


def _power_gram(g: la.Mat, words, minor) -> la.Mat:
    n = len(words)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = minor(la.submatrix(g, words[i], words[j]))
            rows[i][j] = val
            rows[j][i] = val
    return tuple(tuple(r) for r in rows)


def power_space(v: MetrizedSpace, k: int, kind: str) -> PowerSpace:
    return {"tensor": tensor_power, "sym": sym_power, "ext": ext_power}[kind](v, k)


def _perm_sign(word) -> int:
    inv = sum(
        1
        for a in range(len(word))
        for b in range(a + 1, len(word))
        if word[a] > word[b]
    )
    return -1 if inv & 1 else 1


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def iota_map(v: MetrizedSpace, p: int, normalized: bool = False) -> SpaceMap:
    """S^p v -> T^p v, a word mapping to the sum of its permutations.

    Repeated letters make permutations collide, so the column of a word
    with multiplicities m_i carries entries prod m_i! over (p! / prod
    m_i!) distinct targets. With scale_sq = 1/p! (normalized=True) this
    is an isometry onto its image.
    """
    sp, tp = sym_power(v, p), tensor_power(v, p)
    tindex = {w.indices: i for i, w in enumerate(tp.words)}
    cols = len(sp.words)
    rows = [[Fraction(0)] * cols for _ in range(len(tp.words))]
    for c, w in enumerate(sp.words):
        for perm in itertools.permutations(w.indices):
            rows[tindex[perm]][c] += 1
    scale = Fraction(1, _factorial(p)) if normalized else Fraction(1)
    return SpaceMap(sp.space, tp.space, la.mat(rows), scale_sq=scale)


def j_map(v: MetrizedSpace, p: int, normalized: bool = False) -> SpaceMap:
    """Lambda^p v -> T^p v, the signed sum of permutations."""
    ep, tp = ext_power(v, p), tensor_power(v, p)
    tindex = {w.indices: i for i, w in enumerate(tp.words)}
    cols = len(ep.space.labels)
    rows = [[Fraction(0)] * cols for _ in range(len(tp.words))]
    for c, w in enumerate(ep.space.labels):
        base = w.indices
        for perm in itertools.permutations(range(p)):
            target = tuple(base[s] for s in perm)
            rows[tindex[target]][c] += _perm_sign(perm)
    scale = Fraction(1, _factorial(p)) if normalized else Fraction(1)
    return SpaceMap(ep.space, tp.space, la.mat(rows), scale_sq=scale)


def pi_map(v: MetrizedSpace, p: int) -> SpaceMap:
    """T^p v -> S^p v: sort the word, coefficient 1. pi . iota = p! id."""
    sp, tp = sym_power(v, p), tensor_power(v, p)
    sindex = {w.indices: i for i, w in enumerate(sp.words)}
    rows = [[Fraction(0)] * len(tp.words) for _ in range(len(sp.words))]
    for c, w in enumerate(tp.words):
        rows[sindex[tuple(sorted(w.indices))]][c] += 1
    return SpaceMap(tp.space, sp.space, la.mat(rows))


def rho_map(v: MetrizedSpace, p: int) -> SpaceMap:
    """T^p v -> Lambda^p v: sign of the sorting shuffle, 0 on repeats."""
    ep, tp = ext_power(v, p), tensor_power(v, p)
    eindex = {w.indices: i for i, w in enumerate(ep.space.labels)}
    rows = [[Fraction(0)] * len(tp.words) for _ in range(len(ep.space.labels))]
    for c, w in enumerate(tp.words):
        if len(set(w.indices)) != len(w.indices):
            continue
        rows[eindex[tuple(sorted(w.indices))]][c] += _perm_sign(w.indices)
    return SpaceMap(tp.space, ep.space, la.mat(rows))


def tensor_of_spaces(v: MetrizedSpace, w: MetrizedSpace) -> MetrizedSpace:
    """v (x) w with the Kronecker metric; labels are (label_v, label_w)."""
    labels = tuple((lv, lw) for lv in v.labels for lw in w.labels)
    if not labels:
        return ZERO_SPACE
    return MetrizedSpace(labels, la.kron(v.gram, w.gram), check=False)


def tensor_of_maps(f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """f (x) g between the tensor products of domains and codomains."""
    return SpaceMap(
        tensor_of_spaces(f.domain, g.domain),
        tensor_of_spaces(f.codomain, g.codomain),
        la.kron(f.matrix.entries, g.matrix.entries),
        scale_sq=f.matrix.scale_sq * g.matrix.scale_sq,
    )
