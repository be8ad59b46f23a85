"""Exact rational models of metrized spaces, Koszul-type transforms,
modified homology, and cubes of short exact sequences.

Everything computes over Q with fractions.Fraction; the only numerics
are exact. Square norms that would involve square roots are carried as
squared scale factors, so equalities of metrics, isometries, and
splittings are decidable and decided exactly.

Modules: linalg (matrix kernels over Q), core (metrized spaces, maps,
short exact sequences), multilinear (tensor, symmetric, and exterior
powers), koszul (the degree-k exact transform, rescaling, splittings,
direct sums), symfun (symmetric functions and graded degree-scaling
operations), homology (chain complexes, cones, modified homology),
cubes (3^n-diagrams of short exact sequences and the flag calculus),
instances (seeded random generators), and cli (the batch verifier).
"""

from . import (
    cli,
    core,
    cubes,
    homology,
    instances,
    koszul,
    linalg,
    multilinear,
    symfun,
)

__version__ = "0.1.0"

__all__ = [
    "cli",
    "core",
    "cubes",
    "homology",
    "instances",
    "koszul",
    "linalg",
    "multilinear",
    "symfun",
    "__version__",
]
