# tests/helpers.py
# Random exact tensors for property tests.

from itertools import combinations

from src.algebra.tensors import SparseTensor, wedge_sig
from src.bialgebra.qlb import DELTA_SIG, PHI_SIG


def random_rational(rng, bound: int = 3) -> str:
    return f"{int(rng.integers(-bound, bound + 1))}/{int(rng.integers(1, bound + 1))}"


def random_multivector(g, p: int, rng, density: float = 0.7) -> SparseTensor:
    terms = [(key, random_rational(rng)) for key in combinations(range(g.dim), p) if rng.random() < density]
    return SparseTensor.from_terms(g.dim, wedge_sig(p), g.field, terms)


def random_delta(g, rng, density: float = 0.5) -> SparseTensor:
    terms = [((k, a, b), random_rational(rng)) for k in range(g.dim)
             for a, b in combinations(range(g.dim), 2) if rng.random() < density]
    return SparseTensor.from_terms(g.dim, DELTA_SIG, g.field, terms)


def random_phi(g, rng, density: float = 0.5) -> SparseTensor:
    terms = [(key, random_rational(rng)) for key in combinations(range(g.dim), 3) if rng.random() < density]
    return SparseTensor.from_terms(g.dim, PHI_SIG, g.field, terms)
