import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spinqaoa import SpinPolynomial, WeightedGraph, maxcut_polynomial


@pytest.fixture
def triangle() -> WeightedGraph:
    return WeightedGraph(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])


@pytest.fixture
def triangle_poly(triangle) -> SpinPolynomial:
    return maxcut_polynomial(triangle)


def random_polynomial(n: int, n_terms: int, seed: int, max_degree: int = 3) -> SpinPolynomial:
    """Random multilinear cost with +-1 coefficients (dyadic, so exact)."""
    rng = np.random.default_rng(seed)
    terms = {}
    while len(terms) < n_terms:
        degree = int(rng.integers(1, max_degree + 1))
        variables = tuple(sorted(rng.choice(n, size=degree, replace=False).tolist()))
        terms[variables] = float(rng.choice([-1.0, 1.0]))
    return SpinPolynomial(n, [(c, v) for v, c in terms.items()])


def random_bits(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 2, size=n, dtype=np.int64)
