"""Cost models for unconstrained binary optimization over spin variables.

A cost function is a sparse multilinear polynomial over spins z in {-1,+1}^n
with the fixed binary convention z = 2x - 1 (bit value 0 maps to spin -1).
Bit i of a configuration always refers to variable/qubit i; the integer
encoding of a bitstring uses bit i of the index for variable i (little-endian).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .errors import CapacityError

Term = tuple[float, tuple[int, ...]]

#: Largest n for which dense 2**n cost tables may be materialized.
DEFAULT_DENSE_BITS = 26


# ---------------------------------------------------------------------------
# bitstring helpers
# ---------------------------------------------------------------------------

def index_to_bits(index: int, n: int) -> np.ndarray:
    """Decode a basis index into a length-n 0/1 array (bit i = variable i)."""
    return (index >> np.arange(n, dtype=np.int64)) & 1


def bits_to_index(bits: Sequence[int]) -> int:
    """Inverse of :func:`index_to_bits`."""
    return int(sum(int(b) << i for i, b in enumerate(bits)))


def bits_to_string(bits: Sequence[int]) -> str:
    """Render bits with variable 0 leftmost."""
    return "".join("1" if b else "0" for b in bits)


def string_to_bits(s: str) -> np.ndarray:
    if not set(s) <= {"0", "1"}:
        raise ValueError(f"bitstring contains characters other than 0/1: {s!r}")
    return np.array([1 if c == "1" else 0 for c in s], dtype=np.int64)


def flip(bits: Sequence[int], i: int) -> np.ndarray:
    out = np.array(bits, dtype=np.int64)
    out[i] ^= 1
    return out


def spins_from_bits(bits: Sequence[int]) -> np.ndarray:
    """Apply the global convention z = 2x - 1."""
    return 2 * np.asarray(bits, dtype=np.int64) - 1


# ---------------------------------------------------------------------------
# polynomial cost model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinPolynomial:
    """Sparse multilinear polynomial C(z) = sum_t coeff_t * prod_{i in t} z_i.

    Terms are canonicalized on construction: variable lists sorted and
    deduplicated per term is rejected, terms with identical variable sets are
    merged, and terms whose merged coefficient is exactly zero are dropped.
    Instances are immutable and safe to share across threads.
    """

    n: int
    terms: tuple[Term, ...]

    def __init__(self, n: int, terms: Iterable[tuple[float, Iterable[int]]]):
        if n < 1:
            raise ValueError(f"variable count must be positive, got {n}")
        merged: dict[tuple[int, ...], float] = {}
        for coeff, variables in terms:
            key = tuple(int(v) for v in variables)
            if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise ValueError(f"term variables must be strictly increasing: {key}")
            if key and (key[0] < 0 or key[-1] >= n):
                raise ValueError(f"term variables {key} out of range for n={n}")
            c = float(coeff)
            if not math.isfinite(c):
                raise ValueError("term coefficients must be finite")
            merged[key] = merged.get(key, 0.0) + c
        canon = tuple(
            (merged[key], key)
            for key in sorted(merged, key=lambda k: (len(k), k))
            if merged[key] != 0.0
        )
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "terms", canon)

    def evaluate(self, bits: Sequence[int]) -> float:
        """Exact cost of one configuration."""
        bits = np.asarray(bits, dtype=np.int64)
        if bits.shape != (self.n,):
            raise ValueError(f"expected {self.n} bits, got shape {bits.shape}")
        z = 2 * bits - 1
        total = 0.0
        for coeff, variables in self.terms:
            prod = coeff
            for v in variables:
                prod *= z[v]
            total += prod
        return float(total)

    def evaluate_index(self, index: int) -> float:
        return self.evaluate(index_to_bits(int(index), self.n))

    def evaluate_all(self, max_bits: int = DEFAULT_DENSE_BITS) -> np.ndarray:
        """Dense cost table over all 2**n configurations, indexed little-endian.

        Uses the multilinear split C = A(z') + z_top * B(z'), which costs
        O(2**n) arithmetic total instead of O(terms * 2**n).
        """
        if self.n > max_bits:
            raise CapacityError(f"dense table for n={self.n} exceeds cap of {max_bits} bits")
        return _eval_all_recursive(list(self.terms), self.n)

    def negate(self) -> "SpinPolynomial":
        """Polynomial with every coefficient negated: evaluates to -C(x)."""
        return SpinPolynomial(self.n, [(-c, v) for c, v in self.terms])

    def constant(self) -> float:
        for coeff, variables in self.terms:
            if not variables:
                return coeff
        return 0.0


def _eval_all_recursive(terms: list[Term], n: int) -> np.ndarray:
    if n == 0:
        return np.array([sum(c for c, _ in terms)], dtype=np.float64)
    top = n - 1
    without: list[Term] = []
    with_top: list[Term] = []
    for coeff, variables in terms:
        if variables and variables[-1] == top:
            with_top.append((coeff, variables[:-1]))
        else:
            without.append((coeff, variables))
    half = 1 << top
    va = _eval_all_recursive(without, top) if without else np.zeros(half)
    vb = _eval_all_recursive(with_top, top) if with_top else None
    if vb is None:
        return np.concatenate([va, va])
    return np.concatenate([va - vb, va + vb])  # x_top = 0 -> z_top = -1


@dataclass(frozen=True)
class TermIndex:
    """Per-variable lookup of the terms touching that variable.

    Enables O(degree) single-flip cost deltas: flipping bit i negates exactly
    the terms containing i, so the delta is -2 times their current sum.
    """

    poly: SpinPolynomial
    by_var: tuple[np.ndarray, ...] = field(init=False)

    def __post_init__(self):
        lists: list[list[int]] = [[] for _ in range(self.poly.n)]
        for t, (_, variables) in enumerate(self.poly.terms):
            for v in variables:
                lists[v].append(t)
        object.__setattr__(
            self, "by_var", tuple(np.array(l, dtype=np.int64) for l in lists)
        )

    def term_values(self, bits: Sequence[int]) -> np.ndarray:
        """Current value (coeff times spin product) of every term at ``bits``."""
        z = spins_from_bits(bits)
        vals = np.empty(len(self.poly.terms), dtype=np.float64)
        for t, (coeff, variables) in enumerate(self.poly.terms):
            prod = coeff
            for v in variables:
                prod *= z[v]
            vals[t] = prod
        return vals


def delta_evaluate(
    poly: SpinPolynomial, bits: Sequence[int], i: int, index: TermIndex | None = None
) -> float:
    """Cost change from flipping bit i: C(flip(x, i)) - C(x).

    Touches only terms containing i; equals -2 times their summed value.
    """
    if not 0 <= i < poly.n:
        raise IndexError(f"flip index {i} out of range for n={poly.n}")
    if index is None:
        index = TermIndex(poly)
    z = spins_from_bits(bits)
    acc = 0.0
    for t in index.by_var[i]:
        coeff, variables = poly.terms[t]
        prod = coeff
        for v in variables:
            prod *= z[v]
        acc += prod
    return -2.0 * acc


# ---------------------------------------------------------------------------
# graphs and instance families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with real edge weights, edges stored i < j."""

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]]):
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        seen: set[tuple[int, int]] = set()
        canon: list[tuple[int, int, float]] = []
        for i, j, w in edges:
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if i > j:
                i, j = j, i
            if not 0 <= i < n or not j < n:
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            if not math.isfinite(w):
                raise ValueError(f"non-finite weight on edge ({i},{j})")
            seen.add((i, j))
            canon.append((i, j, w))
        canon.sort()
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(canon))

    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg


def maxcut_polynomial(graph: WeightedGraph) -> SpinPolynomial:
    """Cut-maximization cost C(z) = -1/2 sum_ij w_ij (1 - z_i z_j).

    Minimizing C maximizes the cut; the cut value of x is -C(x).
    """
    terms: list[tuple[float, tuple[int, ...]]] = []
    total = graph.total_weight()
    if total != 0.0:
        terms.append((-0.5 * total, ()))
    for i, j, w in graph.edges:
        terms.append((0.5 * w, (i, j)))
    return SpinPolynomial(graph.n, terms)


def cut_value(graph: WeightedGraph, bits: Sequence[int]) -> float:
    """Total weight of edges crossing the partition (direct count)."""
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape != (graph.n,):
        raise ValueError(f"expected {graph.n} bits, got shape {bits.shape}")
    return float(sum(w for i, j, w in graph.edges if bits[i] != bits[j]))


def spin_glass_instance(
    coupling: WeightedGraph,
    triples: Sequence[tuple[int, int, int]],
    seed: int,
) -> SpinPolynomial:
    """Random-bond cost with 1-, 2-, and 3-body terms and coefficients +-1.

    One linear term per node, one quadratic term per coupling edge, one cubic
    term per triple. Coefficients are drawn uniformly from {-1, +1} in the
    frozen order (all linear by node, all quadratic by sorted edge, all cubic
    by listed triple); fixed seed gives a bit-identical instance. Coupling
    edge weights are ignored: the edge set only defines which pairs interact.
    """
    n = coupling.n
    canon_triples: list[tuple[int, int, int]] = []
    for i, j, k in triples:
        i, j, k = int(i), int(j), int(k)
        if len({i, j, k}) != 3 or not all(0 <= v < n for v in (i, j, k)):
            raise ValueError(f"invalid triple ({i},{j},{k}) for n={n}")
        canon_triples.append((i, j, k))
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    draw = lambda count: 2 * rng.integers(0, 2, size=count) - 1  # noqa: E731
    terms: list[tuple[float, tuple[int, ...]]] = []
    for v, c in enumerate(draw(n)):
        terms.append((float(c), (v,)))
    for (i, j, _), c in zip(coupling.edges, draw(len(coupling.edges))):
        terms.append((float(c), (i, j)))
    for (i, j, k), c in zip(canon_triples, draw(len(canon_triples))):
        terms.append((float(c), tuple(sorted((i, j, k)))))
    return SpinPolynomial(n, terms)


def default_triples(graph: WeightedGraph) -> list[tuple[int, int, int]]:
    """The default 3-body interaction set for a coupling graph.

    One triple per length-2 path (i, j, k) whose center j has degree 2,
    written (min(i,k), j, max(i,k)) and emitted in sorted order. On heavy-hex
    graphs the centers are exactly the degree-2 connector qubits.
    """
    neighbors: dict[int, list[int]] = {v: [] for v in range(graph.n)}
    for i, j, _ in graph.edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    triples: set[tuple[int, int, int]] = set()
    for center, adj in neighbors.items():
        if len(adj) == 2:
            a, b = sorted(adj)
            triples.add((a, center, b))
    return sorted(triples)


def heavy_hex_fragment(rows: int, cols: int) -> tuple[WeightedGraph, list[tuple[int, int, int]]]:
    """Heavy-hex lattice patch of ``rows`` x ``cols`` hexagonal cells.

    Construction rule (frozen): take the hexagonal lattice, subdivide every
    edge once (the degree-2 midpoints model connector qubits), then attach one
    pendant stub to every original lattice vertex of degree 2, completing it
    to the degree 3 it would have inside a larger fabric. Node numbering is
    deterministic: lattice vertices first (sorted), then midpoints (by sorted
    parent edge), then stubs (by sorted parent vertex).

    The default 3-body interaction set contains one triple per length-2 path
    whose center has degree 2, i.e. (endpoint, midpoint, endpoint) for every
    subdivided edge, deduplicated as (min(i,k), j, max(i,k)).

    The 1x1 patch has 18 nodes, 18 unit-weight edges, and 6 triples.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    hexes = nx.hexagonal_lattice_graph(rows, cols)
    vertices = sorted(hexes.nodes())
    vid = {v: i for i, v in enumerate(vertices)}
    hex_edges = sorted(
        (min(vid[u], vid[v]), max(vid[u], vid[v])) for u, v in hexes.edges()
    )
    next_id = len(vertices)
    edges: list[tuple[int, int, float]] = []
    for u, v in hex_edges:
        mid = next_id
        next_id += 1
        edges.append((u, mid, 1.0))
        edges.append((mid, v, 1.0))
    degree = {vid[v]: d for v, d in hexes.degree()}
    for v in sorted(degree):
        if degree[v] == 2:
            edges.append((v, next_id, 1.0))
            next_id += 1
    graph = WeightedGraph(next_id, edges)
    return graph, default_triples(graph)
