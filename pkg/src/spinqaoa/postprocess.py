"""Greedy single-bitflip descent and the classical local-solver baseline.

A greedy pass walks the bit indices in a seeded random order (reshuffled each
traversal) and flips any bit that strictly lowers the cost, stopping when a
full traversal makes no flip or after ``max_traversals`` traversals. Ties
(delta exactly zero) are never flipped.

``greedy_pass`` is the scalar reference; the module-internal batch kernel
used by :func:`local_solver` and :func:`postprocess_counts` reproduces it
bit-for-bit given the same per-shot seeds (asserted in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import SpinPolynomial, TermIndex, index_to_bits, bits_to_index
from .seeds import STREAM_GREEDY, derive_shot_seeds
from .simulator import SampleCounts


@dataclass(frozen=True)
class GreedyConfig:
    seed: int
    max_traversals: int = 5
    restarts: int = 5

    def __post_init__(self):
        if self.max_traversals < 1 or self.restarts < 1:
            raise ValueError("max_traversals and restarts must be >= 1")


def greedy_pass(
    bits,
    poly: SpinPolynomial,
    seed: int,
    max_traversals: int = 5,
    index: TermIndex | None = None,
) -> np.ndarray:
    """Greedy descent from one bitstring; returns the (possibly) improved bits."""
    out, _ = greedy_pass_verbose(bits, poly, seed, max_traversals, index)
    return out


def greedy_pass_verbose(
    bits,
    poly: SpinPolynomial,
    seed: int,
    max_traversals: int = 5,
    index: TermIndex | None = None,
) -> tuple[np.ndarray, bool]:
    """Like :func:`greedy_pass` but also reports natural termination.

    The flag is True when a full traversal made no flip (so the output is
    certified locally minimal), False when the traversal cap cut the descent
    short.
    """
    bits = np.array(bits, dtype=np.int64)
    if bits.shape != (poly.n,):
        raise ValueError(f"expected {poly.n} bits, got shape {bits.shape}")
    if index is None:
        index = TermIndex(poly)
    term_vals = index.term_values(bits)
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    for _ in range(max_traversals):
        improved = False
        for i in rng.permutation(poly.n):
            rows = index.by_var[i]
            delta = -2.0 * term_vals[rows].sum()
            if delta < 0.0:
                bits[i] ^= 1
                term_vals[rows] = -term_vals[rows]
                improved = True
        if not improved:
            return bits, True
    return bits, False


# ---------------------------------------------------------------------------
# batch kernel
# ---------------------------------------------------------------------------

def _padded_var_index(index: TermIndex, n_terms: int) -> np.ndarray:
    """(n, width) matrix of term ids per variable, padded with a dummy id."""
    width = max((len(rows) for rows in index.by_var), default=0)
    width = max(width, 1)
    padded = np.full((index.poly.n, width), n_terms, dtype=np.int64)
    for i, rows in enumerate(index.by_var):
        padded[i, : len(rows)] = rows
    return padded


def batch_greedy(
    states: np.ndarray,
    poly: SpinPolynomial,
    shot_seeds: np.ndarray,
    max_traversals: int = 5,
    index: TermIndex | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Run one greedy pass per row of ``states`` (shape (S, n), entries 0/1).

    Returns (final states, converged flags). Row s uses shot_seeds[s] exactly
    as ``greedy_pass(states[s], poly, shot_seeds[s], max_traversals)`` would.
    """
    states = np.array(states, dtype=np.int64)
    n_shots, n = states.shape
    if n != poly.n:
        raise ValueError(f"states have {n} columns, polynomial has n={poly.n}")
    if index is None:
        index = TermIndex(poly)
    n_terms = len(poly.terms)
    padded = _padded_var_index(index, n_terms)

    # term_vals[s, t] = current value of term t in shot s; last column is the
    # all-zero dummy targeted by padding entries.
    z = 2 * states - 1
    term_vals = np.zeros((n_shots, n_terms + 1), dtype=np.float64)
    for t, (coeff, variables) in enumerate(poly.terms):
        col = np.full(n_shots, coeff)
        for v in variables:
            col = col * z[:, v]
        term_vals[:, t] = col

    rngs = [np.random.default_rng(np.random.SeedSequence(int(s))) for s in shot_seeds]
    active = np.arange(n_shots)
    converged = np.zeros(n_shots, dtype=bool)
    for _ in range(max_traversals):
        if len(active) == 0:
            break
        perms = np.stack([rngs[s].permutation(n) for s in active])
        any_flip = np.zeros(len(active), dtype=bool)
        for k in range(n):
            bit = perms[:, k]
            cols = padded[bit]
            delta = -2.0 * term_vals[active[:, None], cols].sum(axis=1)
            flips = delta < 0.0
            if flips.any():
                rows = active[flips]
                term_vals[rows[:, None], cols[flips]] *= -1.0
                states[rows, bit[flips]] ^= 1
                any_flip |= flips
        newly_done = active[~any_flip]
        converged[newly_done] = True
        active = active[any_flip]
    return states, converged


# ---------------------------------------------------------------------------
# public bulk operations
# ---------------------------------------------------------------------------

def local_solver(poly: SpinPolynomial, n_samples: int, config: GreedyConfig) -> np.ndarray:
    """Classical baseline: greedy descent from uniform-random bitstrings.

    Each of ``n_samples`` uniform starts is descended ``config.restarts``
    times with distinct shuffle seeds; the lowest-cost result is kept per
    start. Returns an (n_samples, n) array of bits.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.default_rng(np.random.SeedSequence((int(config.seed), STREAM_GREEDY, 0)))
    starts = rng.integers(0, 2, size=(n_samples, poly.n), dtype=np.int64)
    index = TermIndex(poly)
    table = poly.evaluate_all() if poly.n <= 20 else None

    def costs_of(states: np.ndarray) -> np.ndarray:
        if table is not None:
            idx = (states << np.arange(poly.n, dtype=np.int64)).sum(axis=1)
            return table[idx]
        return np.array([poly.evaluate(s) for s in states])

    best = starts.copy()
    best_costs = costs_of(starts)
    for k in range(config.restarts):
        seeds = derive_shot_seeds(config.seed, STREAM_GREEDY, 1 + k, count=n_samples)
        result, _ = batch_greedy(starts.copy(), poly, seeds, config.max_traversals, index)
        result_costs = costs_of(result)
        better = result_costs < best_costs
        best[better] = result[better]
        best_costs[better] = result_costs[better]
    return best


def postprocess_counts(
    counts: SampleCounts, poly: SpinPolynomial, config: GreedyConfig
) -> SampleCounts:
    """Greedy-optimize every shot of a measurement result independently.

    A multiplicity-m entry expands into m shots with distinct derived seeds.
    Shot ordinals are assigned in sorted basis-index order, so the result
    depends only on the counts, not on insertion order. Total shots are
    preserved.
    """
    order = sorted(counts.items())
    idx = np.repeat(
        np.array([i for i, _ in order], dtype=np.int64),
        np.array([m for _, m in order], dtype=np.int64),
    )
    states = np.stack([index_to_bits(int(i), counts.n) for i in idx])
    seeds = derive_shot_seeds(config.seed, STREAM_GREEDY, count=len(idx))
    final, _ = batch_greedy(states, poly, seeds, config.max_traversals)
    out: dict[int, int] = {}
    for row in final:
        key = bits_to_index(row)
        out[key] = out.get(key, 0) + 1
    return SampleCounts(counts.n, out)
