import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_bits, random_polynomial
from oracles import naive_costs
from spinqaoa import (
    CapacityError,
    SpinPolynomial,
    TermIndex,
    WeightedGraph,
    cut_value,
    default_triples,
    delta_evaluate,
    heavy_hex_fragment,
    maxcut_polynomial,
    spin_glass_instance,
)
from spinqaoa.problem import bits_to_index, bits_to_string, flip, index_to_bits, string_to_bits


class TestSpinPolynomial:
    def test_merges_duplicate_variable_sets(self):
        poly = SpinPolynomial(3, [(1.0, (0, 1)), (2.5, (0, 1)), (1.0, ())])
        assert poly.terms == ((1.0, ()), (3.5, (0, 1)))

    def test_zero_merge_drops_term(self):
        poly = SpinPolynomial(2, [(1.0, (0,)), (-1.0, (0,))])
        assert poly.terms == ()

    def test_rejects_unsorted_variables(self):
        with pytest.raises(ValueError):
            SpinPolynomial(3, [(1.0, (1, 0))])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            SpinPolynomial(2, [(1.0, (0, 5))])

    def test_rejects_duplicate_variable_in_term(self):
        with pytest.raises(ValueError):
            SpinPolynomial(3, [(1.0, (1, 1))])

    @given(st.permutations(list(range(6))), st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_construction_order_irrelevant(self, order, seed):
        base = random_polynomial(8, 6, seed)
        shuffled = [base.terms[i] for i in order]
        rebuilt = SpinPolynomial(8, [(c, v) for c, v in shuffled])
        assert rebuilt == base

    def test_evaluate_all_plus_ones(self):
        poly = SpinPolynomial(3, [(2.0, (0, 1, 2))])
        assert poly.evaluate([1, 1, 1]) == 2.0

    def test_evaluate_single_minus_one_odd_degree(self):
        poly = SpinPolynomial(3, [(2.0, (0, 1, 2))])
        assert poly.evaluate([0, 1, 1]) == -2.0

    def test_evaluate_length_mismatch(self):
        poly = SpinPolynomial(3, [(2.0, (0, 1, 2))])
        with pytest.raises(ValueError):
            poly.evaluate([0, 1])

    def test_evaluate_all_matches_naive(self):
        poly = random_polynomial(8, 12, seed=3)
        assert np.array_equal(poly.evaluate_all(), naive_costs(poly))

    def test_evaluate_all_capacity(self):
        poly = SpinPolynomial(8, [(1.0, (0,))])
        with pytest.raises(CapacityError):
            poly.evaluate_all(max_bits=6)

    def test_negate_twice_is_identity(self):
        poly = random_polynomial(6, 8, seed=11)
        assert poly.negate().negate() == poly

    def test_negate_zero_polynomial(self):
        zero = SpinPolynomial(4, [])
        assert zero.negate() == zero

    def test_max_via_negated_min(self):
        poly = random_polynomial(10, 14, seed=5)
        costs = poly.evaluate_all()
        neg_costs = poly.negate().evaluate_all()
        assert costs.max() == -neg_costs.min()


class TestBitstrings:
    def test_roundtrip(self):
        bits = np.array([1, 0, 1, 1, 0])
        assert np.array_equal(index_to_bits(bits_to_index(bits), 5), bits)

    def test_index_convention_is_little_endian(self):
        # variable 0 occupies the least-significant bit
        assert bits_to_index([1, 0, 0]) == 1
        assert bits_to_index([0, 0, 1]) == 4

    def test_string_roundtrip(self):
        assert bits_to_string(string_to_bits("0110")) == "0110"

    def test_string_rejects_garbage(self):
        with pytest.raises(ValueError):
            string_to_bits("01x0")


class TestMaxCut:
    def test_empty_graph_zero_polynomial(self):
        poly = maxcut_polynomial(WeightedGraph(3, []))
        assert poly.terms == ()
        assert all(poly.evaluate(index_to_bits(i, 3)) == 0.0 for i in range(8))

    def test_triangle_hand_count(self, triangle, triangle_poly):
        assert triangle_poly.evaluate([0, 0, 1]) == -2.0
        assert cut_value(triangle, [0, 0, 1]) == 2.0

    def test_single_weighted_edge(self):
        poly = maxcut_polynomial(WeightedGraph(2, [(0, 1, 0.75)]))
        assert poly.evaluate([0, 1]) == -0.75

    def test_cut_value_bounds(self):
        rng = np.random.default_rng(0)
        graph = WeightedGraph(8, [(i, j, float(rng.uniform(0.1, 2))) for i in range(8) for j in range(i + 1, 8) if rng.random() < 0.4])
        poly = maxcut_polynomial(graph)
        for seed in range(20):
            bits = random_bits(8, seed)
            cut = -poly.evaluate(bits)
            assert cut == pytest.approx(cut_value(graph, bits))
            assert -1e-12 <= cut <= graph.total_weight() + 1e-12


class TestWeightedGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            WeightedGraph(3, [(1, 1, 1.0)])

    def test_rejects_duplicate_edges(self):
        with pytest.raises(ValueError):
            WeightedGraph(3, [(0, 1, 1.0), (1, 0, 2.0)])

    def test_normalizes_orientation(self):
        graph = WeightedGraph(3, [(2, 0, 1.5)])
        assert graph.edges == ((0, 2, 1.5),)


class TestDeltaEvaluate:
    def test_double_flip_cancels(self):
        poly = random_polynomial(9, 10, seed=2)
        bits = random_bits(9, 4)
        index = TermIndex(poly)
        d1 = delta_evaluate(poly, bits, 3, index)
        d2 = delta_evaluate(poly, flip(bits, 3), 3, index)
        assert d1 + d2 == 0.0

    def test_triangle_first_flip(self, triangle_poly):
        assert delta_evaluate(triangle_poly, [0, 0, 0], 0) == -2.0

    def test_matches_full_reevaluation(self):
        poly = random_polynomial(10, 15, seed=7)
        index = TermIndex(poly)
        for seed in range(5):
            bits = random_bits(10, 100 + seed)
            base = poly.evaluate(bits)
            for i in range(10):
                assert delta_evaluate(poly, bits, i, index) == poly.evaluate(flip(bits, i)) - base

    @pytest.mark.parametrize("n", [6, 12])
    def test_exhaustive_small_n(self, n):
        poly = random_polynomial(n, 9 if n == 6 else 20, seed=9)
        index = TermIndex(poly)
        costs = poly.evaluate_all()
        for idx in range(1 << n):
            bits = index_to_bits(idx, n)
            for i in range(n):
                assert delta_evaluate(poly, bits, i, index) == costs[idx ^ (1 << i)] - costs[idx]

    def test_index_out_of_range(self, triangle_poly):
        with pytest.raises(IndexError):
            delta_evaluate(triangle_poly, [0, 0, 0], 3)

    def test_term_index_degree_bookkeeping(self):
        poly = random_polynomial(7, 8, seed=13)
        index = TermIndex(poly)
        appearances = sum(len(rows) for rows in index.by_var)
        assert appearances == sum(len(v) for _, v in poly.terms)


class TestSpinGlass:
    def test_isolated_nodes_linear_only(self):
        poly = spin_glass_instance(WeightedGraph(4, []), [], seed=5)
        assert len(poly.terms) == 4
        assert all(len(v) == 1 for _, v in poly.terms)
        assert all(c in (-1.0, 1.0) for c, _ in poly.terms)

    def test_term_counts_match_inputs(self):
        graph, triples = heavy_hex_fragment(1, 1)
        poly = spin_glass_instance(graph, triples, seed=0)
        by_degree = {1: 0, 2: 0, 3: 0}
        for _, v in poly.terms:
            by_degree[len(v)] += 1
        assert by_degree == {1: graph.n, 2: len(graph.edges), 3: len(triples)}

    def test_seed_determinism(self):
        graph, triples = heavy_hex_fragment(1, 1)
        assert spin_glass_instance(graph, triples, 42) == spin_glass_instance(graph, triples, 42)
        assert spin_glass_instance(graph, triples, 42) != spin_glass_instance(graph, triples, 43)

    def test_invalid_triple(self):
        with pytest.raises(ValueError):
            spin_glass_instance(WeightedGraph(4, []), [(0, 1, 9)], seed=1)
        with pytest.raises(ValueError):
            spin_glass_instance(WeightedGraph(4, []), [(0, 1, 1)], seed=1)


class TestHeavyHex:
    def test_unit_cell_counts_frozen(self):
        graph, triples = heavy_hex_fragment(1, 1)
        assert graph.n == 18
        assert len(graph.edges) == 18
        assert len(triples) == 6

    def test_two_cell_counts_frozen(self):
        graph, triples = heavy_hex_fragment(2, 1)
        assert (graph.n, len(graph.edges), len(triples)) == (29, 30, 11)

    @pytest.mark.parametrize("rows,cols", [(1, 1), (1, 2), (2, 2), (3, 1)])
    def test_max_degree_three(self, rows, cols):
        graph, _ = heavy_hex_fragment(rows, cols)
        assert graph.degrees().max() <= 3

    @pytest.mark.parametrize("rows,cols", [(1, 1), (2, 2)])
    def test_triples_are_edge_paths(self, rows, cols):
        graph, triples = heavy_hex_fragment(rows, cols)
        edge_set = {(i, j) for i, j, _ in graph.edges}
        for i, j, k in triples:
            assert (min(i, j), max(i, j)) in edge_set
            assert (min(j, k), max(j, k)) in edge_set

    def test_default_triples_centers_have_degree_two(self):
        graph, triples = heavy_hex_fragment(2, 2)
        degrees = graph.degrees()
        assert all(degrees[j] == 2 for _, j, _ in triples)
        assert triples == default_triples(graph)

    def test_rejects_bad_extent(self):
        with pytest.raises(ValueError):
            heavy_hex_fragment(0, 1)


def test_constant_shift_moves_all_costs():
    poly = random_polynomial(6, 6, seed=21)
    shifted = SpinPolynomial(6, list(poly.terms) + [(2.5, ())])
    assert np.array_equal(shifted.evaluate_all(), poly.evaluate_all() + 2.5)


def test_spin_convention_is_plus_for_one():
    poly = SpinPolynomial(1, [(1.0, (0,))])
    assert poly.evaluate([1]) == 1.0  # z = 2x - 1
    assert poly.evaluate([0]) == -1.0
