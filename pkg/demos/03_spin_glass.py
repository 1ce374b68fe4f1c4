"""Cubic spin glass on a heavy-hex lattice patch: solver vs. baselines.

Builds the 18-qubit heavy-hex cell with random +-1 couplings on nodes, edges,
and degree-2-centered triples, then compares three ways of searching it with
the same sample budget: uniform random sampling, greedy descent from random
starts (the local solver), and the staged hybrid loop.
"""

import spinqaoa as sq
from spinqaoa.problem import bits_to_index

graph, triples = sq.heavy_hex_fragment(1, 1)
poly = sq.spin_glass_instance(graph, triples, seed=4)
print(f"heavy-hex 1x1 cell: {graph.n} nodes, {len(graph.edges)} edges, {len(triples)} triples")
by_degree = {1: 0, 2: 0, 3: 0}
for _, variables in poly.terms:
    by_degree[len(variables)] += 1
print(f"instance terms: {by_degree[1]} linear, {by_degree[2]} quadratic, "
      f"{by_degree[3]} cubic, all coefficients +-1")

exact = sq.brute_force(poly)
print(f"exact: ground energy {exact.cmin:+.0f}, band top {exact.cmax:+.0f}, "
      f"{exact.argmin_count} ground states\n")

budget = 2048


def show(label, counts):
    s = sq.summarize(counts, poly, exact)
    print(f"{label:19s} best {s.best:+5.0f}  AR {s.ar_best:6.1%}  "
          f"likelihood {s.likelihood:8.4f}  mean AR {s.mean_ar:.3f}")


show("random sampling:", sq.random_baseline(poly, budget, seed=1))

states = sq.local_solver(poly, budget, sq.GreedyConfig(seed=1))
hist: dict[int, int] = {}
for row in states:
    key = bits_to_index(row)
    hist[key] = hist.get(key, 0) + 1
show("local solver:", sq.SampleCounts(poly.n, hist))

best, trace = sq.biased_qaoa(poly, sq.StageConfig(seed=1, shots=budget))
show("staged hybrid loop:", trace.final_counts_post)

print(f"\nbest bitstring found: {''.join(map(str, best))} at energy {poly.evaluate(best):+.0f}")
print("the hybrid loop concentrates its samples on the ground state, while the")
print("local solver only reaches it from a fraction of its random starts.")
