"""What the greedy post-processing pass does to a measured distribution.

Takes a noisy distribution (here: the uniform-superposition circuit, the
worst case), applies the per-shot greedy pass, and shows the before/after
cost histograms. The pass walks each bitstring in a random order, flipping
any bit that strictly lowers the cost, for at most five traversals.
"""

from collections import Counter

import numpy as np

import spinqaoa as sq

graph, triples = sq.heavy_hex_fragment(1, 1)
poly = sq.spin_glass_instance(graph, triples, seed=2)
exact = sq.brute_force(poly)

state = sq.prepare_initial(np.full(poly.n, np.pi / 2))
raw = sq.sample(state, 4000, seed=8)
post = sq.postprocess_counts(raw, poly, sq.GreedyConfig(seed=8))


def histogram(counts, label):
    table = poly.evaluate_all()
    buckets: Counter = Counter()
    for idx, m in counts.items():
        buckets[table[idx]] += m
    print(f"\n{label} (energy: shots), ground state at {exact.cmin:+.0f}:")
    lo = min(buckets)
    for energy in sorted(buckets):
        bar = "#" * max(1, buckets[energy] * 60 // counts.shots)
        marker = "  <- ground" if energy == exact.cmin else ""
        print(f"  {energy:+6.0f}: {buckets[energy]:5d} {bar}{marker}")
    mean = sum(e * m for e, m in buckets.items()) / counts.shots
    print(f"  mean {mean:+.1f}, best {lo:+.0f}")


histogram(raw, "raw uniform samples")
histogram(post, "after one greedy pass per shot")

print("\nevery shot's cost is non-increasing under the pass, and naturally")
print("terminated passes end in certified single-flip local minima.")
