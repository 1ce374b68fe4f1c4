"""Random-regular Max-Cut graphs and device coupling maps as edge-list files.

Instances follow the four-parameter naming (n, k, s, u/w): node count, regular
degree, generator seed, and unweighted/weighted. Graphs come from networkx's
random regular graph generator with the given seed, so the same tuple always
reproduces the same instance byte for byte.

Weighted instances draw each edge weight uniformly from {1/4, 1/2, 3/4, 1}.
The assignment rule is frozen: edges are sorted by (i, j) and weights drawn
in that order from an independent numpy generator seeded with
SeedSequence((s, 1)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
import numpy as np

WEIGHT_CHOICES = (0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class InstanceSpec:
    """The (n, k, s, u/w) tuple naming one random regular Max-Cut instance."""

    nodes: int
    degree: int
    seed: int
    weighted: bool = False

    def __post_init__(self):
        if self.nodes < 1 or self.degree < 1:
            raise ValueError("nodes and degree must be positive")
        if self.degree >= self.nodes:
            raise ValueError(f"degree {self.degree} must be below node count {self.nodes}")
        if (self.nodes * self.degree) % 2 != 0:
            raise ValueError(f"no {self.degree}-regular graph on {self.nodes} nodes (odd n*k)")

    @property
    def name(self) -> str:
        flavor = "w" if self.weighted else "u"
        return f"maxcut_{self.nodes}_{self.degree}_{self.seed}_{flavor}"


def gen_maxcut(spec: InstanceSpec) -> list[tuple[int, int, float]]:
    """The instance's edge list, sorted by (i, j)."""
    graph = nx.random_regular_graph(spec.degree, spec.nodes, seed=spec.seed)
    edges = sorted((min(u, v), max(u, v)) for u, v in graph.edges())
    if spec.weighted:
        rng = np.random.default_rng(np.random.SeedSequence((spec.seed, 1)))
        weights = rng.choice(WEIGHT_CHOICES, size=len(edges))
        return [(i, j, float(w)) for (i, j), w in zip(edges, weights)]
    return [(i, j, 1.0) for i, j in edges]


def render_edge_list(edges: list[tuple[int, int, float]]) -> str:
    def fmt(w: float) -> str:
        return str(int(w)) if w.is_integer() else repr(w)

    return "\n".join(f"{i} {j} {fmt(w)}" for i, j, w in edges) + "\n"


# ---------------------------------------------------------------------------
# coupling maps
# ---------------------------------------------------------------------------

#: Known device families and their qubit counts, used for validation only;
#: the adjacency itself is always supplied externally.
DEVICE_NODE_COUNTS = {"eagle": 127, "heron": 156}


def load_adjacency(path: str | Path) -> list[tuple[int, int]]:
    """Read a coupling map from edge-list text or a JSON graph document."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    edges: list[tuple[int, int]] = []
    if stripped.startswith("{"):
        payload = json.loads(text)
        if "edges" not in payload:
            raise ValueError(f"{path}: JSON coupling map needs an 'edges' field")
        for entry in payload["edges"]:
            i, j = int(entry[0]), int(entry[1])
            edges.append((min(i, j), max(i, j)))
    else:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 'i j [w]', got {raw!r}")
            i, j = int(fields[0]), int(fields[1])
            edges.append((min(i, j), max(i, j)))
    if not edges:
        raise ValueError(f"{path}: coupling map is empty")
    deduped = sorted(set(edges))
    if len(deduped) != len(edges):
        raise ValueError(f"{path}: coupling map contains duplicate edges")
    if any(i == j for i, j in deduped):
        raise ValueError(f"{path}: coupling map contains a self-loop")
    return deduped


def default_triples(edges: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """One (i, j, k) per length-2 path centered on a degree-2 node."""
    n = max(max(i, j) for i, j in edges) + 1
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    triples = set()
    for center, adj in enumerate(neighbors):
        if len(adj) == 2:
            a, b = sorted(adj)
            triples.add((a, center, b))
    return sorted(triples)
