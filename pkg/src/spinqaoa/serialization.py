"""Reading and writing the on-disk instance and result formats.

The exact field names and layouts are frozen in docs/FORMATS.md. All writers
are deterministic: identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .problem import (
    SpinPolynomial,
    WeightedGraph,
    bits_to_index,
    bits_to_string,
    index_to_bits,
    string_to_bits,
)
from .simulator import SampleCounts

POLY_FORMAT = "spin-polynomial"
GRAPH_FORMAT = "weighted-graph"
COUNTS_FORMAT = "sample-counts"


def _dump_json(payload: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _load_json(path: str | Path) -> dict:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return payload


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def write_polynomial(poly: SpinPolynomial, path: str | Path) -> None:
    _dump_json(
        {
            "format": POLY_FORMAT,
            "n": poly.n,
            "terms": [[coeff, list(variables)] for coeff, variables in poly.terms],
        },
        path,
    )


def read_polynomial(path: str | Path) -> SpinPolynomial:
    payload = _load_json(path)
    if "terms" not in payload or "n" not in payload:
        raise ValueError(f"{path}: missing 'n'/'terms' fields for a polynomial")
    return SpinPolynomial(payload["n"], [(c, tuple(v)) for c, v in payload["terms"]])


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def write_graph(graph: WeightedGraph, path: str | Path) -> None:
    _dump_json(
        {
            "format": GRAPH_FORMAT,
            "n": graph.n,
            "edges": [[i, j, w] for i, j, w in graph.edges],
        },
        path,
    )


def read_graph(path: str | Path) -> WeightedGraph:
    """Read a graph from JSON or from whitespace edge-list text ("i j w")."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = _load_json(path)
        if "edges" not in payload or "n" not in payload:
            raise ValueError(f"{path}: missing 'n'/'edges' fields for a graph")
        return WeightedGraph(payload["n"], [tuple(e) for e in payload["edges"]])
    return parse_edge_list(text, source=str(path))


def parse_edge_list(text: str, source: str = "<edge list>") -> WeightedGraph:
    """Edge-list text: one "i j [w]" line per edge, '#' comments allowed.

    The node count is inferred as max index + 1, so isolated trailing nodes
    are not representable in this format.
    """
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise ValueError(f"{source}:{lineno}: expected 'i j [w]', got {raw!r}")
        i, j = int(fields[0]), int(fields[1])
        w = float(fields[2]) if len(fields) == 3 else 1.0
        edges.append((i, j, w))
    if not edges:
        raise ValueError(f"{source}: no edges found")
    n = max(max(i, j) for i, j, _ in edges) + 1
    return WeightedGraph(n, edges)


def write_edge_list(graph: WeightedGraph, path: str | Path) -> None:
    lines = [f"{i} {j} {_fmt_weight(w)}" for i, j, w in graph.edges]
    Path(path).write_text("\n".join(lines) + "\n")


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


# ---------------------------------------------------------------------------
# triples
# ---------------------------------------------------------------------------

def write_triples(triples: Sequence[tuple[int, int, int]], path: str | Path) -> None:
    Path(path).write_text("\n".join(f"{i} {j} {k}" for i, j, k in triples) + "\n")


def read_triples(path: str | Path) -> list[tuple[int, int, int]]:
    triples: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'i j k', got {raw!r}")
        triples.append((int(fields[0]), int(fields[1]), int(fields[2])))
    return triples


# ---------------------------------------------------------------------------
# sample counts
# ---------------------------------------------------------------------------

def write_counts(counts: SampleCounts, path: str | Path) -> None:
    _dump_json(
        {
            "format": COUNTS_FORMAT,
            "n": counts.n,
            "shots": counts.shots,
            "counts": {
                bits_to_string(index_to_bits(idx, counts.n)): m
                for idx, m in sorted(counts.items())
            },
        },
        path,
    )


def read_counts(path: str | Path) -> SampleCounts:
    payload = _load_json(path)
    for key in ("n", "counts"):
        if key not in payload:
            raise ValueError(f"{path}: missing '{key}' field for sample counts")
    n = int(payload["n"])
    counts: dict[int, int] = {}
    for bitstring, m in payload["counts"].items():
        bits = string_to_bits(bitstring)
        if len(bits) != n:
            raise ValueError(f"{path}: bitstring {bitstring!r} is not length {n}")
        counts[bits_to_index(bits)] = int(m)
    if not counts:
        raise ValueError(f"{path}: counts are empty")
    return SampleCounts(n, counts)


# ---------------------------------------------------------------------------
# generic instance loading
# ---------------------------------------------------------------------------

def load_instance(path: str | Path) -> SpinPolynomial | WeightedGraph:
    """Load a cost instance, auto-detecting polynomial vs graph documents."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        payload = _load_json(path)
        fmt = payload.get("format")
        if fmt == POLY_FORMAT or "terms" in payload:
            return read_polynomial(path)
        if fmt == GRAPH_FORMAT or "edges" in payload:
            return read_graph(path)
        raise ValueError(f"{path}: unrecognized instance document")
    return parse_edge_list(text, source=str(path))
