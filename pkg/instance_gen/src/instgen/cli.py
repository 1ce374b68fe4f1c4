"""Command-line entry points: gen-maxcut and gen-coupling."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generate import (
    DEVICE_NODE_COUNTS,
    InstanceSpec,
    default_triples,
    gen_maxcut,
    load_adjacency,
    render_edge_list,
)


def main_maxcut(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gen-maxcut",
        description="emit a seed-defined random regular Max-Cut instance as an edge list",
    )
    parser.add_argument("nodes", type=int)
    parser.add_argument("degree", type=int)
    parser.add_argument("seed", type=int)
    parser.add_argument("--weighted", action="store_true")
    parser.add_argument("--out", help="output file (default: <name>.edges in the cwd)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        spec = InstanceSpec(args.nodes, args.degree, args.seed, args.weighted)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out) if args.out else Path(f"{spec.name}.edges")
    out.write_text(render_edge_list(gen_maxcut(spec)))
    print(f"{spec.name}: {spec.nodes * spec.degree // 2} edges -> {out}")
    return 0


def main_coupling(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gen-coupling",
        description="normalize a device coupling map into edge-list + triples files",
    )
    parser.add_argument("adjacency", help="coupling map file (edge list or JSON graph)")
    parser.add_argument("--device", choices=sorted(DEVICE_NODE_COUNTS), help="validate the node count for this device family")
    parser.add_argument("--triples", help="use this 3-tuple file instead of the degree-2 rule")
    parser.add_argument("--out-edges", dest="out_edges", required=True)
    parser.add_argument("--out-triples", dest="out_triples", required=True)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    path = Path(args.adjacency)
    if not path.exists():
        print(f"error: adjacency file not found: {path}", file=sys.stderr)
        return 2
    try:
        edges = load_adjacency(path)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    n = max(max(i, j) for i, j in edges) + 1
    if args.device and n != DEVICE_NODE_COUNTS[args.device]:
        print(
            f"error: {args.device} expects {DEVICE_NODE_COUNTS[args.device]} nodes, map has {n}",
            file=sys.stderr,
        )
        return 2
    if args.triples:
        triples = []
        for lineno, raw in enumerate(Path(args.triples).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 3:
                print(f"error: {args.triples}:{lineno}: expected 'i j k'", file=sys.stderr)
                return 2
            triples.append((int(fields[0]), int(fields[1]), int(fields[2])))
    else:
        triples = default_triples(edges)
    Path(args.out_edges).write_text("\n".join(f"{i} {j} 1" for i, j in edges) + "\n")
    Path(args.out_triples).write_text("\n".join(f"{i} {j} {k}" for i, j, k in triples) + "\n")
    print(f"coupling: {n} nodes, {len(edges)} edges, {len(triples)} triples")
    return 0


if __name__ == "__main__":
    sys.exit(main_maxcut())
