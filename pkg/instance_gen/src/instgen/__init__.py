"""Seed-defined benchmark instance files for the spin-polynomial solver.

Emits whitespace edge-list files ("i j w" per line) and triple files
("i j k" per line) in the exact on-disk formats the solver package consumes.
"""

from .generate import InstanceSpec, default_triples, gen_maxcut, load_adjacency, render_edge_list

__all__ = [
    "InstanceSpec",
    "default_triples",
    "gen_maxcut",
    "load_adjacency",
    "render_edge_list",
]
