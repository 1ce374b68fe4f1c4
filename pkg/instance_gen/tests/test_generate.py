import json
import subprocess
import sys
from collections import Counter

import pytest

from instgen import InstanceSpec, default_triples, gen_maxcut, load_adjacency, render_edge_list
from instgen.cli import main_coupling, main_maxcut


REFERENCE_SPECS = [
    # (nodes, degree, seed, expected edges)
    (28, 3, 102, 42),
    (30, 3, 264, 45),
    (32, 3, 7, 48),
]


@pytest.mark.parametrize("nodes,degree,seed,n_edges", REFERENCE_SPECS)
def test_reference_instances_shape(nodes, degree, seed, n_edges):
    edges = gen_maxcut(InstanceSpec(nodes, degree, seed))
    assert len(edges) == n_edges == nodes * degree // 2
    degree_count = Counter()
    for i, j, w in edges:
        assert 0 <= i < j < nodes
        assert w == 1.0
        degree_count[i] += 1
        degree_count[j] += 1
    assert all(degree_count[v] == degree for v in range(nodes))
    assert len({(i, j) for i, j, _ in edges}) == n_edges  # simple graph


@pytest.mark.parametrize("nodes,degree,seed,n_edges", REFERENCE_SPECS)
def test_byte_stability(nodes, degree, seed, n_edges, tmp_path):
    spec = InstanceSpec(nodes, degree, seed)
    a = render_edge_list(gen_maxcut(spec))
    b = render_edge_list(gen_maxcut(spec))
    assert a == b
    out1, out2 = tmp_path / "a.edges", tmp_path / "b.edges"
    assert main_maxcut([str(nodes), str(degree), str(seed), "--out", str(out1)]) == 0
    assert main_maxcut([str(nodes), str(degree), str(seed), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_checked_in_reference_files_match(tmp_path):
    # regenerating must reproduce the files committed for the solver's tests
    instances = __file__.rsplit("/instance_gen/", 1)[0] + "/instances"
    for nodes, degree, seed, _ in REFERENCE_SPECS:
        spec = InstanceSpec(nodes, degree, seed)
        committed = f"{instances}/{spec.name}.edges"
        assert render_edge_list(gen_maxcut(spec)) == open(committed).read()


def test_weighted_instances_use_quarter_weights():
    spec = InstanceSpec(80, 4, 46, weighted=True)
    edges = gen_maxcut(spec)
    assert len(edges) == 160
    assert {w for _, _, w in edges} <= {0.25, 0.5, 0.75, 1.0}
    assert gen_maxcut(spec) == edges  # weight stream is reproducible


def test_weighted_differs_from_unweighted_only_in_weights():
    u = gen_maxcut(InstanceSpec(20, 3, 9))
    w = gen_maxcut(InstanceSpec(20, 3, 9, weighted=True))
    assert [(i, j) for i, j, _ in u] == [(i, j) for i, j, _ in w]


def test_spec_validation():
    with pytest.raises(ValueError):
        InstanceSpec(9, 3, 1)  # odd n*k
    with pytest.raises(ValueError):
        InstanceSpec(4, 4, 1)  # degree >= nodes


def test_cli_rejects_infeasible():
    assert main_maxcut(["9", "3", "1"]) == 2


def test_coupling_roundtrip(tmp_path):
    adjacency = tmp_path / "map.edges"
    adjacency.write_text("0 1\n1 2\n2 3\n3 0\n")
    out_edges = tmp_path / "coupling.edges"
    out_triples = tmp_path / "coupling.triples"
    code = main_coupling(
        [str(adjacency), "--out-edges", str(out_edges), "--out-triples", str(out_triples)]
    )
    assert code == 0
    assert load_adjacency(out_edges) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    # every node has degree 2, so every length-2 path is a triple
    assert len(out_triples.read_text().strip().splitlines()) == 4


def test_coupling_json_input(tmp_path):
    adjacency = tmp_path / "map.json"
    adjacency.write_text(json.dumps({"n": 3, "edges": [[0, 1, 1.0], [1, 2, 1.0]]}))
    assert load_adjacency(adjacency) == [(0, 1), (1, 2)]


def test_coupling_device_validation(tmp_path):
    adjacency = tmp_path / "small.edges"
    adjacency.write_text("0 1\n")
    code = main_coupling(
        [
            str(adjacency),
            "--device",
            "eagle",
            "--out-edges",
            str(tmp_path / "e.edges"),
            "--out-triples",
            str(tmp_path / "e.triples"),
        ]
    )
    assert code == 2  # 2 nodes is not an Eagle map


def test_coupling_empty_input(tmp_path):
    adjacency = tmp_path / "empty.edges"
    adjacency.write_text("# nothing\n")
    code = main_coupling(
        [
            str(adjacency),
            "--out-edges",
            str(tmp_path / "e.edges"),
            "--out-triples",
            str(tmp_path / "e.triples"),
        ]
    )
    assert code == 2


def test_default_triples_centers_have_degree_two():
    edges = [(0, 1), (1, 2), (2, 3), (1, 3)]
    triples = default_triples(edges)
    # node 0 has degree 1 and node 1 degree 3; nodes 2 and 3 are the centers
    assert triples == [(1, 2, 3), (1, 3, 2)]


def test_emitted_file_parses_via_solver_cli(tmp_path):
    # the solver package is consumed strictly through its CLI surface
    out = tmp_path / "small.edges"
    assert main_maxcut(["12", "3", "5", "--out", str(out)]) == 0
    result = subprocess.run(
        [sys.executable, "-m", "spinqaoa.cli", "exact", str(out)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["n"] == 12
    assert payload["max_cut"] > 0
