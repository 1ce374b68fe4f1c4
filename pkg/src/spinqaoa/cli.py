"""Command-line surface: solve, exact, baseline, report, gen, probs.

Exit codes: 0 success, 1 computational failure (capacity/degenerate
instance), 2 usage error (bad arguments, missing or malformed files).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import oracle, postprocess, serialization
from .errors import CapacityError, DegenerateInstanceError
from .optimizer import StageConfig, bias_theta, biased_qaoa
from .problem import (
    SpinPolynomial,
    WeightedGraph,
    bits_to_index,
    bits_to_string,
    default_triples,
    heavy_hex_fragment,
    index_to_bits,
    maxcut_polynomial,
    spin_glass_instance,
    string_to_bits,
)
from .simulator import AnsatzParams, SampleCounts, run_ansatz

TRACE_FILE = "trace.log"
COUNTS_RAW_FILE = "counts_raw.json"
COUNTS_POST_FILE = "counts_post.json"
SUMMARY_FILE = "summary.json"
CDF_FILE = "cdf.txt"


class UsageError(Exception):
    pass


def _load_cost(path: str) -> tuple[SpinPolynomial, WeightedGraph | None]:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"instance file not found: {path}")
    instance = serialization.load_instance(p)
    if isinstance(instance, WeightedGraph):
        return maxcut_polynomial(instance), instance
    return instance, None


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=1))


def _summary_dict(counts, poly, exact) -> dict:
    return oracle.summarize(counts, poly, exact).to_dict()


def _write_cdf(points: list[tuple[float, float]], path: Path) -> None:
    lines = ["# fraction ar"] + [f"{frac!r} {ar!r}" for frac, ar in points]
    path.write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _resolve_solve_config(args) -> dict:
    config: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise UsageError(f"config file not found: {args.config}")
        config = json.loads(path.read_text())
        if not isinstance(config, dict):
            raise UsageError(f"{args.config}: run config must be a JSON object")
    overrides = {
        "instance": args.instance,
        "output_dir": args.out,
        "seed": args.seed,
        "shots": args.shots,
        "stages": args.stages,
        "steps_per_stage": args.steps,
        "circuits_per_step": args.circuits,
        "p": args.p,
        "alpha": args.alpha,
        "sigma0": args.sigma,
        "max_qubits": args.max_qubits,
        "workers": args.workers,
        "baselines": args.baselines.split(",") if args.baselines is not None else None,
        "bias_schedule": [float(x) for x in args.schedule.split(",")]
        if args.schedule is not None
        else None,
    }
    for key, value in overrides.items():
        if value is not None:
            config[key] = value
    for required in ("instance", "output_dir", "seed"):
        if config.get(required) is None:
            raise UsageError(f"missing required run-config field: {required}")
    return config


def cmd_solve(args) -> int:
    config = _resolve_solve_config(args)
    poly, graph = _load_cost(config["instance"])
    stage_keys = (
        "seed stages steps_per_stage circuits_per_step shots p bias_schedule "
        "sigma0 gamma_positive alpha gamma_init beta_init max_qubits "
        "greedy_max_traversals workers"
    ).split()
    kwargs = {}
    for key in stage_keys:
        if key in config:
            value = config[key]
            kwargs[key] = tuple(value) if isinstance(value, list) else value
    try:
        stage_config = StageConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid run configuration: {exc}") from exc

    out_dir = Path(config["output_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    best_bits, trace = biased_qaoa(poly, stage_config)
    exact = oracle.brute_force(poly)
    counts_raw = trace.final_counts_raw
    counts_post = trace.final_counts_post

    summary = {
        "config": {k: config[k] for k in sorted(config)},
        "instance_n": poly.n,
        "exact": {"cmin": exact.cmin, "cmax": exact.cmax, "argmin_count": exact.argmin_count},
        "best": {
            "bits": bits_to_string(best_bits),
            "cost": poly.evaluate(best_bits),
            "ar": oracle.approximation_ratio(poly.evaluate(best_bits), exact.cmin, exact.cmax),
        },
        "optimal_circuit": {
            "stage": trace.final_stage,
            "step": trace.final_step,
            "circuit": trace.final_circuit,
            "cvar": trace.final_cvar,
            "gamma": list(trace.final_gamma),
            "beta": list(trace.final_beta),
        },
        "post": _summary_dict(counts_post, poly, exact),
        "raw": _summary_dict(counts_raw, poly, exact),
    }
    if graph is not None:
        summary["max_cut"] = -exact.cmin

    baselines = config.get("baselines") or []
    summary["baselines"] = {}
    for kind in baselines:
        if kind == "random":
            counts = oracle.random_baseline(poly, stage_config.shots, stage_config.seed)
        elif kind == "local":
            greedy = postprocess.GreedyConfig(seed=stage_config.seed)
            states = postprocess.local_solver(poly, stage_config.shots, greedy)
            counts = _counts_from_states(states, poly.n)
        else:
            raise UsageError(f"unknown baseline kind: {kind}")
        summary["baselines"][kind] = _summary_dict(counts, poly, exact)

    trace_lines = [json.dumps(rec, sort_keys=True) for rec in trace.to_records()]
    (out_dir / TRACE_FILE).write_text("\n".join(trace_lines) + "\n")
    serialization.write_counts(counts_raw, out_dir / COUNTS_RAW_FILE)
    serialization.write_counts(counts_post, out_dir / COUNTS_POST_FILE)
    (out_dir / SUMMARY_FILE).write_text(json.dumps(summary, sort_keys=True, indent=1) + "\n")
    _write_cdf(oracle.ar_cdf(counts_post, poly, exact), out_dir / CDF_FILE)
    print(f"best cost {summary['best']['cost']} (AR {summary['best']['ar']:.4f}) -> {out_dir}")
    return 0


def _counts_from_states(states: np.ndarray, n: int) -> SampleCounts:
    out: dict[int, int] = {}
    for row in states:
        key = bits_to_index(row)
        out[key] = out.get(key, 0) + 1
    return SampleCounts(n, out)


# ---------------------------------------------------------------------------
# exact / baseline / report
# ---------------------------------------------------------------------------

def cmd_exact(args) -> int:
    poly, graph = _load_cost(args.instance)
    exact = oracle.brute_force(poly, max_bits=args.max_bits)
    payload = {
        "n": poly.n,
        "cmin": exact.cmin,
        "cmax": exact.cmax,
        "argmin_count": exact.argmin_count,
        "argmin": bits_to_string(exact.argmin_bits()),
    }
    if graph is not None:
        payload["max_cut"] = -exact.cmin
    _print_json(payload)
    return 0


def cmd_baseline(args) -> int:
    poly, _ = _load_cost(args.instance)
    if args.kind == "random":
        counts = oracle.random_baseline(poly, args.samples, args.seed)
    else:
        greedy = postprocess.GreedyConfig(
            seed=args.seed, max_traversals=args.max_traversals, restarts=args.restarts
        )
        counts = _counts_from_states(postprocess.local_solver(poly, args.samples, greedy), poly.n)
    if args.out:
        serialization.write_counts(counts, args.out)
    exact = oracle.brute_force(poly)
    _print_json({"kind": args.kind, **_summary_dict(counts, poly, exact)})
    return 0


def cmd_report(args) -> int:
    counts_path = Path(args.counts)
    if not counts_path.exists():
        raise UsageError(f"counts file not found: {args.counts}")
    counts = serialization.read_counts(counts_path)
    poly, _ = _load_cost(args.instance)
    if counts.n != poly.n:
        raise UsageError(f"counts are over {counts.n} bits but instance has n={poly.n}")
    exact = oracle.brute_force(poly)
    _print_json(_summary_dict(counts, poly, exact))
    if args.out_cdf:
        _write_cdf(oracle.ar_cdf(counts, poly, exact), Path(args.out_cdf))
    return 0


def cmd_postprocess(args) -> int:
    counts_path = Path(args.counts)
    if not counts_path.exists():
        raise UsageError(f"counts file not found: {args.counts}")
    counts = serialization.read_counts(counts_path)
    poly, _ = _load_cost(args.instance)
    if counts.n != poly.n:
        raise UsageError(f"counts are over {counts.n} bits but instance has n={poly.n}")
    greedy = postprocess.GreedyConfig(seed=args.seed, max_traversals=args.max_traversals)
    result = postprocess.postprocess_counts(counts, poly, greedy)
    serialization.write_counts(result, args.out)
    before = float(np.mean(counts.costs(poly)))
    after = float(np.mean(result.costs(poly)))
    print(f"mean cost {before} -> {after} over {result.shots} shots, wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# gen / probs
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "heavy-hex":
        if not args.out_graph or not args.out_triples:
            raise UsageError("gen heavy-hex requires --out-graph and --out-triples")
        graph, triples = heavy_hex_fragment(args.rows, args.cols)
        serialization.write_graph(graph, args.out_graph)
        serialization.write_triples(triples, args.out_triples)
        print(f"heavy-hex {args.rows}x{args.cols}: n={graph.n}, edges={len(graph.edges)}, triples={len(triples)}")
    elif args.kind == "spin-glass":
        if not args.out:
            raise UsageError("gen spin-glass requires --out")
        if args.coupling:
            coupling_path = Path(args.coupling)
            if not coupling_path.exists():
                raise UsageError(f"coupling file not found: {args.coupling}")
            graph = serialization.read_graph(coupling_path)
            if args.triples:
                triples = serialization.read_triples(args.triples)
            else:
                triples = default_triples(graph)
        else:
            graph, triples = heavy_hex_fragment(args.rows, args.cols)
        if args.expect_nodes is not None and graph.n != args.expect_nodes:
            raise UsageError(f"coupling map has {graph.n} nodes, expected {args.expect_nodes}")
        poly = spin_glass_instance(graph, triples, args.seed)
        serialization.write_polynomial(poly, args.out)
        counts = {1: 0, 2: 0, 3: 0}
        for _, variables in poly.terms:
            counts[len(variables)] += 1
        print(f"spin glass n={poly.n}: {counts[1]} linear, {counts[2]} quadratic, {counts[3]} cubic")
    elif args.kind == "maxcut":
        if not args.graph or not args.out:
            raise UsageError("gen maxcut requires --graph and --out")
        graph_path = Path(args.graph)
        if not graph_path.exists():
            raise UsageError(f"graph file not found: {args.graph}")
        graph = serialization.read_graph(graph_path)
        serialization.write_polynomial(maxcut_polynomial(graph), args.out)
        print(f"max-cut cost for n={graph.n}, {len(graph.edges)} edges")
    else:  # unreachable through argparse choices
        raise UsageError(f"unknown gen kind: {args.kind}")
    return 0


def cmd_probs(args) -> int:
    poly, _ = _load_cost(args.instance)
    if args.target is not None:
        target = string_to_bits(args.target)
        if len(target) != poly.n:
            raise UsageError(f"target has {len(target)} bits, instance has n={poly.n}")
        theta = bias_theta(target, args.delta)
    else:
        theta = np.full(poly.n, np.pi / 2.0)
    gamma = [float(x) for x in args.gamma.split(",")] if args.gamma else []
    beta = [float(x) for x in args.beta.split(",")] if args.beta else []
    if len(gamma) != len(beta):
        raise UsageError("--gamma and --beta need the same number of values")
    state = run_ansatz(poly, AnsatzParams(theta, gamma, beta), max_qubits=args.max_qubits)
    lines = ["# bitstring probability"]
    probs = state.probabilities()
    for idx in range(len(probs)):
        lines.append(f"{bits_to_string(index_to_bits(idx, poly.n))} {float(probs[idx])!r}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinqaoa",
        description="staged variational solver for binary optimization on a local simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run the full staged optimization loop")
    s.add_argument("--config", help="run-config JSON document")
    s.add_argument("--instance", help="instance file (polynomial or graph)")
    s.add_argument("--out", help="output directory")
    s.add_argument("--seed", type=int)
    s.add_argument("--shots", type=int)
    s.add_argument("--stages", type=int)
    s.add_argument("--steps", type=int)
    s.add_argument("--circuits", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--alpha", type=float)
    s.add_argument("--sigma", type=float)
    s.add_argument("--schedule", help="comma-separated bias angles, one per stage")
    s.add_argument("--max-qubits", type=int, dest="max_qubits")
    s.add_argument("--workers", type=int)
    s.add_argument("--baselines", help="comma-separated: random,local")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("exact", help="exact min/max by full enumeration")
    e.add_argument("instance")
    e.add_argument("--max-bits", type=int, default=oracle.DEFAULT_ENUM_BITS, dest="max_bits")
    e.set_defaults(func=cmd_exact)

    b = sub.add_parser("baseline", help="random-sampling or local-solver baseline")
    b.add_argument("instance")
    b.add_argument("--kind", choices=("random", "local"), required=True)
    b.add_argument("--samples", type=int, required=True)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--out", help="write the sampled counts to this file")
    b.add_argument("--max-traversals", type=int, default=5, dest="max_traversals")
    b.add_argument("--restarts", type=int, default=5)
    b.set_defaults(func=cmd_baseline)

    r = sub.add_parser("report", help="summarize a counts file against an instance")
    r.add_argument("counts")
    r.add_argument("instance")
    r.add_argument("--out-cdf", dest="out_cdf")
    r.set_defaults(func=cmd_report)

    pp = sub.add_parser("postprocess", help="greedy-optimize every shot of a counts file")
    pp.add_argument("counts")
    pp.add_argument("instance")
    pp.add_argument("--seed", type=int, required=True)
    pp.add_argument("--out", required=True)
    pp.add_argument("--max-traversals", type=int, default=5, dest="max_traversals")
    pp.set_defaults(func=cmd_postprocess)

    g = sub.add_parser("gen", help="generate instance files")
    g.add_argument("kind", choices=("heavy-hex", "spin-glass", "maxcut"))
    g.add_argument("--rows", type=int, default=1)
    g.add_argument("--cols", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--coupling", help="coupling graph file (overrides --rows/--cols)")
    g.add_argument("--triples", help="3-body term file ('i j k' lines)")
    g.add_argument("--expect-nodes", type=int, dest="expect_nodes")
    g.add_argument("--graph", help="graph file for kind=maxcut")
    g.add_argument("--out", help="output instance file")
    g.add_argument("--out-graph", dest="out_graph", help="output graph file for kind=heavy-hex")
    g.add_argument("--out-triples", dest="out_triples", help="output triples file for kind=heavy-hex")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("probs", help="dump circuit output probabilities as text")
    d.add_argument("instance")
    d.add_argument("--target", help="bias target bitstring")
    d.add_argument("--delta", type=float, default=0.0)
    d.add_argument("--gamma", help="comma-separated layer angles")
    d.add_argument("--beta", help="comma-separated layer angles")
    d.add_argument("--max-qubits", type=int, default=16, dest="max_qubits")
    d.add_argument("--out")
    d.set_defaults(func=cmd_probs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CapacityError, DegenerateInstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
