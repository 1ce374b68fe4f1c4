"""Staged hybrid variational solver for unconstrained binary optimization.

The package covers the full desk-scale pipeline: spin-polynomial cost models
(Max-Cut, cubic heavy-hex spin glasses), an exact statevector simulator for
the Ry-initialized alternating ansatz, the staged CMA-ES/CVaR optimization
loop with measurement-feedback initial-state biasing, greedy single-flip
post-processing, exact enumeration ground truth, and classical baselines.
"""

from .errors import CapacityError, DegenerateInstanceError
from .oracle import ExactResult, RunSummary, approximation_ratio, ar_cdf, brute_force, random_baseline, summarize
from .optimizer import (
    RunTrace,
    StageConfig,
    amplitude_sq,
    bias_theta,
    biased_qaoa,
    cvar,
    delta_max,
    delta_opt,
)
from .postprocess import GreedyConfig, greedy_pass, local_solver, postprocess_counts
from .problem import (
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
from .simulator import (
    AnsatzParams,
    SampleCounts,
    Statevector,
    apply_cost_layer,
    apply_mixer_layer,
    prepare_initial,
    probability,
    run_ansatz,
    sample,
)

__all__ = [
    "AnsatzParams",
    "CapacityError",
    "DegenerateInstanceError",
    "ExactResult",
    "GreedyConfig",
    "RunSummary",
    "RunTrace",
    "SampleCounts",
    "SpinPolynomial",
    "StageConfig",
    "Statevector",
    "TermIndex",
    "WeightedGraph",
    "amplitude_sq",
    "apply_cost_layer",
    "apply_mixer_layer",
    "approximation_ratio",
    "ar_cdf",
    "bias_theta",
    "biased_qaoa",
    "brute_force",
    "cut_value",
    "cvar",
    "default_triples",
    "delta_evaluate",
    "delta_max",
    "delta_opt",
    "greedy_pass",
    "heavy_hex_fragment",
    "local_solver",
    "maxcut_polynomial",
    "postprocess_counts",
    "prepare_initial",
    "probability",
    "random_baseline",
    "run_ansatz",
    "sample",
    "spin_glass_instance",
    "summarize",
]

__version__ = "0.1.0"
