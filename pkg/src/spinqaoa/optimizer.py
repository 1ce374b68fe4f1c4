"""The staged hybrid optimization loop and its bias-angle mathematics.

One run is S stages of T optimization steps. A stage fixes the initial-state
angles theta; each step asks a CMA-ES population of (gamma, beta) candidates,
simulates and samples each circuit, and feeds back the CVaR of the sampled
costs. Between stages, theta is re-biased toward the best bitstring seen so
far (after one greedy pass) with a scheduled bias angle delta. The first step
of every stage forces one candidate to (gamma, beta) = (0, 0) as a layer-free
baseline circuit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cmaes import CmaEs
from .postprocess import GreedyConfig, greedy_pass, postprocess_counts
from .problem import SpinPolynomial, bits_to_string, index_to_bits
from .seeds import (
    STREAM_CMA,
    STREAM_FINAL,
    STREAM_SAMPLE,
    STREAM_THETA,
    derive_rng,
    derive_shot_seeds,
)
from .simulator import (
    DEFAULT_MAX_QUBITS,
    AnsatzParams,
    SampleCounts,
    run_ansatz,
    sample,
)

HALF_PI = math.pi / 2.0


# ---------------------------------------------------------------------------
# objective
# ---------------------------------------------------------------------------

def cvar(costs: Sequence[float], alpha: float) -> float:
    """Mean of the ceil(alpha * m) smallest cost samples."""
    costs = np.asarray(costs, dtype=np.float64)
    if costs.size == 0:
        raise ValueError("cvar of an empty cost multiset")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    k = math.ceil(alpha * costs.size)
    tail = np.partition(costs, k - 1)[:k]
    return float(tail.mean())


# ---------------------------------------------------------------------------
# initial-state bias angles
# ---------------------------------------------------------------------------

def bias_theta(target_bits: Sequence[int], delta: float) -> np.ndarray:
    """Per-qubit Ry angles biasing the product state toward ``target_bits``.

    theta_i = pi/2 - delta when the target bit is 0, pi/2 + delta when it is
    1; each qubit then measures its target value with probability
    (1 + sin delta) / 2. delta = 0 is the uniform superposition, delta = pi/2
    the deterministic target state.
    """
    if not 0.0 <= delta <= HALF_PI:
        raise ValueError(f"delta must lie in [0, pi/2], got {delta}")
    bits = np.asarray(target_bits, dtype=np.int64)
    return HALF_PI + delta * (2 * bits - 1)


def amplitude_sq(n: int, delta: float, hamming: int) -> float:
    """Probability of sampling a bitstring at the given Hamming distance
    from the bias target of an n-qubit biased product state:

        ((1 + sin d) / 2)**n * ((1 - sin d) / (1 + sin d))**h

    The (1 - sin d) factor is evaluated as cos(d)**2 / (1 + sin d), which
    stays accurate as d approaches pi/2.
    """
    if not 0 <= hamming <= n:
        raise ValueError(f"hamming distance {hamming} out of range for n={n}")
    if not 0.0 <= delta <= HALF_PI:
        raise ValueError(f"delta must lie in [0, pi/2], got {delta}")
    s = math.sin(delta)
    c = math.cos(delta)
    base = (1.0 + s) / 2.0
    ratio = (c * c) / ((1.0 + s) * (1.0 + s))
    return base**n * ratio**hamming


def delta_opt(n: int, hamming: int) -> float:
    """Bias angle maximizing the amplitude at Hamming distance h: arcsin((n-2h)/n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= hamming <= n / 2:
        raise ValueError(
            f"no positive-bias optimum for hamming={hamming} with n={n} (requires h <= n/2)"
        )
    return math.asin((n - 2.0 * hamming) / n)


def delta_max(n: int, hamming: int) -> float:
    """Largest bias angle at which a solution at Hamming distance h is still
    at least as likely as under the uniform superposition.

    Solves (n - h) ln(1 + sin d) + h ln(1 - sin d) = 0 for the nonzero root.
    h = 0 returns pi/2 by convention (the amplitude never drops below 2**-n);
    h >= n/2 has no positive root and raises.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if hamming == 0:
        return HALF_PI
    if not 0 < hamming < n / 2:
        raise ValueError(f"no positive root for hamming={hamming} with n={n}")
    eps = delta_max_complement(n, hamming)
    return HALF_PI - eps


def delta_max_complement(n: int, hamming: int) -> float:
    """pi/2 - delta_max(n, h), solved to full relative precision.

    For small h the root sits within 2**-((n-h)/h) of sin d = 1, far closer
    than float spacing around pi/2; the complement angle keeps that
    resolution. Uses bisection on log(eps) where eps = pi/2 - delta.
    """
    if not 0 < hamming < n / 2:
        raise ValueError(f"no positive root for hamming={hamming} with n={n}")
    h = float(hamming)

    def g_of_log_eps(u: float) -> float:
        eps = math.exp(u)
        half = eps / 2.0
        # sin d = cos(eps): 1 - sin d = 2 sin^2(eps/2), 1 + sin d = 2 cos^2(eps/2)
        return (n - h) * math.log(2.0 * math.cos(half) ** 2) + h * math.log(
            2.0 * math.sin(half) ** 2
        )

    # g is monotone in eps between the root and the amplitude peak at
    # eps_opt = pi/2 - delta_opt; g(log eps_opt) > 0, g(-inf) -> -inf.
    hi = math.log(HALF_PI - delta_opt(n, hamming) + 1e-18)
    lo = math.log(2.0 * math.sqrt(2.0 ** (-(n - h) / h)) + 1e-300) - 5.0
    while g_of_log_eps(lo) > 0.0:
        lo -= 5.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g_of_log_eps(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-15:
            break
    return math.exp(0.5 * (lo + hi))


# ---------------------------------------------------------------------------
# run configuration and trace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StageConfig:
    """All knobs of one staged optimization run. The seed is mandatory."""

    seed: int
    stages: int = 4
    steps_per_stage: int = 4
    circuits_per_step: int = 6
    shots: int = 2048
    p: int = 1
    bias_schedule: tuple[float, ...] = (0.0, 0.45, 0.85, 1.25)
    sigma0: float = 0.1
    gamma_positive: bool = True
    alpha: float = 0.35
    gamma_init: tuple[float, float] = (0.0, 0.5)
    beta_init: tuple[float, float] = (-0.25, 0.25)
    max_qubits: int = DEFAULT_MAX_QUBITS
    greedy_max_traversals: int = 5
    workers: int = 1

    def __post_init__(self):
        if self.stages < 1 or self.steps_per_stage < 1 or self.circuits_per_step < 1:
            raise ValueError("stages, steps_per_stage and circuits_per_step must be >= 1")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.p < 0:
            raise ValueError("p must be >= 0")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.sigma0 <= 0:
            raise ValueError("sigma0 must be positive")
        schedule = tuple(float(d) for d in self.bias_schedule)
        if len(schedule) != self.stages:
            raise ValueError(
                f"bias schedule has {len(schedule)} entries for {self.stages} stages"
            )
        if schedule[0] != 0.0:
            raise ValueError("the first stage must be unbiased (schedule starts at 0)")
        if any(d < 0.0 or d > HALF_PI for d in schedule):
            raise ValueError("bias angles must lie in [0, pi/2]")
        if any(schedule[i] > schedule[i + 1] for i in range(len(schedule) - 1)):
            raise ValueError("bias schedule must be non-decreasing")
        object.__setattr__(self, "bias_schedule", schedule)


@dataclass
class CircuitRecord:
    gamma: tuple[float, ...]
    beta: tuple[float, ...]
    cvar: float
    is_p0_baseline: bool
    min_cost: float


@dataclass
class StepRecord:
    stage: int
    step: int
    circuits: list[CircuitRecord]
    best_cost: float
    best_bits: str


@dataclass
class StageRecord:
    stage: int
    delta: float
    target_bits: str
    theta: tuple[float, ...]


@dataclass
class RunTrace:
    """Everything observed during one run, in execution order."""

    steps: list[StepRecord] = field(default_factory=list)
    stage_updates: list[StageRecord] = field(default_factory=list)
    final_stage: int = 0
    final_step: int = 0
    final_circuit: int = 0
    final_cvar: float = math.nan
    final_gamma: tuple[float, ...] = ()
    final_beta: tuple[float, ...] = ()
    final_counts_raw: SampleCounts | None = None
    final_counts_post: SampleCounts | None = None

    def best_cost_sequence(self) -> list[float]:
        return [record.best_cost for record in self.steps]

    def to_records(self) -> list[dict]:
        out: list[dict] = []
        stage_by_id = {r.stage: r for r in self.stage_updates}
        for record in self.steps:
            if record.step == 0 and record.stage in stage_by_id:
                s = stage_by_id[record.stage]
                out.append(
                    {
                        "type": "stage",
                        "stage": s.stage,
                        "delta": s.delta,
                        "target": s.target_bits,
                        "theta": list(s.theta),
                    }
                )
            out.append(
                {
                    "type": "step",
                    "stage": record.stage,
                    "step": record.step,
                    "circuits": [
                        {
                            "gamma": list(c.gamma),
                            "beta": list(c.beta),
                            "cvar": c.cvar,
                            "baseline": c.is_p0_baseline,
                            "min_cost": c.min_cost,
                        }
                        for c in record.circuits
                    ],
                    "best_cost": record.best_cost,
                    "best_bits": record.best_bits,
                }
            )
        out.append(
            {
                "type": "final",
                "stage": self.final_stage,
                "step": self.final_step,
                "circuit": self.final_circuit,
                "cvar": self.final_cvar,
                "gamma": list(self.final_gamma),
                "beta": list(self.final_beta),
            }
        )
        return out


# ---------------------------------------------------------------------------
# the staged loop
# ---------------------------------------------------------------------------

def _initial_mean(config: StageConfig, rng: np.random.Generator) -> np.ndarray:
    gamma = rng.uniform(config.gamma_init[0], config.gamma_init[1], size=config.p)
    beta = rng.uniform(config.beta_init[0], config.beta_init[1], size=config.p)
    return np.concatenate([gamma, beta])


def biased_qaoa(poly: SpinPolynomial, config: StageConfig) -> tuple[np.ndarray, RunTrace]:
    """Run the full staged loop and return (best bits, trace).

    The best bitstring is tracked over the raw shots of every circuit; after
    the loop the best-CVaR circuit is re-sampled and its counts are greedy
    post-processed, and the returned best accounts for those final shots too.
    """
    n = poly.n
    cost_table = poly.evaluate_all(max_bits=min(config.max_qubits, 30))
    trace = RunTrace()

    theta = np.full(n, HALF_PI)
    best_cost = math.inf
    best_index = 0
    best_overall = (math.inf, 0, 0, 0)  # (cvar, stage, step, circuit) for the final circuit
    best_params: tuple[tuple[float, ...], tuple[float, ...]] = ((), ())
    best_theta = theta.copy()

    def run_circuit(stage: int, step: int, circuit: int, vec: np.ndarray):
        gamma, beta = vec[: config.p], vec[config.p :]
        params = AnsatzParams(theta, gamma, beta)
        state = run_ansatz(poly, params, max_qubits=config.max_qubits, cost_table=cost_table)
        rng = derive_rng(config.seed, STREAM_SAMPLE, stage, step, circuit)
        counts = sample(state, config.shots, rng)
        costs = counts.costs(poly, cost_table)
        fitness = cvar(costs, config.alpha)
        idx = np.fromiter(counts.keys(), dtype=np.int64, count=len(counts))
        circuit_costs = cost_table[idx]
        low = circuit_costs.min()
        argmin = int(idx[circuit_costs == low].min())
        return fitness, float(low), argmin

    pool = ThreadPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        for stage in range(config.stages):
            if stage > 0:
                target_seed = int(derive_shot_seeds(config.seed, STREAM_THETA, stage, count=1)[0])
                target = greedy_pass(
                    index_to_bits(best_index, n),
                    poly,
                    target_seed,
                    max_traversals=config.greedy_max_traversals,
                )
                delta = config.bias_schedule[stage]
                theta = bias_theta(target, delta)
                trace.stage_updates.append(
                    StageRecord(stage, delta, bits_to_string(target), tuple(theta))
                )
            cma_rng = derive_rng(config.seed, STREAM_CMA)
            cma = (
                CmaEs(
                    _initial_mean(config, cma_rng),
                    config.sigma0,
                    config.circuits_per_step,
                    cma_rng,
                    nonneg_dims=tuple(range(config.p)) if config.gamma_positive else (),
                )
                if config.p > 0
                else None
            )
            for step in range(config.steps_per_stage):
                if cma is not None:
                    candidates = cma.ask()
                else:
                    candidates = [np.zeros(0) for _ in range(config.circuits_per_step)]
                baseline_at = 0 if step == 0 else None
                if baseline_at is not None and config.p > 0:
                    candidates[baseline_at] = np.zeros(2 * config.p)
                jobs = list(enumerate(candidates))
                if pool is not None:
                    results = list(
                        pool.map(lambda job: run_circuit(stage, step, job[0], job[1]), jobs)
                    )
                else:
                    results = [run_circuit(stage, step, c, vec) for c, vec in jobs]

                records = []
                fitnesses = []
                for (circuit, vec), (fitness, low, argmin) in zip(jobs, results):
                    fitnesses.append(fitness)
                    if low < best_cost:
                        best_cost = low
                        best_index = argmin
                    is_baseline = baseline_at is not None and circuit == baseline_at
                    records.append(
                        CircuitRecord(
                            tuple(vec[: config.p]),
                            tuple(vec[config.p :]),
                            fitness,
                            is_baseline,
                            low,
                        )
                    )
                    key = (fitness, stage, step, circuit)
                    if key < best_overall:
                        best_overall = key
                        best_params = (tuple(vec[: config.p]), tuple(vec[config.p :]))
                        best_theta = theta.copy()
                if cma is not None:
                    cma.tell(candidates, fitnesses)
                trace.steps.append(
                    StepRecord(
                        stage,
                        step,
                        records,
                        best_cost,
                        bits_to_string(index_to_bits(best_index, n)),
                    )
                )
    finally:
        if pool is not None:
            pool.shutdown()

    # Re-sample the optimal circuit and greedy post-process its shots.
    trace.final_cvar, trace.final_stage, trace.final_step, trace.final_circuit = best_overall
    trace.final_gamma, trace.final_beta = best_params
    final_state = run_ansatz(
        poly,
        AnsatzParams(best_theta, np.array(best_params[0]), np.array(best_params[1])),
        max_qubits=config.max_qubits,
        cost_table=cost_table,
    )
    counts_raw = sample(final_state, config.shots, derive_rng(config.seed, STREAM_FINAL))
    pp_seed = int(derive_shot_seeds(config.seed, STREAM_FINAL, 1, count=1)[0])
    counts_post = postprocess_counts(
        counts_raw,
        poly,
        GreedyConfig(seed=pp_seed, max_traversals=config.greedy_max_traversals),
    )
    trace.final_counts_raw = counts_raw
    trace.final_counts_post = counts_post
    for counts in (counts_raw, counts_post):
        idx = np.fromiter(counts.keys(), dtype=np.int64, count=len(counts))
        costs = cost_table[idx]
        low = costs.min()
        if low < best_cost:
            best_cost = float(low)
            best_index = int(idx[costs == low].min())
    return index_to_bits(best_index, n), trace
