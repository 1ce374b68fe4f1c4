"""Exact statevector simulation of the Ry-initialized alternating ansatz.

The register is n qubits with amplitudes indexed little-endian: bit i of the
basis index is the measured value of qubit i. All tolerances assume complex
double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import CapacityError
from .problem import SpinPolynomial, bits_to_index, index_to_bits

#: Default cap on simulable register width (2**24 amplitudes ~ 256 MB).
DEFAULT_MAX_QUBITS = 24

NORM_TOL = 1e-10


@dataclass
class Statevector:
    """2**n complex amplitudes of the simulated register."""

    n: int
    amplitudes: np.ndarray

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def check_norm(self) -> None:
        if abs(self.norm_squared() - 1.0) > NORM_TOL:
            raise AssertionError(f"statevector norm drifted: {self.norm_squared()}")

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return (a.conj() * a).real

    def copy(self) -> "Statevector":
        return Statevector(self.n, self.amplitudes.copy())


@dataclass(frozen=True)
class AnsatzParams:
    """The n + 2p variational angles: per-qubit theta plus (gamma, beta) per layer."""

    theta: np.ndarray
    gamma: np.ndarray
    beta: np.ndarray

    def __init__(self, theta: Sequence[float], gamma: Sequence[float] = (), beta: Sequence[float] = ()):
        theta = np.asarray(theta, dtype=np.float64)
        gamma = np.atleast_1d(np.asarray(gamma, dtype=np.float64))
        beta = np.atleast_1d(np.asarray(beta, dtype=np.float64))
        if gamma.shape != beta.shape:
            raise ValueError(f"gamma and beta lengths differ: {gamma.shape} vs {beta.shape}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "beta", beta)

    @property
    def p(self) -> int:
        return len(self.gamma)


class SampleCounts(dict):
    """Multiset of measured basis indices; ``counts[index] = multiplicity``."""

    def __init__(self, n: int, counts: Mapping[int, int] | None = None):
        super().__init__()
        self.n = int(n)
        if counts:
            for idx, m in counts.items():
                m = int(m)
                if m <= 0:
                    raise ValueError(f"multiplicity must be positive, got {m}")
                self[int(idx)] = m

    @property
    def shots(self) -> int:
        return sum(self.values())

    def costs(self, poly: SpinPolynomial, cost_table: np.ndarray | None = None) -> np.ndarray:
        """Per-shot cost values (each index repeated by multiplicity)."""
        idx = np.repeat(
            np.fromiter(self.keys(), dtype=np.int64, count=len(self)),
            np.fromiter(self.values(), dtype=np.int64, count=len(self)),
        )
        if cost_table is not None:
            return cost_table[idx]
        return np.array([poly.evaluate_index(i) for i in idx])

    def to_bit_arrays(self) -> list[tuple[np.ndarray, int]]:
        return [(index_to_bits(i, self.n), m) for i, m in sorted(self.items())]


def prepare_initial(theta: Sequence[float], max_qubits: int = DEFAULT_MAX_QUBITS) -> Statevector:
    """Product state with qubit i rotated to cos(t/2)|0> + sin(t/2)|1>."""
    theta = np.asarray(theta, dtype=np.float64)
    n = len(theta)
    if n > max_qubits:
        raise CapacityError(f"n={n} qubits exceeds simulable cap of {max_qubits}")
    amp = np.ones(1, dtype=np.complex128)
    for t in theta:
        qubit = np.array([np.cos(t / 2.0), np.sin(t / 2.0)], dtype=np.complex128)
        amp = (qubit[:, None] * amp[None, :]).reshape(-1)  # new qubit is the next-higher bit
    return Statevector(n, amp)


def apply_cost_layer(
    state: Statevector,
    poly: SpinPolynomial,
    gamma: float,
    cost_table: np.ndarray | None = None,
) -> Statevector:
    """Diagonal phase exp(-i * gamma * C(z)) on every basis amplitude."""
    if poly.n != state.n:
        raise ValueError(f"polynomial on {poly.n} variables vs {state.n}-qubit state")
    if cost_table is None:
        cost_table = poly.evaluate_all(max_bits=state.n)
    return Statevector(state.n, state.amplitudes * np.exp(-1j * gamma * cost_table))


def apply_mixer_layer(state: Statevector, beta: float) -> Statevector:
    """Transverse-field mixer: exp(-i * beta * X) on every qubit."""
    out = state.amplitudes.copy()
    _mixer_inplace(out, state.n, beta)
    return Statevector(state.n, out)


def _mixer_inplace(amp: np.ndarray, n: int, beta: float) -> None:
    c = np.cos(beta)
    s = -1j * np.sin(beta)
    for i in range(n):
        view = amp.reshape(-1, 2, 1 << i)
        a = view[:, 0, :].copy()
        b = view[:, 1, :]
        view[:, 0, :] = c * a + s * b
        view[:, 1, :] = c * b + s * a


def run_ansatz(
    poly: SpinPolynomial,
    params: AnsatzParams,
    max_qubits: int = DEFAULT_MAX_QUBITS,
    cost_table: np.ndarray | None = None,
) -> Statevector:
    """Prepare the biased product state, then p cost/mixer layer pairs."""
    if len(params.theta) != poly.n:
        raise ValueError(f"theta length {len(params.theta)} vs n={poly.n}")
    state = prepare_initial(params.theta, max_qubits=max_qubits)
    if params.p > 0 and cost_table is None:
        cost_table = poly.evaluate_all(max_bits=poly.n)
    for gamma, beta in zip(params.gamma, params.beta):
        state.amplitudes *= np.exp(-1j * gamma * cost_table)
        _mixer_inplace(state.amplitudes, state.n, beta)
    state.check_norm()
    return state


def sample(state: Statevector, shots: int, seed: int | np.random.Generator) -> SampleCounts:
    """``shots`` i.i.d. measurements in the computational basis."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(np.random.SeedSequence(int(seed)))
    cum = np.cumsum(state.probabilities())
    draws = np.searchsorted(cum, rng.random(shots) * cum[-1], side="right")
    draws = np.minimum(draws, len(cum) - 1)
    idx, mult = np.unique(draws, return_counts=True)
    return SampleCounts(state.n, dict(zip(idx.tolist(), mult.tolist())))


def probability(state: Statevector, bits: Sequence[int]) -> float:
    """|amplitude|**2 of one basis configuration."""
    bits = np.asarray(bits)
    if bits.shape != (state.n,):
        raise ValueError(f"expected {state.n} bits, got shape {bits.shape}")
    a = state.amplitudes[bits_to_index(bits)]
    return float((a.conjugate() * a).real)
