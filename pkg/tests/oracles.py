"""Independent reference implementations used only to check the package.

Everything here deliberately avoids the production code paths: costs are
re-evaluated term by term, circuits are built from dense kron products, and
the bias-angle optimum is located by golden-section search.
"""

from __future__ import annotations

import math

import numpy as np


def naive_costs(poly) -> np.ndarray:
    """Cost of every bitstring by direct per-term evaluation (no recursion)."""
    n = poly.n
    out = np.empty(1 << n, dtype=np.float64)
    for idx in range(1 << n):
        z = [2 * ((idx >> i) & 1) - 1 for i in range(n)]
        total = 0.0
        for coeff, variables in poly.terms:
            prod = coeff
            for v in variables:
                prod *= z[v]
            total += prod
        out[idx] = total
    return out


def ry_qubit(theta: float) -> np.ndarray:
    return np.array([math.cos(theta / 2.0), math.sin(theta / 2.0)], dtype=np.complex128)


def rx_gate(beta: float) -> np.ndarray:
    """exp(-i beta X) as a dense 2x2 matrix."""
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def dense_initial(theta: np.ndarray) -> np.ndarray:
    """Product state as a dense vector, qubit 0 on the least-significant bit."""
    state = np.array([1.0 + 0.0j])
    for t in theta:  # later qubits occupy higher bits, so kron from the left
        state = np.kron(ry_qubit(t), state)
    return state


def dense_mixer(n: int, beta: float) -> np.ndarray:
    gate = rx_gate(beta)
    full = np.array([[1.0 + 0.0j]])
    for _ in range(n):
        full = np.kron(gate, full)
    return full


def dense_circuit(poly, theta, gammas, betas) -> np.ndarray:
    """Full dense-matrix simulation of the ansatz; O(4**n), for n <= 6."""
    costs = naive_costs(poly)
    state = dense_initial(np.asarray(theta, dtype=np.float64))
    for gamma, beta in zip(gammas, betas):
        state = np.exp(-1j * gamma * costs) * state
        state = dense_mixer(poly.n, beta) @ state
    return state


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Argmax of a unimodal function on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)
