"""Exact ground truth by full enumeration, plus solution-quality metrics.

The enumeration is the desk-scale stand-in for an exact MILP solver: it
visits all 2**n configurations and reports the exact minimum, maximum, and
every minimizing bitstring. Above the dense-table width the walk is
partitioned into subcube blocks (fixed high bits folded into the term
coefficients) that are evaluated independently and combined by a fixed-order
reduction, so results do not depend on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DegenerateInstanceError
from .problem import SpinPolynomial, index_to_bits
from .seeds import STREAM_BASELINE, derive_rng
from .simulator import SampleCounts

#: Default cap on exhaustive enumeration (2**26 ~ 67M configurations).
DEFAULT_ENUM_BITS = 26

_BLOCK_BITS = 20


@dataclass(frozen=True)
class ExactResult:
    """Exact optimum of an instance: band edges and all minimizing bitstrings."""

    n: int
    cmin: float
    cmax: float
    argmins: np.ndarray  # sorted basis indices attaining cmin

    @property
    def argmin_count(self) -> int:
        return len(self.argmins)

    def argmin_bits(self) -> np.ndarray:
        return index_to_bits(int(self.argmins[0]), self.n)


def brute_force(poly: SpinPolynomial, max_bits: int = DEFAULT_ENUM_BITS) -> ExactResult:
    """Exact min/max/argmins of C over all 2**n configurations.

    Cost values are computed by exact per-block evaluation (spin signs folded
    into coefficients, then a multilinear split); for integer or dyadic
    coefficients every value is exact, so the argmin set is too.
    """
    n = poly.n
    if n > max_bits:
        raise CapacityError(f"enumeration over n={n} exceeds cap of {max_bits} bits")
    if n <= _BLOCK_BITS:
        costs = poly.evaluate_all(max_bits=_BLOCK_BITS)
        cmin = float(costs.min())
        cmax = float(costs.max())
        argmins = np.flatnonzero(costs == cmin).astype(np.int64)
        return ExactResult(n, cmin, cmax, argmins)

    low_bits = _BLOCK_BITS
    cmin = math.inf
    cmax = -math.inf
    argmins: list[np.ndarray] = []
    for block in range(1 << (n - low_bits)):
        folded: list[tuple[float, tuple[int, ...]]] = []
        for coeff, variables in poly.terms:
            kept = tuple(v for v in variables if v < low_bits)
            for v in variables:
                if v >= low_bits:
                    coeff = coeff if (block >> (v - low_bits)) & 1 else -coeff
            folded.append((coeff, kept))
        costs = SpinPolynomial(low_bits, folded).evaluate_all(max_bits=low_bits)
        block_min = float(costs.min())
        block_max = float(costs.max())
        base = block << low_bits
        if block_min < cmin:
            cmin = block_min
            argmins = [np.flatnonzero(costs == block_min).astype(np.int64) + base]
        elif block_min == cmin:
            argmins.append(np.flatnonzero(costs == block_min).astype(np.int64) + base)
        if block_max > cmax:
            cmax = block_max
    return ExactResult(n, cmin, cmax, np.concatenate(argmins))


def approximation_ratio(cost: float, cmin: float, cmax: float) -> float:
    """(C(x) - Cmax) / (Cmin - Cmax): 1 at the optimum, 0 at the worst."""
    if cmin >= cmax:
        raise DegenerateInstanceError(
            f"approximation ratio undefined for cmin={cmin}, cmax={cmax}"
        )
    return (cost - cmax) / (cmin - cmax)


@dataclass(frozen=True)
class RunSummary:
    """Solution-quality metrics of one sampled distribution."""

    best: float
    ar_best: float
    likelihood: float
    mean: float
    mean_ar: float
    count_top: int
    unique_optima: int
    shots: int
    cmin: float
    cmax: float

    def to_dict(self) -> dict:
        return {
            "best": self.best,
            "ar_best": self.ar_best,
            "likelihood": self.likelihood,
            "mean": self.mean,
            "mean_ar": self.mean_ar,
            "count_top": self.count_top,
            "unique_optima": self.unique_optima,
            "shots": self.shots,
            "cmin": self.cmin,
            "cmax": self.cmax,
        }


def summarize(counts: SampleCounts, poly: SpinPolynomial, exact: ExactResult) -> RunSummary:
    """Best/mean objective, their ARs, top-solution likelihood and counts.

    The top-solution count covers every sampled bitstring attaining the best
    sampled cost (all of them when the optimum is degenerate); unique_optima
    is the number of distinct sampled bitstrings attaining the true cmin.
    """
    if len(counts) == 0:
        raise ValueError("cannot summarize empty counts")
    idx = np.fromiter(counts.keys(), dtype=np.int64, count=len(counts))
    mult = np.fromiter(counts.values(), dtype=np.int64, count=len(counts))
    costs = np.array([poly.evaluate_index(int(i)) for i in idx])
    shots = int(mult.sum())
    best = float(costs.min())
    count_top = int(mult[costs == best].sum())
    mean = float((costs * mult).sum() / shots)
    return RunSummary(
        best=best,
        ar_best=approximation_ratio(best, exact.cmin, exact.cmax),
        likelihood=count_top / shots,
        mean=mean,
        mean_ar=approximation_ratio(mean, exact.cmin, exact.cmax),
        count_top=count_top,
        unique_optima=int((costs == exact.cmin).sum()),
        shots=shots,
        cmin=exact.cmin,
        cmax=exact.cmax,
    )


def ar_cdf(
    counts: SampleCounts, poly: SpinPolynomial, exact: ExactResult
) -> list[tuple[float, float]]:
    """(fraction of shots with AR >= a, a) for every achieved AR level a.

    Levels are emitted in ascending AR order, so fractions are non-increasing
    and the first point always has fraction 1.0.
    """
    if len(counts) == 0:
        raise ValueError("cannot build a CDF from empty counts")
    idx = np.fromiter(counts.keys(), dtype=np.int64, count=len(counts))
    mult = np.fromiter(counts.values(), dtype=np.int64, count=len(counts))
    ars = np.array(
        [approximation_ratio(poly.evaluate_index(int(i)), exact.cmin, exact.cmax) for i in idx]
    )
    shots = mult.sum()
    order = np.argsort(ars, kind="stable")
    ars = ars[order]
    mult = mult[order]
    levels, starts = np.unique(ars, return_index=True)
    # shots at AR >= level = suffix sums over the sorted multiplicities
    suffix = np.cumsum(mult[::-1])[::-1]
    return [(float(suffix[s] / shots), float(a)) for a, s in zip(levels, starts)]


def random_baseline(poly: SpinPolynomial, n_samples: int, seed: int) -> SampleCounts:
    """Uniform random sampling of the configuration space (the brute-force
    scan baseline)."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rng = derive_rng(seed, STREAM_BASELINE)
    draws = rng.integers(0, 1 << poly.n, size=n_samples, dtype=np.int64)
    idx, mult = np.unique(draws, return_counts=True)
    return SampleCounts(poly.n, dict(zip(idx.tolist(), mult.tolist())))
