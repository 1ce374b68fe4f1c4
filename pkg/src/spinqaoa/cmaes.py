"""Covariance matrix adaptation evolution strategy with an ask/tell interface.

Standard (mu/mu_w, lambda) CMA-ES with the published default strategy
parameters for the given dimension. Determinism comes from the injected
generator: a fixed seed replays the exact candidate sequence. Coordinates
listed in ``nonneg_dims`` are reflected into [0, inf) at ask time and the
reflected points are what tell updates from.
"""

from __future__ import annotations

import numpy as np

_COND_LIMIT = 1e14


class CmaEs:
    def __init__(
        self,
        mean: np.ndarray,
        sigma: float,
        lam: int,
        rng: np.random.Generator,
        nonneg_dims: tuple[int, ...] = (),
    ):
        mean = np.asarray(mean, dtype=np.float64)
        if sigma <= 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        if lam < 2:
            raise ValueError(f"population size must be >= 2, got {lam}")
        self.dim = len(mean)
        self.mean = mean.copy()
        self.sigma = float(sigma)
        self.lam = int(lam)
        self.rng = rng
        self.nonneg_dims = tuple(int(d) for d in nonneg_dims)
        self.generation = 0

        n, lam_ = float(self.dim), float(lam)
        self.mu = lam // 2
        raw = np.log((lam_ + 1) / 2.0) - np.log(np.arange(1, self.mu + 1))
        self.weights = raw / raw.sum()
        self.mueff = 1.0 / np.sum(self.weights**2)

        # standard cumulation / learning rates
        self.c_sigma = (self.mueff + 2) / (n + self.mueff + 5)
        self.d_sigma = 1 + 2 * max(0.0, np.sqrt((self.mueff - 1) / (n + 1)) - 1) + self.c_sigma
        self.c_c = (4 + self.mueff / n) / (n + 4 + 2 * self.mueff / n)
        self.c_1 = 2 / ((n + 1.3) ** 2 + self.mueff)
        self.c_mu = min(1 - self.c_1, 2 * (self.mueff - 2 + 1 / self.mueff) / ((n + 2) ** 2 + self.mueff))
        self.chi_n = np.sqrt(n) * (1 - 1 / (4 * n) + 1 / (21 * n**2))

        self.p_sigma = np.zeros(self.dim)
        self.p_c = np.zeros(self.dim)
        self.cov = np.eye(self.dim)
        self._decompose()

    # -- internals ---------------------------------------------------------

    def _decompose(self) -> None:
        try:
            self.cov = (self.cov + self.cov.T) / 2.0
            eigvals, eigvecs = np.linalg.eigh(self.cov)
        except np.linalg.LinAlgError:
            self._reset_degenerate()
            return
        if (
            not np.all(np.isfinite(eigvals))
            or not np.all(np.isfinite(eigvecs))
            or eigvals[-1] <= 0
            or eigvals[0] <= 0
            or eigvals[-1] / eigvals[0] > _COND_LIMIT
        ):
            self._reset_degenerate()
            return
        self._eigvecs = eigvecs
        self._scales = np.sqrt(eigvals)

    def _reset_degenerate(self) -> None:
        """Recovery path: identity covariance, cleared paths, halved step."""
        self.cov = np.eye(self.dim)
        self.p_sigma = np.zeros(self.dim)
        self.p_c = np.zeros(self.dim)
        self.sigma = self.sigma / 2.0
        self._eigvecs = np.eye(self.dim)
        self._scales = np.ones(self.dim)

    def _sample_one(self) -> np.ndarray:
        z = self.rng.standard_normal(self.dim)
        x = self.mean + self.sigma * (self._eigvecs @ (self._scales * z))
        for d in self.nonneg_dims:
            x[d] = abs(x[d])
        return x

    # -- ask / tell --------------------------------------------------------

    def ask(self) -> list[np.ndarray]:
        """Sample the next population of ``lam`` candidate vectors."""
        if self.dim == 0:
            return [np.zeros(0) for _ in range(self.lam)]
        return [self._sample_one() for _ in range(self.lam)]

    def tell(self, solutions: list[np.ndarray], fitnesses: list[float]) -> None:
        """Rank candidates (lower fitness is better) and update the strategy."""
        if len(solutions) != len(fitnesses):
            raise ValueError("one fitness per candidate is required")
        if len(solutions) != self.lam:
            raise ValueError(f"expected {self.lam} candidates, got {len(solutions)}")
        self.generation += 1
        if self.dim == 0:
            return
        fitnesses = np.asarray(fitnesses, dtype=np.float64)
        if np.min(fitnesses) == np.max(fitnesses):
            return  # no ranking information; keep the distribution as-is

        order = np.argsort(fitnesses, kind="stable")
        selected = np.stack([np.asarray(solutions[i], dtype=np.float64) for i in order[: self.mu]])
        old_mean = self.mean
        self.mean = self.weights @ selected

        y_mean = (self.mean - old_mean) / self.sigma
        inv_sqrt = self._eigvecs @ np.diag(1.0 / self._scales) @ self._eigvecs.T
        self.p_sigma = (1 - self.c_sigma) * self.p_sigma + np.sqrt(
            self.c_sigma * (2 - self.c_sigma) * self.mueff
        ) * (inv_sqrt @ y_mean)

        h_sigma = float(
            np.linalg.norm(self.p_sigma)
            / np.sqrt(1 - (1 - self.c_sigma) ** (2 * self.generation))
            < (1.4 + 2 / (self.dim + 1)) * self.chi_n
        )
        self.p_c = (1 - self.c_c) * self.p_c + h_sigma * np.sqrt(
            self.c_c * (2 - self.c_c) * self.mueff
        ) * y_mean

        ys = (selected - old_mean) / self.sigma
        rank_mu = (self.weights[:, None] * ys).T @ ys
        self.cov = (
            (1 - self.c_1 - self.c_mu) * self.cov
            + self.c_1
            * (np.outer(self.p_c, self.p_c) + (1 - h_sigma) * self.c_c * (2 - self.c_c) * self.cov)
            + self.c_mu * rank_mu
        )
        self.sigma = self.sigma * np.exp(
            (self.c_sigma / self.d_sigma) * (np.linalg.norm(self.p_sigma) / self.chi_n - 1)
        )
        self._decompose()
