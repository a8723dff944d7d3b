"""Tuple samplers for integrals over U^{n+2}.

Each sampler turns one DrawBlock into tuples of n+2 points together with the
reciprocal of their sampling density, so that K·1[tuple ⊂ U]/density is an
unbiased sample of ∫_{U^{n+2}} K.
"""

import math
from typing import Tuple

import numpy as np

from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain, unit_ball_volume
from mengercurv.helpers.rng import DrawBlock

Tuples = Tuple[np.ndarray, np.ndarray, np.ndarray]


class UniformTupleSampler:
    """n+2 independent uniform points of U; density |U|^{-(n+2)}."""

    def __init__(self, domain: Domain):
        self.domain = domain
        self.n = domain.dimension

    @property
    def draws(self) -> int:
        return (self.n + 2) * self.domain.draws_per_point()

    def __call__(self, block: DrawBlock) -> Tuples:
        points = np.stack([self.domain.sample(block) for _ in range(self.n + 2)], axis=1)
        inverse_density = np.full(block.count, self.domain.volume ** (self.n + 2))
        return points, inverse_density, np.ones(block.count, dtype=bool)


class StratifiedTupleSampler:
    """
    Base point uniform in U, scale r log-uniform over equal-mass strata of
    [r_min, r_max], the other n+1 points uniform in B(x_0, r).

    Sample i falls in stratum i mod S. Weights use the exact density of the
    mixture over r,

        (1/|U|)·[ρ'^{−n(n+1)} − r_max^{−n(n+1)}] / (n(n+1)·ln(r_max/r_min)·ω_n^{n+1}),

    where ρ' = max(max_i |y_i − x_0|, r_min), so tuples below r_min keep their
    full weight and nothing is truncated. Points leaving U are rejected by
    indicator.
    """

    def __init__(self, domain: Domain, config: SamplerConfig):
        self.domain = domain
        self.n = domain.dimension
        self.strata = config.strata
        self.r_min, self.r_max = config.radii(domain.diameter)
        self.log_ratio = math.log(self.r_max / self.r_min)
        self.ball_volume = unit_ball_volume(self.n)

    @property
    def draws(self) -> int:
        return self.domain.draws_per_point() + 1 + (self.n + 1) ** 2

    def radii(self, block: DrawBlock) -> np.ndarray:
        stratum = block.indices % self.strata
        position = (stratum + block.take(1)[:, 0]) / self.strata
        return self.r_min * np.exp(position * self.log_ratio)

    def inverse_density(self, base: np.ndarray, others: np.ndarray) -> np.ndarray:
        k = self.n * (self.n + 1)
        rho = np.max(np.linalg.norm(others - base[:, None, :], axis=-1), axis=1)
        rho = np.maximum(rho, self.r_min)
        density = (
            (rho ** (-k) - self.r_max ** (-k))
            / (k * self.log_ratio * self.ball_volume ** (self.n + 1))
            / self.domain.volume
        )
        with np.errstate(divide="ignore"):
            return np.where(density > 0.0, 1.0 / density, 0.0)

    def __call__(self, block: DrawBlock) -> Tuples:
        base = self.domain.sample(block)
        r = self.radii(block)
        others = np.stack(
            [base + block.ball(self.n, r) for _ in range(self.n + 1)], axis=1
        )
        inside = np.all(self.domain.contains(others), axis=1)
        points = np.concatenate([base[:, None, :], others], axis=1)
        return points, self.inverse_density(base, others), inside


def build_sampler(domain: Domain, config: SamplerConfig):
    if config.mode == "uniform":
        return UniformTupleSampler(domain)
    return StratifiedTupleSampler(domain, config)
