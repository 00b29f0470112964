"""Synthetic problem generators for the benchmark protocols."""

from dataclasses import dataclass

import numpy as np

from .errors import BadSpec, ZeroColumn
from .model import Problem

# Splittable-stream PRNG: one child SeedSequence per drawn object, so that
# changing m or n never perturbs the draws of the other objects.
PRNG_NAME = "numpy-PCG64/SeedSequence-spawn"


@dataclass
class GenSpec:
    family: str  # "bvls" or "nnls"
    m: int
    n: int
    box_halfwidth: float = 1.0  # bvls only
    sparsity: float = 0.05  # nnls density of the planted solution
    noise_std: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.family not in ("bvls", "nnls"):
            raise BadSpec(f"unknown family {self.family!r}")
        if self.m < 1 or self.n < 1:
            raise BadSpec("m and n must be >= 1")
        if self.family == "bvls" and self.box_halfwidth <= 0:
            raise BadSpec("box_halfwidth must be positive")
        if self.family == "nnls":
            if not 0 < self.sparsity <= 1:
                raise BadSpec("sparsity must be in (0, 1]")
            if round(self.sparsity * self.n) < 1:
                raise BadSpec("sparsity * n must round to at least 1")


def _streams(seed, k):
    return [np.random.default_rng(c)
            for c in np.random.SeedSequence(seed).spawn(k)]


def gen_bvls(spec):
    """Gaussian BVLS instance: a_ij ~ N(0,1), y_i ~ N(0,1), box b*[-1, 1]."""
    if spec.family != "bvls":
        raise BadSpec("gen_bvls needs a bvls spec")
    rng_a, rng_y = _streams(spec.seed, 2)
    a = rng_a.standard_normal((spec.m, spec.n))
    y = rng_y.standard_normal(spec.m)
    b = spec.box_halfwidth
    return Problem(a, y, -b * np.ones(spec.n), b * np.ones(spec.n))


def gen_nnls(spec):
    """Half-normal NNLS instance with a planted sparse nonnegative solution.

    a_ij = |N(0,1)|, the planted x has round(sparsity*n) nonzeros drawn
    half-normal at uniform positions, and y = A x + N(0, noise_std^2).
    """
    if spec.family != "nnls":
        raise BadSpec("gen_nnls needs an nnls spec")
    rng_a, rng_x, rng_e = _streams(spec.seed, 3)
    a = np.abs(rng_a.standard_normal((spec.m, spec.n)))
    if np.any(np.linalg.norm(a, axis=0) == 0.0):
        raise ZeroColumn("generated matrix has a zero column")
    k = int(round(spec.sparsity * spec.n))
    xbar = np.zeros(spec.n)
    support = rng_x.choice(spec.n, size=k, replace=False)
    xbar[support] = np.abs(rng_x.standard_normal(k))
    eps = spec.noise_std * rng_e.standard_normal(spec.m)
    y = a @ xbar + eps
    return Problem(a, y, np.zeros(spec.n), np.full(spec.n, np.inf))


def generate(spec):
    return gen_bvls(spec) if spec.family == "bvls" else gen_nnls(spec)
