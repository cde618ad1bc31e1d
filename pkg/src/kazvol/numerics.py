"""Shared scalar utilities: ball volumes, Wallis integrals, tolerances, seeded sampling.

All Monte Carlo code in the package draws from :class:`RandomStream`, a
counter-based descriptor built on numpy's Philox generator.  Two streams with
the same (seed, stream_id) always produce identical samples, regardless of how
many other streams have been consumed in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "RandomStream",
    "kappa",
    "wallis",
    "sphere_sample",
    "DEFAULT_TOLERANCE",
]


@dataclass(frozen=True)
class Tolerance:
    """Numeric tolerance policy shared by rank decisions and face coincidence tests."""

    rank_eps: float = 1e-9
    geom_eps: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("rank_eps", "geom_eps"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {value!r}")


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class RandomStream:
    """Immutable descriptor of a reproducible random substream."""

    seed: int = 42
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % (1 << 64), self.stream_id % (1 << 64)], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, index: int) -> "RandomStream":
        # Injective on the index ranges used here (indices < 2**20 per parent).
        return RandomStream(self.seed, (self.stream_id << 21) ^ (index + 1))


def kappa(ell: int) -> float:
    """Lebesgue volume of the unit ball of dimension ``ell``."""
    if ell < 0:
        raise ValueError("dimension must be non-negative")
    return math.pi ** (ell / 2.0) / math.gamma(1.0 + ell / 2.0)


def wallis(n: int) -> float:
    """The integral of sin(theta)**n over [0, pi]."""
    if n < 0:
        raise ValueError("order must be non-negative")
    return math.sqrt(math.pi) * math.gamma((n + 1) / 2.0) / math.gamma((n + 2) / 2.0)


def sphere_sample(dim: int, stream: RandomStream, count: int) -> np.ndarray:
    """Uniform points on the unit sphere of R^dim, shape (count, dim).

    Gaussian directions normalized to unit length; deterministic in
    (seed, stream_id).  For dim == 1 the result takes values in {-1, +1}.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    gen = stream.generator()
    x = gen.standard_normal((count, dim))
    norms = np.linalg.norm(x, axis=1)
    # Resampling a Gaussian at exactly 0 has probability 0; guard anyway.
    bad = norms < 1e-300
    if bad.any():
        x[bad] = 1.0
        norms = np.linalg.norm(x, axis=1)
    return x / norms[:, None]
