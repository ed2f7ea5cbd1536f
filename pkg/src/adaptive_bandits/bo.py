"""Black-box benchmarks lifted to linear bandits through random Fourier features."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist

from .environments import Instance, NoiseModel


def beale(x):
    x1, x2 = x[..., 0], x[..., 1]
    return ((1.5 - x1 + x1 * x2) ** 2 + (2.25 - x1 + x1 * x2**2) ** 2
            + (2.625 - x1 + x1 * x2**3) ** 2)


def branin(x):
    x1, x2 = x[..., 0], x[..., 1]
    b = 5.1 / (4 * math.pi**2)
    c = 5 / math.pi
    t = 1 / (8 * math.pi)
    return (x2 - b * x1**2 + c * x1 - 6) ** 2 + 10 * (1 - t) * np.cos(x1) + 10


def camel3(x):
    x1, x2 = x[..., 0], x[..., 1]
    return 2 * x1**2 - 1.05 * x1**4 + x1**6 / 6 + x1 * x2 + x2**2


def zakharov(x):
    i = np.arange(1, x.shape[-1] + 1)
    s = np.sum(0.5 * i * x, axis=-1)
    return np.sum(x**2, axis=-1) + s**2 + s**4


# name -> (function, input dimension, per-coordinate bounds)
BENCHMARKS = {
    "beale": (beale, 2, [(-4.5, 4.5)] * 2),
    "branin": (branin, 2, [(-5.0, 10.0), (0.0, 15.0)]),
    "camel3": (camel3, 2, [(-5.0, 5.0)] * 2),
    "zakharov4": (zakharov, 4, [(-5.0, 10.0)] * 4),
}


def benchmark_eval(name: str, point) -> float:
    try:
        fn, dim, _ = BENCHMARKS[name]
    except KeyError:
        raise ValueError(f"unknown benchmark {name!r}; expected one of {sorted(BENCHMARKS)}") from None
    point = np.asarray(point, dtype=float)
    if point.shape[-1] != dim:
        raise ValueError(f"{name} takes {dim}-dimensional points, got shape {point.shape}")
    out = fn(point)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class RffConfig:
    """Random Fourier features for the Gaussian kernel with bandwidth ``bandwidth``.

    Features are scaled by ``sqrt(1/D)`` so that ``|phi(x)| <= 1``; inner
    products therefore estimate half the kernel value.
    """

    frequencies: np.ndarray
    phases: np.ndarray
    bandwidth: float
    seed: Optional[int] = None

    @classmethod
    def sample(cls, input_dim: int, feature_dim: int, bandwidth: float, seed: int) -> "RffConfig":
        if bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        rng = np.random.Generator(np.random.Philox(key=[int(seed), 2]))
        freqs = rng.standard_normal((feature_dim, input_dim)) / bandwidth
        phases = rng.uniform(0.0, 2 * math.pi, size=feature_dim)
        return cls(freqs, phases, float(bandwidth), seed)

    @property
    def input_dim(self) -> int:
        return self.frequencies.shape[1]

    @property
    def feature_dim(self) -> int:
        return self.frequencies.shape[0]


def rff_map(config: RffConfig, point) -> np.ndarray:
    point = np.asarray(point, dtype=float)
    if point.shape[-1] != config.input_dim:
        raise ValueError(f"expected points of dimension {config.input_dim}, got shape {point.shape}")
    return np.sqrt(1.0 / config.feature_dim) * np.cos(point @ config.frequencies.T + config.phases)


def median_bandwidth(points) -> float:
    d = pdist(np.asarray(points, dtype=float))
    med = float(np.median(d)) if d.size else 1.0
    return med if med > 0 else 1.0


def make_bo_instance(name: str, num_arms: int, seed: int, feature_dim: int = 128,
                     bandwidth: Optional[float] = None,
                     noise: NoiseModel = NoiseModel()) -> Instance:
    """Arm pool of RFF-lifted uniform domain points; mean reward is ``-f`` rescaled to ``[-1, 1]``."""
    if num_arms < 1:
        raise ValueError("num_arms must be positive")
    fn, dim, bounds = BENCHMARKS[name]
    rng = np.random.Generator(np.random.Philox(key=[int(seed), 0]))
    lo, hi = np.array(bounds).T
    points = rng.uniform(lo, hi, size=(num_arms, dim))
    if bandwidth is None:
        bandwidth = median_bandwidth(points)
    rff = RffConfig.sample(dim, feature_dim, bandwidth, seed)
    neg = -fn(points)
    span = neg.max() - neg.min()
    means = 2.0 * (neg - neg.min()) / span - 1.0 if span > 0 else np.zeros(num_arms)
    return Instance(arms=rff_map(rff, points), means=means, noise=noise, kind=f"bo:{name}",
                    seed=seed, info={"benchmark": name, "bandwidth": bandwidth,
                                     "feature_dim": feature_dim, "points": points.tolist()})
