"""Bandit instances: ground truth, arm pools and reward noise."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

NOISE_KINDS = ("gaussian", "two_point", "uniform")
ARM_NORM_TOL = 1e-9


class InstanceError(ValueError):
    """Raised when an instance recipe cannot be realized."""


@dataclass(frozen=True)
class NoiseModel:
    """Zero-mean reward noise.

    ``gaussian``: N(0, scale^2). ``two_point``: +-scale with probability 1/2.
    ``uniform``: Uniform[-scale, scale].
    """

    kind: str = "gaussian"
    scale: float = 0.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; expected one of {NOISE_KINDS}")
        if self.scale < 0:
            raise ValueError("noise scale must be nonnegative")

    @property
    def variance(self) -> float:
        if self.kind == "uniform":
            return self.scale**2 / 3.0
        return self.scale**2

    @property
    def bound(self) -> float:
        return math.inf if self.kind == "gaussian" and self.scale > 0 else self.scale

    def sample(self, rng: np.random.Generator, size=None):
        if self.kind == "gaussian":
            return self.scale * rng.standard_normal(size)
        if self.kind == "two_point":
            signs = 2.0 * rng.integers(0, 2, size=size) - 1.0
            return self.scale * signs
        return rng.uniform(-self.scale, self.scale, size=size)


def sample_noise(model: NoiseModel, rng: np.random.Generator) -> float:
    return float(model.sample(rng))


@dataclass
class Instance:
    """A fixed arm pool with known mean rewards.

    Linear instances carry ``theta_star`` and ``means = arms @ theta_star``;
    benchmark (BO) instances carry the means directly.
    """

    arms: np.ndarray
    means: np.ndarray
    noise: NoiseModel
    theta_star: Optional[np.ndarray] = None
    kind: str = "custom"
    seed: Optional[int] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.arms = np.atleast_2d(np.asarray(self.arms, dtype=float))
        self.means = np.asarray(self.means, dtype=float).reshape(-1)
        if self.arms.shape[0] == 0:
            raise InstanceError("arm pool is empty")
        if self.means.shape[0] != self.arms.shape[0]:
            raise InstanceError("one mean reward per arm is required")
        if np.any(np.linalg.norm(self.arms, axis=1) > 1 + ARM_NORM_TOL):
            raise InstanceError("arms must satisfy |x| <= 1")
        if self.theta_star is not None:
            self.theta_star = np.asarray(self.theta_star, dtype=float)

    @classmethod
    def linear(cls, theta_star, arms, noise: NoiseModel, **kw) -> "Instance":
        arms = np.atleast_2d(np.asarray(arms, dtype=float))
        theta_star = np.asarray(theta_star, dtype=float)
        return cls(arms=arms, means=arms @ theta_star, noise=noise, theta_star=theta_star, **kw)

    @property
    def dim(self) -> int:
        return self.arms.shape[1]

    @property
    def num_arms(self) -> int:
        return self.arms.shape[0]

    @property
    def best_index(self) -> int:
        return int(np.argmax(self.means))

    @property
    def gaps(self) -> np.ndarray:
        return self.means.max() - self.means

    @property
    def min_gap(self) -> float:
        g = self.gaps
        positive = g[g > 0]
        return float(positive.min()) if positive.size else 0.0

    @property
    def max_gap(self) -> float:
        return float(self.gaps.max())

    @property
    def reward_bound(self) -> float:
        """``B = max_x |<x, theta*>|``."""
        return float(np.abs(self.means).max())

    def pull(self, arm_index: int, rng: np.random.Generator):
        """Return ``(reward, instantaneous regret)`` for one pull."""
        if not 0 <= arm_index < self.num_arms:
            raise IndexError(f"arm index {arm_index} out of range [0, {self.num_arms})")
        mean = self.means[arm_index]
        return float(mean + self.noise.sample(rng)), float(self.means.max() - mean)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "noise": {"kind": self.noise.kind, "scale": self.noise.scale},
            "theta_star": None if self.theta_star is None else self.theta_star.tolist(),
            "arms": self.arms.tolist(),
            "means": self.means.tolist(),
            "info": self.info,
            "metadata": {
                "best_index": self.best_index,
                "min_gap": self.min_gap,
                "max_gap": self.max_gap,
                "B": self.reward_bound,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        return cls(
            arms=np.array(data["arms"], dtype=float),
            means=np.array(data["means"], dtype=float),
            noise=NoiseModel(**data["noise"]),
            theta_star=None if data.get("theta_star") is None else np.array(data["theta_star"]),
            kind=data.get("kind", "custom"),
            seed=data.get("seed"),
            info=data.get("info", {}),
        )

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "Instance":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def instance_rng(seed: int) -> np.random.Generator:
    """Counter-based (Philox) stream used for instance generation."""
    return np.random.Generator(np.random.Philox(key=[int(seed), 0]))


def _unit_rows(rng, n, d):
    g = rng.standard_normal((n, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def make_sphere_instance(d: int, S: float, num_arms: int, seed: int,
                         noise: NoiseModel = NoiseModel()) -> Instance:
    """Gaussian draws normalized: ``|theta*| = S`` and unit-norm arms."""
    if d < 1 or num_arms < 1:
        raise InstanceError("d and num_arms must be positive")
    rng = instance_rng(seed)
    theta = S * _unit_rows(rng, 1, d)[0]
    arms = _unit_rows(rng, num_arms, d)
    return Instance.linear(theta, arms, noise, kind="sphere", seed=seed,
                           info={"d": d, "S": S, "num_arms": num_arms})


def hard_gap(d: int, n: int, sigma0: float) -> float:
    return 4.0 * math.sqrt(sigma0**2 * d**2 / n)


def make_hard_gap_instance(d: int, n: int, sigma0: float, S: float, num_arms: int, seed: int,
                           noise: NoiseModel = NoiseModel()) -> Instance:
    """One best arm ``e_1`` and ``num_arms - 1`` arms with gap exactly ``4 sqrt(sigma0^2 d^2 / n)``.

    The best arm is placed at a random position so index tie-breaking does not
    hand it to the learner for free.
    """
    gap = hard_gap(d, n, sigma0)
    if gap >= S:
        raise InstanceError(f"gap {gap:.4g} must be smaller than S={S}")
    if d < 2 or num_arms < 1:
        raise InstanceError("need d >= 2 and at least one arm")
    rng = instance_rng(seed)
    theta = np.zeros(d)
    theta[0] = S
    first = 1.0 - gap / S
    rest = math.sqrt(1.0 - first**2) * _unit_rows(rng, num_arms - 1, d - 1)
    sub = np.column_stack([np.full(num_arms - 1, first), rest])
    best_pos = int(rng.integers(0, num_arms))
    arms = np.insert(sub, best_pos, theta / S, axis=0)
    return Instance.linear(theta, arms, noise, kind="hard_gap", seed=seed,
                           info={"d": d, "n": n, "sigma0": sigma0, "S": S,
                                 "num_arms": num_arms, "gap": gap})


def make_easy_sphere_instance(seed: int, noise: NoiseModel = NoiseModel("gaussian", 1.0),
                              d: int = 20, S: float = 15.0, num_arms: int = 800) -> Instance:
    inst = make_sphere_instance(d, S, num_arms, seed, noise)
    inst.kind = "easy_sphere"
    return inst
