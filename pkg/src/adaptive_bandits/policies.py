"""Optimistic linear bandit policies: OFUL, OFUL-C, LOSAN and LOFAV."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .confidence import (
    NoiseSpec,
    WidthState,
    full_beta,
    oful_c_radius,
    practical_gamma_level,
    semi_gamma,
    sncs_radius,
    ucb,
)
from .estimation import LevelState
from .linalg import PrecisionState

KINDS = ("OFUL", "OFUL_C", "LOSAN", "LOFAV")
LOFAV_MODES = ("practical", "plain", "anytime")
ARM_NORM_TOL = 1e-9


def num_levels(n: int, d: int) -> int:
    """Number of LOFAV levels for horizon ``n``: ``max(1, ceil(log2(n/d)/2))``."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    return max(1, math.ceil(0.5 * math.log2(n / d)))


def anytime_schedule(t: int, d: int, delta: float):
    """Levels alive at step ``t`` and their failure rates ``delta * 6 / (pi^2 l^2)``."""
    n_levels = max(1, math.ceil(0.5 * math.log2(max(2, t) / d)))
    ell = np.arange(1, n_levels + 1)
    return n_levels, delta * 6.0 / (math.pi**2 * ell**2)


@dataclass(frozen=True)
class PolicyConfig:
    kind: str
    spec: NoiseSpec
    dim: int
    horizon: Optional[int] = None
    lambda_override: Optional[float] = None
    lofav_mode: str = "practical"
    levels: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}; expected one of {KINDS}")
        if self.lofav_mode not in LOFAV_MODES:
            raise ValueError(f"unknown LOFAV mode {self.lofav_mode!r}")
        if (self.kind == "LOFAV" and self.lofav_mode != "anytime"
                and self.horizon is None and self.levels is None):
            raise ValueError("LOFAV with a fixed number of levels needs a horizon")

    @property
    def lam(self) -> float:
        if self.lambda_override is not None:
            return float(self.lambda_override)
        return self.spec.sigma0_sq / self.spec.S**2


class Policy:
    """Common arm-selection loop: maximize a per-arm upper confidence bound."""

    name = "policy"

    def __init__(self, config: PolicyConfig):
        self.config = config
        self.spec = config.spec
        self.dim = config.dim
        self.t = 0

    def ucb_values(self, arms: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def select_arm(self, arms):
        """Return ``(index, max_ucb)``; ties go to the lowest index."""
        arms = np.asarray(arms, dtype=float)
        if arms.ndim != 2 or arms.shape[0] == 0:
            raise ValueError("arm set must be a nonempty (K, d) array")
        if arms.shape[1] != self.dim:
            raise ValueError(f"arms have dimension {arms.shape[1]}, expected {self.dim}")
        values = self.ucb_values(arms)
        idx = int(np.argmax(values))
        return idx, float(values[idx])

    def update(self, x, y: float) -> None:
        raise NotImplementedError

    def _check_arm(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected an arm of length {self.dim}, got shape {x.shape}")
        return x


class OFUL(Policy):
    """Unweighted ridge regression with the self-normalized confidence set."""

    name = "OFUL"
    radius_fn = staticmethod(sncs_radius)

    def __init__(self, config: PolicyConfig):
        super().__init__(config)
        self.lam = config.lam
        self.gram = PrecisionState(self.lam, self.dim)
        self.b = np.zeros(self.dim)
        self.theta_hat = np.zeros(self.dim)

    @property
    def radius(self) -> float:
        return self.radius_fn(self.gram.logdet, self.spec, self.lam, self.dim)

    def ucb_values(self, arms):
        return ucb(self.theta_hat, self.radius, self.gram, arms)

    def update(self, x, y):
        x = self._check_arm(x)
        self.gram.rank_one_update(x, 1.0)
        self.b = self.b + y * x
        self.theta_hat = self.gram.solve(self.b)
        self.t += 1


class OFULC(OFUL):
    name = "OFUL_C"
    radius_fn = staticmethod(oful_c_radius)


class LOSAN(Policy):
    """Weighted ridge regression (``rho = 1``) with the semi-adaptive set."""

    name = "LOSAN"

    def __init__(self, config: PolicyConfig):
        super().__init__(config)
        self.level = LevelState(1.0, config.lam, self.dim)
        self.gamma = float(semi_gamma(self.level, self.spec))

    def ucb_values(self, arms):
        return ucb(self.level.theta_hat, math.sqrt(2.0 * self.gamma), self.level.sigma, arms)

    def update(self, x, y):
        self.level.observe(self._check_arm(x), y)
        self.gamma = float(semi_gamma(self.level, self.spec))
        self.t += 1


class LOFAV(Policy):
    """Intersection of ``L`` fully adaptive weighted-ridge sets.

    ``practical`` mode also intersects with the ``L`` semi-adaptive style sets
    built from the same levels; ``anytime`` spawns levels as ``t`` grows and
    splits ``delta`` as ``delta_l = 6 delta / (pi^2 l^2)``.
    """

    name = "LOFAV"

    def __init__(self, config: PolicyConfig):
        super().__init__(config)
        self.mode = config.lofav_mode
        spec = self.spec
        if self.mode == "anytime":
            n_levels, _ = anytime_schedule(1, self.dim, spec.delta)
        else:
            n_levels = config.levels or num_levels(config.horizon, self.dim)
        self.levels = LevelState(np.empty(0), np.empty(0), self.dim)
        self.width = WidthState(*(np.empty(0) for _ in range(5)))
        self.width.k = self.width.k.astype(np.int64)
        self.L_eff = np.empty(0)
        self._spawn(n_levels)

    @property
    def num_levels(self) -> int:
        return self.levels.num_levels

    def _spawn(self, n_levels: int) -> None:
        start = self.levels.num_levels
        if n_levels <= start:
            return
        ell = np.arange(start + 1, n_levels + 1, dtype=float)
        rho = 2.0**-ell
        lam = (self.spec.R**2 / self.spec.S**2) * rho**2
        self.levels.extend(rho, lam)
        fresh = LevelState(rho, lam, self.dim)
        self.width = self.width.extend(WidthState.initial(fresh, self.spec))
        if self.mode == "anytime":
            # the fixed-L formulas only use L/delta; delta_l = delta / L_eff
            self.L_eff = math.pi**2 * np.arange(1, n_levels + 1) ** 2 / 6.0
        else:
            self.L_eff = np.full(n_levels, float(n_levels))
        self._refresh_centers()

    def _refresh_centers(self) -> None:
        self.theta_bar = self.levels.secondary_estimate()
        self.gamma = practical_gamma_level(self.levels, self.spec, self.L_eff)

    def ucb_values(self, arms, mode: Optional[str] = None):
        mode = mode or self.mode
        beta_width = np.sqrt(2.0 * np.maximum(self.width.beta, 0.0))
        values = ucb(self.theta_bar, beta_width, self.levels.sigma_bar, arms).min(axis=0)
        if mode != "plain":
            extra = ucb(self.levels.theta_hat, np.sqrt(2.0 * self.gamma), self.levels.sigma, arms)
            values = np.minimum(values, extra.min(axis=0))
        return values

    def update(self, x, y):
        self.levels.observe(self._check_arm(x), y)
        self.width = full_beta(self.levels, self.width, self.spec, self.L_eff)
        self._refresh_centers()
        self.t += 1
        if self.mode == "anytime":
            self._spawn(anytime_schedule(self.t + 1, self.dim, self.spec.delta)[0])


POLICY_CLASSES = {"OFUL": OFUL, "OFUL_C": OFULC, "LOSAN": LOSAN, "LOFAV": LOFAV}


def make_policy(config: PolicyConfig) -> Policy:
    return POLICY_CLASSES[config.kind](config)
