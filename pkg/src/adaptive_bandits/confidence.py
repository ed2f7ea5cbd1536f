"""Confidence widths for linear bandits.

Quadratic sets of the form ``1/2 |theta - center|^2_M <= gamma`` are stored by
their ``gamma`` (or ``beta``); callers turn them into a UCB width with
``sqrt(2 * gamma)``. The SNCS and OFUL-C radii are already widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .estimation import LevelState
from .linalg import PrecisionState


@dataclass(frozen=True)
class NoiseSpec:
    """What the learner is told about the problem.

    ``S`` bounds ``|theta*|``, ``sigma0_sq`` is the specified sub-Gaussian
    parameter, ``R`` bounds ``|eta_t|`` and ``delta`` is the failure rate.
    ``delta = 1`` is accepted and switches off the confidence terms.
    """

    S: float = 1.0
    sigma0_sq: float = 1.0
    R: float = 1.0
    delta: float = 0.1

    def __post_init__(self):
        _check_delta(self.delta)
        if not (self.S > 0 and self.sigma0_sq > 0 and self.R > 0):
            raise ValueError(f"S, sigma0_sq and R must be positive: {self}")


def _check_delta(delta) -> None:
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")


@dataclass
class WidthState:
    """Per-level bookkeeping of the fully adaptive radius."""

    beta: np.ndarray
    beta_bar: np.ndarray
    beta_zero: np.ndarray
    k: np.ndarray
    xi: np.ndarray

    @classmethod
    def initial(cls, state: LevelState, spec: NoiseSpec) -> "WidthState":
        beta_zero = 0.5 * state.lam * spec.S**2
        return cls(
            beta=beta_zero.copy(),
            beta_bar=beta_zero.copy(),
            beta_zero=beta_zero,
            k=np.ones(beta_zero.shape, dtype=np.int64),
            xi=np.zeros(beta_zero.shape),
        )

    def extend(self, other: "WidthState") -> "WidthState":
        return WidthState(*(np.concatenate([getattr(self, f), getattr(other, f)])
                            for f in ("beta", "beta_bar", "beta_zero", "k", "xi")))


def semi_gamma(state: LevelState, spec: NoiseSpec) -> np.ndarray:
    """``lam/2 S^2 + sum_s loss_s D_s^2 + sigma0^2 ln(1/delta)``."""
    return 0.5 * state.lam * spec.S**2 + state.E + spec.sigma0_sq * math.log(1.0 / spec.delta)


def practical_gamma_level(state: LevelState, spec: NoiseSpec, L) -> np.ndarray:
    """Extra per-level radius ``lam_l/2 S^2 + E_l + R^2 ln(2L/delta)``.

    ``L`` may be an array (one effective level count per level); the anytime
    schedule passes ``delta / delta_l`` here.
    """
    return 0.5 * state.lam * spec.S**2 + state.E + spec.R**2 * np.log(2.0 * np.asarray(L) / spec.delta)


def k_index(beta_bar_prev, beta_zero):
    """``max(1, ceil(log2(sqrt(beta_bar_prev / beta_zero))))``."""
    beta_bar_prev = np.asarray(beta_bar_prev, dtype=float)
    beta_zero = np.asarray(beta_zero, dtype=float)
    if np.any(beta_zero <= 0):
        raise ValueError("beta_zero must be positive")
    ratio = beta_bar_prev / beta_zero
    # running max starts at beta_zero; allow rounding noise only
    if np.any(ratio < 1.0 - 1e-12):
        raise ValueError("beta_bar_prev must be at least beta_zero")
    k = np.maximum(1, np.ceil(0.5 * np.log2(np.maximum(ratio, 1.0)))).astype(np.int64)
    return int(k) if k.ndim == 0 else k


def xi_value(t, k, L, delta):
    """``ln(sqrt(pi (t+1)) * 6.8 L k ln^2(1+k) / delta)``."""
    _check_delta(delta)
    t = np.asarray(t, dtype=float)
    k = np.asarray(k, dtype=float)
    val = np.log(np.sqrt(np.pi * (t + 1.0)) * 6.8 * np.asarray(L, dtype=float)
                 * k * np.log1p(k) ** 2 / delta)
    return float(val) if val.ndim == 0 else val


def full_beta(state: LevelState, width: WidthState, spec: NoiseSpec, L) -> WidthState:
    """Fully adaptive radius after ``state`` absorbed its latest observation.

    ``width.beta_bar`` must still hold the running max up to the previous step.
    """
    rho, lam = state.rho, state.lam
    k = np.asarray(k_index(width.beta_bar, width.beta_zero))
    xi = np.asarray(xi_value(state.t, k, L, spec.delta))
    log_term = spec.R**2 * np.log(2.0 * np.asarray(L, dtype=float) / spec.delta)
    beta = (
        state.min_primary_loss()
        - state.min_secondary_loss()
        + 0.5 * lam * spec.S**2
        + state.E
        + np.sqrt(8.0 * rho**2 * width.beta_bar * (state.A + log_term) * xi)
        + 2.0**k * rho * spec.R * np.sqrt(2.0 * width.beta_zero) * xi
    )
    return replace(width, beta=beta, beta_bar=np.maximum(width.beta_bar, beta), k=k, xi=xi)


def sncs_radius(logdet, spec: NoiseSpec, lam: float, d: int) -> float:
    """Self-normalized radius ``sqrt(lam) S + sqrt(sigma0^2 ln(|V|/|lam I|) + 2 sigma0^2 ln(1/delta))``."""
    info = max(float(logdet) - d * math.log(lam), 0.0)
    return math.sqrt(lam) * spec.S + math.sqrt(
        spec.sigma0_sq * info + 2.0 * spec.sigma0_sq * math.log(1.0 / spec.delta))


def oful_c_radius(logdet, spec: NoiseSpec, lam: float, d: int) -> float:
    """Improved radius ``sqrt(lam S^2 + sigma0^2 ln(|V|/|lam I|) + 2 sigma0^2 ln(1/delta))``."""
    info = max(float(logdet) - d * math.log(lam), 0.0)
    return math.sqrt(lam * spec.S**2 + spec.sigma0_sq * info
                     + 2.0 * spec.sigma0_sq * math.log(1.0 / spec.delta))


def ucb(center, width, metric: PrecisionState, x) -> np.ndarray:
    """``<x, center> + width * |x|_{metric^{-1}}``.

    With a level axis on ``center``/``width``/``metric`` and an arm matrix ``x``
    of shape ``(K, d)`` the result has shape ``(levels, K)``.
    """
    center = np.asarray(center, dtype=float)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != center.shape[-1]:
        raise ValueError(f"arm length {x.shape[-1]} does not match dimension {center.shape[-1]}")
    width = np.asarray(width, dtype=float)
    mean = center @ x.T if x.ndim == 2 else center @ x
    if x.ndim == 2 and center.ndim == 2:
        width = width[..., None]
    return mean + width * np.sqrt(metric.mahalanobis_sq(x))
