"""Weighted online ridge regression levels.

Each level keeps the sufficient statistics of

    L(theta) = sum_s w_s^2/2 (x_s^T theta - y_s)^2 + lam/2 |theta|^2
    K(theta) = L(theta) + sum_s w_s^2/2 (x_s^T (theta - theta_hat_{s-1}))^2

with the data-dependent weight ``w_s = min(1, rho / |x_s|_{Sigma_{s-1}^{-1}})``.
All statistics carry an optional leading *level* axis so that several levels
(one per ``rho``) are updated together with a handful of vectorized calls.
Scalar ``rho``/``lam`` give a single level with scalar statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PrecisionState


@dataclass(frozen=True)
class LevelParams:
    rho: float
    lam: float
    dim: int

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ValueError(f"rho must lie in (0, 1], got {self.rho}")
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")


class LevelState:
    """Statistics of one or more weighted ridge levels.

    Attributes
    ----------
    sigma, sigma_bar : PrecisionState
        ``lam I + sum w^2 x x^T`` and ``lam I + 2 sum w^2 x x^T``.
    b, c : ndarray
        ``sum w^2 y x`` and ``sum w^2 (x^T theta_hat_{s-1}) x``.
    q, p : ndarray
        ``sum w^2 y^2`` and ``sum w^2 (x^T theta_hat_{s-1})^2``.
    A, E : ndarray
        Running sums of the one-step-ahead losses and of loss times ``D_s^2``.
    t : ndarray of int
        Observations absorbed by each level.
    """

    def __init__(self, rho, lam, dim: int):
        rho = np.asarray(rho, dtype=float)
        lam = np.asarray(lam, dtype=float)
        rho, lam = np.broadcast_arrays(rho, lam)
        if np.any(rho <= 0) or np.any(rho > 1):
            raise ValueError(f"rho must lie in (0, 1], got {rho}")
        self.rho = rho.copy()
        self.lam = lam.copy()
        self.dim = int(dim)
        self.sigma = PrecisionState(self.lam, self.dim)
        self.sigma_bar = PrecisionState(self.lam, self.dim)
        shape = self.rho.shape
        self.b = np.zeros(shape + (self.dim,))
        self.c = np.zeros(shape + (self.dim,))
        self.q = np.zeros(shape)
        self.p = np.zeros(shape)
        self.A = np.zeros(shape)
        self.E = np.zeros(shape)
        self.theta_hat = np.zeros(shape + (self.dim,))
        self.t = np.zeros(shape, dtype=np.int64)

    @classmethod
    def from_params(cls, params: LevelParams) -> "LevelState":
        return cls(params.rho, params.lam, params.dim)

    @property
    def num_levels(self) -> int:
        return int(self.rho.size)

    def extend(self, rho, lam) -> None:
        """Append fresh (prior-only) levels. Requires a 1-d level axis."""
        if self.rho.ndim != 1:
            raise ValueError("extend requires a LevelState with a level axis")
        new = LevelState(np.atleast_1d(rho), np.atleast_1d(lam), self.dim)
        for name in ("rho", "lam", "b", "c", "q", "p", "A", "E", "theta_hat", "t"):
            setattr(self, name, np.concatenate([getattr(self, name), getattr(new, name)]))
        for name in ("sigma", "sigma_bar"):
            mine, theirs = getattr(self, name), getattr(new, name)
            mine.lam = np.concatenate([mine.lam, theirs.lam])
            mine.matrix = np.concatenate([mine.matrix, theirs.matrix])
            mine.inverse = np.concatenate([mine.inverse, theirs.inverse])
            mine.logdet = np.concatenate([mine.logdet, theirs.logdet])

    def _arm(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected an arm of length {self.dim}, got shape {x.shape}")
        return x

    def compute_weight(self, x) -> np.ndarray:
        """``min(1, rho / |x|_{Sigma^{-1}})``; a zero feature gets weight 1."""
        return self._weight_from_quad(self.sigma.mahalanobis_sq(self._arm(x)))

    def _weight_from_quad(self, quad):
        norm = np.sqrt(quad)
        safe = np.where(norm > 0, norm, 1.0)
        return np.where(norm > 0, np.minimum(1.0, self.rho / safe), 1.0)

    def prediction_loss(self, x, y: float, w) -> np.ndarray:
        """Weighted squared loss of the current estimate on ``(x, y)``."""
        x = self._arm(x)
        return 0.5 * np.asarray(w) ** 2 * (self.theta_hat @ x - y) ** 2

    def observe(self, x, y: float):
        """Absorb one observation on every level.

        Returns ``(D_sq, loss)`` where ``D_sq = |w x|^2_{Sigma_t^{-1}}`` uses the
        updated Gram matrix and ``loss`` is evaluated at the previous estimate.
        """
        x = self._arm(x)
        y = float(y)
        quad = self.sigma.mahalanobis_sq(x)
        w = self._weight_from_quad(quad)
        w2 = w * w
        pred = self.theta_hat @ x
        loss = 0.5 * w2 * (pred - y) ** 2

        self.c = self.c + (w2 * pred)[..., None] * x
        self.p = self.p + w2 * pred * pred
        self.A = self.A + loss

        self.sigma.rank_one_update(x, w2)
        self.sigma_bar.rank_one_update(x, 2.0 * w2)
        self.b = self.b + (w2 * y)[..., None] * x
        self.q = self.q + w2 * y * y

        # |wx|^2 under the posterior Gram, via Sherman-Morrison on the prior one
        pq = w2 * quad
        d_sq = pq / (1.0 + pq)
        self.E = self.E + loss * d_sq
        self.theta_hat = self.sigma.solve(self.b)
        self.t = self.t + 1
        return d_sq, loss

    def point_estimate(self) -> np.ndarray:
        return self.theta_hat

    def min_primary_loss(self) -> np.ndarray:
        return 0.5 * self.q - 0.5 * np.sum(self.b * self.theta_hat, axis=-1)

    def secondary_estimate(self) -> np.ndarray:
        return self.sigma_bar.solve(self.b + self.c)

    def min_secondary_loss(self) -> np.ndarray:
        rhs = self.b + self.c
        return 0.5 * (self.q + self.p) - 0.5 * np.sum(rhs * self.sigma_bar.solve(rhs), axis=-1)
