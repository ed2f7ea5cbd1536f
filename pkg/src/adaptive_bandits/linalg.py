"""Positive-definite Gram matrices with incrementally maintained inverses.

A :class:`PrecisionState` may hold a single ``d x d`` matrix or a stack of
them (leading batch axis), which lets several weighted-ridge levels share one
set of vectorized updates.
"""

from __future__ import annotations

import numpy as np

RESYMMETRIZE_EVERY = 1024


class PrecisionState:
    """``lam * I + sum_s c_s v_s v_s^T`` together with its inverse and log-det.

    Parameters
    ----------
    lam : float or array_like
        Ridge parameter. An array of shape ``(B,)`` creates a batch of ``B``
        independent matrices.
    dim : int
        Matrix dimension ``d``.
    """

    def __init__(self, lam, dim: int):
        lam = np.asarray(lam, dtype=float)
        if dim < 1 or int(dim) != dim:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        if lam.ndim > 1 or np.any(~np.isfinite(lam)) or np.any(lam <= 0):
            raise ValueError(f"lambda must be positive, got {lam!r}")
        self.dim = int(dim)
        self.lam = lam
        eye = np.eye(self.dim)
        self.matrix = lam[..., None, None] * eye
        self.inverse = (1.0 / lam)[..., None, None] * eye
        self.logdet = self.dim * np.log(lam)
        self.n_updates = 0

    @property
    def batch_shape(self) -> tuple:
        return self.lam.shape

    def copy(self) -> "PrecisionState":
        new = object.__new__(PrecisionState)
        new.dim = self.dim
        new.lam = self.lam.copy()
        new.matrix = self.matrix.copy()
        new.inverse = self.inverse.copy()
        new.logdet = np.array(self.logdet, dtype=float, copy=True)
        new.n_updates = self.n_updates
        return new

    def _check_vec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape[-1:] != (self.dim,):
            raise ValueError(f"expected vector(s) of length {self.dim}, got shape {v.shape}")
        return v

    def rank_one_update(self, v, c=1.0) -> None:
        """In place: ``matrix += c v v^T`` (Sherman-Morrison on the inverse).

        ``v`` is shared across the batch or given per batch entry; ``c`` is a
        scalar or has the batch shape.
        """
        v = self._check_vec(v)
        c = np.asarray(c, dtype=float)
        if np.any(c < 0):
            raise ValueError("scale c must be nonnegative")
        u = self.inverse @ v[..., :, None] if v.ndim > 1 else self.inverse @ v
        if v.ndim > 1:
            u = u[..., 0]
        quad = np.einsum("...i,...i->...", v, u)
        denom = 1.0 + c * quad
        self.inverse = self.inverse - (c / denom)[..., None, None] * (u[..., :, None] * u[..., None, :])
        self.matrix = self.matrix + c[..., None, None] * (v[..., :, None] * v[..., None, :])
        self.logdet = self.logdet + np.log(denom)
        self.n_updates += 1
        if self.n_updates % RESYMMETRIZE_EVERY == 0:
            self.inverse = 0.5 * (self.inverse + np.swapaxes(self.inverse, -1, -2))

    def mahalanobis_sq(self, x) -> np.ndarray:
        """``x^T inverse x``. ``x`` may carry extra leading axes (e.g. an arm set).

        For a single matrix and ``x`` of shape ``(K, d)`` the result has shape
        ``(K,)``; for a batch of ``B`` matrices it has shape ``(B, K)``.
        """
        x = self._check_vec(x)
        if self.inverse.ndim > 2 and x.ndim == 1:
            return np.maximum(np.einsum("i,bij,j->b", x, self.inverse, x), 0.0)
        return np.maximum(np.sum((x @ self.inverse) * x, axis=-1), 0.0)

    def solve(self, rhs) -> np.ndarray:
        """Return ``inverse @ rhs`` (rhs of shape ``(..., d)`` matching the batch)."""
        rhs = self._check_vec(rhs)
        return np.einsum("...ij,...j->...i", self.inverse, rhs)


def init_precision(lam, dim: int) -> PrecisionState:
    return PrecisionState(lam, dim)
