"""Central finite-difference stencils."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _central_weights(order, accuracy):
    # Solve the moment conditions exactly in rationals.
    p = (2 * ((order + 1) // 2) - 1 + accuracy) // 2
    offsets = list(range(-p, p + 1))
    m = len(offsets)
    rows = [[Fraction(o) ** i for o in offsets] + [Fraction(1 if i == order else 0) * _fact(order)]
            for i in range(m)]
    for col in range(m):
        piv = next(r for r in range(col, m) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(m):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(offsets), tuple(row[-1] for row in rows)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass(frozen=True)
class FDStencil:
    """Central difference for the ``order``-th derivative.

    The truncation error is O(step**accuracy).
    """

    order: int = 1
    accuracy: int = 4
    step: float = 1e-2

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if self.accuracy < 2 or self.accuracy % 2:
            raise ValueError("accuracy must be an even positive integer")
        if not self.step > 0:
            raise ValueError("step must be positive")

    @property
    def offsets(self):
        return np.array(_central_weights(self.order, self.accuracy)[0], dtype=float)

    @property
    def coefficients(self):
        return np.array([float(c) for c in _central_weights(self.order, self.accuracy)[1]])

    @property
    def exact_coefficients(self):
        return _central_weights(self.order, self.accuracy)[1]

    def with_step(self, step):
        return FDStencil(self.order, self.accuracy, step)


def fd_apply(sampler, point, axis, stencil):
    """Finite-difference derivative of ``sampler`` at ``point`` along ``axis``.

    Parameters
    ----------
    sampler : callable
        Takes an array of points and returns the sampled values with the
        same leading shape. Points have shape ``(..., d)``; for a scalar
        (1-D) ``point`` the sampler receives a plain array of abscissae.
    point : float or array_like
        Evaluation point(s). A trailing axis of length ``d`` holds the
        coordinates; leading axes are batch dimensions.
    axis : int or None
        Coordinate to differentiate along; ignored for scalar points.
    stencil : FDStencil

    Returns
    -------
    Derivative estimate with the batch shape of ``point`` (plus any trailing
    value dimensions the sampler returns).
    """
    point = np.asarray(point, dtype=float)
    shifts = stencil.offsets * stencil.step
    if point.ndim == 0 or axis is None:
        pts = point[None, ...] + shifts.reshape((-1,) + (1,) * point.ndim)
    else:
        delta = np.zeros((len(shifts),) + (1,) * (point.ndim - 1) + (point.shape[-1],))
        delta[..., axis] = shifts.reshape((-1,) + (1,) * (point.ndim - 1))
        pts = point[None, ...] + delta
    values = np.asarray(sampler(pts))
    deriv = np.tensordot(stencil.coefficients, values, axes=(0, 0))
    return deriv / stencil.step ** stencil.order
