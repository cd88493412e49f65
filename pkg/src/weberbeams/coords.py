"""Parabolic-cylindrical coordinates ``x + i y = (u + i v)**2 / 2``.

``u`` ranges over the real line and ``v >= 0``. Both scale factors equal
``h = sqrt(u**2 + v**2)``. All functions broadcast over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics.errors import DomainError


@dataclass(frozen=True)
class ParabolicPoint:
    u: float | np.ndarray
    v: float | np.ndarray
    z: float | np.ndarray = 0.0

    def __post_init__(self):
        if np.any(np.asarray(self.v) < 0):
            raise DomainError("parabolic coordinate v must be non-negative")


@dataclass(frozen=True)
class CartesianPoint:
    x: float | np.ndarray
    y: float | np.ndarray
    z: float | np.ndarray = 0.0


@dataclass(frozen=True)
class LocalFrame:
    """Unit vectors e_u, e_v (Cartesian 2-vectors, last axis) and scale factor h."""

    e_u: np.ndarray
    e_v: np.ndarray
    h: float | np.ndarray


def to_cartesian(p):
    u = np.asarray(p.u, dtype=float)
    v = np.asarray(p.v, dtype=float)
    return CartesianPoint(0.5 * (u * u - v * v), u * v, p.z)


def uv_from_xy(x, y):
    """Inverse map on arrays, returning ``(u, v)``.

    The positive x axis maps to ``(sqrt(2x), 0)`` and the negative x axis to
    ``(0, sqrt(-2x))``; ``sign(u) = sign(y)`` elsewhere. The branch that avoids
    cancellation in ``r -+ x`` is used on each half plane.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    right = x >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.sqrt(r + x)
        t = np.sqrt(r - x)
        sgn = np.where(y < 0, -1.0, 1.0)
        u = np.where(right, sgn * s, np.where(t > 0, y / t, 0.0))
        v = np.where(right, np.where(s > 0, np.abs(y) / s, 0.0), t)
    return u, v


def from_cartesian(c):
    u, v = uv_from_xy(c.x, c.y)
    if u.ndim == 0:
        u, v = float(u), float(v)
    return ParabolicPoint(u, v, c.z)


def frame(p):
    """Local orthonormal frame at ``p``; singular on the focal line u = v = 0."""
    u = np.asarray(p.u, dtype=float)
    v = np.asarray(p.v, dtype=float)
    h = np.hypot(u, v)
    if np.any(h == 0):
        raise DomainError("local frame is undefined on the focal line u = v = 0")
    e_u = np.stack([u / h, v / h], axis=-1)
    e_v = np.stack([-v / h, u / h], axis=-1)
    return LocalFrame(e_u=e_u, e_v=e_v, h=h if h.ndim else float(h))


def vector_to_cartesian(components, p):
    """Convert (f_u, f_v, f_z) components, stacked on the last axis, to (f_x, f_y, f_z)."""
    f = np.asarray(components)
    fr = frame(p)
    fu, fv, fz = f[..., 0], f[..., 1], f[..., 2]
    fx = fu * fr.e_u[..., 0] + fv * fr.e_v[..., 0]
    fy = fu * fr.e_u[..., 1] + fv * fr.e_v[..., 1]
    return np.stack([fx, fy, fz], axis=-1)
