"""Scalar Weber modes.

A mode is labelled by its parity and ``(omega, k_z, a)``. The transverse
profile factorises as ``psi(u, v) = U(u) V(v)`` with

    U(u) = s_p zeta^((n_p - 1)/4) exp(-i zeta/2) 1F1(n_p/4 - i a/2; n_p/2; i zeta),  zeta = k_perp u^2

and ``V`` obtained from ``U`` by ``a -> -a``. ``n_p`` is 1 for even and 3
for odd modes; the odd prefactor carries ``sign(u)`` so that
``U_odd(-u) = -U_odd(u)``. Both profiles are real-valued although they are
built from complex hypergeometric functions.

Units: c = 1 by default and lengths are in wavelengths.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .coords import ParabolicPoint, uv_from_xy
from .numerics import DomainError, complex_gamma, fd_apply, kummer_1f1, kummer_1f1_dz

PARITIES = ("even", "odd")
BRANCHES = ("+", "-")


@dataclass(frozen=True)
class ModeIndex:
    """Quantum numbers of a Weber mode: parity, omega, k_z and separation constant a."""

    parity: str
    omega: float
    kz: float
    a: float
    c: float = 1.0

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}, got {self.parity!r}")
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if not np.isfinite(self.a):
            raise ValueError("separation constant a must be finite and real")
        if not abs(self.kz) < self.k:
            raise ValueError("|k_z| must be smaller than k = omega/c")

    @classmethod
    def from_ratio(cls, parity, a, kz_over_k, wavelength=1.0, c=1.0):
        k = 2 * np.pi / wavelength
        return cls(parity=parity, omega=c * k, kz=kz_over_k * k, a=a, c=c)

    @property
    def k(self):
        return self.omega / self.c

    @property
    def k_perp(self):
        return float(np.sqrt(self.k ** 2 - self.kz ** 2))

    @property
    def n_p(self):
        return 1 if self.parity == "even" else 3

    @property
    def parity_sign(self):
        return 1 if self.parity == "even" else -1

    def with_parity(self, parity):
        return replace(self, parity=parity)


@dataclass(frozen=True)
class ProfileSample:
    """Value and first two derivatives of a one-dimensional Weber profile."""

    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


@dataclass(frozen=True)
class ScalarSample:
    """Transverse field psi and its partials in parabolic coordinates."""

    u: np.ndarray
    v: np.ndarray
    value: np.ndarray
    d_u: np.ndarray
    d_v: np.ndarray
    d_uu: np.ndarray
    d_vv: np.ndarray
    d_uv: np.ndarray

    def __add__(self, other):
        return ScalarSample(self.u, self.v, *(getattr(self, f) + getattr(other, f) for f in _FIELDS))

    def scaled(self, factor):
        return ScalarSample(self.u, self.v, *(factor * getattr(self, f) for f in _FIELDS))


_FIELDS = ("value", "d_u", "d_v", "d_uu", "d_vv", "d_uv")


def normalization(parity, a):
    """Normalisation factor s_p; uses sec(i a pi) = 1/cosh(a pi)."""
    sec = 1.0 / np.cosh(np.pi * a)
    if parity == "even":
        return float(np.sqrt(np.pi * sec) / abs(complex_gamma(0.75 - 0.5j * a)))
    if parity == "odd":
        return float(np.sqrt(2 * np.pi * sec) / abs(complex_gamma(0.25 - 0.5j * a)))
    raise ValueError(f"unknown parity {parity!r}")


def _g_terms(n, q, zeta, order):
    """G(zeta) = exp(-i zeta/2) 1F1(n/4 - i q/2; n/2; i zeta) and its zeta-derivatives."""
    alpha = n / 4 - 0.5j * q
    beta = n / 2
    iz = 1j * zeta
    ph = np.exp(-0.5j * zeta)
    f0 = kummer_1f1(alpha, beta, iz)
    f1 = kummer_1f1_dz(alpha, beta, iz)
    g = ph * f0
    gp = ph * (-0.5j * f0 + 1j * f1)
    if order < 2:
        return g, gp
    f2 = kummer_1f1_dz(alpha, beta, iz, order=2)
    gpp = ph * (-0.25 * f0 + f1 - f2)
    return g, gp, gpp


def weber_profile(parity, k_perp, q, t, second="ode"):
    """Evaluate ``s_p zeta^((n_p-1)/4) e^{-i zeta/2} 1F1(...)`` at ``t`` with derivatives.

    ``q`` is the separation constant as it enters the hypergeometric
    parameter (``a`` for U, ``-a`` for V). The second derivative comes from
    the Weber equation ``y'' = (2 k_perp q - k_perp^2 t^2) y`` unless
    ``second="direct"``, which differentiates the hypergeometric form twice
    through the contiguous relations.
    """
    t = np.asarray(t, dtype=float)
    n = 1 if parity == "even" else 3
    s = normalization(parity, q)
    zeta = k_perp * t * t
    if second == "direct":
        g, gp, gpp = _g_terms(n, q, zeta, 2)
    elif second == "ode":
        g, gp = _g_terms(n, q, zeta, 1)
    else:
        raise ValueError("second must be 'ode' or 'direct'")
    if parity == "even":
        val = s * g
        d1 = s * 2 * k_perp * t * gp
        if second == "direct":
            d2 = s * (2 * k_perp * gp + 4 * k_perp ** 2 * t * t * gpp)
    else:
        # sign(u) * sqrt(zeta) = sqrt(k_perp) * u
        c = s * np.sqrt(k_perp)
        val = c * t * g
        d1 = c * (g + 2 * zeta * gp)
        if second == "direct":
            d2 = c * 2 * k_perp * t * (3 * gp + 2 * zeta * gpp)
    if second == "ode":
        d2 = (2 * k_perp * q - (k_perp * t) ** 2) * val
    return ProfileSample(val, d1, d2)


def eval_U(mode, u, second="ode"):
    return weber_profile(mode.parity, mode.k_perp, mode.a, u, second)


def eval_V(mode, v, second="ode"):
    if np.any(np.asarray(v) < 0):
        raise DomainError("V is defined for v >= 0")
    return weber_profile(mode.parity, mode.k_perp, -mode.a, v, second)


def _product(U, V, u, v):
    return ScalarSample(
        u=u, v=v,
        value=U.value * V.value,
        d_u=U.d1 * V.value,
        d_v=U.value * V.d1,
        d_uu=U.d2 * V.value,
        d_vv=U.value * V.d2,
        d_uv=U.d1 * V.d1,
    )


def transverse_sample(mode, u, v, branch=None, second="ode"):
    """psi and its parabolic partials at ``(u, v)`` (arrays broadcast).

    With ``branch`` set to ``"+"`` or ``"-"`` the traveling combination
    ``psi_even +- i psi_odd`` is returned and ``mode.parity`` is ignored.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if branch is None:
        return _product(eval_U(mode, u, second), eval_V(mode, v, second), u, v)
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    even = mode.with_parity("even")
    odd = mode.with_parity("odd")
    pe = _product(eval_U(even, u, second), eval_V(even, v, second), u, v)
    po = _product(eval_U(odd, u, second), eval_V(odd, v, second), u, v)
    return pe + po.scaled(1j if branch == "+" else -1j)


def eval_psi(mode, p, branch=None):
    return transverse_sample(mode, p.u, p.v, branch)


def phase_factor(mode, z=0.0, t=0.0):
    """``exp(i (k_z z - omega t)) / sqrt(2 pi)``."""
    return np.exp(1j * (mode.kz * np.asarray(z) - mode.omega * np.asarray(t))) / np.sqrt(2 * np.pi)


def eval_standing(mode, p, z=0.0, t=0.0):
    return eval_psi(mode, p).value * phase_factor(mode, z, t)


def eval_traveling(mode, branch, p, z=0.0, t=0.0):
    """Traveling mode ``(psi_e +- i psi_o) exp(i(k_z z - omega t)) / sqrt(2 pi)``."""
    return transverse_sample(mode, p.u, p.v, branch).value * phase_factor(mode, z, t)


def reflect_u_point(p):
    """Image of ``p`` under u -> -u (the Cartesian reflection y -> -y)."""
    return ParabolicPoint(-np.asarray(p.u), p.v, p.z)


def cartesian_gradient(s):
    """(d/dx psi, d/dy psi) from the parabolic partials."""
    u, v = s.u, s.v
    h2 = u * u + v * v
    return (u * s.d_u - v * s.d_v) / h2, (v * s.d_u + u * s.d_v) / h2


def cartesian_hessian(s):
    """(psi_xx, psi_xy, psi_yy) from the parabolic partials."""
    u, v = s.u, s.v
    h2 = u * u + v * v
    px, py = cartesian_gradient(s)
    P = s.d_uu - px
    Q = s.d_vv + px
    R = s.d_uv - py
    alpha = u * u - v * v
    beta = 2 * u * v
    h4 = h2 * h2
    diff = (alpha * (P - Q) - 2 * beta * R) / h4
    pxy = 0.5 * (beta * (P - Q) + 2 * alpha * R) / h4
    lap = (P + Q) / h2
    return 0.5 * (lap + diff), pxy, 0.5 * (lap - diff)


def apply_A_parabolic(s):
    """Symmetry operator ``A f = [(v^2/h^2) f_uu - (u^2/h^2) f_vv] / 2`` on a sample."""
    u, v = s.u, s.v
    h2 = u * u + v * v
    if np.any(h2 == 0):
        raise DomainError("operator A is singular on the focal line")
    return 0.5 * (v * v * s.d_uu - u * u * s.d_vv) / h2


def apply_A_cartesian(sampler, point, stencil):
    """``A f = f_x / 2 + y f_xy - x f_yy`` by finite differences.

    ``sampler`` maps Cartesian points with shape ``(..., 2)`` to values;
    ``point`` has shape ``(..., 2)``.
    """
    point = np.asarray(point, dtype=float)
    d1 = stencil if stencil.order == 1 else type(stencil)(1, stencil.accuracy, stencil.step)
    d2 = type(stencil)(2, stencil.accuracy, stencil.step)
    fx = fd_apply(sampler, point, 0, d1)
    fyy = fd_apply(sampler, point, 1, d2)
    fxy = fd_apply(lambda q: fd_apply(sampler, q, 1, d1), point, 0, d1)
    x = point[..., 0]
    y = point[..., 1]
    x, y = _expand_like(x, fx), _expand_like(y, fx)
    return 0.5 * fx + y * fxy - x * fyy


def _expand_like(a, target):
    return a.reshape(a.shape + (1,) * (np.ndim(target) - a.ndim))


def cartesian_sampler(mode, branch=None):
    """Callable mapping Cartesian points ``(..., 2)`` to psi values."""
    def sample(pts):
        pts = np.asarray(pts, dtype=float)
        u, v = uv_from_xy(pts[..., 0], pts[..., 1])
        return transverse_sample(mode, u, v, branch).value
    return sample
