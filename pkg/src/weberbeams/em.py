"""TE/TM electromagnetic Weber modes built from scalar Hertz potentials.

The vector potential is ``A = amp_TE * M Psi + amp_TM * N Psi`` with

    M = (d_ct / h) (e_u d_v - e_v d_u),   N = (d_z / h) (e_u d_u + e_v d_v) - e_z lap_perp

and the fields are ``E = -d_ct A`` and ``B = curl A``. For the monochromatic
phase ``exp(i(k_z z - omega t))`` this means ``d_ct -> -ik``, ``d_z -> i k_z``
and ``lap_perp psi -> -k_perp^2 psi``. Maxwell's equations then read
``curl E = ik B`` and ``curl B = -ik E``.

Vector results are Cartesian ``(x, y, z)`` components on the last axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coords import ParabolicPoint, uv_from_xy, vector_to_cartesian
from .numerics import DomainError
from .scalar import cartesian_gradient, cartesian_hessian, phase_factor, transverse_sample

#: focal-line clipping radius in the (u, v) plane
H_MIN = 1e-6


@dataclass(frozen=True)
class Polarization:
    """TE and TM amplitudes of an electromagnetic mode."""

    amp_te: complex = 1.0
    amp_tm: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "amp_te", complex(self.amp_te))
        object.__setattr__(self, "amp_tm", complex(self.amp_tm))
        if self.amp_te == 0 and self.amp_tm == 0:
            raise ValueError("polarization amplitudes cannot both be zero")

    @property
    def family(self):
        """'TE' or 'TM' for pure polarizations, None for mixtures."""
        if self.amp_tm == 0:
            return "TE"
        if self.amp_te == 0:
            return "TM"
        return None

    def scaled(self, factor):
        return Polarization(factor * self.amp_te, factor * self.amp_tm)

    def conjugate(self):
        return Polarization(np.conj(self.amp_te), np.conj(self.amp_tm))


@dataclass(frozen=True)
class EMFieldSample:
    E: np.ndarray
    B: np.ndarray


def clip_focal(u, v):
    """Push points closer than H_MIN to the focal line out to h = H_MIN.

    Returns ``(u, v, flagged)``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    h = np.hypot(u, v)
    flagged = h < H_MIN
    if np.any(flagged):
        safe = np.where(h > 0, h, 1.0)
        u = np.where(flagged, np.where(h > 0, u / safe * H_MIN, 0.0), u)
        v = np.where(flagged, np.where(h > 0, v / safe * H_MIN, H_MIN), v)
    return u, v, flagged


def _parabolic(u, v, z=0.0):
    return ParabolicPoint(np.asarray(u, dtype=float), np.asarray(v, dtype=float), z)


def vector_M(mode, p, t=0.0, branch=None):
    """``M Psi`` in parabolic components ``(u, v, z)``."""
    s = transverse_sample(mode, p.u, p.v, branch)
    h = np.hypot(s.u, s.v)
    if np.any(h == 0):
        raise DomainError("M is singular on the focal line")
    ph = phase_factor(mode, p.z, t)
    k = mode.k
    comps = [-1j * k * s.d_v / h, 1j * k * s.d_u / h, np.zeros_like(s.value)]
    return np.stack(np.broadcast_arrays(*comps), axis=-1) * np.asarray(ph)[..., None]


def vector_N(mode, p, t=0.0, branch=None):
    """``N Psi`` in parabolic components ``(u, v, z)``."""
    s = transverse_sample(mode, p.u, p.v, branch)
    h = np.hypot(s.u, s.v)
    if np.any(h == 0):
        raise DomainError("N is singular on the focal line")
    ph = phase_factor(mode, p.z, t)
    kz = mode.kz
    comps = [1j * kz * s.d_u / h, 1j * kz * s.d_v / h, mode.k_perp ** 2 * s.value]
    return np.stack(np.broadcast_arrays(*comps), axis=-1) * np.asarray(ph)[..., None]


def eval_EB(mode, pol, p, z=None, t=0.0, branch=None):
    """Electric and magnetic fields (Cartesian components) at parabolic point(s) ``p``.

    ``z`` overrides ``p.z`` when given. ``branch`` selects a traveling mode.
    """
    if z is not None:
        p = ParabolicPoint(p.u, p.v, z)
    M = vector_M(mode, p, t, branch)
    N = vector_N(mode, p, t, branch)
    k = mode.k
    A = pol.amp_te * M + pol.amp_tm * N
    E = 1j * k * A
    B = -1j * k * (pol.amp_te * N - pol.amp_tm * M)
    return EMFieldSample(E=vector_to_cartesian(E, p), B=vector_to_cartesian(B, p))


def eval_EB_cartesian(mode, pol, x, y, z=0.0, t=0.0, branch=None):
    """Fields at Cartesian points; points on the focal line are clipped."""
    u, v = uv_from_xy(x, y)
    u, v, _ = clip_focal(u, v)
    return eval_EB(mode, pol, _parabolic(u, v, z), t=t, branch=branch)


@dataclass(frozen=True)
class PotentialSample:
    """A, E, B and the transverse Cartesian derivatives of A (no phase factor)."""

    A: np.ndarray
    E: np.ndarray
    B: np.ndarray
    dA_dx: np.ndarray
    dA_dy: np.ndarray


def potential_sample(mode, pol, u, v, branch=None):
    """Vector potential and fields from Cartesian derivatives of psi.

    Includes the ``1/sqrt(2 pi)`` factor but not ``exp(i(k_z z - omega t))``,
    i.e. the fields on the plane z = 0 at t = 0.
    """
    s = transverse_sample(mode, u, v, branch)
    px, py = cartesian_gradient(s)
    pxx, pxy, pyy = cartesian_hessian(s)
    psi = s.value
    k, kz, kp = mode.k, mode.kz, mode.k_perp
    te, tm = pol.amp_te, pol.amp_tm
    norm = 1 / np.sqrt(2 * np.pi)

    def stack(*c):
        return norm * np.stack(np.broadcast_arrays(*c), axis=-1)

    zero = np.zeros_like(psi)
    A = stack(-1j * k * te * py + 1j * kz * tm * px,
              1j * k * te * px + 1j * kz * tm * py,
              kp ** 2 * tm * psi)
    dA_dx = stack(-1j * k * te * pxy + 1j * kz * tm * pxx,
                  1j * k * te * pxx + 1j * kz * tm * pxy,
                  kp ** 2 * tm * px)
    dA_dy = stack(-1j * k * te * pyy + 1j * kz * tm * pxy,
                  1j * k * te * pxy + 1j * kz * tm * pyy,
                  kp ** 2 * tm * py)
    # B = amp_TE (-ik) N Psi + amp_TM k^2 curl(Psi z)
    B = stack(k * kz * te * px + k ** 2 * tm * py,
              k * kz * te * py - k ** 2 * tm * px,
              -1j * k * kp ** 2 * te * psi + zero)
    return PotentialSample(A=A, E=1j * k * A, B=B, dA_dx=dA_dx, dA_dy=dA_dy)


def circular_basis(pol):
    """Amplitudes on the circular basis: ``amp_pm = (amp_TE -+ i amp_TM) / sqrt(2)``.

    ``amp_plus`` is the component along the (TE, TM) direction ``(1, i)/sqrt(2)``.
    """
    r = 1 / np.sqrt(2)
    return r * (pol.amp_te - 1j * pol.amp_tm), r * (pol.amp_te + 1j * pol.amp_tm)


def reflect_u(sample, parity, family):
    """Predicted fields at the mirror point (u -> -u, i.e. y -> -y).

    Electric field, with ``s = (-1)^p``:
    TE: ``s (-E_x, E_y, E_z)``, TM: ``s (E_x, -E_y, E_z)``.
    The magnetic field of a TE mode transforms like a TM electric field and
    vice versa.
    """
    sgn = 1 if parity in ("even", 0) else -1
    flip_x = np.array([-1, 1, 1])
    flip_y = np.array([1, -1, 1])
    if family == "TE":
        fe, fb = flip_x, flip_y
    elif family == "TM":
        fe, fb = flip_y, flip_x
    else:
        raise ValueError("family must be 'TE' or 'TM'")
    return EMFieldSample(E=sgn * fe * sample.E, B=sgn * fb * sample.B)


@dataclass(frozen=True)
class Ellipse:
    orientation: np.ndarray
    ellipticity: np.ndarray
    intensity: np.ndarray
    defined: np.ndarray


def polarization_ellipse(E):
    """Ellipse parameters of the transverse part of ``E`` (Cartesian, last axis).

    ``orientation`` is the major-axis angle in (-pi/2, pi/2], ``ellipticity``
    the minor/major axis ratio in [0, 1]; ``intensity`` is ``|E|^2`` over all
    three components. Where the transverse field vanishes the orientation is
    NaN and ``defined`` is False.
    """
    E = np.asarray(E)
    ex, ey = E[..., 0], E[..., 1]
    s0 = np.abs(ex) ** 2 + np.abs(ey) ** 2
    s1 = np.abs(ex) ** 2 - np.abs(ey) ** 2
    s2 = 2 * np.real(np.conj(ex) * ey)
    s3 = 2 * np.imag(np.conj(ex) * ey)
    defined = s0 > 0
    with np.errstate(invalid="ignore", divide="ignore"):
        orientation = np.where(defined, 0.5 * np.arctan2(s2, s1), np.nan)
        chi = 0.5 * np.arcsin(np.clip(np.where(defined, s3 / s0, 0.0), -1, 1))
    ellipticity = np.abs(np.tan(chi))
    intensity = np.sum(np.abs(E) ** 2, axis=-1)
    return Ellipse(orientation, ellipticity, intensity, defined)

