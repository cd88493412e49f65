"""Windowed dynamical quantities of electromagnetic Weber modes.

Weber modes are delta-normalised, so every integral here is taken over a
finite window in the (u, v) plane, rectangular in those coordinates
(``|u| <= u_max``, ``0 <= v <= v_max``), per unit length along z, with the
area element ``h^2 du dv``. Quadratic observables use the cycle-averaged
Hermitian convention:

    energy      (1/16 pi)   int |E|^2 + |B|^2
    momentum_z  (1/8 pi c)  Re int (E* x B)_z
    helicity    (1/8 pi c)  Re int (E* x A)_z

The orbital decomposition and the identity behind the A-quantity are checked
with unconjugated complex fields, exactly as bilinears between two modes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .coords import uv_from_xy
from .em import Polarization, clip_focal, potential_sample
from .numerics import FDStencil, fd_apply, gauss_legendre
from .scalar import (
    apply_A_cartesian,
    apply_A_parabolic,
    cartesian_gradient,
    cartesian_hessian,
    transverse_sample,
)

FOUR_PI = 4 * np.pi


@dataclass(frozen=True)
class Window:
    """Integration window ``[-u_max, u_max] x [0, v_max]`` with Gauss-Legendre orders."""

    u_max: float
    v_max: float
    n_u: int = 64
    n_v: int = 32

    def __post_init__(self):
        if not (self.u_max > 0 and self.v_max > 0):
            raise ValueError("window extents must be positive")
        if self.n_u < 8 or self.n_v < 8:
            raise ValueError("quadrature orders must be >= 8")

    @classmethod
    def from_extent(cls, extent, k_perp, oversample=1.0):
        """Window reaching ``|x| = extent`` along the x axis (u_max = v_max = sqrt(2 extent)).

        Orders follow the number of oscillations of ``exp(i k_perp u^2)``.
        """
        s = float(np.sqrt(2 * extent))
        zeta = k_perp * s * s
        n_u = int(np.ceil(oversample * (zeta + 32)))
        n_v = int(np.ceil(oversample * (zeta / 2 + 24)))
        return cls(s, s, n_u, n_v)

    @property
    def extent(self):
        return 0.5 * max(self.u_max, self.v_max) ** 2

    def with_orders(self, n_u, n_v):
        return replace(self, n_u=max(8, int(n_u)), n_v=max(8, int(n_v)))

    def coarsened(self):
        return self.with_orders(np.ceil(0.75 * self.n_u), np.ceil(0.75 * self.n_v))

    def refined(self):
        return self.with_orders(2 * self.n_u, 2 * self.n_v)

    def rules(self):
        return (gauss_legendre(self.n_u, (-self.u_max, self.u_max)),
                gauss_legendre(self.n_v, (0.0, self.v_max)))


@dataclass(frozen=True)
class WindowedValue:
    value: complex | float
    error: float
    window: Window


#: u-nodes per tile; fixed so partial sums do not depend on the thread count
TILE_SIZE = 16


def _tiles(n):
    return [np.arange(i, min(i + TILE_SIZE, n)) for i in range(0, n, TILE_SIZE)]


def integrate_window(mode, pol, window, densities, branch=None, threads=1):
    """Integrate several densities over the window in one pass.

    ``densities`` maps names to callables ``f(sample, u, v)`` where ``sample``
    is a :class:`~weberbeams.em.PotentialSample`. Tiles over u are evaluated
    concurrently and reduced in a fixed order.
    """
    ur, vr = window.rules()

    def work(idx):
        u = ur.nodes[idx][:, None]
        v = vr.nodes[None, :]
        w = ur.weights[idx][:, None] * vr.weights[None, :] * (u * u + v * v)
        s = potential_sample(mode, pol, u, v, branch)
        return {name: np.sum(w * f(s, u, v)) for name, f in densities.items()}

    tiles = _tiles(window.n_u)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, tiles))
    else:
        parts = [work(t) for t in tiles]
    out = {}
    for name in densities:
        total = 0.0
        for part in parts:
            total = total + part[name]
        out[name] = total
    return out


def _cross_z(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def energy_density(s, u, v):
    return np.sum(np.abs(s.E) ** 2 + np.abs(s.B) ** 2, axis=-1) / (4 * FOUR_PI)


def _momentum_density(c):
    return lambda s, u, v: np.real(_cross_z(np.conj(s.E), s.B)) / (2 * FOUR_PI * c)


def _helicity_density(c):
    return lambda s, u, v: np.real(_cross_z(np.conj(s.E), s.A)) / (2 * FOUR_PI * c)


def _Lz_density(c):
    # (1/8 pi c) sum_j E_j (u d_v - v d_u) A_j, and u d_v - v d_u = 2 (x d_y - y d_x)
    def density(s, u, v):
        x = 0.5 * (u * u - v * v)
        y = u * v
        dphi = x[..., None] * s.dA_dy - y[..., None] * s.dA_dx
        return np.sum(s.E * 2 * dphi, axis=-1) / (2 * FOUR_PI * c)
    return density


def energy(mode, pol, window, branch=None, threads=1):
    """Cycle-averaged energy per unit length inside the window."""
    return float(np.real(integrate_window(mode, pol, window, {"e": energy_density}, branch, threads)["e"]))


def momentum_z(mode, pol, window, branch=None, threads=1):
    d = {"p": _momentum_density(mode.c)}
    return float(np.real(integrate_window(mode, pol, window, d, branch, threads)["p"]))


def helicity(mode, pol, window, branch=None, threads=1):
    d = {"s": _helicity_density(mode.c)}
    return float(np.real(integrate_window(mode, pol, window, d, branch, threads)["s"]))


def with_error(fn, mode, pol, window, **kw):
    """Evaluate a windowed functional and attach a quadrature error estimate.

    The estimate is the change against a rule with 3/4 of the nodes.
    """
    fine = fn(mode, pol, window, **kw)
    coarse = fn(mode, pol, window.coarsened(), **kw)
    return WindowedValue(fine, float(abs(fine - coarse)), window)


# -- boundary fluxes --------------------------------------------------------

def boundary_flux(vector_fn, window):
    """Outward flux ``oint F . n dl`` of a transverse vector field through the window edge.

    ``vector_fn(u, v)`` returns Cartesian vectors (last axis, x and y used).
    The edge v = 0 is an internal cut (the positive x axis seen from both
    sides) whose contributions cancel, so it is skipped. Returns a dict of
    per-face fluxes and their ``total``.
    """
    ur, vr = window.rules()
    s, t = window.u_max, window.v_max
    v = vr.nodes
    # u = +s: n dl = (u, v) dv ; u = -s: n dl = -(u, v) dv ; v = t: n dl = (-v, u) du
    F = vector_fn(np.full_like(v, s), v)
    up = vr.integrate(F[..., 0] * s + F[..., 1] * v)
    F = vector_fn(np.full_like(v, -s), v)
    um = vr.integrate(F[..., 0] * s - F[..., 1] * v)
    u = ur.nodes
    F = vector_fn(u, np.full_like(u, t))
    vp = ur.integrate(-F[..., 0] * t + F[..., 1] * u)
    return {"u_plus": up, "u_minus": um, "v_max": vp, "total": up + um + vp}


# -- orbital angular momentum ---------------------------------------------

@dataclass
class LzDecomposition:
    Lz_volume: complex
    G_boundary_flux: complex
    deltaL: complex
    residual: float
    scale: float
    relative_residual: float
    G_unscaled_flux: complex
    G_symmetric_flux: complex
    window: Window


def _family(pol):
    fam = pol.family
    if fam is None:
        raise ValueError("this identity is stated per family; use a pure TE or TM polarization")
    return fam


def G_unscaled(mode, pol, u, v, branch=None):
    """``(k h^2 / 8 pi k c) sum_j (h A_j) M (h A_j)`` for equal modes, Cartesian.

    ``M f = -ik curl(f z)`` on a scalar f, so only grad(h A_j) is needed.
    """
    s = potential_sample(mode, pol, u, v, branch)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    h2 = u * u + v * v
    h = np.sqrt(h2)
    x = 0.5 * (u * u - v * v)
    y = u * v
    hx = (2 * x / (h2 * h))[..., None]
    hy = (2 * y / (h2 * h))[..., None]
    f = h[..., None] * s.A
    fx = hx * s.A + h[..., None] * s.dA_dx
    fy = hy * s.A + h[..., None] * s.dA_dy
    k = mode.k
    Mx = -1j * k * fy
    My = 1j * k * fx
    pref = h2 / (2 * FOUR_PI * mode.c)
    gx = pref * np.sum(f * Mx, axis=-1)
    gy = pref * np.sum(f * My, axis=-1)
    return np.stack([gx, gy, np.zeros_like(gx)], axis=-1)


def G_vector(mode, pol, u, v, branch=None):
    """Flux vector whose divergence is the equal-mode orbital density.

    Equals -1/2 times :func:`G_unscaled`, whose normalisation gives a
    divergence of -2 times the density.
    """
    return -0.5 * G_unscaled(mode, pol, u, v, branch)


def G_symmetric(mode, pol, u, v, branch=None):
    """Alternative flux vector ``(1/8 pi c) (E . A) (-y, x, 0)``."""
    s = potential_sample(mode, pol, u, v, branch)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    x = 0.5 * (u * u - v * v)
    y = u * v
    ea = np.sum(s.E * s.A, axis=-1) / (2 * FOUR_PI * mode.c)
    return np.stack([-y * ea, x * ea, np.zeros_like(ea)], axis=-1)


def _deltaL_density(mode, pol):
    fam = _family(pol)
    amp = pol.amp_te if fam == "TE" else pol.amp_tm
    k, kz, kp, c = mode.k, mode.kz, mode.k_perp, mode.c
    norm = 1 / (2 * np.pi)

    def density(sample, u, v):
        # sample is a ScalarSample here
        px, py = cartesian_gradient(sample)
        pxx, pxy, pyy = cartesian_hessian(sample)
        psi = sample.value
        h = np.sqrt(u * u + v * v)
        hu, hv = u / h, v / h
        zero = np.zeros_like(psi)

        def vec(*c_):
            return np.stack(np.broadcast_arrays(*c_), axis=-1)

        M = -1j * k * vec(py, -px, zero)
        Mx = -1j * k * vec(pxy, -pxx, zero)
        My = -1j * k * vec(pyy, -pxy, zero)
        N = vec(1j * kz * px, 1j * kz * py, kp ** 2 * psi)
        Nx = vec(1j * kz * pxx, 1j * kz * pxy, kp ** 2 * px)
        Ny = vec(1j * kz * pxy, 1j * kz * pyy, kp ** 2 * py)
        # d_u = u d_x + v d_y, d_v = -v d_x + u d_y applied to h * vector
        def du(f, fx, fy):
            return hu[..., None] * f + h[..., None] * (u[..., None] * fx + v[..., None] * fy)

        def dv(f, fx, fy):
            return hv[..., None] * f + h[..., None] * (-v[..., None] * fx + u[..., None] * fy)

        te = (1j * k * k / (2 * FOUR_PI * kz * c)) * (
            np.sum(du(N, Nx, Ny) * du(M, Mx, My), axis=-1)
            + np.sum(dv(N, Nx, Ny) * dv(M, Mx, My), axis=-1))
        if fam == "TE":
            out = te
        else:
            out = (kz * kz / (k * k)) * te - (kp ** 4 * h ** 4 * 1j / (2 * FOUR_PI * kz * c)) * np.sum(M * N, axis=-1)
        return amp * amp * norm * out
    return density


def Lz_decomposition(mode, pol, window, branch=None, threads=1):
    """Compare the window integral of the orbital density with the G flux.

    The equal-mode orbital density is a pure divergence, so
    ``int Lz = oint G . n`` up to quadrature error. The normalised residual
    uses ``max(|int Lz|, energy * wavelength / c)``.
    """
    _family(pol)
    res = integrate_window(mode, pol, window,
                           {"Lz": _Lz_density(mode.c), "e": energy_density}, branch, threads)
    vol = complex(res["Lz"])
    en = float(np.real(res["e"]))
    flux = complex(boundary_flux(lambda u, v: G_vector(mode, pol, u, v, branch), window)["total"])
    flux_p = complex(boundary_flux(lambda u, v: G_unscaled(mode, pol, u, v, branch), window)["total"])
    flux_s = complex(boundary_flux(lambda u, v: G_symmetric(mode, pol, u, v, branch), window)["total"])

    ur, vr = window.rules()
    u = ur.nodes[:, None]
    v = vr.nodes[None, :]
    w = ur.weights[:, None] * vr.weights[None, :] * (u * u + v * v)
    sample = transverse_sample(mode, u, v, branch)
    dl = complex(np.sum(w * _deltaL_density(mode, pol)(sample, u, v)))

    wavelength = 2 * np.pi / mode.k
    scale = max(abs(vol), en * wavelength / mode.c)
    resid = abs(vol - flux)
    return LzDecomposition(vol, flux, dl, resid, scale, resid / scale, flux_p, flux_s, window)


# -- the A-quantity ---------------------------------------------------------

@dataclass
class IdentityResidual:
    residual: np.ndarray
    scale: np.ndarray
    relative: np.ndarray
    lhs: np.ndarray
    eigen_term: np.ndarray
    divergence: np.ndarray


def _A_sampler(mode, pol, branch):
    def sample(pts):
        pts = np.asarray(pts, dtype=float)
        u, v = uv_from_xy(pts[..., 0], pts[..., 1])
        u, v, _ = clip_focal(u, v)
        return potential_sample(mode, pol, u, v, branch).A
    return sample


def flux_C(mode, pol, pts, form="corrected", branch=None):
    """Flux vector of the A-identity at Cartesian points (unconjugated fields).

    ``form="corrected"``: ``C = (d_ct d_y Psi)(d_ct M Psi)``; ``form="undifferentiated"``:
    ``C = -(d_ct Psi) M Psi``. Both carry the factor ``amp^2`` of the family
    and ``(k_z/k)^2`` for TM.
    """
    fam = _family(pol)
    pts = np.asarray(pts, dtype=float)
    u, v = uv_from_xy(pts[..., 0], pts[..., 1])
    u, v, _ = clip_focal(u, v)
    s = transverse_sample(mode, u, v, branch)
    px, py = cartesian_gradient(s)
    k = mode.k
    ph2 = 1 / (2 * np.pi)
    amp = pol.amp_te if fam == "TE" else pol.amp_tm
    pref = amp * amp * ph2 * (1.0 if fam == "TE" else (mode.kz / k) ** 2)
    mx, my = -1j * k * py, 1j * k * px  # M Psi, transverse part
    if form == "corrected":
        lead = (-1j * k) ** 2 * py
    elif form == "undifferentiated":
        lead = -(-1j * k) * s.value
    else:
        raise ValueError("form must be 'corrected' or 'undifferentiated'")
    C = pref * lead
    return np.stack([C * mx, C * my, np.zeros_like(C)], axis=-1)


def A_identity_residual(mode, pol, p, stencil=None, form="corrected", branch=None):
    """Pointwise residual of ``sum_j E_j A(A_j) = k_perp a E.A + div C``.

    The operator acts on Cartesian components of the vector potential and is
    evaluated by finite differences, as is the divergence of C. ``p`` is a
    :class:`~weberbeams.coords.ParabolicPoint` (arrays allowed).
    """
    stencil = stencil or FDStencil(1, 8, 0.02)
    u = np.asarray(p.u, dtype=float)
    v = np.asarray(p.v, dtype=float)
    pts = np.stack([0.5 * (u * u - v * v), u * v], axis=-1)
    Asamp = _A_sampler(mode, pol, branch)
    A = Asamp(pts)
    E = 1j * mode.k * A
    AA = apply_A_cartesian(Asamp, pts, stencil)
    lhs = np.sum(E * AA, axis=-1)
    eig = mode.k_perp * mode.a * np.sum(E * A, axis=-1)
    d1 = FDStencil(1, stencil.accuracy, stencil.step)
    Cs = lambda q: flux_C(mode, pol, q, form, branch)
    div = fd_apply(Cs, pts, 0, d1)[..., 0] + fd_apply(Cs, pts, 1, d1)[..., 1]
    residual = lhs - eig - div
    scale = np.maximum(np.sum(np.abs(E * AA), axis=-1), np.abs(eig))
    return IdentityResidual(residual, scale, np.abs(residual) / scale, lhs, eig, div)


def A_em_integrals(mode, pol, window, branch=None, threads=1):
    """Unconjugated ``(1/4 pi c) int sum_j E_j A(A_j)`` and ``(1/4 pi c) int E.A``.

    The operator is applied analytically through its commutators with the
    transverse derivatives: ``A(psi_x) = k_perp a psi_x + psi_yy`` and
    ``A(psi_y) = k_perp a psi_y - psi_xy``.
    """
    k, kz, kp, c = mode.k, mode.kz, mode.k_perp, mode.c
    lam = kp * mode.a
    te, tm = pol.amp_te, pol.amp_tm
    norm = 1 / np.sqrt(2 * np.pi)

    ur, vr = window.rules()
    u = ur.nodes[:, None]
    v = vr.nodes[None, :]
    w = ur.weights[:, None] * vr.weights[None, :] * (u * u + v * v)
    sample = transverse_sample(mode, u, v, branch)
    px, py = cartesian_gradient(sample)
    pxx, pxy, pyy = cartesian_hessian(sample)
    psi = sample.value
    Apx = lam * px + pyy
    Apy = lam * py - pxy
    A = norm * np.stack(np.broadcast_arrays(
        -1j * k * te * py + 1j * kz * tm * px,
        1j * k * te * px + 1j * kz * tm * py,
        kp ** 2 * tm * psi), axis=-1)
    AA = norm * np.stack(np.broadcast_arrays(
        -1j * k * te * Apy + 1j * kz * tm * Apx,
        1j * k * te * Apx + 1j * kz * tm * Apy,
        kp ** 2 * tm * lam * psi), axis=-1)
    E = 1j * k * A
    frak = complex(np.sum(w * np.sum(E * AA, axis=-1)) / (FOUR_PI * c))
    ea = complex(np.sum(w * np.sum(E * A, axis=-1)) / (FOUR_PI * c))
    return frak, ea


# -- scalar expectation of the operator ------------------------------------

def cesaro_tail(values):
    """Mean over the last quarter (at least one) of a sequence."""
    values = list(values)
    if not values:
        raise ValueError("empty sequence")
    n = max(1, int(np.ceil(len(values) / 4)))
    return float(np.mean(values[-n:]))


def A_scalar_expectation(mode, window, branch=None, second="direct"):
    """``int psi* (A psi) h^2 du dv / int |psi|^2 h^2 du dv`` over the window.

    With ``second="direct"`` the second partials come from differentiating the
    hypergeometric form twice, independently of the Weber equations, so the
    eigenvalue is measured rather than imposed.
    """
    ur, vr = window.rules()
    u = ur.nodes[:, None]
    v = vr.nodes[None, :]
    w = ur.weights[:, None] * vr.weights[None, :] * (u * u + v * v)
    s = transverse_sample(mode, u, v, branch, second=second)
    num = np.sum(w * np.conj(s.value) * apply_A_parabolic(s))
    den = np.sum(w * np.abs(s.value) ** 2)
    return float(np.real(num / den))


def orthogonality_kernel(mode, a_prime, window, branch=None):
    """Normalised overlap ``|K(a, a')| / sqrt(K(a, a) K(a', a'))`` of two scalar modes."""
    ur, vr = window.rules()
    u = ur.nodes[:, None]
    v = vr.nodes[None, :]
    w = ur.weights[:, None] * vr.weights[None, :] * (u * u + v * v)
    p1 = transverse_sample(mode, u, v, branch).value
    p2 = transverse_sample(replace(mode, a=a_prime), u, v, branch).value
    k12 = np.sum(w * np.conj(p1) * p2)
    k11 = np.sum(w * np.abs(p1) ** 2)
    k22 = np.sum(w * np.abs(p2) ** 2)
    return float(abs(k12) / np.sqrt(k11 * k22))


# -- Poynting theorem in time -------------------------------------------------

@dataclass
class TimeFluxReport:
    times: np.ndarray
    dU_dt: np.ndarray
    lateral_flux: dict
    axial_flux: np.ndarray
    residual: np.ndarray
    scale: float
    relative_residual: float


def time_flux_check(mode, pol, window, times, branch=None, stencil=None):
    """Check ``dU/dt + oint S.n + int dS_z/dz = 0`` for the instantaneous real fields.

    ``U`` is the field energy per unit length in the window and ``S`` the
    Poynting vector of ``Re[F exp(-i omega t)]``. The time derivative is a
    finite difference; the axial term is the exact z-derivative at z = 0.
    The relative residual is normalised by the larger of the summed term
    magnitudes and ``omega`` times the mean window energy.
    """
    stencil = stencil or FDStencil(1, 8, (2 * np.pi / mode.omega) / 256)
    c = mode.c
    om = mode.omega
    kz = mode.kz
    ur, vr = window.rules()
    u = ur.nodes[:, None]
    v = vr.nodes[None, :]
    w = ur.weights[:, None] * vr.weights[None, :] * (u * u + v * v)
    s = potential_sample(mode, pol, u, v, branch)
    E, B = s.E, s.B

    def real_at(F, t):
        t = np.asarray(t, dtype=float)
        return np.real(F[None] * np.exp(-1j * om * t).reshape(-1, *([1] * F.ndim)))

    def U_of_t(t):
        t = np.asarray(t, dtype=float)
        Er, Br = real_at(E, t.ravel()), real_at(B, t.ravel())
        dens = np.sum(Er ** 2 + Br ** 2, axis=-1) / (2 * FOUR_PI)
        return np.sum(w[None] * dens, axis=(1, 2)).reshape(t.shape)

    times = np.asarray(times, dtype=float)
    dU = fd_apply(U_of_t, times, None, stencil)

    # axial term: S_z = (c/4 pi)(E_r x B_r)_z, d/dz brings i k_z on the complex amplitudes
    Er, Br = real_at(E, times), real_at(B, times)
    dEr, dBr = real_at(1j * kz * E, times), real_at(1j * kz * B, times)
    dSz = (c / FOUR_PI) * (_cross_z(dEr, Br) + _cross_z(Er, dBr))
    axial = np.sum(w[None] * dSz, axis=(1, 2))

    def edge_fields(uu, vv):
        es = potential_sample(mode, pol, uu, vv, branch)
        return es.E, es.B

    faces = {}
    sv, tv = window.u_max, window.v_max
    for name, (uu, vv, rule, nfun) in {
        "u_plus": (np.full_like(vr.nodes, sv), vr.nodes, vr, lambda S, uu, vv: S[..., 0] * sv + S[..., 1] * vv),
        "u_minus": (np.full_like(vr.nodes, -sv), vr.nodes, vr, lambda S, uu, vv: S[..., 0] * sv - S[..., 1] * vv),
        "v_max": (ur.nodes, np.full_like(ur.nodes, tv), ur, lambda S, uu, vv: -S[..., 0] * tv + S[..., 1] * uu),
    }.items():
        Ee, Be = edge_fields(uu, vv)
        Ert, Brt = real_at(Ee, times), real_at(Be, times)
        S = (c / FOUR_PI) * np.cross(Ert, Brt)
        faces[name] = np.array([rule.integrate(nfun(S[i], uu, vv)) for i in range(len(times))])
    lateral = faces["u_plus"] + faces["u_minus"] + faces["v_max"]
    residual = dU + lateral + axial
    # floor at omega * mean energy so stationary densities are not divided by ~0
    mean_U = float(np.mean(U_of_t(times)))
    scale = max(float(np.max(np.abs(dU) + np.abs(lateral) + np.abs(axial))), om * mean_U)
    rel = float(np.max(np.abs(residual)) / scale) if scale > 0 else 0.0
    return TimeFluxReport(times, dU, faces, axial, residual, scale, rel)


# -- reports -------------------------------------------------------------------

@dataclass
class ConservedReport:
    window: Window
    energy: WindowedValue
    momentum_z: WindowedValue
    helicity: WindowedValue
    Lz: WindowedValue
    A_scalar: float
    A_em: complex
    EA: complex
    ratios: dict = field(default_factory=dict)


def conserved_report(mode, pol, window, branch=None, threads=1):
    """All windowed quantities with quadrature error estimates and key ratios."""
    dens = {
        "e": energy_density,
        "p": _momentum_density(mode.c),
        "s": _helicity_density(mode.c),
        "l": _Lz_density(mode.c),
    }
    fine = integrate_window(mode, pol, window, dens, branch, threads)
    coarse = integrate_window(mode, pol, window.coarsened(), dens, branch, threads)

    def wv(key, real=True):
        f, g = fine[key], coarse[key]
        if real:
            f, g = float(np.real(f)), float(np.real(g))
        else:
            f, g = complex(f), complex(g)
        return WindowedValue(f, float(abs(f - g)), window)

    e, p, s, l = wv("e"), wv("p"), wv("s"), wv("l", real=False)
    a_s = A_scalar_expectation(mode, window, branch)
    frak, ea = A_em_integrals(mode, pol, window, branch, threads)
    ratios = {
        "cPz_over_E": mode.c * p.value / e.value,
        "Sz_over_E": s.value / e.value,
        "A_scalar_over_kperp": a_s / mode.k_perp,
        "A_em_over_EA_over_kperp": (frak / ea / mode.k_perp) if ea != 0 else float("nan"),
    }
    return ConservedReport(window, e, p, s, l, a_s, frak, ea, ratios)


@dataclass
class ScanResult:
    extents: list
    values: list
    cesaro: float
    deltas: list


def scan(fn, extents):
    """Evaluate ``fn(extent)`` on nested windows; report Cesaro tail average and deltas."""
    values = [fn(e) for e in extents]
    deltas = [float("nan")] + [abs(b - a) for a, b in zip(values, values[1:])]
    return ScanResult(list(extents), values, cesaro_tail(values), deltas)


__all__ = [
    "A_em_integrals",
    "A_identity_residual",
    "A_scalar_expectation",
    "ConservedReport",
    "LzDecomposition",
    "Polarization",
    "Window",
    "WindowedValue",
    "boundary_flux",
    "cesaro_tail",
    "conserved_report",
    "energy",
    "flux_C",
    "helicity",
    "Lz_decomposition",
    "momentum_z",
    "orthogonality_kernel",
    "scan",
    "time_flux_check",
    "with_error",
]
