"""Verification suites: each returns residual statistics against a tolerance.

A suite fails iff its maximum residual exceeds the tolerance or it crashes.
Pointwise residuals are normalised by a local term scale with a floor of
``SCALE_FLOOR`` times the largest scale in the sample, so isolated zeros of
the field do not turn round-off into large relative numbers.
"""

from __future__ import annotations

import time
import traceback
from dataclasses import dataclass, field

import numpy as np

from .coords import ParabolicPoint, uv_from_xy
from .dynamics import A_identity_residual, Lz_decomposition, time_flux_check
from .em import Polarization, clip_focal, potential_sample, reflect_u
from .numerics import FDStencil, complex_gamma, fd_apply, kummer_1f1, kummer_1f1_dz
from .scalar import (
    apply_A_cartesian,
    apply_A_parabolic,
    cartesian_sampler,
    normalization,
    transverse_sample,
    weber_profile,
)

SUITES = (
    "specfun",
    "ode",
    "helmholtz",
    "eigenA",
    "operator-equivalence",
    "maxwell",
    "parity-reflection",
    "A-identity",
    "Lz-decomposition",
    "poynting",
)

SCALE_FLOOR = 1e-3
ODE_A_VALUES = (-2.0, -0.5, 0.0, 1.5, 3.0)


@dataclass
class SuiteResult:
    name: str
    max: float
    median: float
    tol: float
    passed: bool
    runtime: float
    details: dict = field(default_factory=dict)
    error: str | None = None

    def to_dict(self):
        return {
            "name": self.name,
            "max": self.max,
            "median": self.median,
            "tol": self.tol,
            "pass": self.passed,
            "runtime": self.runtime,
            "details": self.details,
            "error": self.error,
        }


def relative(residual, scale, floor=SCALE_FLOOR):
    """``|residual| / max(scale, floor * max(scale))`` elementwise."""
    residual = np.abs(np.asarray(residual))
    scale = np.abs(np.asarray(scale, dtype=float))
    ref = floor * float(np.max(scale)) if scale.size else 0.0
    return residual / np.maximum(scale, ref if ref > 0 else np.finfo(float).tiny)


def _checks(*parts):
    """Summarise ``(label, relative_array, tol)`` checks.

    Returns the check with the largest ``max / tol`` ratio, which decides the
    suite verdict, and per-check statistics.
    """
    details = {}
    worst = None
    for label, arr, tol in parts:
        arr = np.ravel(np.asarray(arr, dtype=float))
        details[label] = {"max": float(np.max(arr)), "median": float(np.median(arr)), "tol": tol}
        ratio = float(np.max(arr)) / tol
        if worst is None or ratio > worst[0]:
            worst = (ratio, label, arr, tol)
    return worst, details


# -- individual suites -------------------------------------------------------

def suite_specfun(cfg, rng):
    """Kummer transformation, 1F1(1,1;iz) = exp(iz), gamma recurrence and reflection."""
    zeta = np.linspace(0.0, 100.0, 401)
    kt = []
    for n in (1, 3):
        for a in np.linspace(-3, 3, 13):
            alpha = n / 4 - 0.5j * a
            beta = n / 2
            lhs = kummer_1f1(alpha, beta, 1j * zeta)
            rhs = np.exp(1j * zeta) * kummer_1f1(beta - alpha, beta, -1j * zeta)
            # envelope of the oscillating real profile exp(-iz/2) 1F1(i z)
            d = kummer_1f1_dz(alpha, beta, 1j * zeta)
            env = np.sqrt(np.abs(lhs) ** 2 + 4 * np.abs(d - 0.5 * lhs) ** 2)
            kt.append(np.abs(lhs - rhs) / env)
    ex = np.abs(kummer_1f1(1.0, 1.0, 1j * np.linspace(0, 200, 401)) - np.exp(1j * np.linspace(0, 200, 401)))
    z = rng.uniform(-10, 10, 400) + 1j * rng.uniform(-10, 10, 400)
    z = z[(np.abs(z) <= 10) & (np.abs(z - np.round(z.real)) > 0.1)]
    g = complex_gamma(z)
    rec = np.abs(complex_gamma(z + 1) - z * g) / np.abs(z * g)
    refl = np.abs(g * complex_gamma(1 - z) * np.sin(np.pi * z) / np.pi - 1)
    return _checks(("kummer_transformation", np.concatenate(kt), 1e-10),
                   ("exp_identity", ex, 1e-12),
                   ("gamma_recurrence", rec, 1e-12),
                   ("gamma_reflection", refl, 1e-12))


def suite_ode(cfg, rng):
    """Weber equation residual of U and V with second derivatives from the hypergeometric form."""
    mode = cfg.mode()
    kp = mode.k_perp
    t = np.linspace(-10.0, 10.0, 201) * cfg.wavelength
    parts = []
    for a in ODE_A_VALUES:
        for parity in ("even", "odd"):
            for q, name in ((a, "U"), (-a, "V")):
                tt = t if name == "U" else np.abs(t)
                p = weber_profile(parity, kp, q, tt, second="direct")
                res = p.d2 + (kp * kp * tt * tt - 2 * kp * q) * p.value
                scale = np.maximum(np.abs(p.value), normalization(parity, q))
                parts.append(np.abs(res) / scale)
    return _checks(("weber_ode", np.concatenate(parts), 1e-8))


def _random_xy(cfg, rng, n, r_min=0.5):
    L = cfg.extent * cfg.wavelength
    pts = []
    while len(pts) < n:
        x, y = rng.uniform(-L, L, 2)
        if np.hypot(x, y) > r_min * cfg.wavelength:
            pts.append((x, y))
    return np.array(pts)


def suite_helmholtz(cfg, rng):
    """Transverse Helmholtz equation, analytic (parabolic) and finite-difference (Cartesian)."""
    mode = cfg.mode()
    kp = mode.k_perp
    pts = _random_xy(cfg, rng, 100)
    u, v = uv_from_xy(pts[:, 0], pts[:, 1])
    s = transverse_sample(mode, u, v, second="direct")
    h2 = u * u + v * v
    ana = relative(s.d_uu + s.d_vv + kp * kp * h2 * s.value,
                   np.abs(s.d_uu) + np.abs(s.d_vv) + kp * kp * h2 * np.abs(s.value))
    f = cartesian_sampler(mode)
    st = FDStencil(2, 8, 0.02 * cfg.wavelength)
    lap = fd_apply(f, pts, 0, st) + fd_apply(f, pts, 1, st)
    val = f(pts)
    fd = relative(lap + kp * kp * val, kp * kp * np.abs(val))
    return _checks(("analytic", ana, 1e-8), ("finite_difference", fd, 1e-6))


def suite_eigenA(cfg, rng):
    """A psi = k_perp a psi pointwise (analytic and finite differences) and mode parity."""
    mode = cfg.mode()
    lam = mode.k_perp * mode.a
    pts = _random_xy(cfg, rng, 100)
    u, v = uv_from_xy(pts[:, 0], pts[:, 1])
    parts = []
    for parity in ("even", "odd"):
        m = mode.with_parity(parity)
        s = transverse_sample(m, u, v, second="direct")
        h2 = u * u + v * v
        terms = 0.5 * (v * v * np.abs(s.d_uu) + u * u * np.abs(s.d_vv)) / h2
        parts.append(("analytic_" + parity,
                      relative(apply_A_parabolic(s) - lam * s.value, terms + abs(lam) * np.abs(s.value)), 1e-8))
        f = cartesian_sampler(m)
        fd = apply_A_cartesian(f, pts, FDStencil(1, 8, 0.02 * cfg.wavelength))
        val = f(pts)
        parts.append(("fd_" + parity, relative(fd - lam * val, np.abs(fd) + abs(lam) * np.abs(val)), 1e-6))
        # exact parity of the profile
        t = rng.uniform(0, 10, 50) * cfg.wavelength
        p_plus = weber_profile(parity, m.k_perp, m.a, t).value
        p_minus = weber_profile(parity, m.k_perp, m.a, -t).value
        sgn = 1 if parity == "even" else -1
        parts.append(("parity_" + parity, relative(p_minus - sgn * p_plus, np.abs(p_plus)), 1e-12))
    return _checks(*parts)


def _polynomials():
    # (sampler on (..., 2), A applied analytically)
    return {
        "x": (lambda q: q[..., 0], lambda x, y: 0.5 + 0 * x),
        "y": (lambda q: q[..., 1], lambda x, y: 0 * x),
        "x^2": (lambda q: q[..., 0] ** 2, lambda x, y: x),
        "x^2y-y^3/3": (lambda q: q[..., 0] ** 2 * q[..., 1] - q[..., 1] ** 3 / 3,
                       lambda x, y: x * y + 2 * y * x + 2 * x * y),
    }


def suite_operator_equivalence(cfg, rng):
    """Cartesian (finite-difference) and parabolic (analytic) forms of A agree."""
    mode = cfg.mode()
    pts = _random_xy(cfg, rng, 100)
    u, v = uv_from_xy(pts[:, 0], pts[:, 1])
    st = FDStencil(1, 8, 0.02 * cfg.wavelength)
    parts = []
    for parity in ("even", "odd"):
        m = mode.with_parity(parity)
        s = transverse_sample(m, u, v)
        par = apply_A_parabolic(s)
        car = apply_A_cartesian(cartesian_sampler(m), pts, st)
        h2 = u * u + v * v
        scale = 0.5 * (v * v * np.abs(s.d_uu) + u * u * np.abs(s.d_vv)) / h2
        parts.append(("mode_" + parity, relative(car - par, scale), 1e-6))
    x, y = pts[:, 0], pts[:, 1]
    for name, (f, Af) in _polynomials().items():
        car = apply_A_cartesian(f, pts, st)
        ref = Af(x, y)
        parts.append(("poly_" + name, relative(car - ref, np.abs(ref) + 1.0), 1e-6))
    return _checks(*parts)


def field_sampler(mode, pol, branch=None):
    """Cartesian points ``(..., 2)`` -> concatenated ``(E, B)`` at z = t = 0."""
    def sample(q):
        q = np.asarray(q, dtype=float)
        u, v = uv_from_xy(q[..., 0], q[..., 1])
        u, v, _ = clip_focal(u, v)
        s = potential_sample(mode, pol, u, v, branch)
        return np.concatenate([s.E, s.B], axis=-1)
    return sample


def maxwell_residuals(mode, pol, pts, stencil, branch=None):
    """Relative residuals of curl E = ikB, curl B = -ikE, div E = 0, div B = 0."""
    samp = field_sampler(mode, pol, branch)
    F = samp(pts)
    dx = fd_apply(samp, pts, 0, stencil)
    dy = fd_apply(samp, pts, 1, stencil)
    dz = 1j * mode.kz * F
    k = mode.k

    def curl(i):
        return np.stack([dy[..., i + 2] - dz[..., i + 1],
                         dz[..., i] - dx[..., i + 2],
                         dx[..., i + 1] - dy[..., i]], axis=-1)

    E, B = F[..., :3], F[..., 3:]
    scale = k * np.maximum(np.linalg.norm(E, axis=-1), np.linalg.norm(B, axis=-1))
    return {
        "curl_E": relative(np.linalg.norm(curl(0) - 1j * k * B, axis=-1), scale),
        "curl_B": relative(np.linalg.norm(curl(3) + 1j * k * E, axis=-1), scale),
        "div_E": relative(dx[..., 0] + dy[..., 1] + dz[..., 2], scale),
        "div_B": relative(dx[..., 3] + dy[..., 4] + dz[..., 5], scale),
    }


def grid_points(n, extent):
    g = np.linspace(-extent, extent, n)
    X, Y = np.meshgrid(g, g)
    return np.stack([X, Y], axis=-1)


def suite_maxwell(cfg, rng, n=64):
    """Finite-difference Maxwell residuals on an n x n grid for TE, TM and the configured mix."""
    mode = cfg.mode()
    pts = grid_points(n, cfg.extent * cfg.wavelength)
    st = FDStencil(1, 8, 0.02 * cfg.wavelength)
    parts = []
    pols = {"TE": Polarization(1, 0), "TM": Polarization(0, 1), "config": cfg.polarization()}
    for name, pol in pols.items():
        for key, arr in maxwell_residuals(mode, pol, pts, st).items():
            parts.append((f"{name}_{key}", arr, 1e-6))
    return _checks(*parts)


def suite_parity_reflection(cfg, rng):
    """Reflection table of E and B under u -> -u, all parity x family combinations."""
    mode = cfg.mode()
    u = rng.uniform(0.2, 4.0, 100) * np.sqrt(cfg.wavelength)
    v = rng.uniform(0.0, 4.0, 100) * np.sqrt(cfg.wavelength)
    parts = []
    for parity in ("even", "odd"):
        m = mode.with_parity(parity)
        for fam, pol in (("TE", Polarization(1, 0)), ("TM", Polarization(0, 1))):
            here = potential_sample(m, pol, u, v)
            there = potential_sample(m, pol, -u, v)
            pred = reflect_u(here, parity, fam)
            for comp, a, b in (("E", there.E, pred.E), ("B", there.B, pred.B)):
                scale = np.linalg.norm(a, axis=-1)[..., None] * np.ones(3)
                parts.append((f"{parity}_{fam}_{comp}", relative(a - b, scale), 1e-10))
    return _checks(*parts)


def suite_A_identity(cfg, rng, n_points=100):
    """Pointwise A-identity with the flux vector that closes it.

    The undifferentiated flux ``-(d_ct Psi) M Psi`` is evaluated too and its
    median residual reported as a diagnostic.
    """
    mode = cfg.mode()
    pts = _random_xy(cfg, rng, n_points)
    u, v = uv_from_xy(pts[:, 0], pts[:, 1])
    p = ParabolicPoint(u, v)
    st = FDStencil(1, 8, 0.02 * cfg.wavelength)
    parts = []
    alternative = {}
    for parity in ("even", "odd"):
        m = mode.with_parity(parity)
        for fam, pol in (("TE", Polarization(1, 0)), ("TM", Polarization(0, 1))):
            r = A_identity_residual(m, pol, p, st)
            parts.append((f"{parity}_{fam}", r.relative, 1e-6))
            rp = A_identity_residual(m, pol, p, st, form="undifferentiated")
            alternative[f"{parity}_{fam}"] = float(np.median(rp.relative))
    worst, details = _checks(*parts)
    details["undifferentiated_flux_median_relative"] = alternative
    return worst, details


def suite_Lz(cfg, rng):
    """Volume integral of the equal-mode orbital density vs boundary flux of G."""
    mode = cfg.mode()
    window = cfg.integration_window()
    parts = []
    extra = {}
    for fam, pol in (("TE", Polarization(1, 0)), ("TM", Polarization(0, 1))):
        for branch in (None, "+"):
            d = Lz_decomposition(mode, pol, window, branch=branch)
            label = f"{fam}_{'standing' if branch is None else 'traveling'}"
            parts.append((label, [d.relative_residual], 1e-4))
            extra[label] = {
                "Lz_volume": [d.Lz_volume.real, d.Lz_volume.imag],
                "G_flux": [d.G_boundary_flux.real, d.G_boundary_flux.imag],
                "G_unscaled_flux": [d.G_unscaled_flux.real, d.G_unscaled_flux.imag],
                "G_symmetric_flux": [d.G_symmetric_flux.real, d.G_symmetric_flux.imag],
                "deltaL": [d.deltaL.real, d.deltaL.imag],
            }
    worst, details = _checks(*parts)
    details["terms"] = extra
    return worst, details


def suite_poynting(cfg, rng):
    """Poynting theorem over one period at 16 times, standing and traveling modes."""
    mode = cfg.mode()
    window = cfg.integration_window()
    T = 2 * np.pi / mode.omega
    times = np.arange(16) * T / 16
    pol = cfg.polarization()
    parts = []
    for label, branch in (("standing", None), ("traveling", "+")):
        r = time_flux_check(mode, pol, window, times, branch=branch)
        parts.append((label, np.abs(r.residual) / r.scale, 1e-4))
    return _checks(*parts)


_RUNNERS = {
    "specfun": suite_specfun,
    "ode": suite_ode,
    "helmholtz": suite_helmholtz,
    "eigenA": suite_eigenA,
    "operator-equivalence": suite_operator_equivalence,
    "maxwell": suite_maxwell,
    "parity-reflection": suite_parity_reflection,
    "A-identity": suite_A_identity,
    "Lz-decomposition": suite_Lz,
    "poynting": suite_poynting,
}


def run_suite(name, cfg):
    """Run one suite; crashes are reported as failures with the traceback."""
    if name not in _RUNNERS:
        raise KeyError(name)
    rng = np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    try:
        (ratio, label, arr, tol), details = _RUNNERS[name](cfg, rng)
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return SuiteResult(name, float("nan"), float("nan"), float("nan"), False,
                           time.perf_counter() - t0, {}, f"{type(exc).__name__}: {exc}\n{traceback.format_exc()}")
    mx = float(np.max(arr))
    return SuiteResult(name, mx, float(np.median(arr)), tol, bool(mx <= tol),
                       time.perf_counter() - t0, dict(details, worst_check=label))


def run_suites(names, cfg):
    return [run_suite(n, cfg) for n in names]
