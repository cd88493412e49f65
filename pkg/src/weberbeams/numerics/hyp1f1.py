"""Kummer's confluent hypergeometric function 1F1(alpha; beta; z) for complex arguments.

Three evaluation paths are combined, chosen per element by error estimates:

* the defining power series around the origin (compensated summation),
* the large-|z| asymptotic expansion (both exponential and algebraic parts),
* analytic continuation along the ray from the origin by Taylor stepping of
  Kummer's equation ``z w'' + (beta - z) w' - alpha w = 0``.

The power series loses ~exp(|z|) relative precision through cancellation on
the imaginary axis, and the asymptotic series only reaches machine precision
for |z| of a few tens, so the ODE stepping covers the range in between.
Every path returns an absolute error estimate alongside the value.
"""

from __future__ import annotations

import numpy as np

from .errors import AccuracyError, DomainError
from .gamma import complex_gamma

EPS = np.finfo(float).eps

#: |z| below which the origin series is used directly.
SERIES_RADIUS = 2.0
#: smallest |z| at which the asymptotic expansion is attempted.
ASYMPTOTIC_MIN_RADIUS = 12.0
#: relative error the asymptotic expansion must reach to be accepted.
ASYMPTOTIC_ACCEPT = 1e-14
#: maximum Taylor step along the continuation ray.
MAX_STEP = 1.0


def _neumaier_add(s, c, x):
    """One step of Neumaier compensated summation on complex arrays."""
    t = s + x
    big = np.abs(s.real) >= np.abs(x.real)
    cr = np.where(big, (s.real - t.real) + x.real, (x.real - t.real) + s.real)
    big = np.abs(s.imag) >= np.abs(x.imag)
    ci = np.where(big, (s.imag - t.imag) + x.imag, (x.imag - t.imag) + s.imag)
    return t, c + (cr + 1j * ci)


def _series(a, b, z, nmax=2000):
    term = np.ones_like(z)
    s = np.ones_like(z)
    comp = np.zeros_like(z)
    abs_sum = np.ones(z.shape)
    absz = np.abs(z)
    for n in range(nmax):
        term = term * (a + n) / (b + n) * z / (n + 1)
        s, comp = _neumaier_add(s, comp, term)
        mag = np.abs(term)
        abs_sum += mag
        if n > absz.max(initial=0.0) and np.all(mag <= EPS * np.abs(s + comp) + 1e-300):
            break
    total = s + comp
    # each term carries a few ulps of its own magnitude from the running product
    err = 4 * EPS * abs_sum + 2 * EPS * np.abs(total)
    return total, err


def _rgamma(z):
    z = np.asarray(z, dtype=complex)
    pole = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    out = np.zeros_like(z)
    if np.any(~pole):
        out[~pole] = 1.0 / complex_gamma(z[~pole])
    return out


def _asymptotic(a, b, z, smax=400):
    sign = np.where(np.angle(z) >= 0, 1.0, -1.0)
    gb = complex_gamma(b)
    pref1 = gb * _rgamma(a) * np.exp(z) * z ** (a - b)
    pref2 = gb * _rgamma(b - a) * np.exp(sign * 1j * np.pi * a) * z ** (-a)

    def partial(p, q, w):
        # sum_s (p)_s (q)_s / s! w^{-s}, truncated at the smallest term
        term = np.ones_like(w)
        s = np.ones_like(w)
        last = np.ones(w.shape)
        active = np.ones(w.shape, dtype=bool)
        for k in range(smax):
            nxt = term * (p + k) * (q + k) / ((k + 1) * w)
            mag = np.abs(nxt)
            grow = mag > last
            stop = active & (grow | (mag <= EPS * np.abs(s) * 1e-2))
            # terms that stopped because they are negligible still get added
            add = active & ~grow
            s = np.where(add, s + nxt, s)
            last = np.where(active & ~grow, mag, last)
            term = nxt
            active &= ~stop
            if not active.any():
                break
        return s, last

    s1, e1 = partial(1 - a, b - a, z)
    s2, e2 = partial(a, a - b + 1, -z)
    val = pref1 * s1 + pref2 * s2
    scale = np.abs(pref1) + np.abs(pref2)
    err = np.abs(pref1) * e1 + np.abs(pref2) * e2 + 4 * EPS * scale
    return val, err, scale


def _march(a, b, z):
    r = np.abs(z)
    direction = z / r
    z_start = SERIES_RADIUS * direction
    w, err_w = _series(a, b, z_start)
    wp, err_p = _series(a + 1, b + 1, z_start)
    wp = wp * a / b
    err = err_w + np.abs(a / b) * err_p
    scale = np.abs(w)

    nsteps = int(np.ceil((r - SERIES_RADIUS).max() / MAX_STEP))
    h = (z - z_start) / max(nsteps, 1)
    for k in range(nsteps):
        z0 = z_start + k * h
        w, wp, step_mag = _taylor_step(a, b, z0, w, wp, h)
        err = err + 4 * EPS * step_mag
        scale = np.maximum(scale, np.abs(w))
    return w, err, scale


def _taylor_step(a, b, z0, w, wp, h, nmax=300):
    # scaled coefficients d_n = c_n h^n of the expansion about z0
    d0 = w
    d1 = wp * h
    val = d0 + d1
    der = d1.copy()
    mag = np.abs(d0) + np.abs(d1)
    for n in range(nmax):
        d2 = (-(n + 1) * (n + b - z0) * d1 * h + (n + a) * d0 * h * h) / (z0 * (n + 2) * (n + 1))
        val = val + d2
        der = der + (n + 2) * d2
        m2 = np.abs(d2)
        mag = mag + m2
        if n > 2 and np.all(m2 + np.abs(d1) <= EPS * 1e-2 * (np.abs(val) + 1e-300)):
            break
        d0, d1 = d1, d2
    return val, der / h, mag


def kummer_1f1(alpha, beta, z, *, tol=1e-10, full_output=False):
    """Confluent hypergeometric function of the first kind.

    Parameters
    ----------
    alpha, beta, z : complex or array_like
        Parameters and argument; broadcast against each other.
    tol : float
        Largest acceptable error estimate, relative to the local magnitude
        of the function (its oscillation envelope where it has zeros).
    full_output : bool
        If True also return the absolute error estimate.

    Returns
    -------
    value : complex or ndarray
    error : float or ndarray
        Only when ``full_output`` is set.

    Raises
    ------
    DomainError
        ``beta`` is a non-positive integer, or an input is not finite.
    AccuracyError
        The error estimate exceeds ``tol``.
    """
    a, b, zz = np.broadcast_arrays(
        np.asarray(alpha, dtype=complex),
        np.asarray(beta, dtype=complex),
        np.asarray(z, dtype=complex),
    )
    shape = zz.shape
    a, b, zz = a.ravel(), b.ravel(), zz.ravel()
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b)) and np.all(np.isfinite(zz))):
        raise DomainError("1F1 arguments must be finite")
    pole = (b.imag == 0) & (b.real <= 0) & (b.real == np.round(b.real))
    if np.any(pole):
        raise DomainError("1F1 is undefined for non-positive integer beta")

    val = np.empty_like(zz)
    err = np.empty(zz.shape)
    scale = np.empty(zz.shape)
    todo = np.ones(zz.shape, dtype=bool)

    near = np.abs(zz) <= SERIES_RADIUS
    if np.any(near):
        v, e = _series(a[near], b[near], zz[near])
        val[near], err[near], scale[near] = v, e, np.maximum(np.abs(v), 1.0)
        todo &= ~near

    far = todo & (np.abs(zz) >= ASYMPTOTIC_MIN_RADIUS)
    if np.any(far):
        v, e, s = _asymptotic(a[far], b[far], zz[far])
        ok = e <= ASYMPTOTIC_ACCEPT * s
        idx = np.flatnonzero(far)[ok]
        val[idx], err[idx], scale[idx] = v[ok], e[ok], s[ok]
        todo[idx] = False

    if np.any(todo):
        v, e, s = _march(a[todo], b[todo], zz[todo])
        val[todo], err[todo], scale[todo] = v, e, s

    bad = err > tol * scale
    if np.any(bad):
        i = np.flatnonzero(bad)[0]
        raise AccuracyError(
            f"1F1({a[i]}, {b[i]}; {zz[i]}) error estimate {err[i]:.3g} exceeds tolerance",
            float(err[i]),
        )
    val = val.reshape(shape)
    err = err.reshape(shape)
    if shape == ():
        val, err = val[()], float(err[()])
    return (val, err) if full_output else val


def kummer_1f1_dz(alpha, beta, z, order=1, *, tol=1e-10, full_output=False):
    """Derivative of 1F1 with respect to z via the contiguous relation.

    ``d^m/dz^m 1F1(alpha; beta; z) = (alpha)_m / (beta)_m 1F1(alpha+m; beta+m; z)``
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    factor = np.ones(np.broadcast(alpha, beta).shape, dtype=complex)
    for m in range(order):
        factor = factor * (alpha + m) / (beta + m)
    v, e = kummer_1f1(alpha + order, beta + order, z, tol=tol, full_output=True)
    v = factor * v
    e = np.abs(factor) * e
    if np.ndim(v) == 0:
        v, e = complex(v), float(e)
    return (v, e) if full_output else v
