"""Complex gamma function (Lanczos approximation with reflection)."""

from __future__ import annotations

import numpy as np

from .errors import DomainError

# Lanczos coefficients for g = 7, n = 9.
_G = 7.0
_COEFFS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_SQRT_2PI = np.sqrt(2.0 * np.pi)


def _lanczos(z):
    # valid for Re z >= 1/2
    z = z - 1.0
    x = np.full_like(z, _COEFFS[0])
    for i in range(1, len(_COEFFS)):
        x = x + _COEFFS[i] / (z + i)
    t = z + _G + 0.5
    return _SQRT_2PI * np.exp((z + 0.5) * np.log(t) - t) * x


def complex_gamma(z):
    """Gamma function for complex (or real) arguments.

    Uses a Lanczos rational approximation on ``Re z >= 1/2`` and the
    reflection formula ``Gamma(z) Gamma(1 - z) = pi / sin(pi z)`` elsewhere.

    Parameters
    ----------
    z : complex or array_like
        Argument(s). Must not be a non-positive integer.

    Returns
    -------
    complex or ndarray of complex

    Raises
    ------
    DomainError
        If any argument sits on a pole or is not finite.
    """
    zarr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(zarr)):
        raise DomainError("gamma argument is not finite")
    on_pole = (zarr.imag == 0) & (zarr.real <= 0) & (zarr.real == np.round(zarr.real))
    if np.any(on_pole):
        raise DomainError(f"gamma has a pole at {zarr[on_pole].ravel()[0].real:g}")

    out = np.empty_like(zarr)
    right = zarr.real >= 0.5
    out[right] = _lanczos(zarr[right])
    left = ~right
    if np.any(left):
        zl = zarr[left]
        out[left] = np.pi / (np.sin(np.pi * zl) * _lanczos(1.0 - zl))
    return out[()] if out.ndim == 0 else out
