"""Per-photon constants and the two-mode (TE, TM) operator block at fixed mode index.

Each diagonal observable is ``sum_i c * N_i`` over the two polarization
families, with the symmetrised number operator ``N = (a^+ a + a a^+)/2 = n + 1/2``
and per-photon constant ``c`` (``hbar omega``, ``hbar k_z``, ``hbar^2 k_perp a``).
Helicity is off-diagonal:

    S_z = (i hbar k_z c / 2 omega) (a_TE^+ a_TM - a_TE a_TM^+)

which on the single-photon block ``(|TE>, |TM>)`` is ``[[0, i lam], [-i lam, 0]]``
with ``lam = hbar k_z c / (2 omega)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OBSERVABLES = ("energy", "momentum_z", "A", "helicity")


@dataclass(frozen=True)
class PhotonConstants:
    energy: float
    momentum_z: float
    A_value: float
    helicity_eigenvalues: tuple
    field_per_photon_sq: float
    hbar: float = 1.0


def photon_constants(mode, hbar=1.0):
    """Energy, axial momentum, A-value and helicity eigenvalues of one photon.

    ``field_per_photon_sq`` is ``|eps|^2 = hbar / (k^2 k_perp^2)``.
    """
    k, kp = mode.k, mode.k_perp
    lam = helicity_eigenvalue(mode, hbar)
    return PhotonConstants(
        energy=hbar * mode.omega,
        momentum_z=hbar * mode.kz,
        A_value=hbar * hbar * kp * mode.a,
        helicity_eigenvalues=(lam, -lam),
        field_per_photon_sq=hbar / (k * k * kp * kp),
        hbar=hbar,
    )


def helicity_eigenvalue(mode, hbar=1.0):
    return hbar * mode.kz * mode.c / (2 * mode.omega)


def helicity_matrix(mode, hbar=1.0):
    """Helicity on the single-photon (TE, TM) block."""
    lam = helicity_eigenvalue(mode, hbar)
    return np.array([[0.0, 1j * lam], [-1j * lam, 0.0]])


def diagonal_matrix(mode, observable, hbar=1.0):
    """Single-photon block of a diagonal observable (zero-point excluded)."""
    pc = photon_constants(mode, hbar)
    value = {"energy": pc.energy, "momentum_z": pc.momentum_z, "A": pc.A_value}[observable]
    return value * np.eye(2, dtype=complex)


def helicity_eigensystem(mode, hbar=1.0):
    """Eigenvalues (descending) and eigenvectors (columns) of the helicity block.

    The ``+lam`` eigenvector is ``(1, -i)/sqrt(2)`` and ``-lam`` belongs to ``(1, i)/sqrt(2)``.
    """
    lam = helicity_eigenvalue(mode, hbar)
    r = 1 / np.sqrt(2)
    vecs = np.array([[r, r], [-1j * r, 1j * r]])
    return np.array([lam, -lam]), vecs


def commutator(a, b):
    return a @ b - b @ a


@dataclass(frozen=True)
class TwoModeState:
    """Fock occupations ``(n_te, n_tm)`` or coherent amplitudes ``(alpha_te, alpha_tm)``."""

    kind: str
    te: complex
    tm: complex

    def __post_init__(self):
        if self.kind == "fock":
            for n in (self.te, self.tm):
                if int(n) != n or n < 0:
                    raise ValueError("occupations must be non-negative integers")
            object.__setattr__(self, "te", int(self.te))
            object.__setattr__(self, "tm", int(self.tm))
        elif self.kind == "coherent":
            object.__setattr__(self, "te", complex(self.te))
            object.__setattr__(self, "tm", complex(self.tm))
            if not (np.isfinite(self.te) and np.isfinite(self.tm)):
                raise ValueError("coherent amplitudes must be finite")
        else:
            raise ValueError("kind must be 'fock' or 'coherent'")

    @classmethod
    def fock(cls, n_te, n_tm):
        return cls("fock", n_te, n_tm)

    @classmethod
    def coherent(cls, alpha_te, alpha_tm):
        return cls("coherent", alpha_te, alpha_tm)

    def mean_numbers(self):
        if self.kind == "fock":
            return float(self.te), float(self.tm)
        return abs(self.te) ** 2, abs(self.tm) ** 2

    def added_photon(self, family):
        """Fock state with one more photon in ``family`` ('TE' or 'TM')."""
        if self.kind != "fock":
            raise ValueError("photon addition is defined on Fock states")
        if family == "TE":
            return TwoModeState.fock(self.te + 1, self.tm)
        return TwoModeState.fock(self.te, self.tm + 1)


def expectation(state, observable, mode, hbar=1.0, normal_ordered=False):
    """Expectation value of an observable in a two-mode state.

    Diagonal observables weight each family by ``n + 1/2`` (``n`` with
    ``normal_ordered=True``). Helicity is ``-2 lam Im(alpha_TE* alpha_TM)``
    for coherent states and 0 for Fock states.
    """
    if observable not in OBSERVABLES:
        raise ValueError(f"observable must be one of {OBSERVABLES}")
    if observable == "helicity":
        if state.kind == "fock":
            return 0.0
        lam = helicity_eigenvalue(mode, hbar)
        # <i lam (a_TE^+ a_TM - a_TE a_TM^+)> = i lam (conj(a) b - a conj(b)) = -2 lam Im(conj(a) b)
        return float(-2 * lam * np.imag(np.conj(state.te) * state.tm))
    pc = photon_constants(mode, hbar)
    per = {"energy": pc.energy, "momentum_z": pc.momentum_z, "A": pc.A_value}[observable]
    n_te, n_tm = state.mean_numbers()
    zp = 0.0 if normal_ordered else 0.5
    return per * (n_te + zp + n_tm + zp)
