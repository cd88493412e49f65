import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weberbeams.quantum import (
    TwoModeState,
    commutator,
    diagonal_matrix,
    expectation,
    helicity_eigensystem,
    helicity_matrix,
    photon_constants,
)
from weberbeams.scalar import ModeIndex


def ref_photon():
    return ModeIndex(parity="odd", omega=1.0, kz=0.995, a=-2.0)


def test_constants_at_zero_kz():
    m = ModeIndex(parity="even", omega=1.0, kz=0.0, a=0.7)
    pc = photon_constants(m)
    assert (pc.energy, pc.momentum_z) == (1.0, 0.0)
    assert pc.A_value == pytest.approx(m.k_perp * 0.7)
    assert pc.helicity_eigenvalues == (0.0, -0.0)
    assert np.all(helicity_matrix(m) == 0)


def test_ref_photon():
    pc = photon_constants(ref_photon())
    assert ref_photon().k_perp == pytest.approx(0.0998749, abs=1e-7)
    assert pc.A_value == pytest.approx(-0.1997498, abs=1e-7)
    assert pc.A_value == 1.0 ** 2 * ref_photon().k_perp * -2.0
    assert pc.field_per_photon_sq == pytest.approx(1 / (1 * 0.0998749 ** 2), rel=1e-6)


def test_A_over_energy_exact():
    m = ModeIndex(parity="odd", omega=3.0, kz=1.2, a=0.4)
    pc = photon_constants(m, hbar=0.5)
    assert pc.A_value / pc.energy == pytest.approx(0.5 * m.k_perp * m.a / m.omega, rel=1e-15)


def test_helicity_matrix_structure():
    m = ref_photon()
    H = helicity_matrix(m)
    assert np.all(H == H.conj().T) and np.trace(H) == 0
    vals, vecs = helicity_eigensystem(m)
    lam = m.kz / (2 * m.omega)
    assert np.allclose(np.sort(np.linalg.eigvalsh(H)), [-lam, lam], rtol=0, atol=1e-16)
    assert np.max(np.abs(H @ vecs - vecs * vals)) < 1e-16
    # + eigenvector is (1, -i)/sqrt(2), - eigenvector is (1, i)/sqrt(2)
    assert np.allclose(vecs[:, 1], np.array([1, 1j]) / np.sqrt(2))


def test_commutators_vanish():
    m = ref_photon()
    H = helicity_matrix(m)
    for obs in ("energy", "momentum_z", "A"):
        assert np.all(commutator(H, diagonal_matrix(m, obs)) == 0)


def test_vacuum_and_fock():
    m = ref_photon()
    vac = TwoModeState.fock(0, 0)
    assert expectation(vac, "energy", m) == 1.0
    assert expectation(vac, "energy", m, normal_ordered=True) == 0.0
    assert expectation(TwoModeState.fock(1, 0), "helicity", m) == 0.0


@given(st.integers(0, 50), st.integers(0, 50), st.sampled_from(["TE", "TM"]),
       st.sampled_from(["energy", "momentum_z", "A"]))
def test_ladder_spacing(n_te, n_tm, family, obs):
    m = ref_photon()
    s = TwoModeState.fock(n_te, n_tm)
    per = {"energy": 1.0, "momentum_z": 0.995, "A": photon_constants(m).A_value}[obs]
    diff = expectation(s.added_photon(family), obs, m) - expectation(s, obs, m)
    assert diff == pytest.approx(per, rel=1e-12)


def test_coherent_helicity_sign():
    m = ref_photon()
    lam = m.kz / (2 * m.omega)
    alpha = 0.8 - 0.3j
    got = expectation(TwoModeState.coherent(alpha, 1j * alpha), "helicity", m)
    assert got == pytest.approx(-2 * lam * abs(alpha) ** 2)
    got = expectation(TwoModeState.coherent(alpha, -1j * alpha), "helicity", m)
    assert got == pytest.approx(2 * lam * abs(alpha) ** 2)


def test_coherent_helicity_matches_matrix_expectation():
    # single-photon analogue: <psi|H|psi> for psi ~ (a, b) equals -2 lam Im(conj(a) b)
    m = ref_photon()
    a, b = 0.6, 0.8j
    psi = np.array([a, b])
    direct = np.real(np.conj(psi) @ helicity_matrix(m) @ psi)
    assert expectation(TwoModeState.coherent(a, b), "helicity", m) == pytest.approx(direct)


def test_state_validation():
    with pytest.raises(ValueError):
        TwoModeState.fock(-1, 0)
    with pytest.raises(ValueError):
        TwoModeState.fock(1.5, 0)
    with pytest.raises(ValueError):
        TwoModeState.coherent(np.inf, 0)
    with pytest.raises(ValueError):
        TwoModeState("squeezed", 0, 0)
    with pytest.raises(ValueError):
        expectation(TwoModeState.fock(0, 0), "spin", ref_photon())
