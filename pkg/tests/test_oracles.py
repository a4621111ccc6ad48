"""Closed-form reference results and their internal consistency."""
import numpy as np
import pytest

from collisim.measures import concurrence
from collisim.oracles import (
    avg_conc_eRA,
    avg_conc_single,
    biased_three_qubit_state,
    conc_eRA_two_env,
    conc_mixed_ancilla,
    conc_single,
    evolved_density_matrix_single,
)
from collisim.qstate import DensityMatrix

TAU = 1.0


def midpoint_xi(n):
    return (np.arange(n) + 0.5) / n


def test_frozen_average_values():
    # averages over the phi distribution at tau = 1, fixed to full precision
    assert abs(avg_conc_single(1.0) - 0.37840124765396416) < 1e-12
    assert abs(avg_conc_eRA(1.0) - 0.15747048215668896) < 1e-12


def test_single_collision_formula():
    for phi in (0.0, 0.3, 1.0, np.pi / 2):
        for tau in (0.2, 1.0, 2.5):
            expected = np.sin(phi) ** 2 * abs(np.sin(4 * tau))
            assert abs(conc_single(phi, tau) - expected) < 1e-14
    assert conc_single(np.pi / 4, np.pi / 4) < 1e-15  # sin(pi) kills it


def test_average_matches_quadrature():
    # E[C] under sin^2 phi ~ Uniform(0,1), midpoint rule
    xi = midpoint_xi(10_000)
    for tau in (0.5, 1.0, 1.7):
        est = np.mean([conc_single(np.arcsin(np.sqrt(x)), tau) for x in xi])
        assert abs(est - avg_conc_single(tau)) < 1e-6


def test_mixed_ancilla_reduces_to_pure():
    for phi in (0.2, 0.9, 1.4):
        for tau in (0.5, 1.0):
            assert abs(conc_mixed_ancilla(phi, 1.0, tau) - conc_single(phi, tau)) < 1e-12
            # rho0 = 0 starts the ancilla in |1>, mirroring phi about pi/4
            assert abs(conc_mixed_ancilla(phi, 0.0, tau)
                       - conc_single(np.pi / 2 - phi, tau)) < 1e-12


def test_mixed_ancilla_average_is_rho0_independent():
    xi = midpoint_xi(20_000)
    phis = np.arcsin(np.sqrt(xi))
    for tau in (0.5, 1.0):
        target = abs(np.sin(4 * tau)) / 2
        for rho0 in (0.0, 0.3, 0.7, 1.0):
            est = np.mean([conc_mixed_ancilla(p, rho0, tau) for p in phis])
            assert abs(est - target) < 1e-6


def test_two_environment_formula_and_ordering():
    for phi in (0.1, 0.8, 1.5):
        for tau in (0.3, 1.0):
            expected = abs(np.sin(phi) ** 2 * np.cos(2 * tau) * np.sin(4 * tau))
            assert abs(conc_eRA_two_env(phi, tau) - expected) < 1e-14
    # the second collision can only weaken the fresh-pair average
    for tau in np.linspace(0.01, 3.0, 1000):
        assert avg_conc_eRA(tau) <= avg_conc_single(tau) + 1e-15


def test_domain_errors():
    with pytest.raises(ValueError):
        conc_single(-0.1, 1.0)
    with pytest.raises(ValueError):
        conc_single(2.0, 1.0)  # phi past pi/2
    with pytest.raises(ValueError):
        conc_mixed_ancilla(0.5, 1.2, 1.0)
    with pytest.raises(ValueError):
        conc_mixed_ancilla(0.5, -0.2, 1.0)
    with pytest.raises(ValueError):
        evolved_density_matrix_single(0.5, 7.0, 0.0, 1.0)  # psi past 2 pi


def test_evolved_density_matrix_is_a_state():
    rng = np.random.default_rng(20240517)
    for _ in range(25):
        phi = float(rng.uniform(0, np.pi / 2))
        psi = float(rng.uniform(0, 2 * np.pi))
        chi = float(rng.uniform(0, 2 * np.pi))
        tau = float(rng.uniform(0.1, 2.5))
        rho = evolved_density_matrix_single(phi, psi, chi, tau)
        assert np.allclose(rho, rho.conj().T, atol=1e-14)
        assert abs(np.trace(rho).real - 1.0) < 1e-14
        w = np.linalg.eigvalsh(rho)
        assert w.min() > -1e-12
        assert abs((rho @ rho).trace().real - 1.0) < 1e-12  # pure for a pure ancilla


def test_evolved_density_matrix_agrees_with_concurrence():
    rng = np.random.default_rng(99)
    for _ in range(20):
        phi = float(rng.uniform(0, np.pi / 2))
        psi = float(rng.uniform(0, 2 * np.pi))
        chi = float(rng.uniform(0, 2 * np.pi))
        tau = float(rng.uniform(0.1, 2.0))
        rho = DensityMatrix(evolved_density_matrix_single(phi, psi, chi, tau))
        assert abs(concurrence(rho).value - conc_single(phi, tau)) < 1e-10


def test_biased_state_normalization_and_limits():
    for lam in (0.0, 0.4, 1.0):
        for tau in (0.0, 0.7, 2.0):
            amps = biased_three_qubit_state(lam, tau).amplitudes
            assert abs(np.linalg.norm(amps) - 1.0) < 1e-14
    # no evolution
    amps0 = biased_three_qubit_state(0.5, 0.0).amplitudes
    assert abs(abs(amps0[0]) - 1.0) < 1e-14
    # isotropic coupling leaves |000> invariant up to phase
    iso = biased_three_qubit_state(1.0, 1.3).amplitudes
    assert abs(abs(iso[0]) - 1.0) < 1e-14
    assert np.abs(iso[1:]).max() < 1e-14


def test_biased_state_xx_only_amplitudes():
    tau = 0.9
    amps = biased_three_qubit_state(0.0, tau).amplitudes
    c, s = np.cos(tau), np.sin(tau)
    expected = np.zeros(8, dtype=complex)
    expected[0] = c * c
    expected[3] = -1j * s * c  # A and eR flipped together
    expected[5] = -s * s  # eL and eR flipped, ancilla relaying
    expected[6] = -1j * s * c  # eL and A flipped
    assert np.allclose(amps, expected, atol=1e-13)
