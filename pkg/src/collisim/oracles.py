"""Closed-form reference results for small collision scenarios.

Everything here is written out directly in trigonometric form, with no
use of the register/unitary machinery, so these functions can serve as
independent cross-checks of the simulation pipeline (see the
oracle-check command).  All scenarios take the dimensionless collision
time tau = J t.
"""
from __future__ import annotations

import numpy as np

from .dynamics import build_register
from .qstate import PureState, from_amplitudes

__all__ = [
    "evolved_density_matrix_single",
    "conc_single",
    "avg_conc_single",
    "conc_mixed_ancilla",
    "conc_eRA_two_env",
    "avg_conc_eRA",
    "biased_three_qubit_state",
]


def _check_angles(phi: float, psi: float, chi: float) -> None:
    if not 0.0 <= phi <= np.pi / 2:
        raise ValueError("phi must lie in [0, pi/2], got %g" % phi)
    if not 0.0 <= psi < 2 * np.pi:
        raise ValueError("psi must lie in [0, 2pi), got %g" % psi)
    if not 0.0 <= chi < 2 * np.pi:
        raise ValueError("chi must lie in [0, 2pi), got %g" % chi)


def evolved_density_matrix_single(phi: float, psi: float, chi: float, tau: float) -> np.ndarray:
    """Two-qubit state after one isotropic collision with one environment qubit.

    The environment qubit is rotated out of |0> by the 2 x 2 random
    unitary with angles (phi, psi, chi) and then collides with the
    ground-state ancilla for a time tau.  Basis order is (e, A) with e
    the most significant qubit.  The global preparation phase alpha
    drops out of the density matrix.
    """
    _check_angles(phi, psi, chi)
    s2p = np.sin(2 * phi)
    c2t = np.cos(2 * tau)
    s2t = np.sin(2 * tau)
    s4t = np.sin(4 * tau)
    ephase = np.exp(-2j * tau + 1j * (psi + chi))
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = np.cos(phi) ** 2
    rho[0, 1] = -0.5j * ephase * s2t * s2p
    rho[0, 2] = -0.5 * ephase * c2t * s2p
    rho[1, 1] = np.sin(phi) ** 2 * s2t**2
    rho[1, 2] = -0.5j * s4t * np.sin(phi) ** 2
    rho[2, 2] = c2t**2 * np.sin(phi) ** 2
    rho[1, 0] = np.conj(rho[0, 1])
    rho[2, 0] = np.conj(rho[0, 2])
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def conc_single(phi: float, tau: float) -> float:
    """Environment-ancilla concurrence after one isotropic collision: sin^2(phi) |sin 4 tau|."""
    if not 0.0 <= phi <= np.pi / 2:
        raise ValueError("phi must lie in [0, pi/2], got %g" % phi)
    return float(np.sin(phi) ** 2 * abs(np.sin(4 * tau)))


def avg_conc_single(tau: float) -> float:
    """Haar average of :func:`conc_single` over the preparation: |sin 4 tau| / 2."""
    return float(abs(np.sin(4 * tau)) / 2.0)


def conc_mixed_ancilla(phi: float, rho0: float, tau: float) -> float:
    """Concurrence with a diagonally mixed ancilla diag(rho0, 1 - rho0).

    Reduces to :func:`conc_single` at rho0 = 1 and swaps the roles of
    cos^2 and sin^2 at rho0 = 0; its Haar average is rho0-independent.
    """
    if not 0.0 <= phi <= np.pi / 2:
        raise ValueError("phi must lie in [0, pi/2], got %g" % phi)
    if not 0.0 <= rho0 <= 1.0:
        raise ValueError("rho0 must lie in [0, 1], got %g" % rho0)
    return float(0.5 * abs((-1.0 + (2 * rho0 - 1.0) * np.cos(2 * phi)) * np.sin(4 * tau)))


def conc_eRA_two_env(phi_r: float, tau: float) -> float:
    """First-struck-environment concurrence after both isotropic collisions.

    With single-qubit environments struck right then left, the e_R - A
    pair ends with concurrence |sin^2(phi_R) cos(2 tau) sin(4 tau)|:
    the second collision damps the first pair's entanglement by
    |cos 2 tau| and the left preparation never enters.
    """
    if not 0.0 <= phi_r <= np.pi / 2:
        raise ValueError("phi_r must lie in [0, pi/2], got %g" % phi_r)
    return float(abs(np.sin(phi_r) ** 2 * np.cos(2 * tau) * np.sin(4 * tau)))


def avg_conc_eRA(tau: float) -> float:
    """Haar average of :func:`conc_eRA_two_env`: |cos(2 tau) sin(4 tau)| / 2."""
    return float(abs(np.cos(2 * tau) * np.sin(4 * tau)) / 2.0)


def biased_three_qubit_state(lam: float, tau: float) -> PureState:
    """State of (e_L, A, e_R) after the two-collision protocol from |000>.

    An e_L - A collision followed by an e_R - A collision with coupling
    (1, lam, lam) sends |000> to

        e^{-2 i lam tau} cos(t-) |0>_eL [cos(t-) |00> - i sin(t-) |11>]_{A eR}
        - sin(t-) |1>_eL [sin(t+) |01> + i cos(t+) |10>]_{A eR}

    with t- = (1 - lam) tau and t+ = (1 + lam) tau.  At lam = 1 this is
    |000> up to the phase e^{-2 i tau}; at lam = 0 it carries genuine
    tripartite entanglement while the e_L - e_R pair stays separable.
    """
    sm = np.sin((1.0 - lam) * tau)
    cm = np.cos((1.0 - lam) * tau)
    sp = np.sin((1.0 + lam) * tau)
    cp = np.cos((1.0 + lam) * tau)
    phase = np.exp(-2j * lam * tau)
    amps = np.zeros(8, dtype=complex)
    amps[0] = phase * cm * cm  # |000>
    amps[3] = phase * cm * (-1j) * sm  # |011>
    amps[5] = -sm * sp  # |101>
    amps[6] = -1j * sm * cp  # |110>
    return from_amplitudes(build_register(1, 1), amps)
