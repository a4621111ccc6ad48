"""Collision unitary, register preparation, schedules."""
import numpy as np
import pytest
from scipy.linalg import expm

from collisim.dynamics import (
    ORDER_L_FIRST,
    ORDER_R_FIRST,
    AncillaPrep,
    CouplingSpec,
    bell_basis,
    build_register,
    heisenberg_unitary,
    prepare_environments,
    prepare_from_unitaries,
    run_protocol,
    standard_schedule,
)
from collisim.haar import RngStream, sample_haar_unitary
from collisim.qstate import QubitRegister, from_amplitudes, partial_trace

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def hamiltonian(j1, j2, j3):
    return (
        j1 * np.kron(SX, SX) + j2 * np.kron(SY, SY) + j3 * np.kron(SZ, SZ)
    )


def test_unitary_matches_matrix_exponential(rng):
    for _ in range(25):
        tau = rng.uniform(0.05, 2.0)
        jv = tuple(rng.uniform(-2, 2, size=3))
        u = heisenberg_unitary(CouplingSpec(tau, j_vector=jv))
        ref = expm(-1j * tau * hamiltonian(*jv))
        assert np.allclose(u, ref, atol=1e-12)


def test_bell_basis_diagonalizes_coupling(rng):
    b = bell_basis()
    assert np.allclose(b.T @ b, np.eye(4), atol=1e-15)
    for lam in (-1.3, 0.0, 0.5, 1.0):
        h = hamiltonian(1.0, lam, lam)
        d = b.T @ h @ b
        assert np.allclose(d, np.diag(np.diag(d)), atol=1e-12)
        # Phi+, Phi-, Psi+, Psi- eigenvalues for couplings (1, lam, lam)
        assert np.allclose(
            np.diag(d), [1.0, 2 * lam - 1.0, 1.0, -(1.0 + 2 * lam)], atol=1e-12
        )


def test_closed_form_at_lambda_zero():
    tau = 0.8
    u = heisenberg_unitary(CouplingSpec(tau, 0.0))
    expect = np.cos(tau) * np.eye(4) - 1j * np.sin(tau) * np.kron(SX, SX)
    assert np.allclose(u, expect, atol=1e-12)


def test_closed_form_at_lambda_one():
    # isotropic point: e^{-i tau} on the triplet, e^{3 i tau} on the singlet
    tau = 1.1
    u = heisenberg_unitary(CouplingSpec(tau, 1.0))
    b = bell_basis()
    phases = np.diag(b.T @ u @ b)
    assert np.allclose(
        phases,
        [np.exp(-1j * tau), np.exp(-1j * tau), np.exp(-1j * tau), np.exp(3j * tau)],
        atol=1e-12,
    )


def test_unitary_symmetric_under_qubit_swap(rng):
    swap = np.zeros((4, 4))
    swap[0, 0] = swap[3, 3] = swap[1, 2] = swap[2, 1] = 1.0
    u = heisenberg_unitary(CouplingSpec(1.3, -0.7))
    assert np.allclose(swap @ u @ swap, u, atol=1e-13)


def test_conserved_quantities(rng):
    sx_tot = np.kron(SX, np.eye(2)) + np.kron(np.eye(2), SX)
    sz_tot = np.kron(SZ, np.eye(2)) + np.kron(np.eye(2), SZ)
    for lam in (-2.0, 0.0, 0.4, 1.0):
        u = heisenberg_unitary(CouplingSpec(0.9, lam))
        assert np.allclose(u @ sx_tot, sx_tot @ u, atol=1e-12)
        if lam == 1.0:
            assert np.allclose(u @ sz_tot, sz_tot @ u, atol=1e-12)


def test_unitary_cache_returns_same_object():
    a = heisenberg_unitary(CouplingSpec(0.5, 0.25))
    b = heisenberg_unitary(CouplingSpec(0.5, 0.25))
    assert a is b


def test_register_layout():
    assert build_register(2, 1).labels == ("eL1", "eL2", "A", "eR1")
    assert build_register(1, 1, purifier=True).labels == ("eL1", "A", "P", "eR1")
    assert build_register(0, 3).labels == ("A", "eR1", "eR2", "eR3")
    with pytest.raises(ValueError):
        build_register(-1, 0)


def test_prepare_from_unitaries_layout(rng):
    reg = build_register(1, 2)
    u_l = sample_haar_unitary(2, rng)
    u_r = sample_haar_unitary(4, rng)
    psi = prepare_from_unitaries(reg, AncillaPrep.ground(), u_l, u_r)
    expect = np.kron(u_l[:, 0], np.kron([1.0, 0.0], u_r[:, 0]))
    assert np.allclose(psi.amplitudes, expect, atol=1e-15)


def test_prepare_superposition_block():
    reg = build_register(0, 1)
    prep = AncillaPrep.superposition(np.pi / 2, np.pi / 4)
    psi = prepare_from_unitaries(reg, prep, None, np.eye(2, dtype=complex))
    s = np.sqrt(0.5)
    expect = np.kron([s, s * np.exp(1j * np.pi / 4)], [1.0, 0.0])
    assert np.allclose(psi.amplitudes, expect, atol=1e-15)


def test_prepare_mixed_reduces_to_diagonal():
    reg = build_register(0, 1, purifier=True)
    psi = prepare_from_unitaries(reg, AncillaPrep.mixed(0.3), None, np.eye(2, dtype=complex))
    rho_a = partial_trace(psi, [reg.index_of("A")])
    assert np.allclose(rho_a.matrix, np.diag([0.3, 0.7]), atol=1e-14)
    # rho0 = 1 is the ground preparation up to the inert purifier
    pure = prepare_from_unitaries(reg, AncillaPrep.mixed(1.0), None, np.eye(2, dtype=complex))
    rho_a = partial_trace(pure, [reg.index_of("A")])
    assert np.allclose(rho_a.matrix, np.diag([1.0, 0.0]), atol=1e-14)


def test_prepare_rejects_mismatched_unitaries():
    reg = build_register(1, 1)
    with pytest.raises(ValueError):
        prepare_from_unitaries(reg, AncillaPrep.ground(), None, np.eye(2, dtype=complex))
    with pytest.raises(ValueError):
        prepare_from_unitaries(
            reg, AncillaPrep.mixed(0.5), np.eye(2, dtype=complex), np.eye(2, dtype=complex)
        )
    with pytest.raises(ValueError):
        prepare_from_unitaries(
            reg, AncillaPrep.ground(), np.eye(4, dtype=complex), np.eye(2, dtype=complex)
        )


def test_prepare_environments_draw_order():
    # left drawn before right: left unitary of a (1,1) register equals
    # the first dim-2 draw of the same stream
    reg = build_register(1, 1)
    gen = RngStream(4, 2).generator()
    psi = prepare_environments(reg, AncillaPrep.ground(), gen)
    gen2 = RngStream(4, 2).generator()
    u_l = sample_haar_unitary(2, gen2)
    u_r = sample_haar_unitary(2, gen2)
    expect = prepare_from_unitaries(reg, AncillaPrep.ground(), u_l, u_r)
    assert np.array_equal(psi.amplitudes, expect.amplitudes)


def test_schedule_orders_and_rounds():
    cpl = CouplingSpec(1.0, 1.0)
    s = standard_schedule(2, ORDER_R_FIRST, cpl, "eL1", "eR1")
    assert [ev.target for ev in s.events] == ["eR1", "eL1", "eR1", "eL1"]
    s = standard_schedule(1, ORDER_L_FIRST, cpl, "eL1", "eR1")
    assert [ev.target for ev in s.events] == ["eL1", "eR1"]
    s = standard_schedule(3, ORDER_R_FIRST, cpl, None, "eR1")
    assert [ev.target for ev in s.events] == ["eR1"] * 3
    s18 = standard_schedule(18, ORDER_L_FIRST, cpl, "eL1", "eR1")
    assert len(s18.events) == 36


def test_schedule_rejects_bad_input():
    cpl = CouplingSpec(1.0)
    with pytest.raises(ValueError):
        standard_schedule(0, ORDER_R_FIRST, cpl, "eL1", "eR1")
    with pytest.raises(ValueError):
        standard_schedule(1, "sideways", cpl, "eL1", "eR1")
    with pytest.raises(ValueError):
        standard_schedule(1, ORDER_R_FIRST, cpl, None, None)


def test_protocol_locality(rng):
    # collision on (A, eR1) leaves the eL2 marginal untouched
    reg = build_register(2, 1)
    psi = prepare_environments(reg, AncillaPrep.ground(), rng)
    before = partial_trace(psi, [1]).matrix
    out = run_protocol(
        psi, standard_schedule(1, ORDER_R_FIRST, CouplingSpec(1.0, 0.3), None, "eR1")
    )
    after = partial_trace(out, [1]).matrix
    assert np.allclose(before, after, atol=1e-13)


def test_protocol_norm_over_many_events(rng):
    reg = build_register(1, 1)
    psi = prepare_environments(reg, AncillaPrep.ground(), rng)
    out = run_protocol(
        psi, standard_schedule(50, ORDER_R_FIRST, CouplingSpec(0.7, -1.4), "eL1", "eR1")
    )
    assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-12


def test_zero_tau_schedule_is_identity(rng):
    reg = build_register(1, 1)
    psi = prepare_environments(reg, AncillaPrep.ground(), rng)
    out = run_protocol(
        psi, standard_schedule(2, ORDER_L_FIRST, CouplingSpec(0.0, 1.0), "eL1", "eR1")
    )
    assert np.allclose(out.amplitudes, psi.amplitudes, atol=1e-15)


def test_protocol_matches_direct_kron_evolution(rng):
    # independent dense-matrix evolution of the full 3-qubit register
    reg = build_register(1, 1)
    psi = prepare_environments(reg, AncillaPrep.ground(), rng)
    tau, lam = 1.2, -0.6
    u = heisenberg_unitary(CouplingSpec(tau, lam))
    # register (eL1, A, eR1): collision acts on (A, target) in that order
    swap = np.zeros((4, 4))
    swap[0, 0] = swap[3, 3] = swap[1, 2] = swap[2, 1] = 1.0
    u_el_a = np.kron(swap @ u @ swap, np.eye(2))  # (eL1, A) block, ancilla second
    u_a_er = np.kron(np.eye(2), u)  # (A, eR1) block, ancilla first
    expect = u_a_er @ u_el_a @ psi.amplitudes
    out = run_protocol(
        psi, standard_schedule(1, ORDER_L_FIRST, CouplingSpec(tau, lam), "eL1", "eR1")
    )
    assert np.allclose(out.amplitudes, expect, atol=1e-12)


def test_coupling_spec_j_vector_overrides_lambda():
    assert CouplingSpec(1.0, 0.5).couplings() == (1.0, 0.5, 0.5)
    assert CouplingSpec(1.0, 0.5, (2.0, 0.0, -1.0)).couplings() == (2.0, 0.0, -1.0)
