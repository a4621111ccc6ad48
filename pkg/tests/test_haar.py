"""Euler-angle sampling and unitary composition."""
import numpy as np
import pytest

from collisim.haar import (
    EulerAngleSet,
    RngStream,
    _phi_from_uniform,
    assert_unitary,
    compose_unitary,
    ginibre_qr_haar,
    sample_euler_angles,
    sample_haar_unitary,
)


def test_rng_stream_reproducible_and_independent():
    a = RngStream(11, 0).generator().random(5)
    b = RngStream(11, 0).generator().random(5)
    c = RngStream(11, 1).generator().random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_rng_stream_rejects_negative():
    with pytest.raises(ValueError):
        RngStream(-1, 0)


def test_phi_inverse_cdf_endpoints():
    for i in (1, 2, 5):
        assert _phi_from_uniform(0.0, i) == 0.0
        assert abs(_phi_from_uniform(1.0, i) - np.pi / 2) < 1e-15


def test_phi_first_index_is_uniform_in_sin_squared():
    # i = 1: sin^2(phi) = xi exactly
    for xi in (0.0, 0.1, 0.5, 0.9375):
        assert abs(np.sin(_phi_from_uniform(xi, 1)) ** 2 - xi) < 1e-14


def test_phi_law_moments_by_quadrature():
    # E[sin^2 phi_i] = 1/(i+1), midpoint rule over the uniform seed
    n = 20000
    xs = (np.arange(n) + 0.5) / n
    for i in range(1, 6):
        val = np.mean([np.sin(_phi_from_uniform(x, i)) ** 2 for x in xs])
        assert abs(val - 1.0 / (i + 1)) < 1e-6


def test_compose_identity_from_zero_angles():
    for dim in (2, 3, 4):
        shape = (dim + 1, dim + 1)
        angles = EulerAngleSet(
            dim, np.zeros(shape), np.zeros(shape), np.zeros(dim + 1), 0.0
        )
        assert np.allclose(compose_unitary(angles), np.eye(dim), atol=1e-15)


def test_compose_two_dim_quarter_turn():
    shape = (3, 3)
    phi = np.zeros(shape)
    phi[1, 2] = np.pi / 2
    angles = EulerAngleSet(2, phi, np.zeros(shape), np.zeros(3), 0.0)
    assert np.allclose(compose_unitary(angles), [[0, 1], [-1, 0]], atol=1e-15)


def test_compose_two_dim_closed_form(rng):
    for _ in range(20):
        f = rng.uniform(0, np.pi / 2)
        p = rng.uniform(0, 2 * np.pi)
        c = rng.uniform(0, 2 * np.pi)
        a = rng.uniform(0, 2 * np.pi)
        shape = (3, 3)
        phi, psi = np.zeros(shape), np.zeros(shape)
        phi[1, 2], psi[1, 2] = f, p
        chi = np.zeros(3)
        chi[2] = c
        angles = EulerAngleSet(2, phi, psi, chi, a)
        expect = np.exp(1j * a) * np.array(
            [
                [np.exp(1j * p) * np.cos(f), np.exp(1j * c) * np.sin(f)],
                [-np.exp(-1j * c) * np.sin(f), np.exp(-1j * p) * np.cos(f)],
            ]
        )
        assert np.allclose(compose_unitary(angles), expect, atol=1e-12)


def test_sampled_unitaries_are_unitary():
    for dim in (2, 3, 5, 8):
        gen = RngStream(5, dim).generator()
        u = sample_haar_unitary(dim, gen)
        assert_unitary(u)
        assert abs(abs(np.linalg.det(u)) - 1.0) < 1e-10


def test_sampling_is_bitwise_deterministic():
    u1 = sample_haar_unitary(4, RngStream(9, 3).generator())
    u2 = sample_haar_unitary(4, RngStream(9, 3).generator())
    assert u1.tobytes() == u2.tobytes()


def test_sample_equals_compose_of_sampled_angles():
    angles = sample_euler_angles(3, RngStream(2, 7).generator())
    u = sample_haar_unitary(3, RngStream(2, 7).generator())
    assert np.array_equal(compose_unitary(angles), u)


def test_sampled_angles_validate_and_digest():
    angles = sample_euler_angles(4, RngStream(1, 1).generator())
    angles.validate()
    d = angles.digest()
    assert len(d) == 16 and int(d, 16) >= 0
    assert d == angles.digest()
    other = sample_euler_angles(4, RngStream(1, 2).generator())
    assert other.digest() != d


def test_angle_validation_rejects_out_of_range():
    shape = (3, 3)
    phi = np.zeros(shape)
    phi[1, 2] = 2.0  # > pi/2
    angles = EulerAngleSet(2, phi, np.zeros(shape), np.zeros(3), 0.0)
    with pytest.raises(ValueError):
        angles.validate()


def test_angle_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        EulerAngleSet(3, np.zeros((3, 3)), np.zeros((4, 4)), np.zeros(4), 0.0)


def test_ginibre_reference_sampler():
    u = ginibre_qr_haar(4, RngStream(3, 0).generator())
    assert_unitary(u)
    v = ginibre_qr_haar(4, RngStream(3, 0).generator())
    assert np.array_equal(u, v)


def test_first_row_moment_rough():
    # E|U_11|^2 = 1/N; loose 4-sigma gate at modest draw count
    dim, draws = 3, 4000
    acc = np.empty(draws)
    for k in range(draws):
        u = sample_haar_unitary(dim, RngStream(31, k).generator())
        acc[k] = abs(u[0, 0]) ** 2
    se = acc.std(ddof=1) / np.sqrt(draws)
    assert abs(acc.mean() - 1.0 / dim) < 4 * se


def test_assert_unitary_catches_defect():
    u = np.eye(3, dtype=complex)
    u[0, 0] = 1.0 + 1e-6
    with pytest.raises(ValueError):
        assert_unitary(u)
