from math import comb

import numpy as np
import pytest

from kicked_ising import oracle
from kicked_ising.symbasis import (
    ALL_ZERO,
    PLUS_Y,
    CoherentStateParams,
    SymmetricState,
    build_parity_basis,
    coherent_state,
    from_parity,
    parity_operator,
    to_parity,
)

SY = np.array([[0, -1j], [1j, 0]])


def full_parity(n):
    out = np.ones((1, 1))
    for _ in range(n):
        out = np.kron(out, SY)
    return out


def test_all_zero_coherent_state():
    np.testing.assert_array_equal(coherent_state(ALL_ZERO, 5).amplitudes, [1, 0, 0, 0, 0, 0])


def test_theta_zero_ignores_phi():
    c = coherent_state(CoherentStateParams(0.0, 1.234), 7).amplitudes
    np.testing.assert_allclose(c, np.eye(8)[0], atol=1e-15)


def test_plus_y_two_qubits():
    c = coherent_state(PLUS_Y, 2).amplitudes
    np.testing.assert_allclose(c, [0.5, 1j / np.sqrt(2), -0.5], atol=1e-15)


def test_plus_y_five_qubits_in_parity_basis():
    d = build_parity_basis(5)
    coords = to_parity(coherent_state(PLUS_Y, 5), d)
    expected = [0.25, 1j * np.sqrt(5) / 4, -np.sqrt(10) / 4, 0, 0, 0]
    np.testing.assert_allclose(coords, expected, atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 10])
def test_coherent_state_matches_product_state(n, rng):
    for _ in range(5):
        theta, phi = rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi)
        single = [np.cos(theta / 2), np.exp(-1j * phi) * np.sin(theta / 2)]
        projected, residual = oracle.project_symmetric(oracle.product_state(single, n))
        assert residual < 1e-12
        c = coherent_state(CoherentStateParams(theta, phi), n).amplitudes
        np.testing.assert_allclose(c, projected.amplitudes, atol=1e-12)


def test_coherent_state_large_n_is_finite_and_normalized():
    c = coherent_state(CoherentStateParams(1.0, 0.3), 1000).amplitudes
    assert np.all(np.isfinite(c))
    assert abs(np.linalg.norm(c) - 1) < 1e-12


@pytest.mark.parametrize("bad", [0, -3, 2.5])
def test_invalid_n_rejected(bad):
    with pytest.raises(ValueError):
        coherent_state(ALL_ZERO, bad)
    with pytest.raises(ValueError):
        parity_operator(bad)


def test_nonfinite_angles_rejected():
    with pytest.raises(ValueError):
        CoherentStateParams(np.nan, 0.0)


def test_state_length_checked():
    with pytest.raises(ValueError):
        SymmetricState(3, np.ones(3))


def test_parity_single_qubit_is_sigma_y():
    np.testing.assert_array_equal(parity_operator(1), SY)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_parity_matches_full_space(n):
    # sigma^y on every qubit in 2^N, then read off Dicke components
    big = full_parity(n)
    for q in range(n + 1):
        w = oracle.embed_symmetric(SymmetricState.basis_state(n, q))
        image, residual = oracle.project_symmetric(oracle.FullState(n, big @ w.amplitudes))
        assert residual < 1e-13
        np.testing.assert_allclose(image.amplitudes, parity_operator(n)[:, q], atol=1e-13)


def test_parity_five_qubits_w0():
    assert parity_operator(5)[5, 0] == 1j


@pytest.mark.parametrize("n", range(1, 41))
def test_parity_is_involution(n):
    p = parity_operator(n)
    assert np.abs(p @ p - np.eye(n + 1)).max() < 1e-12


def test_parity_basis_five_qubits():
    b = build_parity_basis(5).basis_matrix
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(b[:, 0], [s, 0, 0, 0, 0, 1j * s])   # phi_0^+
    np.testing.assert_allclose(b[:, 3], [s, 0, 0, 0, 0, -1j * s])  # phi_0^-
    # phi_1^+ = (w_1 - i wbar_1)/sqrt(2): i^(5-2) = -i
    np.testing.assert_allclose(b[:, 1], [0, s, 0, 0, -1j * s, 0])


def test_parity_basis_six_qubits():
    d = build_parity_basis(6)
    assert (d.plus_dim, d.minus_dim) == (4, 3)
    np.testing.assert_allclose(d.basis_matrix[:, 3], np.eye(7)[3])
    s = 1 / np.sqrt(2)
    # phi_0^+/- = (w_0 -/+ wbar_0)/sqrt(2), phi_1^+/- = (w_1 +/- wbar_1)/sqrt(2)
    np.testing.assert_allclose(d.basis_matrix[:, 0], [s, 0, 0, 0, 0, 0, -s])
    np.testing.assert_allclose(d.basis_matrix[:, 1], [0, s, 0, 0, 0, s, 0])
    np.testing.assert_allclose(d.basis_matrix[:, 4], [s, 0, 0, 0, 0, 0, s])


def test_parity_basis_seven_qubits():
    b = build_parity_basis(7).basis_matrix
    s = 1 / np.sqrt(2)
    # phi_0^+ = (w_0 - i wbar_0)/sqrt(2), phi_1^+ = (w_1 + i wbar_1)/sqrt(2)
    np.testing.assert_allclose(b[:, 0], [s, 0, 0, 0, 0, 0, 0, -1j * s])
    np.testing.assert_allclose(b[:, 1], [0, s, 0, 0, 0, 0, 1j * s, 0])


def test_parity_basis_two_qubits_signs():
    d = build_parity_basis(2)
    b = d.basis_matrix
    assert np.abs(b.conj().T @ b - np.eye(3)).max() < 1e-12
    signs = [np.vdot(b[:, k], parity_operator(2) @ b[:, k]).real for k in range(3)]
    np.testing.assert_allclose(signs, [1, 1, -1], atol=1e-12)


@pytest.mark.parametrize("n", range(1, 41))
def test_parity_basis_eigenvectors(n):
    d = build_parity_basis(n)
    b = d.basis_matrix
    assert np.abs(b.conj().T @ b - np.eye(n + 1)).max() < 1e-12
    if n % 2:
        assert d.plus_dim == d.minus_dim == (n + 1) // 2
    else:
        assert (d.plus_dim, d.minus_dim) == (n // 2 + 1, n // 2)
    p = parity_operator(n)
    assert np.abs(p @ d.plus_columns - d.plus_columns).max() < 1e-12
    assert np.abs(p @ d.minus_columns + d.minus_columns).max() < 1e-12


def test_all_zero_in_parity_coordinates():
    coords = to_parity(coherent_state(ALL_ZERO, 5), build_parity_basis(5))
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(coords, [s, 0, 0, s, 0, 0], atol=1e-15)


def test_parity_round_trip(rng):
    for n in (1, 4, 9, 20):
        d = build_parity_basis(n)
        psi = SymmetricState.random(n, rng)
        back = from_parity(to_parity(psi, d), d)
        assert np.abs(back.amplitudes - psi.amplitudes).max() < 1e-13
        assert abs(np.linalg.norm(to_parity(psi, d)) - 1) < 1e-13


def test_parity_dimension_mismatch():
    with pytest.raises(ValueError):
        to_parity(coherent_state(ALL_ZERO, 4), build_parity_basis(5))
    with pytest.raises(ValueError):
        from_parity(np.zeros(3), build_parity_basis(5))


def test_dicke_normalization_constant():
    # |w_q> has C(N, q) equal components of size 1/sqrt(C(N, q))
    n = 6
    for q in range(n + 1):
        amps = oracle.embed_symmetric(SymmetricState.basis_state(n, q)).amplitudes
        nz = amps[np.abs(amps) > 0]
        assert len(nz) == comb(n, q)
        np.testing.assert_allclose(nz, 1 / np.sqrt(comb(n, q)))
