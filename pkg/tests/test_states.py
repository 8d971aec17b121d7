import numpy as np
import pytest
from hypothesis import given, strategies as st

from bellcert import states
from bellcert.errors import InvalidArgument, InvalidState
from bellcert.pauli import SINGLE

seeds = st.integers(0, 2**32 - 1)


def test_validation_errors():
    with pytest.raises(InvalidState):
        states.check_state(np.eye(4) / 2)
    with pytest.raises(InvalidState):
        states.check_state(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(InvalidState):
        states.check_state(np.eye(9) / 9)
    with pytest.raises(InvalidArgument):
        states.check_state(np.eye(32**2) / 32**2)


def test_bell_diagonal_positivity_error_names_eigenvalue():
    with pytest.raises(InvalidState, match="index 0"):
        states.bell_diagonal(0.5, 0.6, 0.9)


def test_singlet_and_werner():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert np.allclose(states.singlet(), np.outer(psi, psi))
    w = 0.37
    assert np.allclose(states.werner(w), w * states.singlet() + (1 - w) * np.eye(4) / 4)


def test_correlation_matrix_of_singlet():
    c = states.correlation_matrix(states.singlet())
    assert np.allclose(c.t, -np.eye(3)) and np.allclose(c.p, 0) and np.allclose(c.q, 0)


def test_m_copies_factorises_correlations():
    lam = (-0.3, 0.2, -0.5)
    t = states.correlation_matrix(states.m_copies(states.bell_diagonal(*lam), 2)).t
    full = np.array([1, *lam])
    assert np.allclose(t, np.diag(np.kron(full, full)[1:]))


@given(seeds)
def test_fano_roundtrip(seed):
    rng = np.random.default_rng(seed)
    rho = states.random_state(2, rng)
    f = states.diagonalize_two_qubit(rho)
    assert np.allclose(f.reconstruct(), rho, atol=1e-10)
    t = states.correlation_matrix(f.rotated_state()).t
    assert np.allclose(t, np.diag(f.lam), atol=1e-10)
    assert np.allclose(np.sort(f.singular_values), np.sort(np.linalg.svd(states.correlation_matrix(rho).t, compute_uv=False)))


@given(seeds)
def test_su2_lift(seed):
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    R = Q * np.sign(np.linalg.det(Q))
    U = states.su2_from_so3(R)
    assert np.allclose(U @ U.conj().T, np.eye(2))
    for j in range(3):
        assert np.allclose(U @ SINGLE[j + 1] @ U.conj().T, sum(R[i, j] * SINGLE[i + 1] for i in range(3)))


def test_diagonal_state_keeps_identity_frame():
    f = states.diagonalize_two_qubit(states.werner(0.5))
    assert np.allclose(f.U, np.eye(2)) and np.allclose(f.lam, -0.5)


def test_canonical_frame_diagonalises_copies(rng):
    u, v = states.random_unitary(2, rng), states.random_unitary(2, rng)
    rho = states.m_copies(states.apply_local(states.bell_diagonal(-0.2, -0.3, -0.6), u, v), 2)
    U, V = states.canonical_frame(rho)
    t = states.correlation_matrix(states.apply_local(rho, U.conj().T, V.conj().T)).t
    assert np.allclose(t, np.diag(np.diag(t)), atol=1e-10)
