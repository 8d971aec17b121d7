"""Bipartite states on C^d (x) C^d with d = 2**m, and their Fano data."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, InvalidState
from .pauli import MAX_QUBITS, SINGLE, dense_basis

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = -1e-9


def local_dim(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    d = int(round(np.sqrt(dim)))
    if rho.ndim != 2 or rho.shape[1] != dim or d * d != dim:
        raise InvalidState(f"state of shape {rho.shape} is not a square on C^d (x) C^d")
    return d


def num_qubits(d: int) -> int:
    m = int(d).bit_length() - 1
    if d < 2 or (1 << m) != d:
        raise InvalidState(f"local dimension {d} is not a power of two")
    return m


def check_state(rho, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    d = local_dim(rho)
    m = num_qubits(d)
    if m > max_qubits:
        raise InvalidArgument(f"{m} qubits per side exceeds cap {max_qubits}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITIAN_TOL:
        raise InvalidState(f"state is not Hermitian (residual {herm:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidState(f"state trace is {tr!r}, expected 1")
    lo = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
    if lo < PSD_TOL:
        raise InvalidState(f"state has negative eigenvalue {lo:.3e}")
    return rho


def bell_diagonal_eigenvalues(lam) -> np.ndarray:
    l1, l2, l3 = lam
    return np.array([1 - l1 - l2 - l3, 1 - l1 + l2 + l3, 1 + l1 - l2 + l3, 1 + l1 + l2 - l3]) / 4


def check_bell_diagonal(lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (3,):
        raise InvalidArgument("Bell-diagonal parameters must be a triple")
    ev = bell_diagonal_eigenvalues(lam)
    k = int(np.argmin(ev))
    if ev[k] < -1e-12:
        raise InvalidState(f"Bell-diagonal parameters {tuple(lam)} give eigenvalue {ev[k]:.6g} (index {k})")
    return lam


def bell_diagonal(l1: float, l2: float, l3: float) -> np.ndarray:
    """(1/4)[I(x)I + sum_i l_i s_i (x) s_i]."""
    lam = check_bell_diagonal((l1, l2, l3))
    rho = np.eye(4, dtype=complex)
    for i in range(3):
        rho += lam[i] * np.kron(SINGLE[i + 1], SINGLE[i + 1])
    return rho / 4


def singlet() -> np.ndarray:
    return bell_diagonal(-1, -1, -1)


def werner(w: float) -> np.ndarray:
    """w * singlet + (1 - w) * I/4."""
    return bell_diagonal(-w, -w, -w)


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d * d, dtype=complex) / (d * d)


def product_ket(*kets) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for k in kets:
        out = np.kron(out, np.asarray(k, dtype=complex))
    return out


def pure(ket) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    return np.outer(ket, ket.conj())


def m_copies(psi, m: int, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """Tensor power of a two-qubit state with Alice's qubits grouped first.

    Copy k contributes qubits 2k (Alice) and 2k+1 (Bob) to the raw Kronecker
    power; they are moved to positions k and m + k respectively.
    """
    psi = check_state(psi)
    if psi.shape != (4, 4):
        raise InvalidArgument("m_copies expects a two-qubit state")
    if not 1 <= m <= max_qubits:
        raise InvalidArgument(f"copy count must be in [1, {max_qubits}], got {m}")
    rho = psi
    for _ in range(m - 1):
        rho = np.kron(rho, psi)
    if m == 1:
        return rho.copy()
    order = [2 * k for k in range(m)] + [2 * k + 1 for k in range(m)]
    t = rho.reshape([2] * (4 * m))
    t = t.transpose(order + [2 * m + q for q in order])
    return t.reshape(4**m, 4**m)


def apply_local(rho, U, V) -> np.ndarray:
    """(U (x) V) rho (U (x) V)^dagger."""
    W = np.kron(U, V)
    return W @ rho @ W.conj().T


@dataclass(frozen=True)
class Correlations:
    """Fano coefficients of a state in the Pauli-string basis."""

    m: int
    t: np.ndarray  # (4**m - 1, 4**m - 1), t[u-1, v-1]
    p: np.ndarray  # Alice local vector
    q: np.ndarray  # Bob local vector


def correlation_matrix(rho) -> Correlations:
    rho = np.asarray(rho, dtype=complex)
    d = local_dim(rho)
    m = num_qubits(d)
    P = dense_basis(m)
    R = rho.reshape(d, d, d, d)
    # Tr[(P_u (x) P_v) rho] = sum P_u[c,a] P_v[e,b] rho[a b, c e]
    t = np.einsum("uca,veb,abce->uv", P, P, R, optimize=True).real
    red_a = np.einsum("abcb->ac", R)
    red_b = np.einsum("abae->be", R)
    p = np.einsum("uca,ac->u", P, red_a).real
    q = np.einsum("veb,be->v", P, red_b).real
    return Correlations(m, t, p, q)


def fano_state(r, s, lam, U=None, V=None) -> np.ndarray:
    """Two-qubit state from rotated-frame Fano data, optionally conjugated by U (x) V."""
    rho = np.eye(4, dtype=complex)
    for i in range(3):
        rho += r[i] * np.kron(SINGLE[i + 1], SINGLE[0])
        rho += s[i] * np.kron(SINGLE[0], SINGLE[i + 1])
        rho += lam[i] * np.kron(SINGLE[i + 1], SINGLE[i + 1])
    rho /= 4
    if U is not None or V is not None:
        rho = apply_local(rho, np.eye(2) if U is None else U, np.eye(2) if V is None else V)
    return rho


def su2_from_so3(R) -> np.ndarray:
    """U in SU(2) with U s_j U^dagger = sum_i R[i, j] s_i.

    Solved as the null space of the linear conditions U s_j - (R s)_j U = 0,
    which is robust for every rotation angle including pi.
    """
    R = np.asarray(R, dtype=float)
    sig = SINGLE[1:]
    rows = []
    for j in range(3):
        target = sum(R[i, j] * sig[i] for i in range(3))
        # vec(U s) - vec(T U) with row-major vec: U s -> kron(I, s^T), T U -> kron(T, I)
        rows.append(np.kron(np.eye(2), sig[j].T) - np.kron(target, np.eye(2)))
    L = np.vstack(rows)
    _, _, vh = np.linalg.svd(L)
    U = vh[-1].conj().reshape(2, 2)
    U = U / np.sqrt(np.abs(np.linalg.det(U)))
    U = U / np.sqrt(np.linalg.det(U))
    return U


def so3_from_su2(U) -> np.ndarray:
    sig = SINGLE[1:]
    return np.array([[0.5 * np.trace(sig[i] @ U @ sig[j] @ U.conj().T).real for j in range(3)] for i in range(3)])


@dataclass(frozen=True)
class TwoQubitFano:
    r: np.ndarray
    s: np.ndarray
    lam: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def singular_values(self) -> np.ndarray:
        return np.abs(self.lam)

    def rotated_state(self) -> np.ndarray:
        return fano_state(self.r, self.s, self.lam)

    def reconstruct(self) -> np.ndarray:
        return fano_state(self.r, self.s, self.lam, self.U, self.V)


def _proper_factors(T):
    W, sv, Zt = np.linalg.svd(T)
    lam = sv.copy()
    Zm = Zt.T
    if np.linalg.det(W) < 0:
        W[:, -1] *= -1
        lam[-1] *= -1
    if np.linalg.det(Zm) < 0:
        Zm[:, -1] *= -1
        lam[-1] *= -1
    return W, lam, Zm


def diagonalize_two_qubit(psi, tol: float = 1e-12) -> TwoQubitFano:
    """Local-unitary frame in which the 3x3 correlation matrix is diagonal."""
    psi = check_state(psi)
    if psi.shape != (4, 4):
        raise InvalidArgument("diagonalize_two_qubit expects a two-qubit state")
    c = correlation_matrix(psi)
    T = c.t.copy()
    r, s = c.p.copy(), c.q.copy()
    if np.max(np.abs(T - np.diag(np.diag(T)))) <= tol:
        return TwoQubitFano(r, s, np.diag(T).copy(), np.eye(2, dtype=complex), np.eye(2, dtype=complex))
    R, lam, S = _proper_factors(T)
    U = su2_from_so3(R)
    V = su2_from_so3(S)
    return TwoQubitFano(R.T @ r, S.T @ s, lam, U, V)


def pair_block(rho) -> np.ndarray:
    """Average over qubit pairs k of the 3x3 block <s_i^(k) (x) s_j^(k)>.

    For a tensor power of a two-qubit state every pair block equals that
    state's correlation matrix.
    """
    rho = np.asarray(rho, dtype=complex)
    d = local_dim(rho)
    m = num_qubits(d)
    c = correlation_matrix(rho)
    T = np.zeros((3, 3))
    for k in range(m):
        idx = [a * 4 ** (m - 1 - k) - 1 for a in (1, 2, 3)]
        T += c.t[np.ix_(idx, idx)]
    return T / m


def tensor_power(U, m: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(m):
        out = np.kron(out, U)
    return out


def canonical_frame(rho, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Local unitaries (U, V) that diagonalize the averaged pair block.

    Returns single-qubit unitaries lifted to ``U^{(x) m}``; the identity is
    returned when the block is already diagonal.
    """
    rho = np.asarray(rho, dtype=complex)
    m = num_qubits(local_dim(rho))
    T = pair_block(rho)
    if np.max(np.abs(T - np.diag(np.diag(T)))) <= tol:
        eye = np.eye(2**m, dtype=complex)
        return eye, eye.copy()
    R, _, S = _proper_factors(T)
    return tensor_power(su2_from_so3(R), m), tensor_power(su2_from_so3(S), m)


def random_unitary(d: int, rng) -> np.ndarray:
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_state(d: int, rng, rank: int | None = None) -> np.ndarray:
    """Random state on C^d (x) C^d from a complex Ginibre matrix of the given rank."""
    dim = d * d
    k = int(rng.integers(1, dim + 1)) if rank is None else rank
    G = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
