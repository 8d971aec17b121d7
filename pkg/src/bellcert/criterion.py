"""The state criterion M_n and its closed-form special cases.

M_n(rho) is the largest restricted correlation mass

    sqrt( sum_{u in S_A} sum_{v in S_B} t_uv**2 )

over n-element anticommuting Alice sets S_A and maximal anticommuting Bob
sets S_B. Any frame gives a valid lower bound 2**(n-1) * M_n on the optimal
Bell value, since the observables in ``observables.construct`` realise it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import states
from .anticommuting import AnticommutingSet, maximal_index_sets
from .errors import FrameRejected, InvalidArgument
from .functional import local_bound
from .pauli import PauliString

TIE_TOL = 1e-12
FRAME_TOL = 1e-8
ZERO_ROW_TOL = 1e-28

VIOLATES = "violates"
INCONCLUSIVE = "inconclusive"
EXACT_NO_VIOLATION = "exact-no-violation"


def threshold(n: int) -> float:
    """2**(1-n) times the local bound; for n = 3 this is 3/2."""
    return local_bound(n) / 2 ** (n - 1)


@dataclass
class CriterionReport:
    n: int
    m: int
    m_n_value: float
    best_alice_subset: AnticommutingSet
    best_bob_set: AnticommutingSet
    threshold: float
    verdict: str
    margin: float
    bell_lower_bound: float
    frame: str = "identity"
    U: np.ndarray | None = field(default=None, repr=False)
    V: np.ndarray | None = field(default=None, repr=False)
    notes: list[str] = field(default_factory=list)

    @property
    def violates(self) -> bool:
        return self.verdict == VIOLATES

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "m_n_value": self.m_n_value,
            "best_alice_subset": list(self.best_alice_subset.labels),
            "best_bob_set": list(self.best_bob_set.labels),
            "threshold": self.threshold,
            "verdict": self.verdict,
            "margin": self.margin,
            "bell_lower_bound": self.bell_lower_bound,
            "frame": self.frame,
            "notes": list(self.notes),
        }


@lru_cache(maxsize=None)
def _alice_candidates(m: int, n: int) -> np.ndarray:
    """Distinct n-subsets of all maximal sets, rows sorted lexicographically (0-based)."""
    subs = set()
    for idx in maximal_index_sets(m):
        subs.update(combinations(idx, n))
    arr = np.array(sorted(subs), dtype=np.int64) - 1
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _bob_indicator(m: int) -> np.ndarray:
    sets = maximal_index_sets(m)
    ind = np.zeros((len(sets), 4**m - 1))
    for k, idx in enumerate(sets):
        ind[k, [u - 1 for u in idx]] = 1.0
    ind.setflags(write=False)
    return ind


def search(t: np.ndarray, m: int, n: int) -> tuple[float, tuple[int, ...], tuple[int, ...]]:
    """Exhaustive maximisation of the restricted mass.

    Returns the squared mass and the 1-based index tuples of the argmax sets;
    ties go to the lexicographically smallest (Alice, Bob) pair, skipping
    pairs with a zero-mass Alice row when a tied alternative exists.
    """
    if n > 2 * m + 1:
        raise InvalidArgument(f"insufficient anticommuting operators: n={n} > 2m+1={2 * m + 1}")
    alice = _alice_candidates(m, n)
    bob = _bob_indicator(m)
    row_mass = (t**2) @ bob.T  # (K, nB): mass of row u inside each Bob set
    per_row = row_mass[alice]  # (nA, n, nB)
    mass = per_row.sum(axis=1)  # (nA, nB)
    best = mass.max()
    near = mass >= best - TIE_TOL
    # prefer argmax pairs without zero-mass rows, which construction cannot use
    clean = near & (per_row > ZERO_ROW_TOL).all(axis=1)
    pick = clean if clean.any() else near
    flat = int(np.flatnonzero(pick.ravel())[0])
    ia, ib = divmod(flat, mass.shape[1])
    return float(best), tuple(int(u) + 1 for u in alice[ia]), maximal_index_sets(m)[ib]


def _to_set(m: int, idx) -> AnticommutingSet:
    return AnticommutingSet(m, tuple(PauliString.from_index(u, m) for u in idx))


def _resolve_frame(rho, frame):
    d = states.local_dim(rho)
    if frame is None or (isinstance(frame, str) and frame == "identity"):
        return "identity", None, None
    if isinstance(frame, str):
        if frame != "auto":
            raise InvalidArgument(f"unknown frame {frame!r}")
        U, V = states.canonical_frame(rho)
        if np.allclose(U, np.eye(d)) and np.allclose(V, np.eye(d)):
            return "identity", None, None
        return "auto", U, V
    U, V = frame
    return "user", np.asarray(U, dtype=complex), np.asarray(V, dtype=complex)


def rotate_to_frame(rho, U, V) -> np.ndarray:
    """State seen from frame (U, V): (U (x) V)^dagger rho (U (x) V)."""
    return states.apply_local(rho, U.conj().T, V.conj().T)


def m_n(rho, n: int, frame="auto") -> CriterionReport:
    """Criterion value with its argmax sets.

    ``frame`` is "auto" (diagonalize the averaged per-qubit correlation
    block by local unitaries, exact for two qubits), "identity"/None (use the
    state as given), or an explicit ``(U, V)`` pair of local unitaries.
    """
    rho = states.check_state(rho)
    d = states.local_dim(rho)
    m = states.num_qubits(d)
    if n < 2:
        raise InvalidArgument("settings count must be at least 2")
    if n > 2 * m + 1:
        raise InvalidArgument(f"insufficient anticommuting operators: n={n} > 2m+1={2 * m + 1}")
    name, U, V = _resolve_frame(rho, frame)
    work = rho if U is None else rotate_to_frame(rho, U, V)
    t = states.correlation_matrix(work).t
    sq, ia, ib = search(t, m, n)
    return _report(n, m, float(np.sqrt(max(sq, 0.0))), _to_set(m, ia), _to_set(m, ib), name, U, V)


def _report(n, m, value, sa, sb, frame="identity", U=None, V=None, exact=False) -> CriterionReport:
    thr = threshold(n)
    margin = value - thr
    if margin > 0:
        verdict = VIOLATES
    else:
        verdict = EXACT_NO_VIOLATION if exact else INCONCLUSIVE
    rep = CriterionReport(n, m, value, sa, sb, thr, verdict, margin, 2 ** (n - 1) * value, frame, U, V)
    if n == 3:
        rep.notes.append("n=3 threshold is 2^(1-n) * local bound = 3/2")
    return rep


def violates(rho, n: int, frame="auto") -> tuple[bool, float]:
    """Sufficient test: True certifies nonlocality, False is inconclusive."""
    rep = m_n(rho, n, frame)
    return rep.violates, rep.margin


def bell_diagonal_correlations(lam, m: int) -> np.ndarray:
    """Diagonal of T for m copies of a Bell-diagonal state, in basis order.

    Entry u is the product of lambda_{a_k} over the non-identity digits of u.
    """
    lam = np.asarray(lam, dtype=float)
    full = np.concatenate([[1.0], lam])
    diag = np.ones(1)
    for _ in range(m):
        diag = np.kron(diag, full)
    return diag[1:]


def m_n_bell_diagonal(lam, n: int, m: int) -> CriterionReport:
    """Closed form for m copies of a Bell-diagonal state.

    T is diagonal, so the best Bob set contains the Alice subset and the mass
    is the sum of the squared diagonal entries selected by the subset.
    """
    lam = states.check_bell_diagonal(lam)
    if m < 1:
        raise InvalidArgument("copy count must be positive")
    if n > 2 * m + 1:
        raise InvalidArgument(f"insufficient anticommuting operators: n={n} > 2m+1={2 * m + 1}")
    mu = bell_diagonal_correlations(lam, m) ** 2
    best, best_sub, best_set = -1.0, None, None
    for idx in maximal_index_sets(m):
        for sub in combinations(idx, n):
            val = sum(mu[u - 1] for u in sub)
            if val > best + TIE_TOL:
                best, best_sub, best_set = val, sub, idx
    # a Bob set containing the subset; the first such set in order
    for idx in maximal_index_sets(m):
        if set(best_sub) <= set(idx):
            best_set = idx
            break
    return _report(n, m, float(np.sqrt(best)), _to_set(m, best_sub), _to_set(m, best_set), exact=True)


def appendix_b_value(lam) -> float:
    """sqrt(l3^2 |l|^2 + l2^2): the value realised by the explicit n=4 two-copy observables."""
    l1, l2, l3 = lam
    return float(np.sqrt(l3**2 * (l1**2 + l2**2 + l3**2) + l2**2))


def _two_qubit_T(rho) -> np.ndarray:
    rho = states.check_state(rho)
    if rho.shape != (4, 4):
        raise InvalidArgument("expected a two-qubit state")
    return states.correlation_matrix(rho).t


@dataclass
class ClosedForm:
    value: float
    threshold: float
    violates: bool
    mu: np.ndarray

    @property
    def margin(self) -> float:
        return self.value - self.threshold


def m3_two_qubit(rho) -> ClosedForm:
    """sqrt(mu1 + mu2 + mu3), mu the eigenvalues of T T^T, against threshold 3/2."""
    T = _two_qubit_T(rho)
    mu = np.sort(np.linalg.eigvalsh(T @ T.T))[::-1].clip(min=0)
    val = float(np.sqrt(mu.sum()))
    thr = threshold(3)
    return ClosedForm(val, thr, val > thr, mu)


@dataclass
class HorodeckiResult:
    mu_sum: float
    violates: bool
    chsh_max: float
    mu: np.ndarray


def horodecki_chsh(rho) -> HorodeckiResult:
    """Sum of the two largest eigenvalues of T^T T; CHSH is violated iff it exceeds 1."""
    T = _two_qubit_T(rho)
    mu = np.sort(np.linalg.eigvalsh(T.T @ T))[::-1].clip(min=0)
    s = float(mu[0] + mu[1])
    return HorodeckiResult(s, s > 1, 2 * np.sqrt(s), mu)


def diagonality_residual(t: np.ndarray) -> float:
    return float(np.linalg.norm(t - np.diag(np.diag(t))))


def m_n_with_frame(rho_tilde, U, V, n: int, tol: float = FRAME_TOL) -> CriterionReport:
    """Criterion for a state whose correlation matrix a user frame diagonalizes.

    ``(U (x) V) rho_tilde (U (x) V)^dagger`` must have a diagonal correlation
    matrix; the report then carries the exact verdict and the diagonal
    entries used.
    """
    rho_tilde = states.check_state(rho_tilde)
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    rotated = states.apply_local(rho_tilde, U, V)
    t = states.correlation_matrix(rotated).t
    res = diagonality_residual(t)
    if res > tol:
        raise FrameRejected(res)
    d = states.local_dim(rho_tilde)
    m = states.num_qubits(d)
    if n > 2 * m + 1:
        raise InvalidArgument(f"insufficient anticommuting operators: n={n} > 2m+1={2 * m + 1}")
    sq, ia, ib = search(t, m, n)
    # the user frame maps the rotated state back, so its inverse is the reporting frame
    rep = _report(n, m, float(np.sqrt(max(sq, 0.0))), _to_set(m, ia), _to_set(m, ib), "user", U.conj().T, V.conj().T, exact=True)
    sv = np.abs(np.diag(t))
    rep.notes.append("diagonal correlations used: " + ", ".join(f"{x:.12g}" for x in sv[[u - 1 for u in ia]]))
    return rep
