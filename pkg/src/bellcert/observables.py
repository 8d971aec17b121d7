"""Explicit observables realising 2**(n-1) * M_n, and the saturation checks.

Given an n-element anticommuting Alice set {tau_y} and a maximal Bob set
{tau'_v}, the choice

    B_y = sum_v t_yv / r_y * tau'_v,          r_y = sqrt(sum_v t_yv**2)
    A_x = (1/N) sum_y M[y, x] * r_y * tau_y,  N = sqrt(sum_y r_y**2)

is dichotomic because each coefficient vector is a unit vector over mutually
anticommuting strings, and its Bell value is 2**(n-1) * N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import criterion, states
from .anticommuting import AnticommutingSet
from .errors import ConstructionInvalid, DegenerateRow, InvalidArgument
from .functional import DICHOTOMIC_TOL, bell_value, dichotomic_residual, hadamard_extension, sign_matrix
from .pauli import SINGLE, PauliString, to_dense

ZERO_ROW_TOL = 1e-14
WEIGHT_TOL = 1e-12


@dataclass
class ObservableSet:
    n: int
    d: int
    alice: list[np.ndarray]
    bob: list[np.ndarray]
    weights: list[float] = field(default_factory=list)
    scaled_alice: list[np.ndarray] = field(default_factory=list)
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.alice) != 2 ** (self.n - 1) or len(self.bob) != self.n:
            raise InvalidArgument(f"expected {2 ** (self.n - 1)} Alice and {self.n} Bob observables")

    def alice_rows(self) -> np.ndarray:
        """A'_y = sum_x (-1)**z_y^x A_x for every row of the Hadamard completion."""
        H = hadamard_extension(self.n).astype(float)
        return np.einsum("yx,xab->yab", H, np.asarray(self.alice))

    def value(self, rho) -> float:
        return bell_value(rho, self)

    def max_dichotomic_residual(self) -> float:
        return max(dichotomic_residual(O) for O in [*self.alice, *self.bob])


def _conj(O, U):
    return O if U is None else U @ O @ U.conj().T


def _ensure_dichotomic(obs: ObservableSet, tol=DICHOTOMIC_TOL):
    for side, ops in (("A", obs.alice), ("B", obs.bob)):
        for k, O in enumerate(ops, start=1):
            res = dichotomic_residual(O)
            herm = float(np.max(np.abs(O - O.conj().T)))
            if res > tol or herm > tol:
                raise ConstructionInvalid(f"{side}_{k} is not dichotomic (residual {max(res, herm):.3e})")


def _as_set(m, s) -> AnticommutingSet:
    if isinstance(s, AnticommutingSet):
        return s
    members = tuple(p if isinstance(p, PauliString) else (PauliString.from_index(p, m) if isinstance(p, (int, np.integer)) else PauliString.from_label(p)) for p in s)
    return AnticommutingSet(m, members)


def construct(rho, n: int, s_alice, s_bob, frame=None, allow_degenerate: bool = False) -> ObservableSet:
    """Observables for the given sets; ``frame=(U, V)`` evaluates T in that frame.

    Everything is mapped back so the result acts on ``rho`` as given.
    """
    rho = states.check_state(rho)
    d = states.local_dim(rho)
    m = states.num_qubits(d)
    sa, sb = _as_set(m, s_alice), _as_set(m, s_bob)
    if len(sa) != n:
        raise InvalidArgument(f"Alice set has {len(sa)} members, expected {n}")
    if len(sb) != 2 * m + 1:
        raise InvalidArgument(f"Bob set must be maximal ({2 * m + 1} members)")
    U, V = (None, None) if frame is None else (np.asarray(frame[0], complex), np.asarray(frame[1], complex))
    work = rho if U is None else criterion.rotate_to_frame(rho, U, V)
    t = states.correlation_matrix(work).t
    rows = np.array([[t[p.index - 1, q.index - 1] for q in sb] for p in sa])
    r = np.sqrt((rows**2).sum(axis=1))
    for p, ry in zip(sa, r):
        if ry <= ZERO_ROW_TOL and not allow_degenerate:
            raise DegenerateRow(p.label)
    N = float(np.sqrt((r**2).sum()))
    if N <= ZERO_ROW_TOL:
        raise DegenerateRow(sa.members[0].label)

    tau = [to_dense(p) for p in sa]
    tau_b = [to_dense(q) for q in sb]
    bob = []
    for y in range(n):
        if r[y] > ZERO_ROW_TOL:
            B = sum(rows[y, v] / r[y] * tau_b[v] for v in range(len(sb)))
        else:
            B = tau_b[0].astype(complex)
        bob.append(_conj(B, V))
    M = sign_matrix(n)
    alice = [_conj(sum(M[y, x] * r[y] * tau[y] for y in range(n)) / N, U) for x in range(2 ** (n - 1))]
    weights = [2 ** (n - 1) * float(ry) / N for ry in r]
    obs = ObservableSet(n, d, alice, bob, weights, [_conj(T.astype(complex), U) for T in tau], sa.labels)
    _ensure_dichotomic(obs)
    return obs


def construct_optimal(rho, n: int, frame="auto") -> tuple[ObservableSet, criterion.CriterionReport]:
    """Observables for the argmax sets of ``m_n``; value 2**(n-1) * M_n."""
    rep = criterion.m_n(rho, n, frame)
    fr = None if rep.U is None else (rep.U, rep.V)
    return construct(rho, n, rep.best_alice_subset, rep.best_bob_set, frame=fr), rep


@dataclass
class SaturationCheck:
    anticommutation: float  # max || {S_y, S_y'} ||
    weight_sum: float  # sum_y omega_y**2
    weight_target: float
    extension_rows: float  # max || A'_y || over the completion rows
    trace: float  # max |Tr S_y|
    weights: list[float] = field(default_factory=list)

    @property
    def anticommutation_ok(self):
        return self.anticommutation <= 1e-8

    @property
    def weights_ok(self):
        return abs(self.weight_sum - self.weight_target) <= 1e-6

    @property
    def extension_ok(self):
        return self.extension_rows <= 1e-8

    @property
    def trace_ok(self):
        return self.trace <= 1e-8

    @property
    def passed(self) -> bool:
        return self.anticommutation_ok and self.weights_ok and self.extension_ok and self.trace_ok

    def to_dict(self) -> dict:
        return {
            "anticommutation": {"residual": self.anticommutation, "pass": self.anticommutation_ok},
            "weight_sum": {"value": self.weight_sum, "target": self.weight_target, "pass": self.weights_ok},
            "extension_rows": {"residual": self.extension_rows, "pass": self.extension_ok},
            "traceless": {"residual": self.trace, "pass": self.trace_ok},
            "weights": list(self.weights),
            "pass": self.passed,
        }


def verify_proposition1(obs: ObservableSet, rho) -> SaturationCheck:
    """Check the saturation conditions on Alice's row combinations.

    omega_y is recomputed from the state as sqrt(Tr[(A'_y**2 (x) I) rho]);
    where it vanishes, the stored scaled observable (if any) stands in.
    """
    rho = np.asarray(rho, dtype=complex)
    n, d = obs.n, obs.d
    rows = obs.alice_rows()
    red = np.einsum("abcb->ac", rho.reshape(d, d, d, d))
    omega = [float(np.sqrt(max(np.trace(Ap @ Ap @ red).real, 0.0))) for Ap in rows[:n]]
    scaled = []
    for y in range(n):
        if omega[y] > WEIGHT_TOL:
            scaled.append(rows[y] / omega[y])
        elif obs.scaled_alice:
            scaled.append(np.asarray(obs.scaled_alice[y]))
        else:
            scaled.append(np.zeros((d, d), dtype=complex))
    anti = max((float(np.linalg.norm(a @ b + b @ a, 2)) for a, b in combinations(scaled, 2)), default=0.0)
    ext = max((float(np.linalg.norm(Ap, 2)) for Ap in rows[n:]), default=0.0)
    tr = max(abs(np.trace(S)) for S in scaled)
    return SaturationCheck(anti, float(sum(w**2 for w in omega)), 4.0 ** (n - 1), ext, float(tr), omega)


def construct_n3(psi) -> ObservableSet:
    """Two-qubit n=3 observables from the diagonal frame.

    In that frame the scaled observables are the Pauli matrices, Bob measures
    sign(lambda_y) sigma_y, and A_x = sum_y M[y, x] s_y sigma_y / |s|.
    Zero singular values are allowed; the value is 4 |s|.
    """
    fano = states.diagonalize_two_qubit(psi)
    lam = fano.lam
    s = np.abs(lam)
    N = float(np.sqrt((s**2).sum()))
    if N <= ZERO_ROW_TOL:
        raise DegenerateRow("X")
    sig = SINGLE[1:]
    M = sign_matrix(3)
    U, V = fano.U, fano.V
    alice = [_conj(sum(M[y, x] * s[y] * sig[y] for y in range(3)) / N, U) for x in range(4)]
    bob = [_conj((1.0 if lam[y] >= 0 else -1.0) * sig[y], V) for y in range(3)]
    weights = [4 * float(sy) / N for sy in s]
    obs = ObservableSet(3, 2, alice, bob, weights, [_conj(S.astype(complex), U) for S in sig], ("X", "Y", "Z"))
    _ensure_dichotomic(obs)
    return obs


APPENDIX_B_LABELS = ("ZX", "ZY", "ZZ", "YI")


def _is_sorted(lam, order):
    key = lam if order == "signed" else np.abs(lam)
    return bool(np.all(np.diff(key) >= 0))


def appendix_b(lam, order: str = "signed") -> ObservableSet:
    """Listed two-copy n=4 observables for a Bell-diagonal triple.

    ``order`` names how ``lam`` must already be sorted: "signed" (l1 <= l2 <=
    l3) or "magnitude" (|l1| <= |l2| <= |l3|). Signed weights
    8 (l1 l3, l2 l3, l3**2, l2) / N; value 8 N on two copies.
    """
    lam = states.check_bell_diagonal(lam)
    if order not in ("signed", "magnitude"):
        raise InvalidArgument(f"unknown order {order!r}")
    if not _is_sorted(lam, order):
        raise InvalidArgument(f"lambda {tuple(lam)} is not sorted ({order})")
    l1, l2, l3 = lam
    c = np.array([l1 * l3, l2 * l3, l3**2, l2])
    N = float(np.sqrt(l2**2 + l3**2 * (lam**2).sum()))
    if N <= ZERO_ROW_TOL:
        raise DegenerateRow("ZZ")
    ops = [to_dense(PauliString.from_label(s)).astype(complex) for s in APPENDIX_B_LABELS]
    M = sign_matrix(4)
    alice = [sum(M[y, x] * c[y] * ops[y] for y in range(4)) / N for x in range(8)]
    obs = ObservableSet(4, 4, alice, [O.copy() for O in ops], [8 * float(cy) / N for cy in c], ops, APPENDIX_B_LABELS)
    _ensure_dichotomic(obs)
    return obs


def from_observables(alice, bob) -> ObservableSet:
    """Wrap hand-built observables (no weights) for evaluation and checks."""
    alice = [np.asarray(a, dtype=complex) for a in alice]
    bob = [np.asarray(b, dtype=complex) for b in bob]
    return ObservableSet(len(bob), alice[0].shape[0], alice, bob)
