"""Alternating best-response maximisation of the Bell functional.

Each half-step fixes one party and replaces every observable of the other
by the dichotomic operator maximising its linear objective, so the value is
nondecreasing. Restarts run as one batch through numpy.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument
from .functional import sign_matrix
from .states import check_state, local_dim

HERMITIAN_TOL = 1e-10
CHUNK = 5


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 20
    max_iters: int = 500
    tol: float = 1e-10
    seed: int = 0
    # restrict both parties to traceless (balanced +-1) observables
    traceless: bool = True
    threads: int | None = None


@dataclass
class OracleResult:
    value: float
    alice: list[np.ndarray]
    bob: list[np.ndarray]
    iterations: int
    restarts_used: int
    converged: bool
    seed: int
    traceless: bool
    trace: list[float] = field(default_factory=list, repr=False)
    restart_values: list[float] = field(default_factory=list, repr=False)

    def to_dict(self, include_observables: bool = True) -> dict:
        from .serialization import encode_matrix

        out = {
            "value": self.value,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "seed": self.seed,
            "domain": "traceless" if self.traceless else "all",
        }
        if include_observables:
            out["alice"] = [encode_matrix(a) for a in self.alice]
            out["bob"] = [encode_matrix(b) for b in self.bob]
        return out


def _check_hermitian(H):
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidArgument("expected a square matrix")
    res = np.max(np.abs(H - H.conj().T)) if H.size else 0.0
    if res > HERMITIAN_TOL:
        raise InvalidArgument(f"matrix is not Hermitian (residual {res:.3e})")
    return (H + H.conj().T) / 2


def sign_decomposition(H) -> np.ndarray:
    """Dichotomic O maximising Tr[O H]: sign of each eigenvalue, zero -> +1."""
    H = _check_hermitian(H)
    return _signs(H[None])[0]


def balanced_sign_decomposition(H) -> np.ndarray:
    """Traceless dichotomic O maximising Tr[O H]: +1 on the top half of the spectrum."""
    H = _check_hermitian(H)
    if H.shape[0] % 2:
        raise InvalidArgument("traceless dichotomic observables need even dimension")
    return _balanced(H[None])[0]


def _signs(H):
    w, v = np.linalg.eigh(H)
    s = np.where(w >= 0, 1.0, -1.0)
    return np.einsum("...ik,...k,...jk->...ij", v, s, v.conj())


def _balanced(H):
    w, v = np.linalg.eigh(H)
    d = H.shape[-1]
    s = np.concatenate([-np.ones(d // 2), np.ones(d - d // 2)])
    return np.einsum("...ik,k,...jk->...ij", v, s, v.conj())


def _herm(H):
    return (H + np.swapaxes(H.conj(), -1, -2)) / 2


def _run_batch(R, M, B, cfg, respond):
    """Iterate a batch of restarts; B has shape (K, n, d, d).

    Converged restarts are frozen and dropped from later iterations.
    """
    K, n, d, _ = B.shape
    nx = M.shape[1]
    # E[x]_{ac} = sum_{b,e} rho_{ab,ce} Bs[x]_{eb};  F[y]_{be} = sum_{a,c} rho_{ab,ce} As[y]_{ca}
    RE = R.transpose(0, 2, 1, 3).reshape(d * d, d * d)  # rows (a c), cols (b e)
    RF = R.transpose(1, 3, 0, 2).reshape(d * d, d * d)  # rows (b e), cols (a c)
    value = np.full(K, -np.inf)
    done = np.zeros(K, dtype=bool)
    iters = np.zeros(K, dtype=int)
    traces = [[] for _ in range(K)]
    A = np.zeros((K, nx, d, d), dtype=complex)
    for it in range(cfg.max_iters):
        act = np.flatnonzero(~done)
        if act.size == 0:
            break
        Bs = np.einsum("yx,kyde->kxde", M, B[act])
        E = _herm((Bs.transpose(0, 1, 3, 2).reshape(-1, d * d) @ RE.T).reshape(act.size, nx, d, d))
        A_new = respond(E)
        half = np.einsum("kxac,kxca->k", E, A_new).real
        As = np.einsum("yx,kxac->kyac", M, A_new)
        F = _herm((As.transpose(0, 1, 3, 2).reshape(-1, d * d) @ RF.T).reshape(act.size, n, d, d))
        B_new = respond(F)
        full = np.einsum("kybe,kyeb->k", F, B_new).real
        A[act] = A_new
        B[act] = B_new
        for j, k in enumerate(act):
            traces[k].extend((float(half[j]), float(full[j])))
        gain = full - value[act]
        iters[act] = it + 1
        value[act] = full
        done[act[gain < cfg.tol]] = True
    return value, A, B, iters, done, traces


def _initial_bob(seed_seq, n, d, respond):
    rng = np.random.default_rng(seed_seq)
    G = rng.normal(size=(n, d, d)) + 1j * rng.normal(size=(n, d, d))
    return respond(_herm(G))


def seesaw(rho, n: int, config: SeesawConfig | None = None, **overrides) -> OracleResult:
    """Best Bell value found over random restarts (a lower bound on the optimum)."""
    cfg = config or SeesawConfig()
    if overrides:
        cfg = SeesawConfig(**{**cfg.__dict__, **overrides})
    rho = check_state(rho)
    d = local_dim(rho)
    if cfg.restarts < 1:
        raise InvalidArgument("need at least one restart")
    if cfg.traceless and d % 2:
        raise InvalidArgument("traceless domain needs even local dimension")
    M = sign_matrix(n).astype(float)
    R = rho.reshape(d, d, d, d)
    respond = _balanced if cfg.traceless else _signs
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    B0 = np.stack([_initial_bob(s, n, d, respond) for s in streams])

    # fixed chunking keeps floating-point results independent of the thread count
    threads = cfg.threads or int(os.environ.get("BELLCERT_THREADS", "1") or 1)
    chunks = [np.arange(i, min(i + CHUNK, cfg.restarts)) for i in range(0, cfg.restarts, CHUNK)]
    work = lambda idx: _run_batch(R, M, B0[idx].copy(), cfg, respond)  # noqa: E731
    if threads <= 1 or len(chunks) == 1:
        results = [work(idx) for idx in chunks]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, len(chunks))) as pool:
            results = list(pool.map(work, chunks))
    value = np.concatenate([r[0] for r in results])
    A = np.concatenate([r[1] for r in results])
    B = np.concatenate([r[2] for r in results])
    iters = np.concatenate([r[3] for r in results])
    done = np.concatenate([r[4] for r in results])
    traces = [t for r in results for t in r[5]]

    k = int(np.argmax(value))
    return OracleResult(
        value=float(value[k]),
        alice=list(A[k]),
        bob=list(B[k]),
        iterations=int(iters[k]),
        restarts_used=cfg.restarts,
        converged=bool(done[k]),
        seed=cfg.seed,
        traceless=cfg.traceless,
        trace=traces[k],
        restart_values=[float(v) for v in value],
    )
