"""The n-settings Bell functional: sign matrix, Hadamard completion, bounds, values."""
from __future__ import annotations

from math import comb, sqrt

import numpy as np

from .errors import InvalidArgument, NonDichotomic

MAX_SETTINGS = 7
DICHOTOMIC_TOL = 1e-8


def _check_n(n, max_settings=MAX_SETTINGS):
    if not isinstance(n, (int, np.integer)) or n < 2 or n > max_settings:
        raise InvalidArgument(f"settings count must be in [2, {max_settings}], got {n}")


def z_bit(n: int, y: int, x: int) -> int:
    """Bit (n+1-y) of (x-1), counting the least significant bit as 1 (y, x are 1-based)."""
    return ((x - 1) >> (n - y)) & 1


def sign_matrix(n: int, max_settings: int = MAX_SETTINGS) -> np.ndarray:
    """n x 2**(n-1) matrix with entries (-1)**z_y^x."""
    _check_n(n, max_settings)
    x = np.arange(2 ** (n - 1))
    shifts = n - np.arange(1, n + 1)
    bits = (x[None, :] >> shifts[:, None]) & 1
    return (1 - 2 * bits).astype(np.int64)


def _walsh_row(mask: int, n: int) -> np.ndarray:
    x = np.arange(2 ** (n - 1))
    parity = np.array([bin(mask & int(k)).count("1") & 1 for k in x])
    return (1 - 2 * parity).astype(np.int64)


def _extension_masks(n: int, order: str) -> list[int]:
    used = {0} | {1 << (n - y) for y in range(2, n + 1)}
    rest = [k for k in range(2 ** (n - 1)) if k not in used]
    if order == "weight":
        # weight blocks, larger masks first inside a block; reproduces the
        # displayed 4x4 and 8x8 completions
        return sorted(rest, key=lambda k: (bin(k).count("1"), -k))
    if order == "increasing":
        return sorted(rest)
    raise InvalidArgument(f"unknown completion order {order!r}")


def hadamard_extension(n: int, order: str = "weight", max_settings: int = MAX_SETTINGS) -> np.ndarray:
    """Square +-1 matrix whose first n rows are ``sign_matrix(n)``.

    Extra rows are Walsh rows for the multi-bit masks; ``order`` picks their
    sequence ("weight" or "increasing"). Any choice satisfies
    ``H.T @ H == 2**(n-1) * I``.
    """
    M = sign_matrix(n, max_settings)
    extra = [_walsh_row(k, n) for k in _extension_masks(n, order)]
    if not extra:
        return M
    return np.vstack([M] + extra)


def local_bound(n: int) -> int:
    if n < 2:
        raise InvalidArgument("settings count must be at least 2")
    k = n // 2 + 1
    return k * comb(n, k)


def local_bound_bruteforce(n: int) -> int:
    """Maximum over every deterministic +-1 assignment to all A_x and B_y."""
    if n < 2 or n > 5:
        raise InvalidArgument("brute-force local bound is limited to 2 <= n <= 5")
    M = sign_matrix(n)
    nx = M.shape[1]
    a = 1 - 2 * ((np.arange(2**nx)[:, None] >> np.arange(nx)[None, :]) & 1)
    b = 1 - 2 * ((np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1)
    # value(a, b) = sum_{y,x} M[y,x] b[y] a[x]
    values = (b @ M) @ a.T
    return int(values.max())


def quantum_optimum(n: int) -> float:
    if n < 2:
        raise InvalidArgument("settings count must be at least 2")
    return 2 ** (n - 1) * sqrt(n)


def dichotomic_residual(O) -> float:
    O = np.asarray(O)
    return float(np.linalg.norm(O @ O - np.eye(O.shape[0]), ord=2))


def check_observables(alice, bob, d: int, n: int | None = None, tol: float = DICHOTOMIC_TOL):
    if n is None:
        n = len(bob)
    if len(bob) != n or len(alice) != 2 ** (n - 1):
        raise InvalidArgument(f"expected {2 ** (n - 1)} Alice and {n} Bob observables, got {len(alice)} and {len(bob)}")
    for side, ops in (("A", alice), ("B", bob)):
        for k, O in enumerate(ops, start=1):
            O = np.asarray(O)
            if O.shape != (d, d):
                raise InvalidArgument(f"{side}_{k} has shape {O.shape}, expected {(d, d)}")
            if np.max(np.abs(O - O.conj().T)) > tol:
                raise NonDichotomic(f"{side}_{k}", float(np.max(np.abs(O - O.conj().T))))
            res = dichotomic_residual(O)
            if res > tol:
                raise NonDichotomic(f"{side}_{k}", res)


def correlators(rho, alice, bob) -> np.ndarray:
    """E[x, y] = Tr[(A_x (x) B_y) rho]."""
    rho = np.asarray(rho, dtype=complex)
    d = np.asarray(alice[0]).shape[0]
    R = rho.reshape(d, d, d, d)
    A = np.asarray(alice, dtype=complex)
    B = np.asarray(bob, dtype=complex)
    return np.einsum("abce,xca,yeb->xy", R, A, B, optimize=True).real


def bell_value(rho, obs=None, *, alice=None, bob=None, check: bool = True) -> float:
    """sum_y sum_x (-1)**z_y^x Tr[(A_x (x) B_y) rho].

    ``obs`` may be any object with ``alice`` and ``bob`` sequences.
    """
    if obs is not None:
        alice, bob = obs.alice, obs.bob
    rho = np.asarray(rho, dtype=complex)
    n = len(bob)
    d = np.asarray(bob[0]).shape[0]
    if rho.shape != (d * d, d * d):
        raise InvalidArgument(f"state of shape {rho.shape} does not match local dimension {d}")
    if check:
        check_observables(alice, bob, d, n)
    M = sign_matrix(n)
    return float(np.sum(M.T * correlators(rho, alice, bob)))


def bell_operator(alice, bob) -> np.ndarray:
    n = len(bob)
    M = sign_matrix(n)
    d = np.asarray(bob[0]).shape[0]
    op = np.zeros((d * d, d * d), dtype=complex)
    for y in range(n):
        Ap = sum(M[y, x] * np.asarray(alice[x]) for x in range(2 ** (n - 1)))
        op += np.kron(Ap, bob[y])
    return op
