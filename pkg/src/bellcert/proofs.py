"""Instance checks of the combinatorial lemmas behind the optimal value.

* the sign matrix and its Hadamard completion are orthogonal;
* the 0/1 constraint matrix S, with S[(y, y'), j] = z_y^(j+1) XOR z_y'^(j+1),
  has full row rank over the rationals.

Rank is exact: Bareiss fraction-free elimination on Python integers. For
large instances the pivot columns are located modulo a prime first and the
resulting square minor is then eliminated exactly; a nonzero minor over the
integers certifies full row rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidArgument
from .functional import hadamard_extension

MAX_N = 16
PRIME = 2_147_483_629  # below 2**31, so products fit in int64


@dataclass(frozen=True)
class ConstraintMatrix:
    n: int
    entries: np.ndarray  # (n(n-1)/2, 2**(n-1) - 1) of 0/1
    rows: tuple[tuple[int, int], ...]

    @property
    def shape(self):
        return self.entries.shape


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or not 2 <= n <= MAX_N:
        raise InvalidArgument(f"n must be in [2, {MAX_N}], got {n}")


def constraint_matrix(n: int) -> ConstraintMatrix:
    _check_n(n)
    j = np.arange(1, 2 ** (n - 1))  # column j <-> x = j + 1, and z_y^(j+1) is bit (n-y) of j
    bits = {y: (j >> (n - y)) & 1 for y in range(1, n + 1)}
    pairs = tuple(combinations(range(1, n + 1), 2))
    S = np.array([bits[a] ^ bits[b] for a, b in pairs], dtype=np.int64).reshape(len(pairs), len(j))
    S.setflags(write=False)
    return ConstraintMatrix(n, S, pairs)


def bareiss_rank(A) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    M = [[int(v) for v in row] for row in np.asarray(A)]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rank, prev, col = 0, 1, 0
    while rank < rows and col < cols:
        piv = next((i for i in range(rank, rows) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        pr = M[rank]
        for i in range(rank + 1, rows):
            ri = M[i]
            a = ri[col]
            for k in range(col + 1, cols):
                ri[k] = (p * ri[k] - a * pr[k]) // prev
            ri[col] = 0
        prev = p
        rank += 1
        col += 1
    return rank


def _pivot_columns_mod_p(A, p=PRIME) -> list[int]:
    M = np.asarray(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots, r = [], 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[r]) % p) % p
        pivots.append(c)
        r += 1
    return pivots


def exact_rank(A) -> int:
    """Rank over Q; uses a certified square minor when it has full row rank."""
    A = np.asarray(A, dtype=np.int64)
    rows = A.shape[0]
    if rows == 0:
        return 0
    piv = _pivot_columns_mod_p(A)
    if len(piv) == rows and bareiss_rank(A[:, piv]) == rows:
        return rows
    return bareiss_rank(A)


@dataclass(frozen=True)
class RankResult:
    n: int
    rank: int
    rows: int
    cols: int

    @property
    def full(self) -> bool:
        return self.rank == self.rows


def rank_full(n: int) -> RankResult:
    S = constraint_matrix(n).entries
    return RankResult(n, exact_rank(S), *S.shape)


def hadamard_orthogonality(n: int) -> bool:
    """H^T H == 2**(n-1) I in integer arithmetic."""
    H = hadamard_extension(n).astype(object)
    G = H.T.dot(H)
    return bool(np.array_equal(G, 2 ** (n - 1) * np.eye(H.shape[1], dtype=np.int64).astype(object)))


def weight_ordered_columns(n: int) -> list[int]:
    """Column order grouping j by Hamming weight, larger j first in a block."""
    return sorted(range(2 ** (n - 1) - 1), key=lambda c: (bin(c + 1).count("1"), -(c + 1)))


def block_reduction(n: int) -> np.ndarray:
    """Row-reduced S after reordering columns by weight.

    Rows (y, y') with y >= 2 have rows (1, y) and (1, y') subtracted, leaving
    -2 * (z_y AND z_y'). The leading square block is then upper triangular
    with diagonal 1 (first n-1 rows) and -2 (the rest).
    """
    cm = constraint_matrix(n)
    S = cm.entries[:, weight_ordered_columns(n)].astype(np.int64)
    pos = {pair: i for i, pair in enumerate(cm.rows)}
    R = S.copy()
    for (a, b), i in pos.items():
        if a >= 2:
            R[i] = S[i] - S[pos[(1, a)]] - S[pos[(1, b)]]
    return R


def block_is_triangular(n: int) -> bool:
    R = block_reduction(n)
    k = R.shape[0]
    sq = R[:, :k]
    diag = np.diag(sq)
    expect = np.array([1] * (n - 1) + [-2] * (k - n + 1))
    return bool(np.array_equal(np.tril(sq, -1), np.zeros_like(sq)) and np.array_equal(diag, expect))


@dataclass(frozen=True)
class ProofRecord:
    n: int
    rows: int
    cols: int
    rank: int
    full: bool
    orthogonal: bool | None
    triangular: bool | None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_proofs(n_max: int = 12, n_min: int = 2) -> list[ProofRecord]:
    if n_max < n_min:
        raise InvalidArgument("empty range")
    out = []
    for n in range(n_min, n_max + 1):
        r = rank_full(n)
        orth = hadamard_orthogonality(n) if n <= 7 else None
        tri = block_is_triangular(n) if n <= 8 else None
        out.append(ProofRecord(n, r.rows, r.cols, r.rank, r.full, orth, tri))
    return out
