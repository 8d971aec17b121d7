"""Symplectic Pauli strings on m qubits.

A string is stored as two m-bit masks ``(x, z)``. Qubit k (k = 1 leftmost,
first tensor factor) lives at bit position ``m - k`` so that the masks read
left to right like the string itself. Single-qubit digits follow
I=0, X=1, Y=2, Z=3 with (x, z) = (0,0), (1,0), (1,1), (0,1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument

MAX_QUBITS = 4

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLE = (I2, X, Y, Z)
LETTERS = "IXYZ"

_DIGIT_TO_XZ = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
_XZ_TO_DIGIT = {v: k for k, v in _DIGIT_TO_XZ.items()}


def _check_m(m, max_qubits=MAX_QUBITS):
    if not isinstance(m, (int, np.integer)) or m < 1 or m > max_qubits:
        raise InvalidArgument(f"qubit count must be in [1, {max_qubits}], got {m}")


@dataclass(frozen=True, order=True)
class PauliString:
    m: int
    x: int
    z: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidArgument("qubit count must be positive")
        top = 1 << self.m
        if not (0 <= self.x < top and 0 <= self.z < top):
            raise InvalidArgument("bit masks exceed the qubit count")

    @classmethod
    def from_digits(cls, digits) -> PauliString:
        m = len(digits)
        x = z = 0
        for k, a in enumerate(digits):
            xb, zb = _DIGIT_TO_XZ[int(a)]
            x |= xb << (m - 1 - k)
            z |= zb << (m - 1 - k)
        return cls(m, x, z)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        try:
            return cls.from_digits([LETTERS.index(c) for c in label.upper()])
        except ValueError:
            raise InvalidArgument(f"bad Pauli label {label!r}") from None

    @classmethod
    def from_index(cls, u: int, m: int) -> PauliString:
        if not 1 <= u < 4**m:
            raise InvalidArgument(f"basis index must be in [1, {4**m - 1}], got {u}")
        return cls.from_digits([(u >> (2 * (m - 1 - k))) & 3 for k in range(m)])

    @property
    def digits(self) -> tuple[int, ...]:
        out = []
        for k in range(self.m):
            s = self.m - 1 - k
            out.append(_XZ_TO_DIGIT[((self.x >> s) & 1, (self.z >> s) & 1)])
        return tuple(out)

    @property
    def index(self) -> int:
        """Position u in the basis ordering (0 for the identity)."""
        u = 0
        for a in self.digits:
            u = 4 * u + a
        return u

    @property
    def label(self) -> str:
        return "".join(LETTERS[a] for a in self.digits)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __str__(self):
        return self.label

    def anticommutes(self, other: PauliString) -> bool:
        return anticommutes(self, other)

    def dense(self) -> np.ndarray:
        return to_dense(self)


def anticommutes(p: PauliString, q: PauliString) -> bool:
    """Symplectic test: parity of x_p.z_q + z_p.x_q."""
    if p.m != q.m:
        raise InvalidArgument(f"qubit counts differ ({p.m} vs {q.m})")
    return bin((p.x & q.z) ^ (p.z & q.x)).count("1") & 1 == 1


@lru_cache(maxsize=None)
def _dense_cached(p: PauliString) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for a in p.digits:
        out = np.kron(out, SINGLE[a])
    out.setflags(write=False)
    return out


def to_dense(p: PauliString) -> np.ndarray:
    return _dense_cached(p)


# i^k phase table for single-qubit products sigma_a sigma_b = i^k sigma_c
def _single_product(a: int, b: int) -> tuple[int, int]:
    if a == 0:
        return 0, b
    if b == 0 or a == b:
        return 0, (a if b == 0 else 0)
    c = 6 - a - b
    # cyclic (1,2,3) gives +i, anticyclic gives -i
    return (1 if (b - a) % 3 == 1 else 3), c


def multiply(p: PauliString, q: PauliString) -> tuple[int, PauliString]:
    """Return ``(k, r)`` with ``p @ q == 1j**k * r``."""
    if p.m != q.m:
        raise InvalidArgument(f"qubit counts differ ({p.m} vs {q.m})")
    k = 0
    digits = []
    for a, b in zip(p.digits, q.digits):
        dk, c = _single_product(a, b)
        k += dk
        digits.append(c)
    return k % 4, PauliString.from_digits(digits)


def pauli_basis(m: int, max_qubits: int = MAX_QUBITS) -> tuple[PauliString, ...]:
    """All 4**m - 1 non-identity strings in basis-index order."""
    _check_m(m, max_qubits)
    return _basis_cached(int(m))


@lru_cache(maxsize=None)
def _basis_cached(m: int) -> tuple[PauliString, ...]:
    return tuple(PauliString.from_index(u, m) for u in range(1, 4**m))


@lru_cache(maxsize=None)
def dense_basis(m: int) -> np.ndarray:
    """Stacked dense matrices of the basis, shape ``(4**m - 1, 2**m, 2**m)``."""
    stack = np.stack([to_dense(p) for p in pauli_basis(m, max_qubits=max(m, MAX_QUBITS))])
    stack.setflags(write=False)
    return stack


def anticommutation_masks(m: int) -> list[int]:
    """Bitmask adjacency of the anticommutation graph, vertex j = basis index j + 1."""
    basis = pauli_basis(m, max_qubits=max(m, MAX_QUBITS))
    masks = []
    for p in basis:
        bits = 0
        for j, q in enumerate(basis):
            if anticommutes(p, q):
                bits |= 1 << j
        masks.append(bits)
    return masks
