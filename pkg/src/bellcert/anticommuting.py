"""Maximal mutually anticommuting subsets of the Pauli-string basis."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .errors import InvalidArgument
from .pauli import MAX_QUBITS, PauliString, anticommutation_masks, anticommutes, pauli_basis


@dataclass(frozen=True)
class AnticommutingSet:
    m: int
    members: tuple[PauliString, ...]

    def __post_init__(self):
        for p, q in combinations(self.members, 2):
            if not anticommutes(p, q):
                raise InvalidArgument(f"{p} and {q} commute")

    @classmethod
    def from_labels(cls, labels) -> AnticommutingSet:
        members = tuple(PauliString.from_label(s) for s in labels)
        return cls(members[0].m, members)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(p.index for p in self.members)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def is_anticommuting(members) -> bool:
    return all(anticommutes(p, q) for p, q in combinations(members, 2))


def _iter_index_sets(m: int) -> Iterator[tuple[int, ...]]:
    # vertex j <-> basis index j + 1; growing cliques in increasing index order
    # yields each set once, already in lexicographic order
    adj = anticommutation_masks(m)
    size = 2 * m + 1
    n = len(adj)

    def rec(chosen, cands):
        if len(chosen) == size:
            yield tuple(j + 1 for j in chosen)
            return
        while cands:
            if len(chosen) + bin(cands).count("1") < size:
                return
            j = (cands & -cands).bit_length() - 1
            cands &= ~(1 << j)
            yield from rec(chosen + [j], cands & adj[j])

    yield from rec([], (1 << n) - 1)


def iter_maximal_sets(m: int, max_qubits: int = MAX_QUBITS) -> Iterator[AnticommutingSet]:
    """Stream all (2m+1)-element anticommuting sets in lexicographic index order."""
    basis = pauli_basis(m, max_qubits)
    for idx in _iter_index_sets(m):
        yield AnticommutingSet(m, tuple(basis[u - 1] for u in idx))


def count_maximal_sets(m: int, max_qubits: int = MAX_QUBITS) -> int:
    pauli_basis(m, max_qubits)
    return sum(1 for _ in _iter_index_sets(m))


@lru_cache(maxsize=None)
def maximal_index_sets(m: int) -> tuple[tuple[int, ...], ...]:
    """Cached basis-index tuples of every maximal set (used by the criterion search)."""
    pauli_basis(m, max(m, MAX_QUBITS))
    return tuple(_iter_index_sets(m))


def maximal_sets(m: int, max_qubits: int = MAX_QUBITS) -> list[AnticommutingSet]:
    return list(iter_maximal_sets(m, max_qubits))


def n_subsets(s: AnticommutingSet, n: int) -> list[AnticommutingSet]:
    if n < 1 or n > len(s):
        raise InvalidArgument(f"cannot pick {n} members from a set of {len(s)}")
    return [AnticommutingSet(s.m, c) for c in combinations(s.members, n)]
