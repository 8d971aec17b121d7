import numpy as np
import pytest
from hypothesis import given, strategies as st

from bellcert.errors import InvalidArgument
from bellcert.pauli import PauliString, anticommutes, dense_basis, multiply, pauli_basis, to_dense

labels = st.integers(1, 3).flatmap(lambda m: st.tuples(st.text("IXYZ", min_size=m, max_size=m), st.text("IXYZ", min_size=m, max_size=m)))


def test_single_qubit_matrices():
    assert np.allclose(to_dense(PauliString.from_label("Y")), [[0, -1j], [1j, 0]])
    assert np.allclose(to_dense(PauliString.from_label("Z")), np.diag([1, -1]))


def test_index_ordering():
    assert PauliString.from_label("XZ").index == 1 * 4 + 3
    assert [p.label for p in pauli_basis(1)] == ["X", "Y", "Z"]
    assert pauli_basis(2)[0].label == "IX" and pauli_basis(2)[-1].label == "ZZ"
    for p in pauli_basis(2):
        assert PauliString.from_index(p.index, 2) == p


def test_examples_commutation():
    P = PauliString.from_label
    assert anticommutes(P("X"), P("Z"))
    assert not anticommutes(P("XX"), P("ZZ"))
    assert anticommutes(P("ZX"), P("YI"))


def test_mismatched_qubits_rejected():
    with pytest.raises(InvalidArgument):
        anticommutes(PauliString.from_label("X"), PauliString.from_label("XX"))


def test_qubit_cap():
    with pytest.raises(InvalidArgument):
        pauli_basis(5)
    with pytest.raises(InvalidArgument):
        PauliString.from_label("XQ")


@given(labels)
def test_symplectic_matches_dense(pair):
    p, q = (PauliString.from_label(s) for s in pair)
    A, B = to_dense(p), to_dense(q)
    assert anticommutes(p, q) == np.allclose(A @ B, -B @ A)
    assert anticommutes(p, q) != np.allclose(A @ B, B @ A)


@given(labels)
def test_multiply_phase(pair):
    p, q = (PauliString.from_label(s) for s in pair)
    k, r = multiply(p, q)
    assert np.allclose(to_dense(p) @ to_dense(q), 1j**k * to_dense(r))


def test_dense_basis_orthonormal():
    P = dense_basis(2)
    G = np.einsum("uab,vba->uv", P, P) / 4
    assert np.allclose(G, np.eye(15))
