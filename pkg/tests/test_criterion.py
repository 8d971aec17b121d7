from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bellcert import criterion, states
from bellcert.anticommuting import maximal_sets
from bellcert.errors import FrameRejected, InvalidArgument

seeds = st.integers(0, 2**32 - 1)


def _random_bell_diagonal(rng):
    # uniform point of the tetrahedron of valid triples via its eigenvalues
    e = rng.dirichlet(np.ones(4))
    A = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]) / 4
    return np.linalg.solve(A[1:] - A[0], e[1:] - e[0])


def _brute_mass(t, m, n):
    """Direct double loop over (Alice subset, Bob set); independent of the vectorised search."""
    sets = maximal_sets(m)
    best = 0.0
    for sa in sets:
        for sub in combinations(sa.indices, n):
            for sb in sets:
                best = max(best, sum(t[u - 1, v - 1] ** 2 for u in sub for v in sb.indices))
    return np.sqrt(best)


@pytest.mark.parametrize("w", [0.3, 0.8, 0.9, 1.0])
def test_werner_n3(w):
    rep = criterion.m_n(states.werner(w), 3)
    assert rep.m_n_value == pytest.approx(np.sqrt(3) * w, abs=1e-12)
    assert rep.threshold == 1.5
    assert rep.violates == (w > np.sqrt(3) / 2)


def test_violates_examples():
    ok, margin = criterion.violates(states.werner(0.9), 3)
    assert ok and margin == pytest.approx(np.sqrt(3) * 0.9 - 1.5, abs=1e-12)
    assert not criterion.violates(states.werner(0.8), 3)[0]
    rep = criterion.m_n(states.singlet(), 2)
    assert rep.violates and rep.m_n_value == pytest.approx(np.sqrt(2))


def test_maximally_mixed():
    for d, n in [(2, 2), (2, 3), (4, 5)]:
        rep = criterion.m_n(states.maximally_mixed(d), n)
        assert rep.m_n_value == 0 and rep.verdict == criterion.INCONCLUSIVE


def test_two_singlets_n4():
    rep = criterion.m_n(states.m_copies(states.singlet(), 2), 4)
    assert rep.m_n_value == pytest.approx(2.0, abs=1e-12)
    assert rep.bell_lower_bound == pytest.approx(16.0, abs=1e-10)


def test_too_many_settings():
    with pytest.raises(InvalidArgument, match="insufficient anticommuting"):
        criterion.m_n(states.singlet(), 4)


def test_report_dict():
    d = criterion.m_n(states.werner(0.9), 3).to_dict()
    assert d["verdict"] == "violates" and d["best_alice_subset"] == ["X", "Y", "Z"]


@given(seeds)
def test_search_matches_bruteforce(seed):
    rng = np.random.default_rng(seed)
    rho = states.random_state(4, rng)
    t = states.correlation_matrix(rho).t
    for n in (3, 4, 5):
        rep = criterion.m_n(rho, n, frame="identity")
        assert rep.m_n_value == pytest.approx(_brute_mass(t, 2, n), abs=1e-12)


@given(seeds)
def test_value_bounded_by_sqrt_n(seed):
    rng = np.random.default_rng(seed)
    rho = states.random_state(4, rng, rank=1)
    for n in (2, 3, 4, 5):
        assert 0 <= criterion.m_n(rho, n).m_n_value <= np.sqrt(n) + 1e-9


@given(seeds)
def test_two_qubit_reductions(seed):
    rng = np.random.default_rng(seed)
    rho = states.random_state(2, rng)
    assert criterion.m_n(rho, 2).m_n_value ** 2 == pytest.approx(criterion.horodecki_chsh(rho).mu_sum, abs=1e-10)
    assert criterion.m_n(rho, 3).m_n_value == pytest.approx(criterion.m3_two_qubit(rho).value, abs=1e-10)


def test_closed_form_examples():
    assert criterion.horodecki_chsh(states.singlet()).mu_sum == pytest.approx(2)
    assert criterion.horodecki_chsh(states.werner(0.6)).mu_sum == pytest.approx(2 * 0.36)
    zz = states.pure([1, 0, 0, 0])
    h = criterion.horodecki_chsh(zz)
    assert h.mu_sum == pytest.approx(1) and not h.violates
    c = criterion.m3_two_qubit(zz)
    assert c.value == pytest.approx(1) and not c.violates
    s = criterion.m3_two_qubit(states.singlet())
    assert s.value == pytest.approx(np.sqrt(3)) and s.violates


@given(seeds, st.sampled_from([(1, 2), (1, 3), (2, 2), (2, 4), (2, 5)]))
def test_bell_diagonal_closed_form_matches_generic(seed, mn):
    m, n = mn
    lam = _random_bell_diagonal(np.random.default_rng(seed))
    closed = criterion.m_n_bell_diagonal(lam, n, m)
    generic = criterion.m_n(states.m_copies(states.bell_diagonal(*lam), m), n)
    assert closed.m_n_value == pytest.approx(generic.m_n_value, abs=1e-10)
    assert closed.verdict in (criterion.VIOLATES, criterion.EXACT_NO_VIOLATION)


def test_bell_diagonal_examples():
    assert criterion.m_n_bell_diagonal((-1, -1, -1), 3, 1).m_n_value == pytest.approx(np.sqrt(3))
    # hand count: best four of the five squared entries in {XI, YI, ZX, ZY, ZZ} are 0.6561 + 0.25 + 0.25 + 0.2025
    assert criterion.m_n_bell_diagonal((0.5, 0.5, -0.9), 4, 2).m_n_value == pytest.approx(np.sqrt(1.3586), abs=1e-12)


@given(seeds)
def test_listed_two_copy_value_never_exceeds_criterion(seed):
    lam = np.sort(_random_bell_diagonal(np.random.default_rng(seed)))
    assert criterion.appendix_b_value(lam) <= criterion.m_n_bell_diagonal(lam, 4, 2).m_n_value + 1e-12


def test_listed_two_copy_value_at_singlet():
    assert criterion.appendix_b_value((-1, -1, -1)) == pytest.approx(2)
    assert criterion.m_n_bell_diagonal((-1, -1, -1), 4, 2).m_n_value == pytest.approx(2)


@given(seeds)
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = states.random_state(4, rng)
    u, v = states.random_unitary(2, rng), states.random_unitary(2, rng)
    U, V = states.tensor_power(u, 2), states.tensor_power(v, 2)
    rotated = states.apply_local(rho, U, V)
    for n in (2, 3, 4, 5):
        assert criterion.m_n(rotated, n).m_n_value == pytest.approx(criterion.m_n(rho, n).m_n_value, abs=1e-9)


@given(seeds, st.floats(0, 1))
def test_mixing_with_identity_scales(seed, w):
    lam = _random_bell_diagonal(np.random.default_rng(seed))
    rho = states.m_copies(states.bell_diagonal(*lam), 2)
    mixed = w * rho + (1 - w) * np.eye(16) / 16
    for n in (3, 4):
        assert criterion.m_n(mixed, n).m_n_value == pytest.approx(w * criterion.m_n(rho, n).m_n_value, abs=1e-10)


def test_frame_examples(rng):
    lam = (-0.3, -0.4, -0.7)
    base = states.m_copies(states.bell_diagonal(*lam), 2)
    u0, v0 = states.random_unitary(2, rng), states.random_unitary(2, rng)
    U0, V0 = states.tensor_power(u0, 2), states.tensor_power(v0, 2)
    tilde = states.apply_local(base, U0.conj().T, V0.conj().T)
    rep = criterion.m_n_with_frame(tilde, U0, V0, 4)
    assert rep.m_n_value == pytest.approx(criterion.m_n(base, 4).m_n_value, abs=1e-10)
    assert rep.verdict == criterion.EXACT_NO_VIOLATION

    eye = np.eye(4)
    assert criterion.m_n_with_frame(base, eye, eye, 4).m_n_value == pytest.approx(criterion.m_n(base, 4, frame="identity").m_n_value)

    generic = states.random_state(4, rng)
    with pytest.raises(FrameRejected):
        criterion.m_n_with_frame(generic, states.random_unitary(4, rng), states.random_unitary(4, rng), 4)
