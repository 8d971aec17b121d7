import pytest
from hypothesis import given, strategies as st

from bellcert.anticommuting import AnticommutingSet, count_maximal_sets, maximal_sets, n_subsets
from bellcert.errors import InvalidArgument

S3_LABELS = ("ZX", "ZY", "ZZ", "YI", "XI")


@pytest.mark.parametrize("m, count", [(1, 1), (2, 6)])
def test_maximal_set_counts(m, count):
    assert count_maximal_sets(m) == count


def test_three_qubit_count():
    # enumerated by the clique search; no closed formula is assumed
    assert count_maximal_sets(3) == 288


def test_two_qubit_family_contains_listed_set():
    fam = {frozenset(s.labels) for s in maximal_sets(2)}
    assert frozenset(S3_LABELS) in fam
    assert len(fam) == 6


def test_sets_are_sorted_and_valid():
    sets = maximal_sets(2)
    idx = [s.indices for s in sets]
    assert idx == sorted(idx)
    for s in sets:
        assert list(s.indices) == sorted(s.indices) and len(s) == 5


def test_commuting_members_rejected():
    with pytest.raises(InvalidArgument):
        AnticommutingSet.from_labels(["XX", "ZZ"])


@given(st.integers(1, 5))
def test_subsets(n):
    s = AnticommutingSet.from_labels(S3_LABELS)
    subs = n_subsets(s, n)
    assert all(len(x) == n for x in subs)
    assert len(subs) == len(set(subs))


def test_subset_too_large():
    with pytest.raises(InvalidArgument):
        n_subsets(AnticommutingSet.from_labels(["X", "Y", "Z"]), 4)
