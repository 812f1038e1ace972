# tests/test_inversions.py
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from treecross.utils.inversions import count_inversions, count_inversions_naive, ranks_with_ties_last


@pytest.mark.parametrize(
    "values, expected",
    [
        ([], 0),
        ([4], 0),
        ([0, 1, 2, 3], 0),
        ([3, 2, 1, 0], 6),
        ([2, 0, 1], 2),
        ([1, 1, 1], 0),
        ([5, 1, 5, 0], 4),
    ],
)
def test_known_counts(values, expected):
    assert count_inversions(values) == expected


@given(st.lists(st.integers(0, 1000), max_size=200))
def test_matches_quadratic_count(values):
    assert count_inversions(values) == count_inversions_naive(values)


def test_large_permutation(rng):
    values = rng.permutation(3000)
    assert count_inversions(values) == count_inversions_naive(values.tolist())


def test_negative_values_are_rejected():
    with pytest.raises(ValueError):
        count_inversions([1, -1])


def test_ties_rank_last():
    ranks = ranks_with_ties_last([2, 1, 2, 2])
    assert ranks.tolist() == [3, 0, 2, 1]
    # strict inversions of the ranks count pairs i < j with values[j] <= values[i]
    assert count_inversions(ranks) == 4


@given(st.lists(st.integers(0, 20), max_size=80))
def test_tie_ranks_count_weak_inversions(values):
    weak = sum(
        1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[j] <= values[i]
    )
    assert count_inversions(ranks_with_ties_last(values)) == weak
    assert sorted(ranks_with_ties_last(values).tolist()) == list(range(len(values)))
