import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hairpin.lcs import LcsWitness, lcs

words = st.lists(st.sampled_from([0, 1, 2]), max_size=8)


def brute_lcs(S, T):
    for k in range(min(len(S), len(T)), -1, -1):
        subs = set(itertools.combinations(S, k))
        if any(c in subs for c in itertools.combinations(T, k)):
            return k
    return 0


def is_subsequence(a, b):
    it = iter(b)
    return all(c in it for c in a)


@pytest.mark.parametrize("S, T, n", [("012", "021", 2), ("", "012", 0), ("000", "000", 3)])
def test_examples(S, T, n):
    w = lcs(S, T)
    assert w.length == n
    w.validate(S, T)


def test_tie_break_advances_in_S_first():
    assert lcs("aa", "a").pairs == ((1, 1),)  # a usable match is taken immediately
    assert lcs("01", "10").pairs == ((2, 1),)


def test_validate_rejects_bad_witness():
    with pytest.raises(ValueError):
        LcsWitness(1, ((1, 1),)).validate("0", "1")
    with pytest.raises(ValueError):
        LcsWitness(2, ((1, 1), (1, 2))).validate("00", "00")


@given(words, words)
def test_matches_brute_force(S, T):
    w = lcs(S, T)
    assert w.length == brute_lcs(S, T)
    w.validate(S, T)


@given(words, words)
def test_symmetry_and_bounds(S, T):
    n = lcs(S, T).length
    assert n == lcs(T, S).length
    assert n <= min(len(S), len(T))
    full = n == min(len(S), len(T))
    assert full == (is_subsequence(S, T) or is_subsequence(T, S))
