import pytest

from niltl.diagram import cf_normal_form
from niltl.enumeration import (
    EnumerationReport,
    brute_force_counts,
    default_max_len,
    enumerate_minuscule,
)
from niltl.errors import BudgetExceededError, RankTooSmallError
from niltl.heaps import is_minuscule

from oracles import minuscule_by_orbit, swap_orbit


def test_examples():
    assert enumerate_minuscule(2, 0).counts == [1]
    rep = enumerate_minuscule(2, 2)
    assert rep.counts == [1, 3, 5]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_first_counts(n):
    rep = enumerate_minuscule(n, 1)
    assert rep.counts == [1, n + 1]


def test_two_letter_count_by_hand():
    # pairs of distinct letters, up to commutation; repeated letters are never minuscule
    n = 2
    classes = {frozenset(swap_orbit((a, b))) for a in range(3) for b in range(3) if a != b}
    assert len(classes) == 5
    assert all(minuscule_by_orbit(n, next(iter(c))) for c in classes)


@pytest.mark.parametrize("n,max_len", [(2, 7), (3, 5)])
def test_matches_brute_force(n, max_len):
    assert enumerate_minuscule(n, max_len).counts == brute_force_counts(n, max_len)


@pytest.mark.parametrize("n", [2, 3])
def test_layers_are_canonical_and_distinct(n):
    rep = enumerate_minuscule(n, 8)
    for d, layer in enumerate(rep.words):
        assert len(layer) == len(set(layer)) == rep.counts[d]
        for w in layer:
            assert len(w) == d and cf_normal_form(n, w) == w and is_minuscule(n, w)


def test_window_sums_n2():
    rep = enumerate_minuscule(2, 12)
    sums = rep.window_sums(3)
    assert sums[:2] == [9, 14]
    assert all(s == 16 for s in sums[2:])


def test_window_sums_n3():
    rep = enumerate_minuscule(3, 10)
    assert all(s == 64 for s in rep.window_sums(4)[4:])


def test_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_minuscule(3, 12, budget=50)
    with pytest.raises(BudgetExceededError):
        enumerate_minuscule(2, -1)
    with pytest.raises(RankTooSmallError):
        enumerate_minuscule(1, 3)


def test_defaults():
    assert default_max_len(2) == 12 and default_max_len(3) == 10
    assert enumerate_minuscule(2).max_len == 12


def test_report_json():
    rep = enumerate_minuscule(2, 4)
    back = EnumerationReport.from_json(rep.to_json(include_words=True))
    assert back.counts == rep.counts and back.words == rep.words
    assert "words" not in rep.to_json()
