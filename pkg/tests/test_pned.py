import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from texteval.editdist import ned
from texteval.pned import PnedBreakdown, pned

words = st.text(alphabet="abc", min_size=1, max_size=4)
word_lists = st.lists(words, max_size=5)


def pned_oracle(gt, ocr) -> float:
    """Minimum over all injective matchings, plus the count penalty."""
    n, m = len(gt), len(ocr)
    penalty = abs(n - m)
    if n == 0 or m == 0:
        return float(penalty)
    if n <= m:
        best = min(
            sum(ned(gt[i], perm[i]) for i in range(n))
            for perm in permutations(ocr, n)
        )
    else:
        best = min(
            sum(ned(perm[j], ocr[j]) for j in range(m))
            for perm in permutations(gt, m)
        )
    return best + penalty


def test_identical_sets_any_order():
    assert pned(["AREA", "PEOPLE"], ["PEOPLE", "AREA"]).total == 0.0


def test_missing_word_penalty():
    result = pned(["cat"], [])
    assert result.matched_cost == 0.0
    assert result.unmatched_penalty == 1.0
    assert result.total == 1.0
    assert result.matched_pairs == ()


def test_partial_match_with_penalty():
    result = pned(["cat", "dog"], ["cot"])
    assert result.total == pytest.approx(4 / 3)
    assert result.matched_pairs == (("cat", "cot", pytest.approx(1 / 3)),)
    assert result.unmatched_penalty == 1.0


def test_both_empty():
    assert pned([], []) == PnedBreakdown(0.0, 0.0, 0.0, ())


def test_duplicates_are_distinct_elements():
    # Deduplicating would make this 0; the count penalty must bite.
    assert pned(["a", "a"], ["a"]).total == 1.0


def test_penalty_is_exact_integer():
    assert pned(["a"] * 5, ["a"] * 2).unmatched_penalty == 3.0
    assert pned(["a"] * 5, ["a"] * 2).total == 3.0


def test_custom_penalty_knob():
    assert pned(["cat"], [], penalty_per_word=0.5).total == 0.5


@given(word_lists, word_lists)
def test_symmetry(gt, ocr):
    assert pned(gt, ocr).total == pned(ocr, gt).total


@given(word_lists, word_lists, st.randoms(use_true_random=False))
def test_permutation_invariance_exact(gt, ocr, rng):
    baseline = pned(gt, ocr).total
    gt2, ocr2 = list(gt), list(ocr)
    rng.shuffle(gt2)
    rng.shuffle(ocr2)
    assert pned(gt2, ocr2).total == baseline


@given(word_lists)
def test_identity(ws):
    assert pned(ws, ws).total == 0.0


@given(word_lists, word_lists)
def test_bounds(gt, ocr):
    total = pned(gt, ocr).total
    assert 0.0 <= total <= max(len(gt), len(ocr), 0)


@settings(max_examples=150, deadline=None)
@given(word_lists, word_lists)
def test_matches_oracle(gt, ocr):
    assert pned(gt, ocr).total == pytest.approx(pned_oracle(gt, ocr), abs=1e-9)


@given(word_lists, word_lists)
def test_breakdown_invariants(gt, ocr):
    result = pned(gt, ocr)
    assert result.total == pytest.approx(result.matched_cost + result.unmatched_penalty, abs=1e-9)
    assert result.unmatched_penalty == abs(len(gt) - len(ocr))
    assert len(result.matched_pairs) == min(len(gt), len(ocr))


def test_appending_word_changes_total_by_at_most_one():
    rng = random.Random(23)
    for _ in range(150):
        gt = [
            "".join(rng.choice("ab") for _ in range(rng.randint(1, 4)))
            for _ in range(rng.randint(0, 4))
        ]
        ocr = [
            "".join(rng.choice("ab") for _ in range(rng.randint(1, 4)))
            for _ in range(rng.randint(0, 3))
        ]
        extra = "".join(rng.choice("xyz") for _ in range(rng.randint(1, 4)))
        before = pned_oracle(gt, ocr)
        after = pned(gt, ocr + [extra]).total
        assert after == pytest.approx(pned_oracle(gt, ocr + [extra]), abs=1e-9)
        assert abs(after - before) <= 1.0 + 1e-9
