import pytest
from hypothesis import given, settings, strategies as st

from texteval.core import SampleReport
from texteval.ocr_metrics import (
    MatchingPolicy,
    aggregate,
    match_word_sets,
    precision_and_f1,
    recall,
    sentence_exact,
    word_accuracy,
)

words = st.text(alphabet="abc", min_size=1, max_size=4)
word_lists = st.lists(words, max_size=6)


def make_report(sample_id="x", gt_word_count=3, pned=0.0, rec=1.0, prec=1.0, acc=1.0):
    f1 = 0.0 if prec + rec == 0 else 2 * prec * rec / (prec + rec)
    return SampleReport(
        sample_id=sample_id,
        gt_word_count=gt_word_count,
        pned=pned,
        recall=rec,
        precision=prec,
        ocr_f1=f1,
        word_accuracy=acc,
        sentence_exact=acc == 1.0,
    )


def test_policy_validation():
    assert MatchingPolicy().ned_threshold == 0.3
    with pytest.raises(ValueError):
        MatchingPolicy(1.5)
    with pytest.raises(ValueError):
        MatchingPolicy(-0.1)


class TestRecall:
    def test_near_miss_under_threshold(self):
        # REMIX vs REMIXED differ by 2 of 7 chars: 2/7 < 0.3 counts.
        assert recall(["UNRELEASED", "REMIXED"], ["UNRELEASED", "REMIX"]) == 1.0

    def test_missing_word(self):
        assert recall(["UNRELEASED", "REMIXED"], ["UNRELEASED"]) == 0.5

    def test_vacuous_gt(self):
        assert recall([], ["noise"]) == 1.0

    def test_threshold_boundary(self):
        assert recall(["REMIXED"], ["REMIX"], MatchingPolicy(0.3)) == 1.0
        assert recall(["REMIXED"], ["REMIX"], MatchingPolicy(0.25)) == 0.0


class TestPrecisionF1:
    def test_perfect(self):
        assert precision_and_f1(["a", "b"], ["a", "b"]) == (1.0, 1.0)

    def test_spurious_detection(self):
        prec, f1 = precision_and_f1(["a"], ["a", "zz"])
        assert prec == 0.5
        assert f1 == pytest.approx(2 / 3)

    def test_empty_ocr(self):
        prec, f1 = precision_and_f1(["a"], [])
        assert prec == 1.0
        assert f1 == 0.0


class TestSentenceExact:
    def test_all_found_with_extras(self):
        assert sentence_exact(["a", "b"], ["b", "a", "x"]) is True

    def test_missing_word(self):
        assert sentence_exact(["a", "b"], ["a"]) is False

    def test_near_miss_is_not_exact(self):
        assert sentence_exact(["remixed"], ["remix"]) is False

    def test_empty_gt_vacuous(self):
        assert sentence_exact([], ["x"]) is True


def test_word_accuracy_counts_exact_only():
    assert word_accuracy(["aa", "bb"], ["aa", "bx"]) == 0.5
    assert word_accuracy([], []) == 1.0


@given(word_lists)
def test_self_recall_and_exactness(ws):
    assert recall(ws, ws) == 1.0
    assert sentence_exact(ws, ws) is True


@settings(deadline=None)
@given(word_lists, word_lists, st.floats(0, 1), st.floats(0, 1))
def test_threshold_monotonicity(gt, ocr, t1, t2):
    lo, hi = sorted((t1, t2))
    assert recall(gt, ocr, MatchingPolicy(lo)) <= recall(gt, ocr, MatchingPolicy(hi))


@settings(deadline=None)
@given(word_lists, word_lists, st.randoms(use_true_random=False))
def test_permutation_invariance(gt, ocr, rng):
    base_recall = recall(gt, ocr)
    base_prec, base_f1 = precision_and_f1(gt, ocr)
    gt2, ocr2 = list(gt), list(ocr)
    rng.shuffle(gt2)
    rng.shuffle(ocr2)
    assert recall(gt2, ocr2) == base_recall
    prec2, f12 = precision_and_f1(gt2, ocr2)
    assert prec2 == base_prec
    assert f12 == base_f1


@given(word_lists, word_lists)
def test_f1_bounds(gt, ocr):
    prec, f1 = precision_and_f1(gt, ocr)
    rec = recall(gt, ocr)
    assert 0.0 <= f1 <= 1.0
    assert f1 <= min(2 * prec, 2 * rec) + 1e-12


@given(word_lists, word_lists)
def test_match_word_sets_structure(gt, ocr):
    pairs = match_word_sets(gt, ocr)
    assert len(pairs) == min(len(gt), len(ocr))
    gt_idx = [i for i, _, _ in pairs]
    ocr_idx = [j for _, j, _ in pairs]
    assert len(set(gt_idx)) == len(gt_idx)
    assert len(set(ocr_idx)) == len(ocr_idx)
    for i, j, d in pairs:
        assert 0 <= d <= 1


class TestAggregate:
    def test_single_report(self):
        agg = aggregate([make_report(rec=0.5, prec=0.5, acc=0.0)])
        assert agg.count == 1
        assert agg.means["recall"] == 0.5
        assert agg.stds["recall"] == 0.0

    def test_two_reports_mean(self):
        agg = aggregate([make_report(rec=0.0, prec=0.0, acc=0.0), make_report(rec=1.0)])
        assert agg.means["recall"] == 0.5

    def test_empty(self):
        agg = aggregate([])
        assert agg.count == 0
        assert agg.means == {}
        assert agg.stds == {}

    def test_sample_std_uses_n_minus_1(self):
        agg = aggregate([make_report(pned=0.0), make_report(pned=2.0)])
        assert agg.stds["pned"] == pytest.approx(2 ** 0.5)

    def test_tier_counts(self):
        agg = aggregate([
            make_report(gt_word_count=3),
            make_report(gt_word_count=6),
            make_report(gt_word_count=12),
            make_report(gt_word_count=1),
        ])
        assert agg.tier_counts == {"easy": 1, "medium": 1, "hard": 1, "out_of_range": 1}

    def test_sentence_rate_is_mean_of_booleans(self):
        agg = aggregate([make_report(acc=1.0), make_report(acc=0.0, rec=0.0, prec=0.0)])
        assert agg.means["sentence_exact"] == 0.5

    def test_attribute_scores_passthrough(self):
        agg = aggregate([make_report()], {"color": 0.5})
        assert agg.attribute_scores == {"color": 0.5}
        assert aggregate([make_report()]).attribute_scores is None


def test_sample_report_f1_invariant_enforced():
    with pytest.raises(ValueError):
        SampleReport(
            sample_id="bad", gt_word_count=1, pned=0.0, recall=1.0,
            precision=1.0, ocr_f1=0.2, word_accuracy=1.0, sentence_exact=True,
        )
