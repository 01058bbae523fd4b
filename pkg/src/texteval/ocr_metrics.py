"""Word-level recall, precision, F1, and accuracy over thresholded matching.

All metrics share one optimal assignment per (gt, ocr) pair: words are
matched by minimum total normalized edit distance, and a matched pair
counts as a hit when its distance is at or under the policy threshold.
The default threshold of 0.3 tolerates minor character errors (e.g. one
wrong character in a seven-letter word) without crediting unrelated
words.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .assignment import solve_min_assignment
from .core import AggregateReport, METRIC_FIELDS, SampleReport
from .curation import classify_difficulty
from .editdist import ned

DEFAULT_NED_THRESHOLD = 0.3


@dataclass(frozen=True)
class MatchingPolicy:
    """Matching tolerance: a pair is a hit when its NED <= ned_threshold."""

    ned_threshold: float = DEFAULT_NED_THRESHOLD

    def __post_init__(self) -> None:
        if not 0.0 <= self.ned_threshold <= 1.0:
            raise ValueError(f"ned_threshold {self.ned_threshold} outside [0, 1]")


def match_word_sets(
    gt_words: Sequence[str], ocr_words: Sequence[str]
) -> tuple[tuple[int, int, float], ...]:
    """Optimally match two token lists; returns (gt_idx, ocr_idx, ned) triples.

    The assignment is computed over lexicographically sorted views of
    both lists, so when several matchings tie on total cost the one
    chosen depends only on the word multisets, never on input order.
    Indices in the result refer to the original lists.
    """
    n, m = len(gt_words), len(ocr_words)
    if n == 0 or m == 0:
        return ()
    gt_order = sorted(range(n), key=gt_words.__getitem__)
    ocr_order = sorted(range(m), key=ocr_words.__getitem__)
    cost = [[ned(gt_words[i], ocr_words[j]) for j in ocr_order] for i in gt_order]
    result = solve_min_assignment(cost)
    return tuple(
        sorted((gt_order[r], ocr_order[c], cost[r][c]) for r, c in result.pairs)
    )


def _hits(pairs, threshold: float) -> int:
    return sum(1 for _, _, d in pairs if d <= threshold)


def recall(
    gt_words: Sequence[str],
    ocr_words: Sequence[str],
    policy: MatchingPolicy = MatchingPolicy(),
) -> float:
    """Fraction of ground-truth words matched under the threshold.

    1.0 for an empty ground truth (nothing was demanded).
    """
    if not gt_words:
        return 1.0
    pairs = match_word_sets(gt_words, ocr_words)
    return _hits(pairs, policy.ned_threshold) / len(gt_words)


def precision_and_f1(
    gt_words: Sequence[str],
    ocr_words: Sequence[str],
    policy: MatchingPolicy = MatchingPolicy(),
) -> tuple[float, float]:
    """Precision over the OCR side and the harmonic-mean F1.

    Precision is 1.0 when no OCR words exist; F1 is 0 when precision and
    recall are both 0.
    """
    pairs = match_word_sets(gt_words, ocr_words)
    hits = _hits(pairs, policy.ned_threshold)
    prec = 1.0 if not ocr_words else hits / len(ocr_words)
    rec = 1.0 if not gt_words else hits / len(gt_words)
    f1 = 0.0 if prec + rec == 0 else 2 * prec * rec / (prec + rec)
    return prec, f1


def word_accuracy(gt_words: Sequence[str], ocr_words: Sequence[str]) -> float:
    """Fraction of ground-truth words reproduced exactly (NED 0)."""
    if not gt_words:
        return 1.0
    pairs = match_word_sets(gt_words, ocr_words)
    return sum(1 for _, _, d in pairs if d == 0.0) / len(gt_words)


def sentence_exact(gt_words: Sequence[str], ocr_words: Sequence[str]) -> bool:
    """True iff every ground-truth word is found exactly; extras allowed."""
    return word_accuracy(gt_words, ocr_words) == 1.0


def _mean_std(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def aggregate(
    reports: Sequence[SampleReport],
    attribute_scores: Mapping[str, float] | None = None,
) -> AggregateReport:
    """Reduce per-sample reports into corpus means/stds and tier counts.

    Standard deviations use the n-1 denominator; a single sample reports
    0. Corpus-level attribute scores cannot be reconstructed from the
    per-sample rates, so the caller passes them in when available. An
    empty input yields count 0 and no means.
    """
    reports = tuple(reports)
    tier_counts = {"easy": 0, "medium": 0, "hard": 0, "out_of_range": 0}
    for report in reports:
        tier_counts[classify_difficulty(report.gt_word_count) or "out_of_range"] += 1
    means: dict[str, float] = {}
    stds: dict[str, float] = {}
    if reports:
        for key in METRIC_FIELDS:
            values = [float(getattr(r, key)) for r in reports]
            means[key], stds[key] = _mean_std(values)
    return AggregateReport(
        samples=reports,
        count=len(reports),
        means=means,
        stds=stds,
        tier_counts=tier_counts,
        attribute_scores=dict(attribute_scores) if attribute_scores else None,
    )
