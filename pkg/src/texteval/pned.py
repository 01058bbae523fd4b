"""Pairwise normalized edit distance between two word collections.

PNED treats the demanded words and the OCR-detected words as order-free
collections: it builds the matrix of pairwise normalized edit distances,
finds a minimum-cost assignment covering the smaller side, and adds a
unit penalty for every word left unmatched by the size difference.
Duplicates are kept as distinct elements, so a missing repetition is
penalized. The score is 0 for identical collections and is bounded above
by max(n, m), not by 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .assignment import solve_min_assignment
from .editdist import ned

#: Cost charged per unmatched word.
UNMATCHED_PENALTY = 1.0


@dataclass(frozen=True)
class PnedBreakdown:
    """PNED split into its matched-cost and count-mismatch parts."""

    matched_cost: float
    unmatched_penalty: float
    total: float
    matched_pairs: tuple[tuple[str, str, float], ...]


def pned(
    gt_words: Sequence[str],
    ocr_words: Sequence[str],
    penalty_per_word: float = UNMATCHED_PENALTY,
) -> PnedBreakdown:
    """Score how well ``ocr_words`` reproduces ``gt_words``, order-free.

    Tokens are assumed already normalized. Empty inputs are fine: two
    empty lists score 0; one empty list scores the full count penalty.
    ``penalty_per_word`` exists for the validation harness and should be
    left at 1 everywhere else.
    """
    n, m = len(gt_words), len(ocr_words)
    penalty = abs(n - m) * penalty_per_word
    if n == 0 or m == 0:
        return PnedBreakdown(0.0, penalty, penalty, ())
    # Canonical evaluation order: sort both sides and put the smaller
    # word multiset first. The score is order-free and symmetric by
    # definition; fixing the computation order makes permuted or swapped
    # calls return bit-identical totals, not merely equal up to float
    # summation order.
    a = sorted(gt_words)
    b = sorted(ocr_words)
    swapped = b < a
    if swapped:
        a, b = b, a
    cost = [[ned(x, y) for y in b] for x in a]
    result = solve_min_assignment(cost)
    if swapped:
        pairs = tuple((b[c], a[r], cost[r][c]) for r, c in result.pairs)
    else:
        pairs = tuple((a[r], b[c], cost[r][c]) for r, c in result.pairs)
    matched = float(result.total_cost)
    return PnedBreakdown(matched, penalty, matched + penalty, pairs)
