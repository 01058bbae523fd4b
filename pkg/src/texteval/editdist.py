"""Levenshtein edit distance and its length-normalized variant.

The edit distance between two strings is the minimum number of
single-character insertions, deletions, and substitutions needed to turn
one into the other, each at unit cost. Dividing by the length of the
longer string gives a value in [0, 1]: 0 for identical strings, 1 for
completely different ones. Both functions operate on Unicode code points,
never bytes.
"""
from __future__ import annotations

from functools import lru_cache


def edit_distance(a: str, b: str) -> int:
    """Return the Levenshtein distance between ``a`` and ``b``.

    Symmetric in its arguments; empty strings are allowed. Runs the
    classic dynamic program with a rolling row, O(len(a)*len(b)) time
    and O(min_len) memory. Shared prefixes and suffixes are stripped
    first; they never change the distance.
    """
    if a == b:
        return 0
    na, nb = len(a), len(b)
    lim = min(na, nb)
    start = 0
    while start < lim and a[start] == b[start]:
        start += 1
    stop = 0
    while stop < lim - start and a[na - 1 - stop] == b[nb - 1 - stop]:
        stop += 1
    a = a[start : na - stop]
    b = b[start : nb - stop]
    # Keep the inner loop over the shorter string.
    if len(a) < len(b):
        a, b = b, a
    m = len(b)
    if m == 0:
        return len(a)
    prev = list(range(m + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        append = cur.append
        left = i  # value just written in this row
        diag = prev[0]  # value up-left of the current cell
        for up, cb in zip(prev[1:], b):
            cost = diag if ca == cb else diag + 1
            if up < cost:
                cost = up + 1
            if left < cost:
                cost = left + 1
            append(cost)
            left = cost
            diag = up
        prev = cur
    return prev[m]


@lru_cache(maxsize=1 << 16)
def ned(a: str, b: str) -> float:
    """Return the normalized edit distance, in [0, 1].

    edit_distance(a, b) / max(len(a), len(b)); two empty strings score
    0.0 (identical strings must score 0, not raise on division).
    Results are memoized: inputs are word tokens and both the evaluator
    and the sweep harness revisit the same pairs repeatedly.
    """
    if a == b:
        return 0.0
    return edit_distance(a, b) / max(len(a), len(b))


def dp_table(a: str, b: str) -> list[list[int]]:
    """Return the full (len(a)+1) x (len(b)+1) dynamic-programming table.

    Exists for inspection and testing; ``edit_distance`` itself keeps
    only a rolling row. Cell [i][j] is the distance between the i-char
    prefix of ``a`` and the j-char prefix of ``b``.
    """
    n, m = len(a), len(b)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        table[i][0] = i
    for j in range(m + 1):
        table[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            table[i][j] = min(
                table[i - 1][j] + 1,
                table[i][j - 1] + 1,
                table[i - 1][j - 1] + (a[i - 1] != b[j - 1]),
            )
    return table
