"""Minimum-cost assignment over rectangular cost matrices.

Solves the classic assignment problem: pair every element of the smaller
side with a distinct element of the larger side so that the summed cost
is minimal. Rectangular input is squared by padding the smaller dimension
with zero-cost dummy rows/columns; pairs touching a dummy are discarded
from the result, so the returned pairs cover exactly the smaller side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CostMatrix:
    """A validated, read-only matrix of pairwise costs.

    All entries must be finite and >= 0. Accepts anything
    ``np.asarray`` understands; empty dimensions are allowed.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError(f"cost matrix must be 2-dimensional, got shape {arr.shape}")
        bad = ~np.isfinite(arr) | (arr < 0)
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise ValueError(
                f"cost matrix entry ({i}, {j}) is {arr[i, j]}; entries must be finite and >= 0"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class Assignment:
    """An optimal matching: (row, col) pairs and their summed cost."""

    pairs: tuple[tuple[int, int], ...]
    total_cost: float


def _solve_square(cost: list[list[float]]) -> list[int]:
    """Shortest-augmenting-path solver for an n x n matrix.

    Returns ``row_of_col``: for each column, the row assigned to it.
    Standard potentials formulation, O(n^3); operates on plain lists
    (faster than ndarray scalar indexing at these sizes).
    """
    n = len(cost)
    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)  # p[j]: 1-based row matched to 1-based column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            row = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - ui0 - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return [p[j] - 1 for j in range(1, n + 1)]


def solve_min_assignment(cost: CostMatrix | np.ndarray | list) -> Assignment:
    """Find a minimum-cost matching covering the smaller matrix side.

    The total cost is the unique optimum; the particular pairing is one
    of possibly several optima. An empty matrix yields the empty
    assignment. Raises ValueError for NaN, infinite, or negative
    entries, identifying the offending cell.
    """
    matrix = cost if isinstance(cost, CostMatrix) else CostMatrix(cost)
    n, m = matrix.n_rows, matrix.n_cols
    if n == 0 or m == 0:
        return Assignment((), 0.0)
    size = max(n, m)
    padded = np.zeros((size, size), dtype=float)
    padded[:n, :m] = matrix.entries
    row_of_col = _solve_square(padded.tolist())
    pairs = tuple(
        sorted((r, c) for c, r in enumerate(row_of_col) if r < n and c < m)
    )
    total = float(sum(matrix.entries[r, c] for r, c in pairs))
    return Assignment(pairs, total)
