"""Exact Gaussian elimination over any field with Python operators.

Works for Fraction entries as well as RatFunc entries (the rational-function
field Q(q,t)); only +, -, *, / and truthiness are required of the elements.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

E = TypeVar("E")


class SingularSystemError(ValueError):
    pass


def solve_linear(matrix: Sequence[Sequence[E]], rhs: Sequence[E]) -> list[E]:
    """Solve A x = b for a square nonsingular A; raises SingularSystemError."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("system is not square")
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise SingularSystemError(f"singular system (column {col})")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        for r in range(n):
            if r == col or not a[r][col]:
                continue
            factor = a[r][col] / inv
            row, prow = a[r], a[col]
            for c in range(col, n + 1):
                if prow[c]:
                    row[c] = row[c] - factor * prow[c]
    return [a[i][n] / a[i][i] for i in range(n)]


def invert_matrix(matrix: Sequence[Sequence[E]], zero: E, one: E) -> list[list[E]]:
    """Exact inverse of a square matrix via Gauss-Jordan."""
    n = len(matrix)
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise SingularSystemError(f"singular matrix (column {col})")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r == col or not a[r][col]:
                continue
            factor = a[r][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
