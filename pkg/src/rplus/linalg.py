"""Exact Gaussian elimination over Fraction."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence


def _copy(rows: Sequence[Sequence[Any]]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def det(matrix: Sequence[Sequence[Any]]) -> Fraction:
    a = _copy(matrix)
    n = len(a)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        pv = a[col][col]
        result *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                row, prow = a[r], a[col]
                for c in range(col, n):
                    row[c] -= f * prow[c]
    return result * sign


def solve(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Fraction] | None:
    """A solution of A x = b, or None if the system is inconsistent.

    Free variables are set to zero, so the solution is unique when A has
    full column rank.
    """
    a = _copy(matrix)
    b = [Fraction(x) for x in rhs]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        b[r], b[pivot] = b[pivot], b[r]
        pv = a[r][c]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c] / pv
                for j in range(c, n):
                    a[i][j] -= f * a[r][j]
                b[i] -= f * b[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(b[i] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = b[i] / a[i][c]
    return x


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    a = _copy(matrix)
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, m):
            f = a[i][c] / a[r][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[r][j]
        r += 1
    return r
