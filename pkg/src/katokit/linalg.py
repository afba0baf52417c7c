"""Exact linear algebra over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularMatrix

Matrix = Sequence[Sequence[int]]


def bareiss_determinant(matrix: Matrix) -> int:
    """Determinant by fraction-free elimination; every division is exact."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def leading_principal_minors(matrix: Matrix) -> list[int]:
    return [bareiss_determinant([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def is_negative_definite(matrix: Matrix) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    return all((m < 0) if k % 2 else (m > 0) for k, m in enumerate(leading_principal_minors(matrix), start=1))


def solve_rational(matrix: Matrix, rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly by Gauss-Jordan elimination with Fractions."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular at column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        row = [v / pv for v in aug[col]]
        aug[col] = row
        for r in range(n):
            factor = aug[r][col]
            if r != col and factor != 0:
                aug[r] = [a - factor * b for a, b in zip(aug[r], row)]
    return [aug[i][n] for i in range(n)]
