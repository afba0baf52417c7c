"""Continuant-style forms in the black-node weights.

``f_form`` is the continuant ``f(X1..Xn) = Xn*f(X1..X(n-1)) + f(X1..X(n-2))``
with ``f() = 1``; ``p_form`` accumulates ``P(X1..Xn) = Xn*f(X1..X(n-1)) + P(X1..X(n-1))``
with ``P() = 0``. Both take plain Python ints, so values never overflow.
"""

from __future__ import annotations

import math
from typing import Sequence


def f_form(xs: Sequence[int]) -> int:
    prev, cur = 0, 1  # f of length -1 and 0
    for x in xs:
        prev, cur = cur, x * cur + prev
    return cur


def p_form(xs: Sequence[int]) -> int:
    f_prev, f_cur, p = 0, 1, 0
    for x in xs:
        p += x * f_cur
        f_prev, f_cur = f_cur, x * f_cur + f_prev
    return p


def _is_block_union(mask: int, n: int) -> bool:
    # blocks are {n} and the adjacent pairs {i, i+1}; bit i-1 stands for index i
    i = 1
    while i <= n:
        if mask >> (i - 1) & 1:
            if i < n and mask >> i & 1:
                i += 2
                continue
            if i == n:
                return True
            return False
        i += 1
    return True


def dloussky_poly_bruteforce(xs: Sequence[int]) -> int:
    """Sum over block unions B of prod_{j not in B} X_j, by exhaustive subset scan.

    B runs over subsets of {1..n} that are disjoint unions of {n} and
    {i, i+1}; the full cover (which would add the constant 1) is left out.
    """
    n = len(xs)
    full = (1 << n) - 1
    total = 0
    for mask in range(full):
        if _is_block_union(mask, n):
            total += math.prod(x for j, x in enumerate(xs) if not mask >> j & 1)
    return total


def division_split(xs: Sequence[int]) -> tuple[int, int]:
    """Both sides of ``P(X1..Xn) = X1*(P(X2..Xn) + 1) + P(X3..Xn)``."""
    if len(xs) < 3:
        raise ValueError("division_split needs at least three arguments")
    lhs = p_form(xs)
    rhs = xs[0] * (p_form(xs[1:]) + 1) + p_form(xs[2:])
    return lhs, rhs
