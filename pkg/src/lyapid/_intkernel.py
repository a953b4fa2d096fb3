"""Integer fraction-free elimination helpers for the classification hot path.

The sweep classifies thousands of graphs, each requiring an exact Lyapunov
solve (a p^2 x p^2 integer system) and an exact rank test.  Working on
plain Python ints avoids per-operation gcd normalization of Fractions;
rank is invariant under the row scalings used here.
"""

from __future__ import annotations

import math
from fractions import Fraction


def bareiss_forward(rows: list[list[int]], limit_cols: int | None = None):
    """In-place fraction-free elimination; returns (pivot_cols, sign)."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    stop = nc if limit_cols is None else limit_cols
    prev = 1
    sign = 1
    pivot_cols: list[int] = []
    r = 0
    for c in range(stop):
        piv = None
        for i in range(r, nr):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pc = rows[r][c]
        for i in range(r + 1, nr):
            ric = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c, nc):
                ri[j] = (pc * ri[j] - ric * rr[j]) // prev
        prev = pc
        pivot_cols.append(c)
        r += 1
        if r == nr:
            break
    return pivot_cols, sign


def int_rank(rows: list[list[int]]) -> int:
    """Exact rank of an integer matrix (consumes ``rows``)."""
    if not rows or not rows[0]:
        return 0
    pivot_cols, _ = bareiss_forward(rows)
    return len(pivot_cols)


def solve_square_int(a_rows: list[list[int]], b: list[int]) -> list[Fraction]:
    """Exact solution of a square nonsingular integer system.

    Raises:
        ZeroDivisionError-free ValueError if the system is singular.
    """
    n = len(a_rows)
    aug = [list(a_rows[i]) + [b[i]] for i in range(n)]
    pivot_cols, _ = bareiss_forward(aug, limit_cols=n)
    if len(pivot_cols) < n:
        raise ValueError("singular system")
    x: list[Fraction] = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(aug[r][n])
        row = aug[r]
        for j in range(r + 1, n):
            if row[j]:
                acc -= row[j] * x[j]
        x[r] = acc / row[r]
    return x


def common_denominator(values: list[Fraction]) -> tuple[list[int], int]:
    """Scale rationals to integers: returns (numerators, positive lcm denominator)."""
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values], den
