"""Exact linear algebra over Z and Q.

Rank uses fraction-free (Bareiss) elimination after clearing denominators, so
every intermediate is an integer and every division is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _to_integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in M:
        row = [Fraction(x) for x in row]
        den = lcm(1, *(x.denominator for x in row))
        rows.append([int(x * den) for x in row])
    return rows


def bareiss_rank(M: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    A = _to_integer_rows(M)
    if not A or not A[0]:
        return 0
    nrows, ncols = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row_i[j] = (p * row_i[j] - a_ic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def bareiss_determinant(M: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    dens = [lcm(1, *(Fraction(x).denominator for x in row)) for row in M]
    A = _to_integer_rows(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    scale = 1
    for d in dens:
        scale *= d
    return Fraction(sign * A[n - 1][n - 1], scale)


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = [[Fraction(x) for x in row] for row in M]
    pivots: list[int] = []
    if not A:
        return A, pivots
    r = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve M x = b; raises ValueError if inconsistent or underdetermined."""
    n = len(M[0])
    aug = [list(row) + [rhs] for row, rhs in zip(M, b)]
    R, pivots = rref(aug)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("linear system has no unique solution")
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in R[:n]]


def independent_rows(M: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent set of rows, greedy in order."""
    T = [list(col) for col in zip(*M)] if M and M[0] else []
    if not T:
        return []
    _, pivots = rref(T)
    return pivots
