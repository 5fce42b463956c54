"""Exact integer and GF(2) linear algebra on small matrices."""

from __future__ import annotations

from typing import Sequence

INT64_MAX = 2**63 - 1


class CoefficientOverflow(ArithmeticError):
    """An integer coefficient left the signed 64-bit range."""


def checked(value: int) -> int:
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise CoefficientOverflow(f"coefficient {value} exceeds 64-bit range")
    return value


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def gf2_rank(vectors: Sequence[int]) -> int:
    """Rank over GF(2) of vectors packed as int bitsets."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)
