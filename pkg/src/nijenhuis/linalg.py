"""Small exact linear algebra over Q (matrices are lists of Fraction rows)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, InvariantError

Matrix = list[list[Fraction]]


def _exact(a) -> Matrix:
    # ints would otherwise fall into float division
    return [[Fraction(x) for x in row] for row in a]


def identity(n: int, scale=1) -> Matrix:
    s = Fraction(scale)
    return [[s if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int | None = None) -> Matrix:
    return [[Fraction(0)] * (rows if cols is None else cols) for _ in range(rows)]


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*_exact(a))] if a else []


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionError("matrix shapes do not compose")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in _exact(a)]


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def madd(a, b, sb=1) -> Matrix:
    return [[Fraction(x) + sb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def row_reduce(a: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _exact(a)
    pivots: list[int] = []
    row = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((r for r in range(row, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(a)[1]) if a else 0


def determinant(a: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(a)
    m = _exact(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def inverse(a: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(a)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise InvariantError("matrix is singular")
    return [row[n:] for row in red]


def in_span(vectors: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    if not any(v):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(v)]) == rank(vectors)


def scalar_multiple_of_identity(a: Sequence[Sequence[Fraction]]) -> Fraction | None:
    """Return ``lam`` if ``a == lam * I`` exactly, else None (``0`` for the empty matrix)."""
    n = len(a)
    if n == 0:
        return Fraction(0)
    lam = Fraction(a[0][0])
    for i in range(n):
        for j in range(n):
            if a[i][j] != (lam if i == j else 0):
                return None
    return lam
