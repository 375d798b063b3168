"""Exact linear algebra: rational matrices over ``Fraction`` and GF(2) bitsets.

GF(2) vectors are Python ints used as bitsets (bit ``i`` is coordinate ``i``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def leading_minors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """All leading principal minors of an integer matrix.

    Fraction-free Bareiss elimination without pivoting; the pivot at step ``k``
    is exactly the ``k``-th leading minor. Stops at the first zero minor, so
    the returned list may be shorter than the matrix.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss with row pivoting)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(matrix: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...] | None:
    """Inverse over the rationals by Gauss-Jordan; ``None`` if singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                rowc = a[col]
                a[r] = [x - f * y for x, y in zip(a[r], rowc)]
    return tuple(tuple(row[n:]) for row in a)


def mat_vec(matrix, vec) -> tuple:
    return tuple(sum(m * v for m, v in zip(row, vec)) for row in matrix)


# --- GF(2) -----------------------------------------------------------------

def gf2_rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of bitset rows; returns (rows, pivot columns)."""
    rows = [r for r in rows if r]
    pivots: list[int] = []
    reduced: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(rows) if r & bit), None)
        if idx is None:
            continue
        prow = rows.pop(idx)
        rows = [r ^ prow if r & bit else r for r in rows]
        reduced = [r ^ prow if r & bit else r for r in reduced]
        reduced.append(prow)
        pivots.append(col)
    return reduced, pivots


def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    return len(gf2_rref(rows, ncols)[1])


def gf2_nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{x : r.x = 0 for all rows r}``, one vector per free column.

    Basis vector for free column ``f`` has bit ``f`` set and no other free bit,
    so coordinates of a null vector in this basis are its free-column bits.
    """
    reduced, pivots = gf2_rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for prow, pc in zip(reduced, pivots):
            if prow >> f & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def gf2_solve(columns: Sequence[int], target: int, nbits: int) -> int | None:
    """Find ``c`` with ``sum_i c_i * columns[i] == target``; bitmask of ``c`` or None."""
    # Track combinations alongside each reduced vector.
    basis: list[tuple[int, int, int]] = []  # (vector, combo, pivot bit)
    for i, col in enumerate(columns):
        v, combo = col, 1 << i
        for bv, bc, pb in basis:
            if v >> pb & 1:
                v ^= bv
                combo ^= bc
        if v:
            pb = v.bit_length() - 1
            basis.append((v, combo, pb))
    v, combo = target, 0
    for bv, bc, pb in basis:
        if v >> pb & 1:
            v ^= bv
            combo ^= bc
    return combo if v == 0 else None
