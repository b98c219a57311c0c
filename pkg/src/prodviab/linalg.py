"""Exact dense linear algebra over fractions.

Everything here works on tuples of tuples of Fraction.  Matrices are tiny
(production systems top out around 8 goods), so plain Gaussian elimination
and Bareiss are plenty.
"""

from __future__ import annotations

from fractions import Fraction

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def as_matrix(rows) -> Matrix:
    return tuple(tuple(frac(v) for v in row) for row in rows)


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def mat_vec(m: Matrix, x: Vector) -> Vector:
    return tuple(sum((row[j] * x[j] for j in range(len(x))), ZERO) for row in m)


def dot(a: Vector, b: Vector) -> Fraction:
    return sum((ai * bi for ai, bi in zip(a, b)), ZERO)


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Row swaps are applied when a pivot vanishes; the sign is tracked.
    """
    n = len(m)
    if n == 0:
        return ONE
    a = [list(row) for row in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = ZERO
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def submatrix(m: Matrix, rows, cols) -> Matrix:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    a = [list(row) for row in m]
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def solve_square(m: Matrix, b: Vector) -> Vector | None:
    """Solve m x = b for square nonsingular m; None when singular."""
    n = len(m)
    a = [list(row) + [b[i]] for i, row in enumerate(m)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        inv = a[c][c]
        a[c] = [v / inv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


def nullspace(m: Matrix) -> list[Vector]:
    """Basis of the right nullspace of m (may be empty)."""
    if not m:
        return []
    ncols = len(m[0])
    a = [list(row) for row in m]
    nrows = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    basis = []
    free_cols = [c for c in range(ncols) if c not in pivots]
    for fc in free_cols:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -a[row_idx][fc]
        basis.append(tuple(vec))
    return basis


def left_nullspace(m: Matrix) -> list[Vector]:
    return nullspace(transpose(m))
