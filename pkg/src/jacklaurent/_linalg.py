"""Dense exact matrices over RatKP, stored as lists of rows."""

from __future__ import annotations

from .exactfield import ONE, ZERO, RatKP

Matrix = list  # list[list[RatKP]]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = ONE
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, inner, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        for t in range(inner):
            x = row[t]
            if x.is_zero():
                continue
            brow = b[t]
            for j in range(m):
                y = brow[j]
                if not y.is_zero():
                    out[i][j] = out[i][j] + x * y
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def diag(values) -> Matrix:
    values = list(values)
    out = zeros(len(values))
    for i, v in enumerate(values):
        out[i][i] = v
    return out


def is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_vec(a: Matrix, v: list) -> list:
    return [sum((x * y for x, y in zip(row, v) if not x.is_zero()), ZERO) for row in a]


def upper_unitriangular_inverse(a: Matrix) -> Matrix:
    """Inverse of an upper unitriangular matrix by back-substitution."""
    n = len(a)
    for i in range(n):
        if a[i][i] != ONE or any(not a[i][j].is_zero() for j in range(i)):
            raise ValueError("matrix is not upper unitriangular")
    x = identity(n)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = ZERO
            for t in range(i + 1, j + 1):
                if not a[i][t].is_zero() and not x[t][j].is_zero():
                    acc = acc + a[i][t] * x[t][j]
            x[i][j] = -acc
    return x


def rank(rows: list[list[RatKP]]) -> int:
    """Rank by Gaussian elimination over the field."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(m)) if not m[r][col].is_zero()), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = m[rk][col].inverse()
        prow = [x * inv for x in m[rk]]
        m[rk] = prow
        for r in range(len(m)):
            if r != rk and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [x - f * y if not y.is_zero() else x for x, y in zip(m[r], prow)]
        rk += 1
        if rk == len(m):
            break
    return rk


def det(a: Matrix) -> RatKP:
    n = len(a)
    m = [list(r) for r in a]
    out = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        p = m[col][col]
        out = out * p
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out
