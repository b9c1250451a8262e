"""Small dense linear algebra over cyclotomic fields."""

from __future__ import annotations

from typing import Sequence

from .cyclo import ONE, ZERO, Cyclo, inv

Matrix = list[list[Cyclo]]


class SingularMatrixError(ZeroDivisionError):
    pass


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[Cyclo]], b: Sequence[Sequence[Cyclo]]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def mat_inverse(m: Sequence[Sequence[Cyclo]]) -> Matrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError`."""
    n = len(m)
    a = [list(map(Cyclo, row)) + identity(n)[i] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        s = inv(a[col][col])
        a[col] = [v * s if v else v for v in a[col]]
        for r in range(n):
            f = a[r][col]
            if r != col and f:
                a[r] = [v - f * w if w else v for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def det(m: Sequence[Sequence[Cyclo]]) -> Cyclo:
    """Fraction-free (Bareiss) determinant."""
    n = len(m)
    if n == 0:
        return ONE
    a = [list(map(Cyclo, row)) for row in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pinv = inv(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) * pinv
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d
