"""Dense Gaussian elimination over QQ or GF(p). Matrices are lists of rows."""

from __future__ import annotations

from typing import Sequence

from .fields import Field


def row_reduce(matrix: Sequence[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    conv, norm, inv = field.convert, field.normalize, field.inv
    m = [[conv(x) for x in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv_inv = inv(m[r][c])
        m[r] = [norm(x * piv_inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(matrix: Sequence[Sequence], field: Field) -> int:
    return len(row_reduce(matrix, field)[1])


def nullspace(matrix: Sequence[Sequence], field: Field, ncols: int | None = None) -> list[list]:
    """Basis of {x : M x = 0}, one vector per free column."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[field.one if i == j else field.zero for i in range(ncols)]
                for j in range(ncols)]
    rref, pivots = row_reduce(matrix, field)
    ncols = len(rref[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for row, pc in zip(rref, pivots):
            v[pc] = field.normalize(-row[fcol])
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence, field: Field) -> list:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rref, pivots = row_reduce(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise ValueError("singular system")
    return [rref[i][n] for i in range(n)]
