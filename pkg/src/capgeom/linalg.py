"""Exact Gaussian elimination over a FieldSpec (small dense matrices as lists)."""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch, DivisionByZero
from .field import FieldSpec

Matrix = list[list[int]]


def row_reduce(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(row_reduce(F, rows)[1])


def matmul(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if len(A[0]) != len(B):
        raise DimensionMismatch("inner dimensions differ")
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            acc = 0
            for k, a in enumerate(row):
                if a:
                    acc = F.add(acc, F.mul(a, B[k][j]))
            new.append(acc)
        out.append(new)
    return out


def matvec(F: FieldSpec, A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [row[0] for row in matmul(F, A, [[x] for x in v])]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def inverse(F: FieldSpec, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(A)]
    red, piv = row_reduce(F, aug)
    if piv[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return [row[n:] for row in red]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)]
