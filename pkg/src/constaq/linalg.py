"""Dense linear algebra over a FieldSpec, on lists of element codes."""

from __future__ import annotations

from typing import Sequence

from .field import FieldSpec

Matrix = list[list[int]]


def rref(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) if x else 0 for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[0])


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of {v : M v^T = 0}, one vector per free column."""
    R, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = F._one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def matmul_t(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    """A B^T."""
    out = []
    for a in A:
        row = []
        for b in B:
            acc = 0
            for x, y in zip(a, b):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            row.append(acc)
        out.append(row)
    return out


def is_zero(M: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in M for x in row)


def in_row_space(F: FieldSpec, basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return rank(F, list(basis) + [list(v)]) == rank(F, basis)
