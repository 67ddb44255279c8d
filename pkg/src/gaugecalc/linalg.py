"""Small exact linear-algebra helpers over Fraction (row echelon, solve, rank)."""
from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def independent_subset(rows, limit=None):
    """Indices of a greedily chosen linearly independent subset of ``rows``."""
    basis = []  # echelon rows with their pivot column
    chosen = []
    for idx, row in enumerate(rows):
        v = list(row)
        for b, pc in basis:
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * c for a, c in zip(v, b)]
        pc = next((k for k, a in enumerate(v) if a != 0), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [a * inv for a in v]
        basis.append((v, pc))
        chosen.append(idx)
        if limit is not None and len(chosen) == limit:
            break
    return chosen


def solve(A, b):
    """Solve a square nonsingular system ``A x = b`` exactly."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    R, piv = rref(M)
    if piv[:n] != list(range(n)):
        raise ValueError("singular system")
    return tuple(R[i][n] for i in range(n))


def inverse(A):
    n = len(A)
    M = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(M)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [R[i][n:] for i in range(n)]


def nullspace(rows, ncols: int):
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    R, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(piv):
            x[pc] = -R[i][f]
        out.append(tuple(x))
    return out


def matvec(A, x):
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)
