"""Exact nullspace of a rational matrix by fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        lcm = 1
        for v in row:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        out.append([int(v * lcm) for v in row])
    return out


def echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of ``rows`` (scaled to integers) and its pivot columns."""
    M = _integer_rows(rows)
    if not M:
        return M, []
    nrows, ncols = len(M), len(M[0])
    prev = 1
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        sel = next((i for i in range(pr, nrows) if M[i][c] != 0), None)
        if sel is None:
            continue
        M[pr], M[sel] = M[sel], M[pr]
        p = M[pr][c]
        for i in range(pr + 1, nrows):
            a = M[i][c]
            row_i, row_p = M[i], M[pr]
            for k in range(c + 1, ncols):
                row_i[k] = (p * row_i[k] - a * row_p[k]) // prev
            row_i[c] = 0
        prev = p
        pivots.append(c)
        pr += 1
    return M, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of ``{v : rows @ v = 0}``; each vector has a 1 at its free column."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    M, pivots = echelon(rows)
    ncols = len(M[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = sum((M[i][k] * x[k] for k in range(pc + 1, ncols) if x[k]), Fraction(0))
            x[pc] = -s / M[i][pc]
        basis.append(tuple(x))
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    return len(echelon(rows)[1]) if rows else 0


def matvec(rows: Sequence[Sequence], v: Sequence) -> list:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in rows]
