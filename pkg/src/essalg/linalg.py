"""Exact dense linear algebra over QQ and GF(p): ranks, products, zero tests.

Ranks over QQ clear denominators row by row and run fraction-free (Bareiss)
elimination on integers; over GF(p) plain Gaussian elimination is used.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import lcm
from typing import Sequence

from essalg.ring_core.fields import Field, PrimeField, RationalField

Matrix = list  # list[list[scalar]], row-major


def zeros(rows: int, cols: int, F: Field) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def shape(M: Matrix, cols: int | None = None) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else (cols or 0))


def matmul(A: Matrix, B: Matrix, F: Field, inner: int | None = None) -> Matrix:
    """``A @ B``; ``inner`` must be given when ``A`` has no rows but ``B`` defines the width."""
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [F.zero] * n
        for k, a in enumerate(row):
            if F.is_zero(a):
                continue
            for j, b in enumerate(B[k]):
                if not F.is_zero(b):
                    acc[j] = F.add(acc[j], F.mul(a, b))
        out.append(acc)
    return out


def is_zero_matrix(M: Matrix, F: Field) -> bool:
    return all(F.is_zero(x) for row in M for x in row)


def _integer_rows(M: Matrix) -> list[list[int]]:
    rows = []
    for row in M:
        if not any(row):
            continue
        den = lcm(*(Fraction(x).denominator for x in row))
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination (all divisions are exact)."""
    M = [r[:] for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        prow = M[rank]
        for r in range(rank + 1, len(M)):
            row = M[r]
            a = row[col]
            if a == 0:
                for c in range(col + 1, ncols):
                    row[c] = row[c] * p // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (row[c] * p - a * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def _modp_rank(M: Matrix, p: int) -> int:
    A = [[x % p for x in row] for row in M if any(x % p for x in row)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        prow = [x * inv % p for x in A[rank]]
        A[rank] = prow
        for r in range(rank + 1, len(A)):
            a = A[r][col]
            if a:
                A[r] = [(x - a * y) % p for x, y in zip(A[r], prow)]
        rank += 1
        if rank == len(A):
            break
    return rank


def rank(M: Matrix, F: Field) -> int:
    if not M or not M[0]:
        return 0
    if isinstance(F, RationalField):
        return bareiss_rank(_integer_rows(M))
    if isinstance(F, PrimeField):
        return _modp_rank(M, F.p)
    raise TypeError(f"unsupported field {F!r}")  # pragma: no cover


def ranks(matrices: Sequence[Matrix], F: Field, jobs: int = 1) -> list[int]:
    """Ranks of independent matrices, optionally in worker processes."""
    if jobs <= 1 or len(matrices) < 2:
        return [rank(M, F) for M in matrices]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(rank, matrices, [F] * len(matrices)))


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]
