"""Quasideterminants of matrices over the truncated series ring.

A quasideterminant |A|_ij is the entry a_ij minus (row i without j) times
the inverse of the submatrix with row i and column j removed times
(column j without i). Matrix inversion over the series ring reduces to a
rational constant-term inversion plus a finite geometric series. The walk
expansion provides an independent per-walk oracle for the identity
inverse-of-|E - B|_ii = sum over closed walks at i, and the trace series
of a module is recovered as the sum of the inverted diagonal
quasideterminants of E - sum_j x_j (action of x_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlinalg import Matrix, SingularMatrix, mat_inverse
from .modchar import FreeModule
from .ncseries import (
    OrderExceeded,
    TruncSeries,
    epsilon,
    one_series,
    series_add,
    series_invert,
    series_mul,
    series_scale,
    truncate,
    zero_series,
)


class SingularConstantTerm(ValueError):
    """The rational constant-term matrix is not invertible."""


class NonProperEntries(ValueError):
    """Walk enumeration requires every entry to have zero constant term."""


@dataclass(frozen=True)
class SeriesMatrix:
    """Square grid of truncated series with a common alphabet and order."""

    size: int
    entries: tuple[tuple[TruncSeries, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.size or any(len(r) != self.size for r in self.entries):
            raise ValueError("entry grid does not match declared size")
        if self.size:
            mu, order = self.entries[0][0].mu, self.entries[0][0].order
            for row in self.entries:
                for f in row:
                    if (f.mu, f.order) != (mu, order):
                        raise ValueError("entries disagree on alphabet or order")

    @property
    def mu(self) -> int:
        return self.entries[0][0].mu

    @property
    def order(self) -> int:
        return self.entries[0][0].order

    def __getitem__(self, ij: tuple[int, int]) -> TruncSeries:
        i, j = ij
        return self.entries[i][j]


def smat_from_entries(entries: Sequence[Sequence[TruncSeries]]) -> SeriesMatrix:
    return SeriesMatrix(len(entries), tuple(tuple(r) for r in entries))


def smat_identity(size: int, mu: int, order: int) -> SeriesMatrix:
    return SeriesMatrix(size, tuple(
        tuple(one_series(mu, order) if i == j else zero_series(mu, order) for j in range(size))
        for i in range(size)))


def smat_from_matrix(m: Matrix, mu: int, order: int) -> SeriesMatrix:
    """Embed a rational matrix as a matrix of constant series."""
    return SeriesMatrix(m.rows, tuple(
        tuple(TruncSeries(mu, order, {(): a}) for a in row) for row in m.entries))


def constant_term(A: SeriesMatrix) -> Matrix:
    return Matrix(A.size, A.size,
                  tuple(tuple(epsilon(f) for f in row) for row in A.entries))


def smat_add(A: SeriesMatrix, B: SeriesMatrix) -> SeriesMatrix:
    return SeriesMatrix(A.size, tuple(
        tuple(series_add(a, b) for a, b in zip(ra, rb))
        for ra, rb in zip(A.entries, B.entries)))


def smat_mul(A: SeriesMatrix, B: SeriesMatrix) -> SeriesMatrix:
    n = A.size
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero_series(A.mu, A.order)
            for k in range(n):
                acc = series_add(acc, series_mul(A.entries[i][k], B.entries[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return SeriesMatrix(n, tuple(rows))


def smat_inverse(A: SeriesMatrix) -> SeriesMatrix:
    """Two-sided inverse up to the truncation order.

    Factor A = C (I - H) with C the constant-term matrix and H strictly
    proper, then sum the geometric series in H (finite at any order) and
    postmultiply by C^-1.
    """
    try:
        cinv = mat_inverse(constant_term(A))
    except SingularMatrix as e:
        raise SingularConstantTerm(str(e)) from None
    cinv_s = smat_from_matrix(cinv, A.mu, A.order)
    ca = smat_mul(cinv_s, A)
    # H = I - C^-1 A is strictly proper
    H = SeriesMatrix(A.size, tuple(
        tuple(series_add(one_series(A.mu, A.order) if i == j else zero_series(A.mu, A.order),
                         series_scale(-1, ca.entries[i][j]))
              for j in range(A.size))
        for i in range(A.size)))
    acc = smat_identity(A.size, A.mu, A.order)
    power = smat_identity(A.size, A.mu, A.order)
    for _ in range(A.order):
        power = smat_mul(power, H)
        if all(f.is_zero() for row in power.entries for f in row):
            break
        acc = smat_add(acc, power)
    return smat_mul(acc, cinv_s)


def qdet(A: SeriesMatrix, i: int, j: int) -> TruncSeries:
    """Quasideterminant at position (i, j), zero-based.

    For size 1 this is the single entry; otherwise the defining formula
    with one inversion of the complementary submatrix, which must have an
    invertible constant term.
    """
    n = A.size
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"position ({i}, {j}) outside size {n}")
    if n == 1:
        return A.entries[0][0]
    rows = [r for r in range(n) if r != i]
    cols = [c for c in range(n) if c != j]
    sub = SeriesMatrix(n - 1, tuple(tuple(A.entries[r][c] for c in cols) for r in rows))
    inv = smat_inverse(sub)
    row_i = [A.entries[i][c] for c in cols]
    col_j = [A.entries[r][j] for r in rows]
    acc = zero_series(A.mu, A.order)
    for a in range(n - 1):
        for b in range(n - 1):
            acc = series_add(acc, series_mul(series_mul(row_i[a], inv.entries[a][b]), col_j[b]))
    return series_add(A.entries[i][j], series_scale(-1, acc))


def walk_series(B: SeriesMatrix, i: int, order: int) -> TruncSeries:
    """Sum over all closed walks at vertex i of the entry products.

    Entries must be strictly proper so a walk of e edges only contributes
    words of length >= e; enumeration stops at depth = order. The empty
    walk contributes 1. This is the brute-force side of the closed-walk
    expansion of inverted diagonal quasideterminants.
    """
    n = B.size
    if not 0 <= i < n:
        raise IndexError(f"vertex {i} outside size {n}")
    if B.order < order:
        raise OrderExceeded(f"entries of order {B.order} cannot support walks to order {order}")
    for row in B.entries:
        for f in row:
            if epsilon(f) != 0:
                raise NonProperEntries("entry with nonzero constant term")
    mu = B.mu
    ent = [[truncate(f, order) for f in row] for row in B.entries]
    total = one_series(mu, order)

    def extend(vertex: int, acc: TruncSeries, edges: int):
        nonlocal total
        if edges == order:
            return
        for nxt in range(n):
            step = series_mul(acc, ent[vertex][nxt])
            if step.is_zero():
                continue
            if nxt == i:
                total = series_add(total, step)
            extend(nxt, step, edges + 1)

    extend(i, one_series(mu, order), 0)
    return total


def letter_matrix(M: FreeModule, order: int) -> SeriesMatrix:
    """The series matrix sum_j x_j (action of x_j), entrywise."""
    d = M.dim
    rows = []
    for u in range(d):
        row = []
        for v in range(d):
            coeffs = {}
            for j in range(1, M.mu + 1):
                a = M.actions[j - 1].entries[u][v]
                if a != 0:
                    coeffs[(j,)] = a
            row.append(TruncSeries(M.mu, order, coeffs))
        rows.append(tuple(row))
    return SeriesMatrix(d, tuple(rows))


def chi_via_qdet(M: FreeModule, order: int) -> TruncSeries:
    """Trace series of M as the sum over i of |E - sum_j x_j u_j|_ii^-1."""
    d = M.dim
    if d == 0:
        return zero_series(M.mu, order)
    B = letter_matrix(M, order)
    E = smat_identity(d, M.mu, order)
    S = smat_add(E, SeriesMatrix(d, tuple(
        tuple(series_scale(-1, f) for f in row) for row in B.entries)))
    total = zero_series(M.mu, order)
    for i in range(d):
        total = series_add(total, series_invert(qdet(S, i, i)))
    return total
