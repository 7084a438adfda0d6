"""Exact linear algebra over the rationals.

Dense matrices with ``fractions.Fraction`` entries, reduced row-echelon
form, inversion, canonical subspaces, and the two algebra computations
everything else is built on: the span of all products of a set of square
matrices, and the radical of the trace bilinear form on such a span.

Everything here is immutable and every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class SingularMatrix(ValueError):
    """A square matrix required to be invertible has rank < dimension."""


def q(x) -> Fraction:
    """Coerce an int, string like "-3/7", or Fraction to an exact rational.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact coercion of {type(x).__name__} to Rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Rational")


def rational_to_str(x: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(x)


def vec(xs: Iterable) -> Vector:
    return tuple(q(x) for x in xs)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    acc = None
    for a, b in zip(u, v):
        if a and b:
            acc = a * b if acc is None else acc + a * b
    return Fraction(0) if acc is None else acc


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of rationals, row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entry grid does not match declared shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        ent = tuple(tuple(q(x) for x in r) for r in rows)
        nrows = len(ent)
        ncols = len(ent[0]) if ent else 0
        return Matrix(nrows, ncols, ent)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return Matrix(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def __mul__(self, c) -> "Matrix":
        c = q(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = Fraction(0)
        out = []
        for arow in self.entries:
            acc: list = [None] * other.cols
            for k, a in enumerate(arow):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            acc[j] = a * b if acc[j] is None else acc[j] + a * b
            out.append(tuple(zero if c is None else c for c in acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.col(j) for j in range(self.cols)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def matrix_to_lists(m: Matrix) -> list[list[str]]:
    return [[rational_to_str(a) for a in r] for r in m.entries]


def matrix_from_lists(obj: Sequence[Sequence]) -> Matrix:
    return Matrix.from_rows(obj)


def row_times_mat(v: Sequence[Fraction], m: Matrix) -> Vector:
    if len(v) != m.rows:
        raise DimensionMismatch(f"row of length {len(v)} times {m.rows}x{m.cols}")
    zero = Fraction(0)
    acc: list = [None] * m.cols
    for a, row in zip(v, m.entries):
        if a:
            for j, b in enumerate(row):
                if b:
                    acc[j] = a * b if acc[j] is None else acc[j] + a * b
    return tuple(zero if c is None else c for c in acc)


def mat_times_col(m: Matrix, v: Sequence[Fraction]) -> Vector:
    if len(v) != m.cols:
        raise DimensionMismatch(f"{m.rows}x{m.cols} times column of length {len(v)}")
    return tuple(dot(r, v) for r in m.entries)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    z = Fraction(0)
    top = tuple(r + (z,) * b.cols for r in a.entries)
    bot = tuple((z,) * a.cols + r for r in b.entries)
    return Matrix(a.rows + b.rows, a.cols + b.cols, top + bot)


def outer(u: Sequence[Fraction], v: Sequence[Fraction]) -> Matrix:
    return Matrix(len(u), len(v), tuple(tuple(a * b for b in v) for a in u))


def _rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [a / p for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows)
    ech = Matrix(m.rows, m.cols, tuple(tuple(r) for r in rows))
    return ech, len(pivots)


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrix when rank < dimension."""
    if not m.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.entries)]
    aug, pivots = _rref_rows(aug)
    if len(pivots) < n or pivots != list(range(n)):
        raise SingularMatrix(f"matrix of rank {len([p for p in pivots if p < n])} < {n}")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in aug))


def nullspace(m: Matrix) -> tuple[Vector, ...]:
    """Canonical kernel basis, one vector per free column, ascending."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return tuple(basis)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n in canonical reduced row-echelon basis.

    Equality of subspaces is equality of the representation; the basis is
    canonical, so that is equality of the spans.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Sequence[Fraction]]) -> "Subspace":
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch("vector length differs from ambient dimension")
        if not rows:
            return Subspace(ambient_dim, ())
        rows, pivots = _rref_rows(rows)
        return Subspace(ambient_dim, tuple(tuple(r) for r in rows[: len(pivots)]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residual of v after elimination against the basis."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        w = list(v)
        for row in self.basis:
            p = next(i for i, a in enumerate(row) if a != 0)
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(a == 0 for a in self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of v in the echelon basis; v must lie in the span."""
        res = self.reduce(v)
        if any(a != 0 for a in res):
            raise ValueError("vector is not in the subspace")
        pivots = [next(i for i, a in enumerate(row) if a != 0) for row in self.basis]
        return tuple(v[p] for p in pivots)


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis.

    ``insert`` returns True when the vector enlarged the span. Used by the
    span-closure searches (generated algebras, reachable state spaces).
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = list(v)
        for p, row in zip(self.pivots, self.rows):
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def insert(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        w = self._reduce(v)
        p = next((i for i, a in enumerate(w) if a != 0), None)
        if p is None:
            return False
        piv = w[p]
        if piv != 1:
            w = [a / piv for a in w]
        for i in range(len(self.rows)):
            if self.rows[i][p] != 0:
                f = self.rows[i][p]
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], w)]
        at = next((i for i, pp in enumerate(self.pivots) if pp > p), len(self.pivots))
        self.rows.insert(at, w)
        self.pivots.insert(at, p)
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(a == 0 for a in self._reduce(v))

    def to_subspace(self) -> Subspace:
        return Subspace(self.ambient_dim, tuple(tuple(r) for r in self.rows))


def mat_to_vec(m: Matrix) -> Vector:
    """Row-major flattening."""
    return tuple(a for r in m.entries for a in r)


def vec_to_mat(v: Sequence[Fraction], d: int) -> Matrix:
    if len(v) != d * d:
        raise DimensionMismatch("flattened length is not d*d")
    return Matrix(d, d, tuple(tuple(v[i * d + j] for j in range(d)) for i in range(d)))


def algebra_closure(generators: Sequence[Matrix]) -> Subspace:
    """Span of the identity and all products of the generators.

    Breadth-first: right-multiply every newly independent element by each
    generator until the dimension stabilizes. Every product of generators
    is reachable from the identity this way, so the result is the full
    unital algebra they generate, as a subspace of the d*d matrix space.
    """
    if not generators:
        raise DimensionMismatch("need at least one generator to fix the dimension")
    d = generators[0].rows
    for g in generators:
        if not g.is_square or g.rows != d:
            raise DimensionMismatch("generators must be square of equal dimension")
    basis = EchelonBasis(d * d)
    queue: list[Matrix] = []
    if basis.insert(mat_to_vec(Matrix.identity(d))):
        queue.append(Matrix.identity(d))
    while queue:
        m = queue.pop(0)
        for g in generators:
            prod = m @ g
            w = mat_to_vec(prod)
            if basis.insert(w):
                queue.append(prod)
    return basis.to_subspace()


def trace_form_radical(algebra: Subspace) -> Subspace:
    """Kernel of the trace form (a, b) -> trace(a b) on a matrix algebra.

    Input is a span of flattened d x d matrices that is closed under
    multiplication and contains the identity; in characteristic zero the
    span is a semisimple algebra exactly when the result is zero.
    """
    n = algebra.ambient_dim
    d = isqrt(n)
    if d * d != n:
        raise DimensionMismatch("ambient dimension is not a perfect square")
    mats = [vec_to_mat(row, d) for row in algebra.basis]
    k = len(mats)
    if k == 0:
        return Subspace(n, ())
    gram = Matrix(k, k, tuple(tuple((mats[i] @ mats[j]).trace() for j in range(k)) for i in range(k)))
    kernel = nullspace(gram)
    rad_vectors = []
    for cvec in kernel:
        acc = [Fraction(0)] * n
        for c, row in zip(cvec, algebra.basis):
            if c != 0:
                acc = [a + c * b for a, b in zip(acc, row)]
        rad_vectors.append(tuple(acc))
    return Subspace.span(n, rad_vectors)
