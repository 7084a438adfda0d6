"""Finite linear realizations of rational noncommutative series.

A realization is a triple (init, trans, fin): a 1 x n covector, one n x n
matrix per letter, and an n x 1 vector. The coefficient of the word
x_{i1}...x_{ip} is init * M_{i1} * ... * M_{ip} * fin, products read left
to right. The module provides the rational operations (sum, scalar,
product, inverse), the derivative/projection/shift operators lifted to
realizations, two-sided reduction to the unique minimal dimension, and
exact equality of the realized series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlinalg import (
    EchelonBasis,
    Matrix,
    Subspace,
    Vector,
    block_diag,
    dot,
    mat_times_col,
    matrix_from_lists,
    matrix_to_lists,
    outer,
    q,
    rational_to_str,
    row_times_mat,
    vec,
)
from .ncseries import (
    AlphabetMismatch,
    BadLetter,
    NotAugmentation,
    NotInvertible,
    TruncSeries,
    Word,
    check_word,
)


@dataclass(frozen=True)
class LinRep:
    """Linear representation of a series over a mu-letter alphabet."""

    mu: int
    dim: int
    init: Vector
    trans: tuple[Matrix, ...]
    fin: Vector

    def __post_init__(self):
        if self.mu < 1:
            raise AlphabetMismatch(f"alphabet size must be >= 1, got {self.mu}")
        if len(self.trans) != self.mu:
            raise AlphabetMismatch(f"{len(self.trans)} transition matrices for mu={self.mu}")
        if len(self.init) != self.dim or len(self.fin) != self.dim:
            raise ValueError("init/fin length differs from dim")
        for m in self.trans:
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError("transition matrix shape differs from dim")


def make_rep(mu: int, init: Sequence, trans: Sequence[Sequence[Sequence]], fin: Sequence) -> LinRep:
    """Build a LinRep from plain nested lists (ints, strings or Fractions)."""
    tmats = tuple(Matrix.from_rows(t) for t in trans)
    return LinRep(mu, len(tuple(init)), vec(init), tmats, vec(fin))


def zero_rep(mu: int) -> LinRep:
    """The dimension-0 realization of the zero series."""
    return LinRep(mu, 0, (), tuple(Matrix.zero(0, 0) for _ in range(mu)), ())


def const_rep(mu: int, c) -> LinRep:
    return LinRep(mu, 1, (q(c),), tuple(Matrix.zero(1, 1) for _ in range(mu)), (Fraction(1),))


def poly_rep(f: TruncSeries) -> LinRep:
    """Exact realization of a polynomial on the prefix tree of its support."""
    prefixes: list[Word] = sorted(
        {w[:k] for w in f.coeffs for k in range(len(w) + 1)} | {()},
        key=lambda w: (len(w), w),
    )
    index = {p: i for i, p in enumerate(prefixes)}
    n = len(prefixes)
    trans = []
    for j in range(1, f.mu + 1):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for p, i in index.items():
            t = index.get(p + (j,))
            if t is not None:
                rows[i][t] = Fraction(1)
        trans.append(Matrix.from_rows(rows))
    init = tuple(Fraction(int(i == index[()])) for i in range(n))
    fin = tuple(f.coeff(p) for p in prefixes)
    return LinRep(f.mu, n, init, tuple(trans), fin)


def coeff(r: LinRep, w: Sequence[int]) -> Fraction:
    """Coefficient of the word w in the realized series."""
    w = check_word(w, r.mu)
    v = r.init
    for a in w:
        v = row_times_mat(v, r.trans[a - 1])
    return dot(v, r.fin)


def expand(r: LinRep, order: int) -> TruncSeries:
    """All coefficients of words of length <= order, sharing prefixes."""
    coeffs: dict[Word, Fraction] = {}
    level: list[tuple[Word, Vector]] = [((), r.init)]
    for length in range(order + 1):
        for w, v in level:
            c = dot(v, r.fin)
            if c != 0:
                coeffs[w] = c
        if length == order:
            break
        level = [(w + (j,), row_times_mat(v, r.trans[j - 1]))
                 for w, v in level for j in range(1, r.mu + 1)]
    return TruncSeries(r.mu, order, coeffs)


def _common_mu(r: LinRep, s: LinRep) -> int:
    if r.mu != s.mu:
        raise AlphabetMismatch(f"alphabet sizes {r.mu} and {s.mu}")
    return r.mu


def rep_add(r: LinRep, s: LinRep) -> LinRep:
    mu = _common_mu(r, s)
    trans = tuple(block_diag(a, b) for a, b in zip(r.trans, s.trans))
    return LinRep(mu, r.dim + s.dim, r.init + s.init, trans, r.fin + s.fin)


def rep_scalar(c, r: LinRep) -> LinRep:
    c = q(c)
    return LinRep(r.mu, r.dim, tuple(c * a for a in r.init), r.trans, r.fin)


def rep_mul(r: LinRep, s: LinRep) -> LinRep:
    """Concatenation-product realization on the direct sum of state spaces.

    The second block accumulates, for each split w = uv, the value of the
    first series at u fed into the second automaton reading v; feeding
    happens through the rank-one block (M_j fin) x init_s.
    """
    mu = _common_mu(r, s)
    c0 = dot(r.init, r.fin)
    init = r.init + tuple(c0 * a for a in s.init)
    trans = []
    for j in range(mu):
        feed = outer(mat_times_col(r.trans[j], r.fin), s.init)
        top = Matrix(r.dim, r.dim + s.dim,
                     tuple(row + frow for row, frow in zip(r.trans[j].entries, feed.entries)))
        bot = Matrix(s.dim, r.dim + s.dim,
                     tuple((Fraction(0),) * r.dim + row for row in s.trans[j].entries))
        trans.append(Matrix(r.dim + s.dim, r.dim + s.dim, top.entries + bot.entries))
    fin = (Fraction(0),) * r.dim + s.fin
    return LinRep(mu, r.dim + s.dim, init, tuple(trans), fin)


def rep_inverse(r: LinRep) -> LinRep:
    """Realization of the multiplicative inverse, one extra state.

    With c the constant coefficient, the inverse satisfies
    g(w) = -(1/c) * sum over proper splits of g(u) f(v); the construction
    tracks that convolution with the deflated transitions (I - fin*init/c) M_j
    and a start state that injects init/c on the first letter.
    """
    c = dot(r.init, r.fin)
    if c == 0:
        raise NotInvertible("constant coefficient is zero")
    n = r.dim
    deflate = Matrix.identity(n) - outer(r.fin, r.init) * (Fraction(1) / c)
    trans = []
    for j in range(r.mu):
        core = deflate @ r.trans[j]
        start = row_times_mat(r.init, r.trans[j])
        rows = tuple(row + (Fraction(0),) for row in core.entries)
        rows += (tuple(a / c for a in start) + (Fraction(0),),)
        trans.append(Matrix(n + 1, n + 1, rows))
    init = (Fraction(0),) * n + (Fraction(1),)
    fin = tuple(-a / c for a in r.fin) + (1 / c,)
    return LinRep(r.mu, n + 1, init, tuple(trans), fin)


def rep_fox(i: int, r: LinRep) -> LinRep:
    """Derivative d_i on realizations: advance init through M_i."""
    if not 1 <= i <= r.mu:
        raise BadLetter(f"letter {i} outside 1..{r.mu}")
    return LinRep(r.mu, r.dim, row_times_mat(r.init, r.trans[i - 1]), r.trans, r.fin)


def _require_augmentation(r: LinRep):
    if dot(r.init, r.fin) != 0:
        raise NotAugmentation("realized series has a nonzero constant term")


def rep_z(r: LinRep) -> LinRep:
    """The shift operator: minus the sum of all derivatives."""
    _require_augmentation(r)
    init = tuple(-a for a in row_times_mat(r.init, _transition_sum(r)))
    return LinRep(r.mu, r.dim, init, r.trans, r.fin)


def _transition_sum(r: LinRep) -> Matrix:
    acc = Matrix.zero(r.dim, r.dim)
    for m in r.trans:
        acc = acc + m
    return acc


def rep_pi(i: int, r: LinRep) -> LinRep:
    """Projection onto words starting with x_i; one extra state remembers
    whether any letter has been read yet."""
    if not 1 <= i <= r.mu:
        raise BadLetter(f"letter {i} outside 1..{r.mu}")
    _require_augmentation(r)
    n = r.dim
    trans = []
    for j in range(1, r.mu + 1):
        rows = tuple(row + (Fraction(0),) for row in r.trans[j - 1].entries)
        first = row_times_mat(r.init, r.trans[j - 1]) if j == i else (Fraction(0),) * n
        rows += (first + (Fraction(0),),)
        trans.append(Matrix(n + 1, n + 1, rows))
    init = (Fraction(0),) * n + (Fraction(1),)
    fin = r.fin + (Fraction(0),)
    return LinRep(r.mu, n + 1, init, tuple(trans), fin)


def forward_span(r: LinRep) -> Subspace:
    """Row span of {init * M_w : all words w}, computed to a fixed point."""
    basis = EchelonBasis(r.dim)
    queue: list[Vector] = []
    if basis.insert(r.init):
        queue.append(r.init)
    while queue:
        v = queue.pop(0)
        for m in r.trans:
            w = row_times_mat(v, m)
            if basis.insert(w):
                queue.append(w)
    return basis.to_subspace()


def rep_transpose(r: LinRep) -> LinRep:
    """Realization of the letter-reversal of the series."""
    return LinRep(r.mu, r.dim, r.fin, tuple(m.transpose() for m in r.trans), r.init)


def backward_span(r: LinRep) -> Subspace:
    """Column span of {M_w * fin}, as row vectors of the transpose."""
    return forward_span(rep_transpose(r))


def _forward_reduce(r: LinRep) -> LinRep:
    span = forward_span(r)
    k = span.dim
    if k == 0:
        return zero_rep(r.mu)
    basis = span.basis
    trans = []
    for m in r.trans:
        rows = tuple(span.coordinates(row_times_mat(row, m)) for row in basis)
        trans.append(Matrix(k, k, rows))
    init = span.coordinates(r.init)
    fin = tuple(dot(row, r.fin) for row in basis)
    return LinRep(r.mu, k, init, tuple(trans), fin)


def minimize(r: LinRep) -> LinRep:
    """Two-sided reduction to the minimal realization dimension.

    First restrict to the span reachable from init, then (on the reversed
    automaton) to the span reaching fin; the result has dimension equal to
    the rank of the coefficient Hankel operator, the least possible.
    """
    half = _forward_reduce(r)
    return rep_transpose(_forward_reduce(rep_transpose(half)))


def first_difference(r: LinRep, s: LinRep) -> Word | None:
    """Graded-lexicographically first word where the two series differ.

    Walks words in graded-lex order on the difference realization, pruning
    states linearly dependent on previously visited ones: a dependent
    state's coefficients are combinations of coefficients at strictly
    earlier words, so it can reveal no first difference. The walk
    therefore visits at most dim(r) + dim(s) independent states.
    """
    d = rep_add(r, rep_scalar(-1, s))
    seen = EchelonBasis(d.dim)
    queue: list[tuple[Word, Vector]] = [((), d.init)]
    while queue:
        w, v = queue.pop(0)
        if dot(v, d.fin) != 0:
            return w
        if seen.insert(v):
            for j in range(1, d.mu + 1):
                queue.append((w + (j,), row_times_mat(v, d.trans[j - 1])))
    return None


def rep_equal(r: LinRep, s: LinRep) -> bool:
    """Exact equality of the realized series."""
    return first_difference(r, s) is None


def rep_to_obj(r: LinRep) -> dict:
    return {
        "mu": r.mu,
        "dim": r.dim,
        "init": [rational_to_str(a) for a in r.init],
        "trans": [matrix_to_lists(m) for m in r.trans],
        "fin": [[rational_to_str(a)] for a in r.fin],
    }


def rep_from_obj(obj: Mapping) -> LinRep:
    init = vec(obj["init"])
    trans = tuple(matrix_from_lists(t) for t in obj["trans"])
    fin = vec(row[0] for row in obj["fin"])
    return LinRep(int(obj["mu"]), int(obj["dim"]), init, trans, fin)
