"""Modules over the idempotent-shift algebra and their trace series.

The algebra has generators z and orthogonal idempotents pi_1..pi_mu
summing to the identity; a module is a matrix for z plus one matrix per
idempotent, with the relations holding exactly. Every such module is a
module over the free algebra through x_i -> -z pi_i, and it carries a
second trace series phi whose coefficient at x_{i1}..x_{ip} x_k is the
trace of pi_k times the reversed product of the induced letter actions.
This module computes phi exactly (realization and brute-force oracle),
detects primitive modules, bridges one-letter modules to Alexander
polynomials through z = (I - companion)^-1, and produces the
quasideterminant comparison report for the (1-z)pi_i letter matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlinalg import (
    Matrix,
    mat_inverse,
    matrix_from_lists,
    matrix_to_lists,
    q,
    rational_to_str,
)
from .linrep import LinRep, expand
from .modchar import FreeModule, chi_rep
from .ncseries import (
    AlphabetMismatch,
    TruncSeries,
    Word,
    series_add,
    series_invert,
    series_scale,
    words_up_to,
    zero_series,
)
from .quasidet import qdet, smat_add, smat_from_entries, smat_identity


class InvalidRelations(ValueError):
    """The idempotent relations do not hold exactly."""


class EvalAtOneZero(ValueError):
    """Polynomial vanishes at 1, so I minus its companion matrix is singular."""


@dataclass(frozen=True)
class PmuModule:
    """Module given by the matrix of z and the matrices of pi_1..pi_mu."""

    mu: int
    dim: int
    z: Matrix
    pi: tuple[Matrix, ...]

    def __post_init__(self):
        if self.mu < 1:
            raise AlphabetMismatch(f"alphabet size must be >= 1, got {self.mu}")
        if len(self.pi) != self.mu:
            raise AlphabetMismatch(f"{len(self.pi)} idempotents for mu={self.mu}")
        for m in (self.z, *self.pi):
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError("matrix shape differs from dim")


def make_pmu(mu: int, z: Sequence[Sequence], pi: Sequence[Sequence[Sequence]]) -> PmuModule:
    zm = Matrix.from_rows(z)
    pim = tuple(Matrix.from_rows(p) for p in pi)
    return PmuModule(mu, zm.rows, zm, pim)


def validate(A: PmuModule) -> bool:
    """Check pi_i pi_j = delta_ij pi_i and sum pi_i = identity, exactly."""
    d = A.dim
    total = Matrix.zero(d, d)
    for i, p in enumerate(A.pi):
        total = total + p
        for j, r in enumerate(A.pi):
            prod = p @ r
            expected = p if i == j else Matrix.zero(d, d)
            if prod != expected:
                return False
    return total == Matrix.identity(d)


def _require_valid(A: PmuModule):
    if not validate(A):
        raise InvalidRelations("idempotent relations fail")


def induced(A: PmuModule) -> FreeModule:
    """The free-algebra module with letter actions -z pi_i."""
    _require_valid(A)
    return FreeModule(A.mu, A.dim, tuple(-(A.z @ p) for p in A.pi))


def letter_ops(A: PmuModule) -> tuple[Matrix, ...]:
    return tuple(-(A.z @ p) for p in A.pi)


def phi_rep(A: PmuModule) -> LinRep:
    """Exact realization of phi, dimension dim^2 + 1.

    State: a flattened dim x dim matrix X plus one scalar t. Start at
    (identity, 0); reading letter j sends (X, t) to (D_j X, trace(pi_j X))
    with D_j = -z pi_j; the output is t. After reading x_{i1}..x_{iq} the
    scalar equals trace(pi_{iq} D_{i(q-1)} ... D_{i1}), the coefficient of
    that word; the constant coefficient is 0.
    """
    _require_valid(A)
    d = A.dim
    n = d * d + 1
    ops = letter_ops(A)
    trans = []
    for j in range(A.mu):
        D = ops[j]
        P = A.pi[j]
        rows = [[Fraction(0)] * n for _ in range(n)]
        # basis state E_{rc}: X' = D E_{rc} has column c equal to column r of D
        for r in range(d):
            for c in range(d):
                src = r * d + c
                for a in range(d):
                    rows[src][a * d + c] = D.entries[a][r]
                rows[src][n - 1] = P.entries[c][r]  # trace(P E_{rc}) = P_{cr}
        trans.append(Matrix(n, n, tuple(tuple(row) for row in rows)))
    init = tuple(Fraction(int(i < d * d and i % d == i // d)) for i in range(n))
    fin = tuple(Fraction(int(i == n - 1)) for i in range(n))
    return LinRep(A.mu, n, init, tuple(trans), fin)


def phi_trace_oracle(A: PmuModule, order: int) -> TruncSeries:
    """phi by brute-force per-word traces; the realization's oracle."""
    _require_valid(A)
    ops = letter_ops(A)
    coeffs: dict[Word, Fraction] = {}
    for w in words_up_to(A.mu, order):
        if not w:
            continue
        D = Matrix.identity(A.dim)
        for a in w[:-1]:
            D = ops[a - 1] @ D
        t = (A.pi[w[-1] - 1] @ D).trace()
        if t != 0:
            coeffs[w] = t
    return TruncSeries(A.mu, order, coeffs)


def is_primitive(A: PmuModule) -> str | None:
    """Name of the generator acting as the identity while all others act
    as zero ("z" or "pi_<i>"), or None when there is no such generator."""
    if A.dim == 0:
        return None
    ident = Matrix.identity(A.dim)
    gens = [("z", A.z)] + [(f"pi_{i + 1}", p) for i, p in enumerate(A.pi)]
    for name, g in gens:
        if g == ident and all(h.is_zero() for other, h in gens if other != name):
            return name
    return None


@dataclass(frozen=True)
class AlexanderPoly:
    """Polynomial with rational coefficients, constant term first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty coefficient list")
        if self.coeffs[-1] == 0:
            raise ValueError("leading coefficient is zero")

    @staticmethod
    def from_coeffs(coeffs: Sequence) -> "AlexanderPoly":
        return AlexanderPoly(tuple(q(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval_at_one(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))


def companion_matrix(delta: AlexanderPoly) -> Matrix:
    """Companion matrix of the monic normalization; its eigenvalues are
    the roots of the polynomial."""
    n = delta.degree
    lead = delta.coeffs[-1]
    a = [c / lead for c in delta.coeffs[:-1]]
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = Fraction(1)
    for i in range(n):
        rows[i][n - 1] = -a[i]
    return Matrix(n, n, tuple(tuple(r) for r in rows))


def alexander_invariants(delta: AlexanderPoly, order: int) -> tuple[LinRep, LinRep]:
    """One-letter chi and phi realizations attached to a polynomial.

    With C the companion matrix (eigenvalues nu_j), set z = (I - C)^-1,
    whose eigenvalues are 1/(1 - nu_j); return the chi realization of the
    one-letter module with action z and the phi realization of the module
    (z, pi_1 = I). Both are exact; order is only sanity-checked here and
    applied by callers when expanding.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if delta.eval_at_one() == 0:
        raise EvalAtOneZero("polynomial vanishes at 1")
    n = delta.degree
    C = companion_matrix(delta)
    z = mat_inverse(Matrix.identity(n) - C)
    chi = chi_rep(FreeModule(1, n, (z,)))
    phi = phi_rep(PmuModule(1, n, z, (Matrix.identity(n),)))
    return chi, phi


@dataclass(frozen=True)
class Prop43Report:
    """Word-by-word comparison of the inverted-quasideterminant sum built
    from the (1-z)pi_i letter matrices against phi. No equality is
    asserted; the difference is part of the data."""

    quasidet_sum: TruncSeries
    phi: TruncSeries
    difference: TruncSeries

    @property
    def matches(self) -> bool:
        return self.difference.is_zero()


def prop43_report(A: PmuModule, order: int) -> Prop43Report:
    """Compute both sides of the candidate quasideterminant formula for phi.

    Q = sum_i |E - sum_j x_j B_j|_ii^-1 with B_j the matrix of (1-z)pi_j,
    against the actual phi truncation. The two disagree already in the
    constant term (Q starts at dim, phi at 0); the report records the
    exact difference instead of asserting anything.
    """
    _require_valid(A)
    d = A.dim
    if d == 0:
        zero = zero_series(A.mu, order)
        return Prop43Report(zero, zero, zero)
    bmats = [(Matrix.identity(d) - A.z) @ p for p in A.pi]
    rows = []
    for u in range(d):
        row = []
        for v in range(d):
            coeffs = {}
            for j in range(A.mu):
                a = bmats[j].entries[u][v]
                if a != 0:
                    coeffs[(j + 1,)] = a
            row.append(TruncSeries(A.mu, order, coeffs))
        rows.append(row)
    B = smat_from_entries(rows)
    S = smat_add(smat_identity(d, A.mu, order), smat_from_entries(
        [[series_scale(-1, f) for f in row] for row in B.entries]))
    Q = zero_series(A.mu, order)
    for i in range(d):
        Q = series_add(Q, series_invert(qdet(S, i, i)))
    phi = expand(phi_rep(A), order)
    diff = series_add(Q, series_scale(-1, phi))
    return Prop43Report(Q, phi, diff)


def pmu_to_obj(A: PmuModule) -> dict:
    return {
        "kind": "pmu_module",
        "mu": A.mu,
        "dim": A.dim,
        "z": matrix_to_lists(A.z),
        "pi": [matrix_to_lists(p) for p in A.pi],
    }


def pmu_from_obj(obj: Mapping) -> PmuModule:
    if obj.get("kind") != "pmu_module":
        raise ValueError(f"not a pmu_module object: kind={obj.get('kind')!r}")
    z = matrix_from_lists(obj["z"])
    pi = tuple(matrix_from_lists(p) for p in obj["pi"])
    return PmuModule(int(obj["mu"]), int(obj["dim"]), z, pi)


def alexander_to_obj(delta: AlexanderPoly) -> dict:
    return {"delta": [rational_to_str(c) for c in delta.coeffs]}


def alexander_from_obj(obj: Mapping) -> AlexanderPoly:
    return AlexanderPoly.from_coeffs(obj["delta"])
