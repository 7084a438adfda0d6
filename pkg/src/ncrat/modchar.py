"""Finite-dimensional modules over the free algebra and their trace series.

A module is a tuple of square action matrices u_1..u_mu; a word acts by
the left-to-right product of its letters' matrices. The trace series chi
takes each word to the trace of its action. This module computes chi both
as an exact realization and by brute-force per-word products, realizes
the series of a (vector, covector) pair, rebuilds a module from any
realization via the span of its derivative states, and decides
simplicity/semisimplicity of the action algebra.

Convention: vectors are rows acted on the right, covectors are columns;
traces do not care, but generators and functionals do.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlinalg import (
    Matrix,
    Subspace,
    Vector,
    algebra_closure,
    block_diag,
    mat_inverse,
    matrix_from_lists,
    matrix_to_lists,
    row_times_mat,
    trace_form_radical,
    vec,
)
from .linrep import LinRep, forward_span, rep_equal
from .ncseries import AlphabetMismatch, TruncSeries, Word, words_up_to


class NotSemisimple(ValueError):
    """Isomorphism-by-trace-series test invoked on a non-semisimple module."""


@dataclass(frozen=True)
class FreeModule:
    """Module over the free algebra on mu letters, given by action matrices."""

    mu: int
    dim: int
    actions: tuple[Matrix, ...]

    def __post_init__(self):
        if self.mu < 1:
            raise AlphabetMismatch(f"alphabet size must be >= 1, got {self.mu}")
        if len(self.actions) != self.mu:
            raise AlphabetMismatch(f"{len(self.actions)} action matrices for mu={self.mu}")
        for u in self.actions:
            if u.rows != self.dim or u.cols != self.dim:
                raise ValueError("action matrix shape differs from dim")


def make_module(mu: int, matrices: Sequence[Sequence[Sequence]]) -> FreeModule:
    acts = tuple(Matrix.from_rows(m) for m in matrices)
    d = acts[0].rows if acts else 0
    return FreeModule(mu, d, acts)


def word_action(M: FreeModule, w: Sequence[int]) -> Matrix:
    """Left-to-right product of the action matrices along w."""
    acc = Matrix.identity(M.dim)
    for a in w:
        acc = acc @ M.actions[a - 1]
    return acc


def chi_rep(M: FreeModule) -> LinRep:
    """Exact realization of the trace series of M, dimension dim^2.

    The state is a flattened dim x dim matrix, started at the identity;
    reading letter j post-multiplies the state by u_j; the output
    functional is the trace. The coefficient of w is then exactly the
    trace of the action of w.
    """
    d = M.dim
    n = d * d
    trans = []
    for u in M.actions:
        rows = [[Fraction(0)] * n for _ in range(n)]
        # state E_{rc} maps to E_{rc} u, whose row r is row c of u
        for r in range(d):
            for c in range(d):
                src = r * d + c
                for b in range(d):
                    rows[src][r * d + b] = u.entries[c][b]
        trans.append(Matrix(n, n, tuple(tuple(row) for row in rows)))
    diag = tuple(Fraction(int(i % d == i // d)) for i in range(n))
    return LinRep(M.mu, n, diag, tuple(trans), diag)


def chi_trace_oracle(M: FreeModule, order: int) -> TruncSeries:
    """Trace series by per-word matrix products; the realization's oracle."""
    coeffs: dict[Word, Fraction] = {}
    for w in words_up_to(M.mu, order):
        t = word_action(M, w).trace()
        if t != 0:
            coeffs[w] = t
    return TruncSeries(M.mu, order, coeffs)


def fliess_rep(M: FreeModule, m: Sequence, phi: Sequence) -> LinRep:
    """Realization of the series w -> (m * action(w)) * phi."""
    return LinRep(M.mu, M.dim, vec(m), M.actions, vec(phi))


def reconstruct(r: LinRep) -> tuple[FreeModule, Vector]:
    """Module structure on the span of the derivative states of r.

    The reachable row span {init * M_w} carries the letter action
    v -> v * M_i; the function returns that module in the canonical
    echelon basis of the span, together with the coordinates of init
    (the state of the series itself, whose orbit generates everything).
    """
    span = forward_span(r)
    k = span.dim
    if k == 0:
        return FreeModule(r.mu, 0, tuple(Matrix.zero(0, 0) for _ in range(r.mu))), ()
    actions = []
    for m in r.trans:
        rows = tuple(span.coordinates(row_times_mat(row, m)) for row in span.basis)
        actions.append(Matrix(k, k, rows))
    return FreeModule(r.mu, k, tuple(actions)), span.coordinates(r.init)


def is_absolutely_simple(M: FreeModule) -> bool:
    """True when the action matrices generate the full matrix algebra."""
    if M.dim == 0:
        return True
    return algebra_closure(M.actions).dim == M.dim * M.dim


def is_semisimple(M: FreeModule) -> bool:
    """True when the trace form on the generated algebra has zero radical."""
    if M.dim == 0:
        return True
    return trace_form_radical(algebra_closure(M.actions)).dim == 0


def action_algebra(M: FreeModule) -> Subspace:
    """Span of the identity and all word actions, inside the matrix space."""
    return algebra_closure(M.actions)


def direct_sum(a: FreeModule, b: FreeModule) -> FreeModule:
    if a.mu != b.mu:
        raise AlphabetMismatch(f"alphabet sizes {a.mu} and {b.mu}")
    acts = tuple(block_diag(u, v) for u, v in zip(a.actions, b.actions))
    return FreeModule(a.mu, a.dim + b.dim, acts)


def conjugate(M: FreeModule, P: Matrix) -> FreeModule:
    """Base change: actions become P u P^-1. Raises SingularMatrix."""
    Pinv = mat_inverse(P)
    return FreeModule(M.mu, M.dim, tuple(P @ u @ Pinv for u in M.actions))


def semisimple_iso_test(a: FreeModule, b: FreeModule) -> bool:
    """Equality of the trace series of two semisimple modules.

    For split semisimple modules equal trace series is the same as being
    isomorphic; both inputs must pass is_semisimple.
    """
    if not is_semisimple(a):
        raise NotSemisimple("first module has a nonzero trace-form radical")
    if not is_semisimple(b):
        raise NotSemisimple("second module has a nonzero trace-form radical")
    return rep_equal(chi_rep(a), chi_rep(b))


def module_to_obj(M: FreeModule) -> dict:
    return {
        "kind": "free_module",
        "mu": M.mu,
        "dim": M.dim,
        "matrices": [matrix_to_lists(u) for u in M.actions],
    }


def module_from_obj(obj: Mapping) -> FreeModule:
    if obj.get("kind") != "free_module":
        raise ValueError(f"not a free_module object: kind={obj.get('kind')!r}")
    mu = int(obj["mu"])
    d = int(obj["dim"])
    acts = tuple(matrix_from_lists(m) for m in obj["matrices"])
    M = FreeModule(mu, d, acts)
    return M
