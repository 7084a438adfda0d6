import random
from fractions import Fraction

import pytest

from ncrat.exactlinalg import Matrix, mat_inverse
from ncrat.linrep import expand
from ncrat.modchar import chi_rep, chi_trace_oracle, conjugate, make_module
from ncrat.ncseries import (
    OrderExceeded,
    TruncSeries,
    monomial,
    one_series,
    series_invert,
    series_mul,
    zero_series,
)
from ncrat.quasidet import (
    NonProperEntries,
    SeriesMatrix,
    SingularConstantTerm,
    chi_via_qdet,
    qdet,
    smat_from_entries,
    smat_from_matrix,
    smat_identity,
    smat_inverse,
    smat_mul,
    walk_series,
)

from instances import rand_aug_series, rand_module, rand_unimodular


def smat_is_identity(A: SeriesMatrix) -> bool:
    n = A.size
    one = one_series(A.mu, A.order)
    zero = zero_series(A.mu, A.order)
    return all(A.entries[i][j] == (one if i == j else zero) for i in range(n) for j in range(n))


def test_inverse_of_diagonal():
    A = smat_from_entries([
        [TruncSeries(2, 5, {(): 1, (1,): -1}), zero_series(2, 5)],
        [zero_series(2, 5), TruncSeries(2, 5, {(): 1, (2,): -1})],
    ])
    inv = smat_inverse(A)
    assert inv.entries[0][0] == TruncSeries(2, 5, {(1,) * p: 1 for p in range(6)})
    assert inv.entries[1][1] == TruncSeries(2, 5, {(2,) * p: 1 for p in range(6)})
    assert inv.entries[0][1].is_zero() and inv.entries[1][0].is_zero()


def test_inverse_is_neumann_sum_for_proper_perturbation():
    rng = random.Random(500)
    for _ in range(8):
        n = rng.randint(1, 3)
        B = [[rand_aug_series(rng, 2, 4, terms=2) for _ in range(n)] for _ in range(n)]
        A = smat_from_entries([
            [series_mul(TruncSeries(2, 4, {(): -1}), B[i][j]) if i != j
             else TruncSeries(2, 4, {(): 1}) - B[i][j]
             for j in range(n)] for i in range(n)])
        inv = smat_inverse(A)
        # sum of powers of B
        acc = smat_identity(n, 2, 4)
        power = smat_identity(n, 2, 4)
        Bm = smat_from_entries(B)
        for _ in range(4):
            power = smat_mul(power, Bm)
            acc = smat_from_entries([
                [acc.entries[i][j] + power.entries[i][j] for j in range(n)] for i in range(n)])
        assert all(inv.entries[i][j] == acc.entries[i][j] for i in range(n) for j in range(n))


def test_inverse_of_constant_matrix_matches_exact_inverse():
    m = Matrix.from_rows([[1, 1], [-1, 0]])
    A = smat_from_matrix(m, 1, 4)
    inv = smat_inverse(A)
    expected = smat_from_matrix(mat_inverse(m), 1, 4)
    assert inv == expected


def test_inverse_roundtrip_random():
    rng = random.Random(501)
    for _ in range(10):
        n = rng.randint(1, 3)
        while True:
            const = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
            try:
                mat_inverse(const)
                break
            except Exception:
                continue
        A = smat_from_entries([
            [smat_from_matrix(const, 2, 4).entries[i][j] + rand_aug_series(rng, 2, 4, terms=2)
             for j in range(n)] for i in range(n)])
        inv = smat_inverse(A)
        assert smat_is_identity(smat_mul(A, inv))
        assert smat_is_identity(smat_mul(inv, A))


def test_inverse_singular_constant_term():
    A = smat_from_matrix(Matrix.from_rows([[1, 2], [2, 4]]), 1, 3)
    with pytest.raises(SingularConstantTerm):
        smat_inverse(A)


def test_qdet_size_two_with_letters():
    A = smat_from_entries([
        [one_series(2, 4), monomial(2, 4, (1,))],
        [monomial(2, 4, (2,)), one_series(2, 4)],
    ])
    assert qdet(A, 0, 0) == TruncSeries(2, 4, {(): 1, (1, 2): -1})


def test_qdet_constant_matrix():
    A = smat_from_matrix(Matrix.from_rows([[1, 2], [3, 4]]), 1, 3)
    assert qdet(A, 0, 0) == TruncSeries(1, 3, {(): Fraction(-1, 2)})
    assert qdet(A, 0, 1) == TruncSeries(1, 3, {(): Fraction(2, 3)})


def test_qdet_inverse_compatibility():
    # 1/qdet at (i,i) equals entry (i,i) of the full inverse
    rng = random.Random(502)
    for _ in range(10):
        n = rng.randint(2, 3)
        A = smat_from_entries([
            [(one_series(2, 4) if i == j else zero_series(2, 4)) + rand_aug_series(rng, 2, 4, terms=2)
             for j in range(n)] for i in range(n)])
        inv = smat_inverse(A)
        for i in range(n):
            assert series_invert(qdet(A, i, i)) == inv.entries[i][i]


def test_qdet_singular_submatrix():
    A = smat_from_matrix(Matrix.from_rows([[1, 1, 1], [1, 0, 2], [1, 0, 2]]), 1, 3)
    with pytest.raises(SingularConstantTerm):
        qdet(A, 0, 0)  # complementary submatrix [[0,2],[0,2]] is singular


def test_walk_series_alternating():
    B = smat_from_entries([
        [zero_series(2, 5), monomial(2, 5, (1,))],
        [monomial(2, 5, (2,)), zero_series(2, 5)],
    ])
    assert walk_series(B, 0, 5) == TruncSeries(2, 5, {(): 1, (1, 2): 1, (1, 2, 1, 2): 1})


def test_walk_series_single_loop():
    B = smat_from_entries([[monomial(1, 4, (1,))]])
    assert walk_series(B, 0, 4) == TruncSeries(1, 4, {(1,) * p: 1 for p in range(5)})


def test_walk_series_zero_matrix():
    B = smat_from_entries([[zero_series(1, 4), zero_series(1, 4)],
                           [zero_series(1, 4), zero_series(1, 4)]])
    assert walk_series(B, 0, 4) == one_series(1, 4)


def test_walk_series_rejects_constant_terms():
    B = smat_from_entries([[one_series(1, 3)]])
    with pytest.raises(NonProperEntries):
        walk_series(B, 0, 3)


def test_walk_expansion_matches_inverted_qdet():
    rng = random.Random(503)
    for _ in range(10):
        n = rng.randint(1, 3)
        B = smat_from_entries([
            [rand_aug_series(rng, 2, 5, terms=2) for _ in range(n)] for _ in range(n)])
        S = smat_from_entries([
            [(one_series(2, 5) if i == j else zero_series(2, 5)) - B.entries[i][j]
             for j in range(n)] for i in range(n)])
        i = rng.randrange(n)
        assert series_invert(qdet(S, i, i)) == walk_series(B, i, 5)


def test_chi_via_qdet_diagonal():
    M = make_module(1, [[[2, 0], [0, 3]]])
    s = chi_via_qdet(M, 4)
    assert [s.coeff((1,) * p) for p in range(5)] == [2, 5, 13, 35, 97]


def test_chi_via_qdet_matches_trace_oracle():
    rng = random.Random(504)
    for _ in range(6):
        mu = rng.randint(1, 2)
        d = rng.randint(1, 3)
        M = rand_module(rng, mu, d)
        assert chi_via_qdet(M, 4) == chi_trace_oracle(M, 4) == expand(chi_rep(M), 4)


def test_chi_via_qdet_basis_independent():
    rng = random.Random(505)
    M = rand_module(rng, 2, 3)
    P = rand_unimodular(rng, 3)
    assert chi_via_qdet(conjugate(M, P), 4) == chi_via_qdet(M, 4)


def test_chi_via_qdet_zero_dim():
    from ncrat.modchar import FreeModule
    M = FreeModule(2, 0, (Matrix.zero(0, 0), Matrix.zero(0, 0)))
    assert chi_via_qdet(M, 3) == zero_series(2, 3)


def test_walk_series_order_exceeding_entries():
    B = smat_from_entries([[monomial(1, 3, (1,))]])
    with pytest.raises(OrderExceeded):
        walk_series(B, 0, 5)
