import random
from fractions import Fraction

import pytest

from ncrat.exactlinalg import (
    DimensionMismatch,
    EchelonBasis,
    Matrix,
    SingularMatrix,
    Subspace,
    algebra_closure,
    mat_inverse,
    mat_to_vec,
    nullspace,
    rref,
    trace_form_radical,
)

from instances import rand_matrix, rand_rational

E12 = Matrix.from_rows([[0, 1], [0, 0]])
E21 = Matrix.from_rows([[0, 0], [1, 0]])


def cofactor_det(m: Matrix) -> Fraction:
    """Independent determinant by first-row cofactor expansion."""
    n = m.rows
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0, 0]
    total = Fraction(0)
    for j in range(n):
        sub = Matrix.from_rows([
            [m[i, k] for k in range(n) if k != j] for i in range(1, n)
        ])
        total += (-1) ** j * m[0, j] * cofactor_det(sub)
    return total


def test_rref_identity():
    _, rank = rref(Matrix.identity(3))
    assert rank == 3


def test_rref_proportional_rows():
    ech, rank = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert rank == 1
    assert ech == Matrix.from_rows([[1, 2], [0, 0]])


def test_rref_rank_two_matches_nonzero_determinant():
    m = Matrix.from_rows([[1, 1], [-1, 0]])
    assert cofactor_det(m) == 1
    _, rank = rref(m)
    assert rank == 2


def test_rref_preserves_row_space():
    rng = random.Random(100)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = rand_matrix(rng, rows, cols)
        ech, rank = rref(m)
        original = Subspace.span(cols, m.entries)
        reduced = Subspace.span(cols, ech.entries)
        assert original == reduced
        assert rank == original.dim
        # mutual membership
        assert all(original.contains(r) for r in ech.entries)
        assert all(reduced.contains(r) for r in m.entries)


def test_mat_inverse_identity():
    assert mat_inverse(Matrix.identity(4)) == Matrix.identity(4)


def test_mat_inverse_2x2():
    m = Matrix.from_rows([[1, 1], [-1, 0]])
    inv = mat_inverse(m)
    assert inv == Matrix.from_rows([[0, -1], [1, 1]])
    assert inv @ m == Matrix.identity(2)
    assert m @ inv == Matrix.identity(2)


def test_mat_inverse_singular():
    with pytest.raises(SingularMatrix):
        mat_inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_mat_inverse_roundtrip_random():
    rng = random.Random(101)
    done = 0
    while done < 25:
        d = rng.randint(1, 4)
        m = rand_matrix(rng, d, lo=-3, hi=3)
        try:
            inv = mat_inverse(m)
        except SingularMatrix:
            assert cofactor_det(m) == 0
            continue
        assert m @ inv == Matrix.identity(d)
        assert inv @ m == Matrix.identity(d)
        done += 1


def test_closure_identity_alone():
    assert algebra_closure([Matrix.identity(2)]).dim == 1


def test_closure_diagonal():
    # powers of diag(2,3) stay inside span{I, diag(2,3)}
    assert algebra_closure([Matrix.from_rows([[2, 0], [0, 3]])]).dim == 2


def test_closure_matrix_units():
    assert algebra_closure([E12, E21]).dim == 4


def test_closure_contains_products():
    sub = algebra_closure([E12, E21])
    assert sub.contains(mat_to_vec(E12 @ E21))
    assert sub.contains(mat_to_vec(Matrix.identity(2)))


def test_closure_idempotent():
    rng = random.Random(102)
    from ncrat.exactlinalg import vec_to_mat
    for _ in range(15):
        d = rng.randint(1, 3)
        gens = [rand_matrix(rng, d) for _ in range(rng.randint(1, 2))]
        closed = algebra_closure(gens)
        again = algebra_closure([vec_to_mat(row, d) for row in closed.basis])
        assert closed == again


def test_closure_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        algebra_closure([Matrix.identity(2), Matrix.identity(3)])


def test_radical_of_full_matrix_algebra_is_zero():
    full = algebra_closure([E12, E21])
    assert trace_form_radical(full).dim == 0


def test_radical_of_identity_plus_nilpotent():
    span = Subspace.span(4, [mat_to_vec(Matrix.identity(2)), mat_to_vec(E12)])
    rad = trace_form_radical(span)
    assert rad == Subspace.span(4, [mat_to_vec(E12)])


def test_radical_of_scalars_is_zero():
    span = Subspace.span(9, [mat_to_vec(Matrix.identity(3))])
    assert trace_form_radical(span).dim == 0


def test_exact_rational_arithmetic():
    rng = random.Random(103)
    for _ in range(200):
        a, b = rng.randint(-50, 50), rng.randint(1, 50)
        c, d = rng.randint(-50, 50), rng.randint(1, 50)
        s = Fraction(a, b) + Fraction(c, d)
        assert s.numerator * (b * d) == (a * d + c * b) * s.denominator
        p = Fraction(a, b) * Fraction(c, d)
        assert p.numerator * (b * d) == (a * c) * p.denominator


def test_nullspace():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    basis = nullspace(m)
    assert len(basis) == 2
    for v in basis:
        from ncrat.exactlinalg import mat_times_col
        assert all(x == 0 for x in mat_times_col(m, v))


def test_subspace_coordinates():
    sub = Subspace.span(3, [[1, 0, 2], [0, 1, 5]])
    assert sub.coordinates((3, -1, 1)) == (Fraction(3), Fraction(-1))
    with pytest.raises(ValueError):
        sub.coordinates((0, 0, 1))


def test_echelon_basis_matches_batch_span():
    rng = random.Random(104)
    for _ in range(20):
        n = rng.randint(1, 5)
        vectors = [tuple(rand_rational(rng) for _ in range(n)) for _ in range(rng.randint(0, 6))]
        inc = EchelonBasis(n)
        for v in vectors:
            inc.insert(v)
        assert inc.to_subspace() == Subspace.span(n, vectors)
