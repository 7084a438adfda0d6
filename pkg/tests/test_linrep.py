import random

import pytest

from ncrat.linrep import (
    backward_span,
    coeff,
    expand,
    first_difference,
    forward_span,
    make_rep,
    minimize,
    poly_rep,
    rep_add,
    rep_equal,
    rep_fox,
    rep_from_obj,
    rep_inverse,
    rep_mul,
    rep_pi,
    rep_scalar,
    rep_to_obj,
    rep_z,
    zero_rep,
)
from ncrat.ncseries import (
    NotAugmentation,
    NotInvertible,
    TruncSeries,
    fox_derive,
    monomial,
    one_series,
    pmu_pi,
    pmu_z,
    series_add,
    series_invert,
    series_mul,
    series_scale,
    zero_series,
)

from instances import conjugate_rep, rand_rep, rand_series, rand_unimodular

GEO2 = make_rep(1, [1], [[[2]]], [1])  # realizes sum of 2^p x^p


def test_coeff_geometric_power():
    assert coeff(GEO2, (1,) * 5) == 32


def test_coeff_empty_word():
    r = make_rep(2, [2, 1], [[[0, 1], [0, 0]], [[0, 0], [1, 0]]], [3, 5])
    assert coeff(r, ()) == 2 * 3 + 1 * 5


def test_coeff_zero_transition_letter():
    r = make_rep(2, [1], [[[2]], [[0]]], [1])
    assert coeff(r, (1, 2, 1)) == 0


def test_expand_zero_rep():
    r = make_rep(1, [1, 2], [[[1, 0], [0, 1]]], [0, 0])
    assert expand(r, 4) == zero_series(1, 4)


def test_expand_geometric():
    assert expand(GEO2, 3) == TruncSeries(1, 3, {(): 1, (1,): 2, (1, 1): 4, (1, 1, 1): 8})


def test_expand_additivity():
    rng = random.Random(300)
    for _ in range(20):
        mu = rng.randint(1, 2)
        r = rand_rep(rng, mu, rng.randint(0, 3))
        s = rand_rep(rng, mu, rng.randint(0, 3))
        assert expand(rep_add(r, s), 4) == series_add(expand(r, 4), expand(s, 4))


def test_poly_rep_realizes_polynomial():
    rng = random.Random(301)
    for _ in range(20):
        mu = rng.randint(1, 3)
        f = rand_series(rng, mu, 4)
        assert expand(poly_rep(f), 4) == f


def test_rep_inverse_of_one_minus_x_is_geometric():
    r = poly_rep(TruncSeries(1, 1, {(): 1, (1,): -1}))
    inv = rep_inverse(r)
    assert expand(inv, 6) == TruncSeries(1, 6, {(1,) * p: 1 for p in range(7)})


def test_rep_mul_concatenates_monomials():
    x1 = poly_rep(monomial(2, 1, (1,)))
    x2 = poly_rep(monomial(2, 1, (2,)))
    assert expand(rep_mul(x1, x2), 4) == monomial(2, 4, (1, 2))
    assert rep_mul(x1, x2).dim == x1.dim + x2.dim


def test_rep_inverse_double_roundtrip():
    r = poly_rep(TruncSeries(1, 1, {(): 2, (1,): -1}))
    prod = rep_mul(r, rep_inverse(r))
    assert expand(prod, 6) == one_series(1, 6)
    assert expand(rep_inverse(prod), 6) == one_series(1, 6)


def test_rep_inverse_requires_constant_term():
    with pytest.raises(NotInvertible):
        rep_inverse(poly_rep(monomial(1, 2, (1,))))
    with pytest.raises(NotInvertible):
        rep_inverse(zero_rep(2))


def test_rep_fox_commutes_with_series_fox():
    rng = random.Random(302)
    for _ in range(25):
        mu = rng.randint(1, 3)
        r = rand_rep(rng, mu, rng.randint(1, 3))
        i = rng.randint(1, mu)
        assert expand(rep_fox(i, r), 4) == fox_derive(i, expand(r, 5))


def test_rep_z_example():
    r = poly_rep(TruncSeries(2, 2, {(1,): 1, (2, 1): 3}))
    assert expand(rep_z(r), 3) == TruncSeries(2, 3, {(): -1, (1,): -3})


def test_rep_pi_example():
    r = poly_rep(TruncSeries(2, 1, {(1,): 1, (2,): 1}))
    assert expand(rep_pi(1, r), 4) == monomial(2, 4, (1,))


def test_rep_pi_z_match_series_operators():
    rng = random.Random(303)
    from instances import rand_aug_series
    for _ in range(25):
        mu = rng.randint(1, 3)
        f = rand_aug_series(rng, mu, 5)
        r = poly_rep(f)
        i = rng.randint(1, mu)
        assert expand(rep_pi(i, r), 5) == pmu_pi(i, f)
        assert expand(rep_z(r), 4) == pmu_z(f)


def test_rep_pi_z_require_augmentation():
    r = poly_rep(one_series(2, 2))
    with pytest.raises(NotAugmentation):
        rep_pi(1, r)
    with pytest.raises(NotAugmentation):
        rep_z(r)


def test_rep_scalar_and_mul_commute_with_series():
    rng = random.Random(304)
    from instances import rand_rational
    for _ in range(20):
        mu = rng.randint(1, 2)
        r = rand_rep(rng, mu, rng.randint(1, 3))
        s = rand_rep(rng, mu, rng.randint(1, 3))
        c = rand_rational(rng)
        assert expand(rep_scalar(c, r), 4) == series_scale(c, expand(r, 4))
        assert expand(rep_mul(r, s), 4) == series_mul(expand(r, 4), expand(s, 4))


def test_rep_inverse_commutes_with_series_inverse():
    rng = random.Random(305)
    done = 0
    while done < 15:
        mu = rng.randint(1, 2)
        r = rand_rep(rng, mu, rng.randint(1, 3))
        if coeff(r, ()) == 0:
            continue
        assert expand(rep_inverse(r), 4) == series_invert(expand(r, 4))
        done += 1


def test_minimize_redundant_geometric():
    r = make_rep(1, [1, 1], [[[2, 0], [0, 0]]], [1, 0])
    m = minimize(r)
    assert m.dim == 1
    assert expand(m, 6) == expand(r, 6)


def test_minimize_idempotent_and_monotone():
    rng = random.Random(306)
    for _ in range(20):
        mu = rng.randint(1, 2)
        r = rand_rep(rng, mu, rng.randint(0, 4))
        m = minimize(r)
        assert m.dim <= r.dim
        assert expand(m, 6) == expand(r, 6)
        again = minimize(m)
        assert again.dim == m.dim


def test_minimize_zero_series_any_dim():
    r = make_rep(1, [1, 0], [[[0, 1], [0, 0]]], [0, 1])
    assert coeff(r, (1,)) == 1  # not the zero series: stays 2-dimensional
    assert minimize(r).dim == 2
    z = make_rep(1, [1, 0], [[[0, 0], [0, 0]]], [0, 1])
    assert minimize(z).dim == 0


def test_minimized_rep_has_full_forward_span():
    rng = random.Random(307)
    for _ in range(20):
        mu = rng.randint(1, 3)
        r = rand_rep(rng, mu, rng.randint(0, 4))
        m = minimize(r)
        assert forward_span(m).dim == m.dim
        assert backward_span(m).dim == m.dim


def test_rep_equal_with_zero_padding():
    r = GEO2
    assert rep_equal(r, rep_add(r, zero_rep(1)))


def test_rep_equal_distinguishes_ratios():
    r3 = make_rep(1, [1], [[[3]]], [1])
    assert not rep_equal(GEO2, r3)
    assert first_difference(GEO2, r3) == (1,)


def test_rep_equal_under_conjugation():
    rng = random.Random(308)
    for _ in range(15):
        mu = rng.randint(1, 2)
        d = rng.randint(1, 4)
        r = rand_rep(rng, mu, d)
        P = rand_unimodular(rng, d)
        assert rep_equal(r, conjugate_rep(r, P))


def test_rep_equal_matches_length_bound_expansion():
    rng = random.Random(309)
    for _ in range(30):
        mu = rng.randint(1, 2)
        r = rand_rep(rng, mu, rng.randint(0, 3))
        s = rand_rep(rng, mu, rng.randint(0, 3))
        bound = max(r.dim + s.dim - 1, 0)
        assert rep_equal(r, s) == (expand(r, bound) == expand(s, bound))
        # and the bound is tight enough: comparing much further changes nothing
        assert rep_equal(r, s) == (expand(r, bound + 4) == expand(s, bound + 4))


def test_first_difference_is_graded_lex_minimal():
    rng = random.Random(310)
    for _ in range(20):
        mu = rng.randint(1, 2)
        r = rand_rep(rng, mu, rng.randint(1, 3))
        s = rand_rep(rng, mu, rng.randint(1, 3))
        w = first_difference(r, s)
        if w is None:
            continue
        assert coeff(r, w) != coeff(s, w)
        e_r = expand(r, len(w))
        e_s = expand(s, len(w))
        for v in sorted(set(e_r.coeffs) | set(e_s.coeffs), key=lambda u: (len(u), u)):
            if (len(v), v) < (len(w), w):
                assert e_r.coeff(v) == e_s.coeff(v)


def test_serialization_roundtrip():
    rng = random.Random(311)
    r = rand_rep(rng, 2, 3)
    obj = rep_to_obj(r)
    assert rep_from_obj(obj) == r
    assert isinstance(obj["init"][0], str)
    assert obj["fin"][0] == [str(r.fin[0])]


def test_minimize_reaches_hankel_rank():
    # brute-force oracle: the minimal dimension is the rank of the
    # coefficient matrix indexed by word pairs (u, v) short enough to
    # exhibit it
    from ncrat.exactlinalg import Matrix, rref
    from ncrat.ncseries import words_up_to
    rng = random.Random(312)
    for _ in range(20):
        mu = rng.randint(1, 2)
        d = rng.randint(0, 3)
        r = rand_rep(rng, mu, d)
        words = words_up_to(mu, max(d, 1))
        hankel = Matrix.from_rows([[coeff(r, u + v) for v in words] for u in words])
        _, rank = rref(hankel)
        assert minimize(r).dim == rank
