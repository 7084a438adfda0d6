"""Words and truncated noncommutative power series with rational coefficients.

A series is a finite map from words over the alphabet {x_1, ..., x_mu} to
rationals, carrying an explicit truncation order: coefficients of words
longer than the order are not represented and never reported. On top of
the ring operations this module provides the left-letter-deletion
derivative d_i, the series/polynomial pairing, the induced right action
of polynomials, the group-to-series expansion g_i -> 1 + x_i, and the
first-letter projection pi_i / shift z acting on series without constant
term.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .exactlinalg import q, rational_to_str

Word = tuple[int, ...]
GroupWord = tuple[int, ...]  # signed generator indices, -i meaning the inverse of g_i


class AlphabetMismatch(ValueError):
    """Operands live over different alphabet sizes."""


class NotInvertible(ValueError):
    """Inversion of a series whose constant term is zero."""


class BadLetter(ValueError):
    """Letter index outside 1..mu."""


class OrderExceeded(ValueError):
    """A word is longer than the truncation order can support."""


class NotAugmentation(ValueError):
    """Operation requires a series with zero constant term."""


def grlex_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def check_word(w: Sequence[int], mu: int) -> Word:
    w = tuple(w)
    for a in w:
        if not isinstance(a, int) or not 1 <= a <= mu:
            raise BadLetter(f"letter {a!r} outside 1..{mu}")
    return w


def words_up_to(mu: int, n: int) -> list[Word]:
    """All words of length <= n in graded-lexicographic order."""
    out: list[Word] = [()]
    level: list[Word] = [()]
    for _ in range(n):
        level = [w + (a,) for w in level for a in range(1, mu + 1)]
        out.extend(level)
    return out


class TruncSeries:
    """Truncated series: alphabet size, order, and a sparse coefficient map.

    Zero coefficients are never stored, so equality is plain comparison of
    (mu, order, coeffs). Instances are immutable by convention.
    """

    __slots__ = ("mu", "order", "coeffs")

    def __init__(self, mu: int, order: int, coeffs: Mapping[Sequence[int], object] | None = None):
        if mu < 1:
            raise AlphabetMismatch(f"alphabet size must be >= 1, got {mu}")
        if order < 0:
            raise OrderExceeded(f"order must be >= 0, got {order}")
        clean: dict[Word, Fraction] = {}
        for w, c in (coeffs or {}).items():
            w = check_word(w, mu)
            if len(w) > order:
                raise OrderExceeded(f"word of length {len(w)} exceeds order {order}")
            c = q(c)
            if c != 0:
                clean[w] = c
        self.mu = mu
        self.order = order
        self.coeffs = clean

    @classmethod
    def _raw(cls, mu: int, order: int, coeffs: dict) -> "TruncSeries":
        # trusted fast path for internal arithmetic: words already checked,
        # zero coefficients already pruned
        self = object.__new__(cls)
        self.mu = mu
        self.order = order
        self.coeffs = coeffs
        return self

    def coeff(self, w: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(w), Fraction(0))

    def support(self) -> list[Word]:
        return sorted(self.coeffs, key=grlex_key)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.mu, self.order, self.coeffs) == (other.mu, other.order, other.coeffs)

    def __repr__(self):
        terms = " + ".join(f"({c})*{'.'.join(map(str, w)) or '1'}"
                           for w, c in sorted(self.coeffs.items(), key=lambda t: grlex_key(t[0])))
        return f"TruncSeries(mu={self.mu}, order={self.order}: {terms or '0'})"

    # operator sugar, delegating to the module-level operations
    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(-1, other))

    def __neg__(self):
        return series_scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return series_scale(other, self)

    def __rmul__(self, other):
        return series_scale(other, self)


def zero_series(mu: int, order: int) -> TruncSeries:
    return TruncSeries(mu, order, {})

def one_series(mu: int, order: int) -> TruncSeries:
    return TruncSeries(mu, order, {(): 1})

def monomial(mu: int, order: int, w: Sequence[int], c=1) -> TruncSeries:
    return TruncSeries(mu, order, {tuple(w): c})


def truncate(f: TruncSeries, order: int) -> TruncSeries:
    if order > f.order:
        raise OrderExceeded(f"cannot extend order {f.order} to {order}")
    return TruncSeries(f.mu, order, {w: c for w, c in f.coeffs.items() if len(w) <= order})


def _common_mu(f: TruncSeries, g: TruncSeries) -> int:
    if f.mu != g.mu:
        raise AlphabetMismatch(f"alphabet sizes {f.mu} and {g.mu}")
    return f.mu


def series_add(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    mu = _common_mu(f, g)
    order = min(f.order, g.order)
    coeffs = {w: c for w, c in f.coeffs.items() if len(w) <= order}
    for w, c in g.coeffs.items():
        if len(w) <= order:
            s = coeffs.get(w)
            t = c if s is None else s + c
            if t:
                coeffs[w] = t
            elif s is not None:
                del coeffs[w]
    return TruncSeries._raw(mu, order, coeffs)


def series_scale(c, f: TruncSeries) -> TruncSeries:
    c = q(c)
    if c == 0:
        return TruncSeries._raw(f.mu, f.order, {})
    return TruncSeries._raw(f.mu, f.order, {w: c * a for w, a in f.coeffs.items()})


def series_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Concatenation (Cauchy) product, truncated to the smaller order."""
    mu = _common_mu(f, g)
    order = min(f.order, g.order)
    fbuckets: dict[int, list] = {}
    for u, a in f.coeffs.items():
        if len(u) <= order:
            fbuckets.setdefault(len(u), []).append((u, a))
    gbuckets: dict[int, list] = {}
    for v, b in g.coeffs.items():
        if len(v) <= order:
            gbuckets.setdefault(len(v), []).append((v, b))
    coeffs: dict[Word, Fraction] = {}
    get = coeffs.get
    for lu, fitems in fbuckets.items():
        room = order - lu
        for lv, gitems in gbuckets.items():
            if lv > room:
                continue
            for u, a in fitems:
                for v, b in gitems:
                    w = u + v
                    s = get(w)
                    t = a * b if s is None else s + a * b
                    if t:
                        coeffs[w] = t
                    else:
                        del coeffs[w]
    return TruncSeries._raw(mu, order, coeffs)


def epsilon(f: TruncSeries) -> Fraction:
    """Constant term."""
    return f.coeff(())


def series_invert(f: TruncSeries) -> TruncSeries:
    """Multiplicative inverse up to the truncation order.

    Writes f = c(1 - h) with h constant-term-free and sums the geometric
    series in h; h^p only contributes words of length >= p, so the sum is
    finite at any order.
    """
    c = epsilon(f)
    if c == 0:
        raise NotInvertible("constant term is zero")
    h = TruncSeries._raw(f.mu, f.order, {w: -a / c for w, a in f.coeffs.items() if w})
    acc = one_series(f.mu, f.order)
    power = one_series(f.mu, f.order)
    for _ in range(f.order):
        power = series_mul(power, h)
        if power.is_zero():
            break
        acc = series_add(acc, power)
    return series_scale(1 / c, acc)


def fox_derive(i: int, f: TruncSeries) -> TruncSeries:
    """Left-deletion derivative: coefficient of w in the result is the
    coefficient of x_i w in f. Drops the order by one, since length-N
    data in f only determines the derivative up to length N-1."""
    if not 1 <= i <= f.mu:
        raise BadLetter(f"letter {i} outside 1..{f.mu}")
    if f.order < 1:
        raise OrderExceeded("cannot differentiate an order-0 truncation")
    coeffs = {w[1:]: c for w, c in f.coeffs.items() if w and w[0] == i}
    return TruncSeries._raw(f.mu, f.order - 1, coeffs)


def pairing(S: TruncSeries, P: TruncSeries) -> Fraction:
    """Sum over words of S(w) * P(w); P must fit inside S's order."""
    _common_mu(S, P)
    for w in P.coeffs:
        if len(w) > S.order:
            raise OrderExceeded(f"polynomial word of length {len(w)} exceeds order {S.order}")
    return sum((c * S.coeff(w) for w, c in P.coeffs.items()), Fraction(0))


def circ(S: TruncSeries, P: TruncSeries) -> TruncSeries:
    """Right action of the polynomial P on S: (S o P)(w) = sum_u P(u) S(uw).

    For P = x_i this is exactly fox_derive(i, S). The result order is
    S.order minus the longest word of P, the largest order at which every
    reported coefficient is determined.
    """
    _common_mu(S, P)
    depth = max((len(w) for w in P.coeffs), default=0)
    if depth > S.order:
        raise OrderExceeded(f"polynomial word of length {depth} exceeds order {S.order}")
    order = S.order - depth
    coeffs: dict[Word, Fraction] = {}
    for u, a in P.coeffs.items():
        lu = len(u)
        for uw, s in S.coeffs.items():
            if len(uw) - lu <= order and uw[:lu] == u:
                w = uw[lu:]
                coeffs[w] = coeffs.get(w, Fraction(0)) + a * s
    return TruncSeries(S.mu, order, coeffs)


def magnus(g: Sequence[int], mu: int, order: int) -> TruncSeries:
    """Expansion of a free-group word into series: g_i -> 1 + x_i and
    g_i^-1 -> sum of (-x_i)^n, multiplied factor by factor at the given
    order."""
    acc = one_series(mu, order)
    for s in g:
        i = abs(s)
        if s == 0 or i > mu:
            raise BadLetter(f"signed generator {s} outside +-1..{mu}")
        if s > 0:
            factor = TruncSeries(mu, order, {(): 1, (i,): 1})
        else:
            factor = TruncSeries(mu, order, {(i,) * n: (-1) ** n for n in range(order + 1)})
        acc = series_mul(acc, factor)
    return acc


def _require_augmentation(f: TruncSeries):
    if epsilon(f) != 0:
        raise NotAugmentation("series has a nonzero constant term")


def pmu_pi(i: int, f: TruncSeries) -> TruncSeries:
    """Projection onto the words beginning with x_i."""
    if not 1 <= i <= f.mu:
        raise BadLetter(f"letter {i} outside 1..{f.mu}")
    _require_augmentation(f)
    return TruncSeries(f.mu, f.order, {w: c for w, c in f.coeffs.items() if w and w[0] == i})


def pmu_z(f: TruncSeries) -> TruncSeries:
    """The shift x_k w -> -w, i.e. minus the sum of all derivatives."""
    _require_augmentation(f)
    if f.order < 1:
        raise OrderExceeded("cannot shift an order-0 truncation")
    coeffs: dict[Word, Fraction] = {}
    for w, c in f.coeffs.items():
        if w:
            t = w[1:]
            coeffs[t] = coeffs.get(t, Fraction(0)) - c
    return TruncSeries(f.mu, f.order - 1, coeffs)


def series_to_obj(f: TruncSeries) -> dict:
    """JSON-ready form with terms in graded-lexicographic order."""
    return {
        "mu": f.mu,
        "order": f.order,
        "terms": [{"word": list(w), "coeff": rational_to_str(f.coeffs[w])} for w in f.support()],
    }


def series_from_obj(obj: Mapping) -> TruncSeries:
    coeffs = {tuple(t["word"]): q(t["coeff"]) for t in obj["terms"]}
    return TruncSeries(int(obj["mu"]), int(obj["order"]), coeffs)
