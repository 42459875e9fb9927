"""The truncated series kernel: arithmetic, substitution, exact division."""

import random

import pytest

from flagcohom.coeffring import CoeffRing
from flagcohom.errors import DegreeValidityError, DivisionError, RingMismatchError
from flagcohom.tseries import TruncatedSeries

R = CoeffRing((), rational_mode=True)
RB = CoeffRing((("beta", 1),), rational_mode=True)


def xy(trunc=8, ring=R):
    return (
        TruncatedSeries.variable(ring, 2, trunc, 0),
        TruncatedSeries.variable(ring, 2, trunc, 1),
    )


def test_mul_basic():
    x, y = xy()
    assert (x * y).coeffs == {(1, 1): R.one()}


def test_valid_degree_min_rule():
    x, y = xy()
    p = x.restrict(3) * y.restrict(5)
    assert p.valid_degree == 3


def test_geometric_inverse():
    x, _ = xy()
    one = TruncatedSeries.const(R, 2, 8, 1)
    geom = one - x + x * x - x ** 3 + x ** 4 - x ** 5 + x ** 6 - x ** 7 + x ** 8
    assert (one + x) * geom == one


def test_shape_mismatch():
    x, _ = xy()
    with pytest.raises(RingMismatchError):
        x + TruncatedSeries.variable(R, 2, 9, 0)


def test_substitute_swap():
    x, y = xy()
    s = x + y
    assert s.substitute([y, x]) == s


def test_substitute_square():
    x1 = TruncatedSeries.variable(R, 1, 8, 0)
    x, y = xy()
    assert (x1 * x1).substitute([x + y]) == x * x + 2 * (x * y) + y * y


def test_substitute_identity():
    x, y = xy()
    s = x * y + x * x * y
    assert s.substitute([x, y]) == s


def test_substitute_rejects_constant_term():
    x, y = xy()
    one = TruncatedSeries.const(R, 2, 8, 1)
    with pytest.raises(ValueError):
        (x + y).substitute([x + one, y])


def test_exact_divide_difference_of_squares():
    x, y = xy()
    q = (x * x - y * y).exact_divide(x - y)
    assert q == x + y


def test_exact_divide_self():
    x, _ = xy()
    s = x.scale(2) + x * x
    assert s.exact_divide(s) == TruncatedSeries.const(R, 2, 8, 1, valid_degree=7)


def test_exact_divide_multiplicative_remainder():
    # With x + y - beta*x*y, the correction term beta*x*y divides by x.
    x, y = xy(ring=RB)
    beta = RB.gen("beta")
    q = (x * y).scale(beta).exact_divide(x)
    assert q == y.scale(beta)


def test_exact_divide_failure():
    x, y = xy()
    with pytest.raises(DivisionError):
        y.exact_divide(x)


def test_exact_divide_roundtrip_random():
    rng = random.Random(7)
    for _ in range(25):
        terms_a = {}
        for _ in range(4):
            e = (rng.randint(0, 2), rng.randint(0, 2))
            terms_a[e] = rng.randint(-3, 3)
        a = TruncatedSeries.from_terms(R, 2, 8, terms_a)
        terms_b = {(1, 0): rng.choice((1, 2, -1))}
        for _ in range(3):
            e = (rng.randint(0, 2), rng.randint(1, 2))
            terms_b.setdefault(e, rng.randint(-2, 2))
        b = TruncatedSeries.from_terms(R, 2, 8, terms_b)
        q = (a * b).exact_divide(b)
        assert q == a


def test_invert_unit():
    one = TruncatedSeries.const(R, 2, 8, 1)
    x, _ = xy()
    assert one.invert_unit() == one
    inv = (one - x).invert_unit()
    assert inv * (one - x) == one
    two = TruncatedSeries.const(R, 2, 8, 2)
    assert two.invert_unit() * two == one


def test_invert_unit_requires_unit():
    x, _ = xy()
    with pytest.raises(DivisionError):
        x.invert_unit()


def test_substitute_functoriality():
    rng = random.Random(3)
    x, y = xy(7)
    f = [x + y * y, y + x * y]
    g = [y, x + y]
    fg = [i.substitute(g) for i in f]
    for _ in range(8):
        terms = {}
        for _ in range(4):
            terms[(rng.randint(0, 2), rng.randint(0, 2))] = rng.randint(-3, 3)
        s = TruncatedSeries.from_terms(R, 2, 7, terms)
        assert s.substitute(f).substitute(g) == s.substitute(fg)


def test_degree_trap():
    x, _ = xy()
    s = (x * x).restrict(1)
    with pytest.raises(DegreeValidityError):
        s.coefficient((2, 0))
    # reads at or below the valid degree are fine
    assert s.coefficient((1, 0)).is_zero()


def test_mul_computes_only_valid_part():
    x, y = xy()
    s = (x + y).restrict(2)
    p = s * s
    assert p.valid_degree == 2
    assert all(sum(e) <= 2 for e in p.coeffs)
