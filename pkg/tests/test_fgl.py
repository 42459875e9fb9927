"""Formal group laws: the universal law, specializations, twisting."""

from fractions import Fraction

import pytest

from flagcohom.coeffring import CoeffRing
from flagcohom.errors import AssociativityError
from flagcohom.fgl import FormalGroupLaw, revert
from flagcohom.tseries import TruncatedSeries


def test_universal_xy_coefficient(universal8):
    m = universal8.ring
    assert universal8.a_table[(1, 1)] == m.gen("m1").scale(-2)


def test_universal_specializes_to_additive(universal8):
    target = CoeffRing((), True)
    assign = {name: 0 for name in universal8.ring.names}
    spec = universal8.specialize(assign, target)
    additive = FormalGroupLaw.additive(universal8.trunc, target)
    assert spec.F == additive.F


def test_universal_specializes_to_multiplicative(universal8):
    target = CoeffRing((("beta", 1),), True)
    beta = target.gen("beta")
    assign = {
        f"m{i}": beta ** i * Fraction(1, i + 1) for i in range(1, universal8.trunc)
    }
    spec = universal8.specialize(assign, target)
    direct = FormalGroupLaw.multiplicative(universal8.trunc)
    assert spec.F == direct.F


def test_from_coefficients_multiplicative_inverse():
    law = FormalGroupLaw.multiplicative(7)
    ring = law.ring
    beta = ring.gen("beta")
    # i(x) = -x/(1 - beta x) = -(x + beta x^2 + beta^2 x^3 + ...)
    terms = {(k,): -(beta ** (k - 1)) for k in range(1, 8)}
    want = TruncatedSeries.from_terms(ring, 1, 7, terms)
    assert law.inverse == want


def test_from_coefficients_additive():
    ring = CoeffRing((), True)
    law = FormalGroupLaw.from_coefficients(ring, 6, {})
    x = TruncatedSeries.variable(ring, 1, 6, 0)
    assert law.inverse == -x


def test_from_coefficients_associativity_error():
    ring = CoeffRing((), True)
    with pytest.raises(AssociativityError):
        FormalGroupLaw.from_coefficients(ring, 6, {(1, 1): 1, (2, 2): 1})


def test_multiples():
    add = FormalGroupLaw.additive(6)
    x = TruncatedSeries.variable(add.ring, 1, 6, 0)
    assert add.multiple(3, x) == x.scale(3)
    assert add.multiple(0, x).is_zero()
    mult = FormalGroupLaw.multiplicative(6)
    xm = TruncatedSeries.variable(mult.ring, 1, 6, 0)
    beta = mult.ring.gen("beta")
    want = xm.scale(2) - (xm * xm).scale(beta)
    assert mult.multiple(2, xm) == want


def test_formal_sum_inverse_cancel(universal8):
    x = TruncatedSeries.variable(universal8.ring, 1, 8, 0)
    s = universal8.multiple_series(2)
    assert universal8.formal_sum(s, universal8.formal_inverse(s)).is_zero()


def test_multiple_additivity(universal8):
    for k1 in (-3, -1, 0, 2, 3):
        for k2 in (-2, 1, 3):
            lhs = universal8.multiple_series(k1 + k2)
            rhs = universal8.formal_sum(
                universal8.multiple_series(k1), universal8.multiple_series(k2)
            )
            assert lhs == rhs


def test_kappa_additive_zero():
    add = FormalGroupLaw.additive(6)
    assert add.kappa().is_zero()


def test_kappa_multiplicative_constant():
    mult = FormalGroupLaw.multiplicative(6)
    kap = mult.kappa()
    assert kap == TruncatedSeries.const(
        mult.ring, 2, 6, mult.ring.gen("beta"), valid_degree=4
    )


def test_kappa_universal_leading(universal8):
    kap = universal8.kappa()
    # g(0,0) = -a11 = 2 m1
    assert kap.coefficient((0, 0)) == universal8.ring.gen("m1").scale(2)


def test_twist_identity(universal8):
    lam = TruncatedSeries.variable(universal8.ring, 1, universal8.trunc, 0)
    twisted = universal8.twist(lam)
    assert twisted.F == universal8.F


def test_twist_additive_order_two():
    ring = CoeffRing((("t1", 1),), True)
    add = FormalGroupLaw.additive(6, CoeffRing((), True))
    t1 = ring.gen("t1")
    x = TruncatedSeries.variable(ring, 1, 6, 0)
    lam = x + (x * x).scale(t1)
    twisted = FormalGroupLaw.additive(6, CoeffRing((), True)).twist(lam)
    # F'(x, y) = lam(lam^-1 x + lam^-1 y): the xy-coefficient is 2 t1
    assert twisted.F.coefficient((1, 1)) == t1.scale(2)
    # setting t1 = 0 recovers the additive law
    back = twisted.specialize({"t1": 0}, CoeffRing((), True))
    assert back.F == FormalGroupLaw.additive(6, CoeffRing((), True)).F


def test_twist_requires_unit_linear(universal8):
    ring = universal8.ring
    bad = TruncatedSeries.from_terms(ring, 1, universal8.trunc, {(2,): 1})
    with pytest.raises(ValueError):
        universal8.twist(bad)


def test_revert_roundtrip(universal8):
    log = universal8.log
    exp = revert(log)
    x = TruncatedSeries.variable(universal8.ring, 1, universal8.trunc, 0)
    assert exp.substitute([log]) == x
    assert log.substitute([exp]) == x


def test_connective_normalization():
    law = FormalGroupLaw.connective(6)
    v = law.ring.gen("v")
    assert law.F.coefficient((1, 1)) == v
