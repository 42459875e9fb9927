"""Tower presentations, xi-coordinates, push-forward, tangent class."""

import random

import pytest

from flagcohom.bott import BSRing, bs_presentation, bs_pushforward, cc_in_xi
from flagcohom.fgl import FormalGroupLaw
from flagcohom.fgring import FormalGroupRing
from flagcohom.rootdata import RootDatum


@pytest.fixture(scope="module")
def a2_add():
    return FormalGroupRing(RootDatum.build("A2"), FormalGroupLaw.additive(6))


@pytest.fixture(scope="module")
def a2_univ():
    return FormalGroupRing(RootDatum.build("A2"), FormalGroupLaw.universal(7))


def rand_elt(fgr, rng):
    terms = {}
    for _ in range(4):
        e = [0] * fgr.n
        for _ in range(rng.randint(0, 3)):
            e[rng.randrange(fgr.n)] += 1
        c = rng.randint(-3, 3)
        if c:
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return fgr.from_monomials(terms)


def test_first_relation_always_trivial(a2_univ):
    pres = bs_presentation(a2_univ, (1, 2, 1))
    rel = pres.relation(1)
    assert all(c.is_zero() for c in rel.values())


def test_second_relation_additive(a2_add):
    pres = bs_presentation(a2_add, (1, 2))
    rel = pres.relation(2)
    assert rel[()].is_zero()
    assert rel[(1,)] == a2_add.ring.const(-1)


def test_presentation_multiplicative_matches_specialized_universal(a2_univ):
    from fractions import Fraction

    from flagcohom.coeffring import CoeffRing

    target = CoeffRing((("beta", 1),), True)
    beta = target.gen("beta")
    assignment = {
        f"m{i}": beta ** i * Fraction(1, i + 1) for i in range(1, a2_univ.trunc)
    }
    mult = FormalGroupRing(
        a2_univ.datum, a2_univ.law.specialize(assignment, target)
    )
    word = (1, 2, 1)
    pres_u = bs_presentation(a2_univ, word)
    pres_m = bs_presentation(mult, word)
    for j in range(1, len(word) + 1):
        for K, c in pres_u.relation(j).items():
            assert c.specialize(assignment, target) == pres_m.relation(j)[K]


def test_cc_in_xi_of_unit(a2_univ):
    coords = cc_in_xi(a2_univ, (1, 2), a2_univ.one())
    for K, c in coords.items():
        want = a2_univ.ring.one() if K == () else a2_univ.ring.zero()
        assert c == want


def test_cc_in_xi_empty_word(a2_univ):
    rng = random.Random(0)
    u = rand_elt(a2_univ, rng)
    coords = cc_in_xi(a2_univ, (), u)
    assert coords == {(): a2_univ.augmentation(u)}


def test_characteristic_map_is_ring_morphism(a2_univ):
    ring = BSRing(a2_univ, (1, 2, 1))
    rng = random.Random(1)
    for _ in range(5):
        u, v = rand_elt(a2_univ, rng), rand_elt(a2_univ, rng)
        assert ring.characteristic_class(u * v) == (
            ring.characteristic_class(u) * ring.characteristic_class(v)
        )


def test_pushforward_empty_word(a2_univ):
    rng = random.Random(2)
    u = rand_elt(a2_univ, rng)
    assert bs_pushforward(a2_univ, (), u) == a2_univ.augmentation(u)


def test_pushforward_u0_reduced_words(a2_universal):
    fgr = a2_universal.fgr
    u0 = a2_universal.torsion.u0
    N, t = a2_universal.N, a2_universal.t
    for word in ((1, 2, 1), (2, 1, 2)):
        assert bs_pushforward(fgr, word, u0) == fgr.ring.const((-1) ** N * t)


def test_pushforward_reversal_symmetry_b2(b2_universal):
    fgr = b2_universal.fgr
    u0 = b2_universal.torsion.u0
    words = [()]
    for _ in range(b2_universal.N):
        words = [w + (i,) for w in words for i in (1, 2)]
        for word in words:
            lhs = bs_pushforward(fgr, word, u0)
            rhs = bs_pushforward(fgr, tuple(reversed(word)), u0)
            assert lhs == rhs


def test_tangent_empty_word(a2_univ):
    ring = BSRing(a2_univ, ())
    assert ring.tangent_chern_class() == ring.one()


def test_tangent_single_letter_additive(a2_add):
    ring = BSRing(a2_add, (1,))
    got = ring.tangent_chern_class()
    want = ring.one() + ring.xi(1).scale(2)
    assert got == want


def test_tangent_unit_coefficient(a2_univ):
    ring = BSRing(a2_univ, (1, 2))
    tangent = ring.tangent_chern_class()
    assert tangent.coords[()] == a2_univ.ring.one()


def test_xi_squares_from_relations(a2_univ):
    ring = BSRing(a2_univ, (1, 2, 1))
    for j in (1, 2, 3):
        lhs = ring.xi(j) * ring.xi(j)
        rhs = ring.zero()
        for K, c in ring.presentation.relation(j).items():
            if not c.is_zero():
                rhs = rhs + ring.from_subset_coords({tuple(sorted(set(K) | {j})): c})
        assert lhs == rhs
