"""Root systems, Weyl groups, reduced words."""

import pytest

from flagcohom.rootdata import RootDatum, cartan_matrix

POINCARE_EXPONENTS = {
    "A1": (1,), "A2": (1, 2), "A3": (1, 2, 3), "B2": (1, 3),
    "B3": (1, 3, 5), "C3": (1, 3, 5), "G2": (1, 5), "D4": (1, 3, 3, 5),
}


def test_a2_constants():
    rd = RootDatum.build("A2")
    assert rd.cartan == ((2, -1), (-1, 2))
    assert rd.N == 3
    assert rd.order == 6


def test_b2_g2_counts():
    assert RootDatum.build("B2").N == 4
    assert RootDatum.build("B2").order == 8
    assert RootDatum.build("G2").N == 6
    assert RootDatum.build("G2").order == 12


def test_lengths_a2():
    lengths = [w.length for w in RootDatum.build("A2").weyl_elements()]
    assert lengths == [0, 1, 1, 2, 2, 3]


def test_reduced_words():
    rd = RootDatum.build("A2")
    w0 = rd.longest_element()
    assert rd.reduced_words(w0) == ((1, 2, 1), (2, 1, 2))
    assert rd.reduced_words(rd.weyl_elements()[0]) == ((),)
    b2 = RootDatum.build("B2")
    assert b2.reduced_words(b2.longest_element()) == ((1, 2, 1, 2), (2, 1, 2, 1))


def test_longest_element():
    assert RootDatum.build("A1").longest_element().length == 1
    g2 = RootDatum.build("G2")
    w0 = g2.longest_element()
    assert w0.length == 6
    assert w0.canonical_word == (1, 2, 1, 2, 1, 2)


def test_reflect():
    rd = RootDatum.build("A2")
    # s_1(omega_1) = omega_1 - alpha_1 = -omega_1 + omega_2
    assert rd.reflect(0, (1, 0)) == (-1, 1)
    # fixed weight
    assert rd.reflect(0, (0, 1)) == (0, 1)
    # involution
    lam = (3, -2)
    assert rd.reflect(1, rd.reflect(1, lam)) == lam


def test_words_multiply_to_elements():
    for typ in ("A2", "B2", "G2"):
        rd = RootDatum.build(typ)
        for w in rd.weyl_elements():
            for word in rd.reduced_words(w):
                assert len(word) == w.length
                assert rd.element_of_word(word).matrix == w.matrix


def test_poincare_polynomials():
    for typ, exps in POINCARE_EXPONENTS.items():
        rd = RootDatum.build(typ)
        counts = {}
        for w in rd.weyl_elements():
            counts[w.length] = counts.get(w.length, 0) + 1
        poly = {0: 1}
        for e in exps:
            new = {}
            for k, c in poly.items():
                for j in range(e + 1):
                    new[k + j] = new.get(k + j, 0) + c
            poly = new
        assert counts == poly


def test_positive_root_count():
    for typ, n in (("A2", 3), ("B2", 4), ("G2", 6), ("B3", 9), ("A3", 6)):
        rd = RootDatum.build(typ)
        assert len(rd.positive_roots()) == n
        assert len(rd.all_roots()) == 2 * n


def test_simple_root_reflection_negates():
    for typ in ("A2", "B2", "G2"):
        rd = RootDatum.build(typ)
        for i in range(rd.rank):
            alpha = rd.simple_roots[i]
            assert rd.reflect(i, alpha) == tuple(-c for c in alpha)


def test_invalid_cartan_rejected():
    with pytest.raises(ValueError):
        RootDatum.from_cartan([[2, -2], [-2, 2]])  # affine A1~
    with pytest.raises(ValueError):
        RootDatum.from_cartan([[2, 1], [1, 2]])
    with pytest.raises(ValueError):
        RootDatum.from_cartan([[2, -1], [0, 2]])


def test_named_types_exist():
    for name in ("A1", "A4", "B4", "C2", "D4", "F4", "E6"):
        kind, rank = name[0], int(name[1:])
        cartan_matrix(kind, rank)


def test_custom_cartan_matches_named():
    rd = RootDatum.from_cartan([[2, -1], [-3, 2]])
    assert rd.N == 6
