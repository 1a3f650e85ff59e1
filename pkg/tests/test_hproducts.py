from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mlvrel.algebra import X, Y, Num, NcPoly, DomainError, z
from mlvrel.hproducts import (
    KINDS, hprod, star, bar_star, dot_star,
    dot_bar_star, H, clear_memo,
)
from mlvrel.linmaps import d_star, d_star_inv, F
from mlvrel import seqnum as sq

import oracles as O
from helpers import to_word, to_poly, dec_poly, tuple_words

y = lambda v: Y(Num(Fraction(v)))
w_ = NcPoly.word


def P(*pairs):
    return NcPoly.from_terms(pairs)


def test_depth_one_examples():
    s, t = Num(Fraction(1, 2)), Num(3)
    ys, yt = w_((Y(s),)), w_((Y(t),))
    base = P(((Y(s), Y(t)), 1), ((Y(t), Y(s)), 1))
    assert star(ys, yt) == base + w_(z(2, s * t))
    assert bar_star(ys, yt) == base - w_(z(2, s * t))
    assert dot_star(ys, yt) == w_(z(2, s * t))
    assert dot_bar_star(ys, yt) == w_(z(2, s * t))
    assert star(w_(()), w_((X, Y(s)))) == w_((X, Y(s)))


def test_H_examples():
    y1 = y(1)
    assert H(w_((y1,)))(w_((y1,))) == P(((y1, y1), 2), ((X, y1), 1))
    assert H(w_(()))(w_((X, y1))) == w_((X, y1))
    expected = P(((y1, X, y1), 1), ((X, y1, y1), 1), ((X, X, y1), 1))
    assert H(w_((y1,)))(w_((X, y1))) == expected


def test_frozen_products(frozen):
    assert star(w_((y(1),)), w_((X, y(1)))) == dec_poly(frozen["stuffle_y1_xy1"])
    u, v = w_((X, y("1/2"))), w_((y("1/3"), y(2)))
    assert star(u, v) == dec_poly(frozen["stuffle_xyhalf_ythird"])
    assert bar_star(u, v) == dec_poly(frozen["bar_stuffle_xyhalf_ythird"])


@given(tuple_words(max_size=4), tuple_words(max_size=4))
def test_products_match_lattice_path_oracle(a, b):
    u, v = w_(to_word(a)), w_(to_word(b))
    assert star(u, v) == to_poly(O.quasi_shuffle(a, b))
    assert bar_star(u, v) == to_poly(O.quasi_shuffle(a, b, sign=-1))
    assert dot_star(u, v) == to_poly(O.quasi_shuffle(a, b, first_merge=True))
    assert dot_bar_star(u, v) == -to_poly(O.quasi_shuffle(a, b, sign=-1, first_merge=True))


@given(st.sampled_from(KINDS), tuple_words(max_size=3), tuple_words(max_size=3),
       tuple_words(max_size=3))
def test_commutative_and_associative(kind, a, b, c):
    u, v, w = (w_(to_word(t)) for t in (a, b, c))
    assert hprod(kind, u, v) == hprod(kind, v, u)
    assert hprod(kind, hprod(kind, u, v), w) == hprod(kind, u, hprod(kind, v, w))


def test_inputs_outside_A1_rejected():
    with pytest.raises(DomainError):
        star(w_((y(1), X)), w_((y(1),)))
    with pytest.raises(DomainError):
        H(w_((X,)))
    with pytest.raises(ValueError):
        hprod("SHUFFLE", w_((y(1),)), w_((y(1),)))


def test_memo_can_be_cleared():
    u = w_((X, y(1)))
    before = star(u, u)
    clear_memo()
    assert star(u, u) == before


@given(tuple_words(max_size=3, label=st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(-1, 3)])),
       tuple_words(max_size=3, label=st.sampled_from([Fraction(2, 3), Fraction(1), Fraction(3)])))
def test_evaluation_homomorphisms(a, b):
    u, v = to_word(a), to_word(b)
    m = 30
    S = lambda p: sq.poly_table(sq.AST, sq.LEQ, p, m)
    s = lambda p: sq.poly_table(sq.AST, sq.EQUAL, p, m)
    assert [x * y_ for x, y_ in zip(S(w_(u)), S(w_(v)))] == S(bar_star(w_(u), w_(v)))
    assert [x * y_ for x, y_ in zip(s(w_(u)), s(w_(v)))] == s(dot_bar_star(w_(u), w_(v)))


@given(tuple_words(max_size=3), tuple_words(max_size=3))
def test_tail_map_intertwines_products(a, b):
    u, v = w_(to_word(a)), w_(to_word(b))
    ds, dsi = d_star(), d_star_inv()
    assert ds(bar_star(u, v)) == star(ds(u), ds(v))
    assert ds(dot_bar_star(u, v)) == dot_star(ds(u), ds(v))
    assert dsi(star(u, v)) == bar_star(dsi(u), dsi(v))
    assert dsi(dot_star(u, v)) == dot_bar_star(dsi(u), dsi(v))


ones = st.just(Fraction(1))


@given(tuple_words(max_size=3), tuple_words(max_size=3, label=ones),
       st.sampled_from([Fraction(1, 2), Fraction(-2), Fraction(3), Fraction(2, 3)]))
def test_twisted_product_compatibility(a, b, s):
    u, v = w_(to_word(a)), w_(to_word(b))
    Fs, dsi = F(s), d_star_inv()
    assert bar_star(Fs(dsi(u)), dsi(v)) == Fs(dsi(star(u, v)))
    assert bar_star(Fs(u), v) == Fs(bar_star(u, v))
