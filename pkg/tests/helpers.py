"""Conversions between the oracle tuple encoding and package words."""

from fractions import Fraction

from hypothesis import strategies as st

from mlvrel.algebra import X, Y, Num, NcPoly

import oracles as O


def to_word(t):
    return tuple(X if a == O.XL else Y(Num(Fraction(a))) for a in t)


def to_tuple(w):
    return tuple(O.XL if a is X else a.label.re for a in w)


def to_poly(d):
    return NcPoly.from_terms((to_word(w), c) for w, c in d.items())


def from_poly(p):
    return {to_tuple(w): c for w, c in p.items()}


def dec(v):
    return Fraction(v)


def dec_word(text):
    return tuple(O.XL if a == "x" else Fraction(a) for a in text.split())


def dec_poly(d):
    return NcPoly.from_terms((to_word(dec_word(w)), Fraction(c)) for w, c in d.items())


labels = st.sampled_from([Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(1, 3),
                          Fraction(2, 3), Fraction(-1, 2), Fraction(3, 2)])


@st.composite
def tuple_words(draw, min_size=1, max_size=4, a1=True, label=labels):
    n = draw(st.integers(min_size, max_size))
    out = [draw(st.one_of(st.just(O.XL), label)) for _ in range(n)]
    if a1 and n:
        out[-1] = draw(label)
    return tuple(out)
