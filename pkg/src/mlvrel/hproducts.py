"""The four harmonic (quasi-shuffle) products on A^1 and left multiplication H_w."""

from __future__ import annotations

from .algebra import X, Y, NcPoly, DomainError, _acc
from .linmaps import LinearMap

STAR, BAR_STAR, DOT_STAR, DOT_BAR_STAR = "STAR", "BAR_STAR", "DOT_STAR", "DOT_BAR_STAR"
KINDS = (STAR, BAR_STAR, DOT_STAR, DOT_BAR_STAR)

_memo: dict = {}


def _head(w):
    """Split w = z_{k,s} rest; returns (k, y_s letter, rest)."""
    for i, a in enumerate(w):
        if a is not X:
            return i + 1, a, w[i + 1:]
    raise DomainError("word does not end in a y letter")


def _merge_letter(a, b):
    return Y(a.label * b.label)


def word_product(kind: str, u: tuple, v: tuple) -> NcPoly:
    if not u:
        return NcPoly.word(v)
    if not v:
        return NcPoly.word(u)
    key = (kind, u, v)
    got = _memo.get(key)
    if got is not None:
        return got
    if u[-1] is X or v[-1] is X:
        raise DomainError("harmonic products are defined on A^1 only")
    k, a, rest_u = _head(u)
    l, b, rest_v = _head(v)
    merged = (X,) * (k + l - 1) + (_merge_letter(a, b),)
    d = {}
    if kind in (STAR, BAR_STAR):
        p1 = u[:k]
        for w, c in word_product(kind, rest_u, v).terms.items():
            _acc(d, p1 + w, c)
        p2 = v[:l]
        for w, c in word_product(kind, u, rest_v).terms.items():
            _acc(d, p2 + w, c)
        sign = 1 if kind == STAR else -1
        for w, c in word_product(kind, rest_u, rest_v).terms.items():
            _acc(d, merged + w, sign * c)
    else:
        inner = STAR if kind == DOT_STAR else BAR_STAR
        for w, c in word_product(inner, rest_u, rest_v).terms.items():
            _acc(d, merged + w, c)
    got = NcPoly(d)
    _memo[key] = got
    return got


def hprod(kind: str, p, q) -> NcPoly:
    """Bilinear harmonic product of the given kind."""
    if kind not in KINDS:
        raise ValueError(f"unknown product kind {kind!r}")
    p, q = NcPoly.lift(p), NcPoly.lift(q)
    if not (p.in_A1() and q.in_A1()):
        raise DomainError("harmonic products are defined on A^1 only")
    d = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            for w, c in word_product(kind, u, v).terms.items():
                _acc(d, w, a * b * c)
    return NcPoly(d)


def star(p, q):
    return hprod(STAR, p, q)


def bar_star(p, q):
    return hprod(BAR_STAR, p, q)


def dot_star(p, q):
    return hprod(DOT_STAR, p, q)


def dot_bar_star(p, q):
    return hprod(DOT_BAR_STAR, p, q)


def H(w) -> LinearMap:
    """Left harmonic multiplication w' -> w * w'."""
    w = NcPoly.lift(w)
    if not w.in_A1():
        raise DomainError("H_w needs w in A^1")
    return LinearMap(lambda v: hprod(STAR, w, NcPoly.word(v)), "H", a1_only=True)


def clear_memo():
    _memo.clear()
