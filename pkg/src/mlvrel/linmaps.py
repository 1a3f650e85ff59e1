"""Linear maps and automorphisms on the word algebra.

Every map is a ``LinearMap``: a rule sending one word to a polynomial,
memoized per word and extended linearly.  Composites keep both factors and
apply them in turn, so label-domain errors surface on the term that causes
them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import (
    X, Y, Cyc, Num, NcPoly, LabelError, DomainError,
    in_A1, z_factors, from_z, _acc,
)


class LinearMap:
    """Linear map on NcPoly given by a word -> NcPoly rule.

    ``a1_only`` marks maps that are only defined on A^1.
    """

    __slots__ = ("rule", "name", "a1_only", "memo")

    def __init__(self, rule, name="map", a1_only=False, memo=True):
        self.rule = rule
        self.name = name
        self.a1_only = a1_only
        self.memo = {} if memo else None

    def on_word(self, w) -> NcPoly:
        if self.a1_only and not in_A1(w):
            raise DomainError(f"{self.name} is only defined on words ending in a y letter")
        if self.memo is None:
            return self.rule(w)
        got = self.memo.get(w)
        if got is None:
            got = self.rule(w)
            self.memo[w] = got
        return got

    def __call__(self, p) -> NcPoly:
        p = NcPoly.lift(p)
        d = {}
        for w, c in p.terms.items():
            for v, a in self.on_word(w).terms.items():
                _acc(d, v, a * c)
        return NcPoly(d)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda w: self(other.on_word(w)),
                         f"{self.name}.{other.name}", a1_only=other.a1_only)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda w: self.on_word(w) + other.on_word(w),
                         f"({self.name}+{other.name})",
                         a1_only=self.a1_only or other.a1_only)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda w: self.on_word(w) - other.on_word(w),
                         f"({self.name}-{other.name})",
                         a1_only=self.a1_only or other.a1_only)

    def __neg__(self):
        return LinearMap(lambda w: -self.on_word(w), f"-{self.name}", a1_only=self.a1_only)

    def scaled(self, a) -> "LinearMap":
        return LinearMap(lambda w: self.on_word(w).scale(a), f"{a}*{self.name}",
                         a1_only=self.a1_only)

    def __repr__(self):
        return f"LinearMap({self.name})"


def identity() -> LinearMap:
    return LinearMap(lambda w: NcPoly.word(w), "id", memo=False)


def commutator(a: LinearMap, b: LinearMap) -> LinearMap:
    return a @ b - b @ a


def automorphism(letter_image, name) -> LinearMap:
    """Multiplicative map from a letter -> NcPoly rule."""
    m = None

    def rule(w):
        if not w:
            return NcPoly.word(())
        if len(w) == 1:
            return NcPoly.lift(letter_image(w[0]))
        return NcPoly.lift(letter_image(w[0])) * m.on_word(w[1:])

    m = LinearMap(rule, name)
    return m


def derivation(letter_image, name) -> LinearMap:
    """Leibniz extension of a letter -> NcPoly rule."""
    m = None

    def rule(w):
        if not w:
            return NcPoly()
        head = (w[0],)
        if len(w) == 1:
            return NcPoly.lift(letter_image(w[0]))
        tail = w[1:]
        return (NcPoly.lift(letter_image(w[0])).rmul_word(tail)
                + m.on_word(tail).lmul_word(head))

    m = LinearMap(rule, name)
    return m


# ---------------------------------------------------------------- labels helpers

def delta(s) -> int:
    """0 for s in {0, 1}, else 1."""
    if s is None:
        return 0
    if isinstance(s, (Cyc, Num)):
        return 0 if (s.is_one() or s.is_zero()) else 1
    return 0 if s in (0, 1) else 1


def num_label(v) -> Num:
    if isinstance(v, Num):
        return v
    return Num(Fraction(v))


# ---------------------------------------------------------------- the automorphisms

@lru_cache(maxsize=None)
def phi(one) -> LinearMap:
    y1 = Y(one)

    def img(a):
        if a is X:
            return NcPoly({(X,): 1, (y1,): 1})
        if delta(a.label):
            return NcPoly({(a,): 1, (y1,): -1})
        return NcPoly({(y1,): -1})

    return automorphism(img, "phi")


def _iota_letter(a):
    if a is X:
        return NcPoly.word((X,))
    s = a.label
    if type(s) is not Num:
        raise LabelError("iota needs 1 - s, which is only available for exact complex labels")
    if delta(s):
        t = s.one_minus()
        if t.is_zero():
            raise LabelError("iota would produce y_0")
        return NcPoly.word((Y(t),))
    # y_1 -> +y_1: the only sign for which iota is an involution commuting
    # with phi and alpha, and for which the Landen formula holds at y_1
    return NcPoly.word((Y(s.one()),))


@lru_cache(maxsize=None)
def iota() -> LinearMap:
    return automorphism(_iota_letter, "iota")


@lru_cache(maxsize=None)
def alpha(one) -> LinearMap:
    y1 = Y(one)

    def img(a):
        if a is X:
            return NcPoly.word((y1,))
        if delta(a.label):
            return NcPoly.word((a,))
        return NcPoly.word((X,))

    return automorphism(img, "alpha")


@lru_cache(maxsize=None)
def gamma() -> LinearMap:
    return automorphism(lambda a: NcPoly.word((X,)) if a is X
                        else NcPoly({(X,): 1, (a,): 1}), "gamma")


@lru_cache(maxsize=None)
def gamma_inv() -> LinearMap:
    return automorphism(lambda a: NcPoly.word((X,)) if a is X
                        else NcPoly({(X,): -1, (a,): 1}), "gamma_inv")


def apply_automorphism(which: str, p, one=None) -> NcPoly:
    """Apply PHI, IOTA, ALPHA or GAMMA; ``one`` fixes the domain of y_1."""
    p = NcPoly.lift(p)
    if one is None:
        one = _guess_one(p)
    table = {"PHI": lambda: phi(one), "IOTA": iota,
             "ALPHA": lambda: alpha(one), "GAMMA": gamma}
    return table[which.upper()]()(p)


def _guess_one(p):
    for w in p.terms:
        for a in w:
            if a is not X:
                return a.label.one()
    return Num(1)


# ---------------------------------------------------------------- tail rules

@lru_cache(maxsize=None)
def d_sh() -> LinearMap:
    def rule(w):
        if not w:
            return NcPoly.word(())
        return gamma().on_word(w[:-1]).rmul_word(w[-1:])

    return LinearMap(rule, "d_sh", a1_only=True)


@lru_cache(maxsize=None)
def d_sh_inv() -> LinearMap:
    def rule(w):
        if not w:
            return NcPoly.word(())
        return gamma_inv().on_word(w[:-1]).rmul_word(w[-1:])

    return LinearMap(rule, "d_sh_inv", a1_only=True)


@lru_cache(maxsize=None)
def star(one=Num(1)) -> LinearMap:
    ai = alpha(one) @ iota()
    y1 = Y(one)

    def rule(w):
        if not w:
            return NcPoly.word(())
        s = w[-1].label
        if type(s) is not Num:
            raise LabelError("star needs 1 - s, which is only available for exact complex labels")
        last = NcPoly.word((y1,))
        if delta(s):
            last = last - NcPoly.word((Y(s.one_minus()),))
        return ai.on_word(w[:-1]) * last

    return LinearMap(rule, "star", a1_only=True)


# ---------------------------------------------------------------- label maps on z-factors

def _relabel(fn, name) -> LinearMap:
    def rule(w):
        blocks, tail = z_factors(w)
        return NcPoly.word(from_z(fn(blocks), tail))

    return LinearMap(rule, name)


def _I(blocks):
    out, acc = [], None
    for k, s in blocks:
        acc = s if acc is None else acc * s
        out.append((k, acc))
    return out


def _I_inv(blocks):
    out, prev = [], None
    for k, s in blocks:
        out.append((k, s if prev is None else s / prev))
        prev = s
    return out


@lru_cache(maxsize=None)
def I() -> LinearMap:
    return _relabel(_I, "I")


@lru_cache(maxsize=None)
def I_inv() -> LinearMap:
    return _relabel(_I_inv, "I_inv")


@lru_cache(maxsize=None)
def M(s) -> LinearMap:
    """Multiply the label of the first z-factor by s."""
    def fn(blocks):
        if not blocks:
            return blocks
        return [(blocks[0][0], s * blocks[0][1])] + blocks[1:]

    return _relabel(fn, f"M[{s.text()}]")


@lru_cache(maxsize=None)
def N(s) -> LinearMap:
    """Multiply every label by s."""
    return _relabel(lambda blocks: [(k, s * t) for k, t in blocks], f"N[{s.text()}]")


def L(u) -> LinearMap:
    u = NcPoly.lift(u)
    return LinearMap(lambda w: NcPoly({v + w: c for v, c in u.terms.items()}),
                     "L", memo=False)


def R(u) -> LinearMap:
    u = NcPoly.lift(u)
    return LinearMap(lambda w: NcPoly({w + v: c for v, c in u.terms.items()}),
                     "R", memo=False)


@lru_cache(maxsize=None)
def d_star() -> LinearMap:
    m = I_inv() @ d_sh() @ I()
    m.name = "d_star"
    return m


@lru_cache(maxsize=None)
def d_star_inv() -> LinearMap:
    m = I_inv() @ d_sh_inv() @ I()
    m.name = "d_star_inv"
    return m


def iwasawa_maps():
    return {"I": I(), "I_inv": I_inv(), "M": M, "N": N}


@lru_cache(maxsize=None)
def F(s) -> LinearMap:
    """M_{1/(1-d s)} I^{-1} iota I M_{(1-d)+d s} with d = delta(s)."""
    s = num_label(s)
    if delta(s):
        return M(s.one_minus().inv()) @ I_inv() @ iota() @ I() @ M(s)
    return I_inv() @ iota() @ I()


@lru_cache(maxsize=None)
def sigma(s) -> LinearMap:
    return phi(s.one()) @ I() @ M(s)


def x_plus(s) -> NcPoly:
    """x + delta(s) y_s."""
    if delta(s):
        return NcPoly({(X,): 1, (Y(s),): 1})
    return NcPoly.word((X,))


def left_divide(p: NcPoly, u: NcPoly) -> NcPoly:
    """Solve u * q = p for q, where u is a nonzero linear combination of letters."""
    u = NcPoly.lift(u)
    if not u or any(len(w) != 1 for w in u.terms):
        raise DomainError("left division needs a homogeneous linear divisor")
    lead, a = min(u.terms.items(), key=lambda t: t[0][0].order)
    q = {}
    for w, c in p.terms.items():
        if not w:
            raise DomainError("constant term cannot be left-divided")
        if w[0] is lead[0]:
            q[w[1:]] = c * (Fraction(1) / a)
    q = NcPoly({w: c for w, c in q.items() if c})
    if u * q != p:
        raise DomainError("polynomial is not left-divisible by the given factor")
    return q
