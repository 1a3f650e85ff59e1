"""Labels, letters, words and non-commutative polynomials.

A word is a plain tuple of interned ``Letter`` objects, so hashing and
equality of words run at C speed.  Polynomials map words to exact scalars:
``int``/``Fraction`` for the rational ring, or ``QPoly`` when a formal
parameter such as ``c`` is involved.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Iterator


class LabelError(ValueError):
    """Label-domain violation (mixed domains, 1 - s on a root of unity, ...)."""


class DomainError(ValueError):
    """A map or product was applied outside the subalgebra it is defined on."""


# ---------------------------------------------------------------- labels

class Cyc:
    """The root of unity zeta**exp with zeta = exp(2 pi i / r)."""

    __slots__ = ("exp", "r")

    def __init__(self, exp: int, r: int):
        if r < 1:
            raise LabelError(f"modulus must be positive, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "exp", exp % r)

    def __setattr__(self, name, value):
        raise AttributeError("labels are immutable")

    def __eq__(self, other):
        return type(other) is Cyc and self.exp == other.exp and self.r == other.r

    def __hash__(self):
        return hash(("cyc", self.exp, self.r))

    def __repr__(self):
        return f"Cyc({self.exp}, {self.r})"

    def _check(self, other):
        if type(other) is not Cyc or other.r != self.r:
            raise LabelError(f"cannot combine {self!r} with {other!r}")

    def __mul__(self, other):
        self._check(other)
        return Cyc(self.exp + other.exp, self.r)

    def inv(self):
        return Cyc(-self.exp, self.r)

    def __truediv__(self, other):
        self._check(other)
        return Cyc(self.exp - other.exp, self.r)

    def is_one(self):
        return self.exp == 0

    def is_zero(self):
        return False

    def one(self):
        return Cyc(0, self.r)

    def one_minus(self):
        raise LabelError("1 - s is not available for roots of unity")

    def value(self) -> complex:
        import cmath
        return cmath.exp(2j * cmath.pi * self.exp / self.r)

    def sort_key(self):
        return (0, self.exp)

    def text(self):
        return str(self.exp)


class Num:
    """An exact complex rational re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("labels are immutable")

    def __eq__(self, other):
        return type(other) is Num and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(("num", self.re, self.im))

    def __repr__(self):
        if self.im:
            return f"Num({self.re}, {self.im})"
        return f"Num({self.re})"

    @staticmethod
    def _check(other):
        if type(other) is not Num:
            raise LabelError(f"cannot combine a complex-rational label with {other!r}")

    def __mul__(self, other):
        self._check(other)
        return Num(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("label 0 has no inverse")
        return Num(self.re / n, -self.im / n)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def is_one(self):
        return self.re == 1 and self.im == 0

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def one(self):
        return Num(1)

    def one_minus(self):
        return Num(1 - self.re, -self.im)

    def value(self):
        """Exact value: a Fraction when real, otherwise a ``QI``."""
        if self.im == 0:
            return self.re
        return QI(self.re, self.im)

    def sort_key(self):
        return (1, self.re, self.im)

    def text(self):
        if self.im:
            return f"{self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i"
        return str(self.re)


Label = Cyc | Num


def unit(r: int | None = None) -> Label:
    """The label 1, in the cyclotomic domain of modulus r or the complex-rational one."""
    return Cyc(0, r) if r else Num(1)


def mu(r: int) -> list[Cyc]:
    return [Cyc(e, r) for e in range(r)]


# ---------------------------------------------------------------- exact Gaussian rationals

class QI:
    """Exact complex rational used by the exact evaluators."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def lift(v):
        if isinstance(v, QI):
            return v
        return QI(v, 0)

    def __add__(self, o):
        if isinstance(o, QI):
            return QI(self.re + o.re, self.im + o.im)
        if isinstance(o, (int, Fraction)):
            return QI(self.re + o, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, QI):
            return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        if isinstance(o, (int, Fraction)):
            return QI(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QI.lift(o)
        n = o.re * o.re + o.im * o.im
        return self * QI(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return QI.lift(o) / self

    def __pow__(self, n: int):
        if n < 0:
            return (QI(1) / self) ** (-n)
        out, base = QI(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, QI):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


# ---------------------------------------------------------------- scalars in Q[c, ...]

class QPoly:
    """Commutative polynomial with rational coefficients in named variables.

    Monomials are sorted tuples of (name, exponent) pairs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def var(name: str) -> "QPoly":
        return QPoly({((name, 1),): Fraction(1)})

    @staticmethod
    def const(v) -> "QPoly":
        v = Fraction(v)
        return QPoly({(): v} if v else {})

    @staticmethod
    def lift(v) -> "QPoly":
        return v if isinstance(v, QPoly) else QPoly.const(v)

    def __add__(self, o):
        if not isinstance(o, (QPoly, int, Fraction)):
            return NotImplemented
        o = QPoly.lift(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return QPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        if not isinstance(o, (QPoly, int, Fraction)):
            return NotImplemented
        return self + (-QPoly.lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            if not o:
                return QPoly()
            return QPoly({m: c * o for m, c in self.terms.items()})
        if not isinstance(o, QPoly):
            return NotImplemented
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return QPoly(t)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return self * (Fraction(1) / o)
        return NotImplemented

    def __pow__(self, n: int):
        out = QPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QPoly.const(o)
        if not isinstance(o, QPoly):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def coeff(self, name: str, k: int) -> "QPoly":
        """Coefficient of name**k, as a polynomial in the remaining variables."""
        t = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == k:
                d.pop(name, None)
                t[tuple(sorted(d.items()))] = c
        return QPoly(t)

    def subs(self, values: dict):
        """Substitute rational values; returns a Fraction if no variable is left."""
        t = {}
        for m, c in self.terms.items():
            rest = []
            for name, e in m:
                if name in values:
                    c = c * Fraction(values[name]) ** e
                else:
                    rest.append((name, e))
            if c:
                key = tuple(rest)
                v = t.get(key, 0) + c
                if v:
                    t[key] = v
                else:
                    t.pop(key, None)
        out = QPoly(t)
        if all(m == () for m in t):
            return t.get((), Fraction(0))
        return out

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return tuple(sorted(d.items()))


def scalar_subs(c, values: dict):
    if isinstance(c, QPoly):
        return c.subs(values)
    return c


# ---------------------------------------------------------------- letters and words

class Letter:
    """Interned letter: x (label None) or y_s."""

    __slots__ = ("label", "order")
    _pool: dict = {}

    def __new__(cls, label=None):
        key = (type(label), label)
        got = cls._pool.get(key)
        if got is None:
            got = object.__new__(cls)
            got.label = label
            got.order = (0,) if label is None else (1,) + label.sort_key()
            cls._pool[key] = got
        return got

    def __reduce__(self):
        return (Letter, (self.label,))

    @property
    def is_x(self):
        return self.label is None

    def __lt__(self, other):
        return self.order < other.order

    def __repr__(self):
        return "x" if self.label is None else f"y[{self.label.text()}]"


X = Letter(None)


def Y(label: Label) -> Letter:
    if isinstance(label, Num) and label.is_zero():
        raise LabelError("y_0 is not a letter: subscripts must be nonzero")
    return Letter(label)


Word = tuple


def weight(w: Word) -> int:
    return len(w)


def depth(w: Word) -> int:
    return sum(1 for a in w if a is not X)


def in_A1(w: Word) -> bool:
    return not w or w[-1] is not X


def in_A0(w: Word) -> bool:
    if not w:
        return True
    if w[-1] is X:
        return False
    return w[0] is X or not w[0].label.is_one()


def z_factors(w: Word) -> tuple[list, int]:
    """Split w into blocks z_{k,s} = x^{k-1} y_s plus a trailing power of x."""
    blocks, k = [], 0
    for a in w:
        k += 1
        if a is not X:
            blocks.append((k, a.label))
            k = 0
    return blocks, k


def from_z(blocks, tail: int = 0) -> Word:
    out = []
    for k, s in blocks:
        out.extend([X] * (k - 1))
        out.append(Y(s))
    out.extend([X] * tail)
    return tuple(out)


def z(k: int, s: Label) -> Word:
    return (X,) * (k - 1) + (Y(s),)


def word_key(w: Word):
    return tuple(a.order for a in w)


def labels_of(w: Word):
    return [a.label for a in w if a is not X]


def word_text(w: Word) -> str:
    return "".join(repr(a) for a in w) or "1"


_ITEM = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*$")


def word_parse(text: str, r: int) -> Word:
    """Parse the index-set grammar ``k1:e1,k2:e2,...`` into a word over mu_r."""
    text = text.strip()
    if not text:
        return ()
    blocks = []
    for item in text.split(","):
        m = _ITEM.match(item)
        if not m:
            raise ValueError(f"malformed index-set item {item!r}")
        k, e = int(m.group(1)), int(m.group(2))
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        blocks.append((k, Cyc(e, r)))
    return from_z(blocks)


def word_print(w: Word) -> str:
    blocks, tail = z_factors(w)
    if tail:
        raise ValueError("only words ending in a y letter have an index-set form")
    if any(type(s) is not Cyc for _, s in blocks):
        raise ValueError("index-set form is defined for root-of-unity labels")
    return ",".join(f"{k}:{s.exp}" for k, s in blocks)


def enumerate_words(weight: int, r: int, constraint: str = "ALL") -> list[Word]:
    """All words of a given weight over mu_r in canonical lexicographic order.

    constraint is one of ALL, A1, A0, A1_LABELS_ONE.
    """
    if weight < 1:
        raise ValueError("weight must be positive")
    if constraint == "A1_LABELS_ONE":
        alphabet = [X, Y(Cyc(0, r))]
    else:
        alphabet = [X] + [Y(s) for s in mu(r)]
    test = {"ALL": None, "A1": in_A1, "A0": in_A0, "A1_LABELS_ONE": in_A1}[constraint]
    out = []
    for w in itertools.product(alphabet, repeat=weight):
        if test is None or test(w):
            out.append(w)
    return out


def admissible_count(weight: int, r: int) -> int:
    if weight == 1:
        return r - 1
    return r * r * (r + 1) ** (weight - 2)


# ---------------------------------------------------------------- polynomials

def _acc(d: dict, w, c):
    v = d.get(w)
    v = c if v is None else v + c
    if v:
        d[w] = v
    else:
        d.pop(w, None)


class NcPoly:
    """Finite linear combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def word(w: Word, c=1) -> "NcPoly":
        return NcPoly({tuple(w): c} if c else {})

    @staticmethod
    def from_terms(items: Iterable) -> "NcPoly":
        d = {}
        for w, c in items:
            _acc(d, tuple(w), c)
        return NcPoly(d)

    @staticmethod
    def lift(p) -> "NcPoly":
        if isinstance(p, NcPoly):
            return p
        if isinstance(p, tuple):
            return NcPoly.word(p)
        if isinstance(p, Letter):
            return NcPoly.word((p,))
        if isinstance(p, (int, Fraction, QPoly)):
            return NcPoly.word((), p)
        raise TypeError(f"cannot make a polynomial from {p!r}")

    def items(self):
        return self.terms.items()

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, w: Word):
        return self.terms.get(tuple(w), 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not other:
            return not self.terms
        if not isinstance(other, NcPoly):
            other = NcPoly.lift(other)
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("NcPoly is not hashable")

    def __add__(self, other):
        other = NcPoly.lift(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            _acc(d, w, c)
        return NcPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = NcPoly.lift(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            _acc(d, w, -c)
        return NcPoly(d)

    def __rsub__(self, other):
        return NcPoly.lift(other) - self

    def scale(self, a) -> "NcPoly":
        if not a:
            return NcPoly()
        d = {}
        for w, c in self.terms.items():
            v = c * a
            if v:
                d[w] = v
        return NcPoly(d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QPoly)):
            return self.scale(other)
        return concat(self, NcPoly.lift(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QPoly)):
            return self.scale(other)
        return concat(NcPoly.lift(other), self)

    def __truediv__(self, a):
        return self.scale(Fraction(1) / a) if not isinstance(a, QPoly) else NotImplemented

    def __pow__(self, n: int):
        out = NcPoly.word(())
        for _ in range(n):
            out = out * self
        return out

    def lmul_word(self, u: Word) -> "NcPoly":
        return NcPoly({u + w: c for w, c in self.terms.items()})

    def rmul_word(self, u: Word) -> "NcPoly":
        return NcPoly({w + u: c for w, c in self.terms.items()})

    def in_A1(self) -> bool:
        return all(in_A1(w) for w in self.terms)

    def in_A0(self) -> bool:
        return all(in_A0(w) for w in self.terms)

    def weights(self) -> set:
        return {len(w) for w in self.terms}

    def truncate(self, W: int) -> "NcPoly":
        return NcPoly({w: c for w, c in self.terms.items() if len(w) <= W})

    def homogeneous(self, n: int) -> "NcPoly":
        return NcPoly({w: c for w, c in self.terms.items() if len(w) == n})

    def map_coeffs(self, f) -> "NcPoly":
        d = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                d[w] = v
        return NcPoly(d)

    def subs(self, values: dict) -> "NcPoly":
        return self.map_coeffs(lambda c: scalar_subs(c, values))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), word_key(t[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{word_text(w)}" for w, c in self.sorted_terms())


def concat(p: NcPoly, q: NcPoly) -> NcPoly:
    """Concatenation product."""
    d = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            _acc(d, u + v, a * b)
    return NcPoly(d)


def add(p, q) -> NcPoly:
    return NcPoly.lift(p) + NcPoly.lift(q)


def scale(a, p) -> NcPoly:
    return NcPoly.lift(p).scale(a)


def px() -> NcPoly:
    return NcPoly.word((X,))


def py(s: Label) -> NcPoly:
    return NcPoly.word((Y(s),))


def check_same_domain(*polys):
    """Raise LabelError when the labels of the given polynomials mix domains."""
    kinds = set()
    for p in polys:
        for w in NcPoly.lift(p).terms:
            for a in w:
                if a is not X:
                    s = a.label
                    kinds.add((type(s), getattr(s, "r", None)))
    if len(kinds) > 1:
        raise LabelError(f"mixed label domains: {sorted(map(str, kinds))}")
