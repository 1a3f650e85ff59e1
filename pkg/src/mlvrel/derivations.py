"""Derivation operators: theta, d_n, their c-deformed variants, and the
weight-truncated automorphisms Delta-hat and Phi.

Two evaluation routes exist for the c-deformed operators.  The generic route
builds ``LinearMap`` commutators with scalars in Q[c] (or any value of c);
it is used for identity checks.  ``hat_graded`` computes the same operators
with integer arithmetic split by powers of c, which is what relation
generation uses.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import X, Y, NcPoly, QPoly, DomainError, _acc
from .linmaps import LinearMap, L, derivation, commutator, identity
from .hproducts import hprod, STAR

C = QPoly.var("c")
C2 = QPoly.var("c'")
HALF = Fraction(1, 2)


def z_poly(one) -> NcPoly:
    return NcPoly({(X,): 1, (Y(one),): 1})


def _theta_letter(a, one):
    y1 = Y(one)
    return NcPoly({(a, X): HALF, (a, y1): HALF}) + NcPoly({(X, a): HALF, (y1, a): HALF})


def _d1_letter(a, one):
    y1 = Y(one)
    if a is X:
        return NcPoly.word((X, y1))
    out = {}
    _acc(out, (X, a), -1)
    _acc(out, (a, y1), 1)
    _acc(out, (a, a), -1)
    return NcPoly(out)


@lru_cache(maxsize=None)
def theta(one) -> LinearMap:
    return derivation(lambda a: _theta_letter(a, one), "theta")


@lru_cache(maxsize=None)
def partial_1(one) -> LinearMap:
    return derivation(lambda a: _d1_letter(a, one), "d1")


def H() -> LinearMap:
    """Degree derivation w -> weight(w) w."""
    return LinearMap(lambda w: NcPoly.word(w, len(w)), "H", memo=False)


@lru_cache(maxsize=None)
def partial_n(n: int, one) -> LinearMap:
    """ad(theta)^{n-1}(d_1)/(n-1)!, computed on letters and extended by Leibniz."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return partial_1(one)
    prev = partial_n(n - 1, one)
    th = theta(one)
    k = Fraction(1, n - 1)

    def letter(a):
        w = (a,)
        return (th(prev.on_word(w)) - prev(th.on_word(w))).scale(k)

    return derivation(letter, f"d{n}")


# ---------------------------------------------------------------- c-deformed family

@lru_cache(maxsize=None)
def theta_hat(c, one) -> LinearMap:
    """theta-hat^(c), evaluated with the first-letter split."""
    th, d1 = theta(one), partial_1(one)
    m = None

    def rule(w):
        if len(w) <= 1:
            return th.on_word(w)
        a, rest = w[:1], w[1:]
        out = th.on_word(a).rmul_word(rest) + m.on_word(rest).lmul_word(a)
        if c:
            out = out + d1.on_word(rest).lmul_word(a).scale(c)
        return out

    m = LinearMap(rule, "theta_hat")
    return m


@lru_cache(maxsize=None)
def theta_c(c, one) -> LinearMap:
    """theta^(c), evaluated with the first-letter split."""
    th, d1 = theta(one), partial_1(one)
    m = None

    def rule(w):
        if len(w) <= 1:
            return th.on_word(w)
        a, rest = w[:1], w[1:]
        out = th.on_word(a).rmul_word(rest) + m.on_word(rest).lmul_word(a)
        if c:
            out = out + d1.on_word(a).rmul_word(rest).scale(c * len(rest))
        return out

    m = LinearMap(rule, "theta_c")
    return m


def theta_hat_split(c, one, w, i) -> NcPoly:
    """The defining rule of theta-hat^(c) evaluated at the split w = w[:i] w[i:]."""
    u, v = w[:i], w[i:]
    t = theta_hat(c, one)
    out = t.on_word(u).rmul_word(v) + t.on_word(v).lmul_word(u)
    if c and u:
        out = out + partial_1(one).on_word(v).lmul_word(u).scale(c * len(u))
    return out


def theta_c_split(c, one, w, i) -> NcPoly:
    u, v = w[:i], w[i:]
    t = theta_c(c, one)
    out = t.on_word(u).rmul_word(v) + t.on_word(v).lmul_word(u)
    if c and v:
        out = out + partial_1(one).on_word(u).rmul_word(v).scale(c * len(v))
    return out


@lru_cache(maxsize=None)
def partial_hat(n: int, c, one) -> LinearMap:
    """d-hat_n^(c) = ad(theta-hat^(c))^{n-1}(d_1)/(n-1)!."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return partial_1(one)
    prev = partial_hat(n - 1, c, one)
    return commutator(theta_hat(c, one), prev).scaled(Fraction(1, n - 1))


@lru_cache(maxsize=None)
def partial_c(n: int, c, one) -> LinearMap:
    """d_n^(c) = ad(theta^(c))^{n-1}(d_1)/(n-1)!."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return partial_1(one)
    prev = partial_c(n - 1, c, one)
    return commutator(theta_c(c, one), prev).scaled(Fraction(1, n - 1))


def partial_hat_n_c(n, p, one, c=C) -> NcPoly:
    return partial_hat(n, c, one)(p)


def partial_n_c(n, p, one, c=C) -> NcPoly:
    return partial_c(n, c, one)(p)


def theta_hat_c(p, one, c=C) -> NcPoly:
    return theta_hat(c, one)(p)


def c_degree(p: NcPoly, name="c") -> int:
    return max((v.degree(name) if isinstance(v, QPoly) else 0 for _, v in p.items()), default=0)


def c_coeff(p: NcPoly, j: int, name="c") -> NcPoly:
    """Coefficient of c^j, with rational scalars."""
    d = {}
    for w, v in p.items():
        if isinstance(v, QPoly):
            v = v.coeff(name, j).subs({})
        elif j:
            v = 0
        if v:
            d[w] = v
    return NcPoly(d)


# ---------------------------------------------------------------- integer graded route

class _Graded:
    """Integer images of E_n = ad(2 theta-hat)^{n-1}(d_1), split by powers of c.

    2 theta-hat^(c) = T0 + c T1 with T0 = 2 theta and T1(w) the sum over
    positions j (counted from 0) of 2 j w_{<j} d_1(w_j) w_{>j}.
    """

    def __init__(self, one):
        self.one = one
        self.t0, self.t1, self.d1 = {}, {}, {}
        self.e = {}

    def _letter_d1(self, a):
        return {w: int(v) for w, v in _d1_letter(a, self.one).items()}

    def _letter_t0(self, a):
        return {w: int(2 * v) for w, v in _theta_letter(a, self.one).items()}

    def _apply_positional(self, w, letter_img, weight_fn, memo):
        got = memo.get(w)
        if got is not None:
            return got
        out = {}
        for j, a in enumerate(w):
            f = weight_fn(j)
            if not f:
                continue
            pre, post = w[:j], w[j + 1:]
            for v, c in letter_img(a).items():
                _acc(out, pre + v + post, f * c)
        memo[w] = out
        return out

    def T0(self, w):
        return self._apply_positional(w, self._letter_t0, lambda j: 1, self.t0)

    def T1(self, w):
        return self._apply_positional(w, self._letter_d1, lambda j: 2 * j, self.t1)

    def D1(self, w):
        return self._apply_positional(w, self._letter_d1, lambda j: 1, self.d1)

    @staticmethod
    def _apply(op, poly, out, sign=1):
        for w, c in poly.items():
            for v, a in op(w).items():
                _acc(out, v, sign * a * c)

    def E(self, n, j, w):
        """Word image of the c^j part of E_n."""
        if j < 0 or j > n - 1:
            return {}
        if n == 1:
            return self.D1(w)
        key = (n, j, w)
        got = self.e.get(key)
        if got is not None:
            return got
        out = {}
        self._apply(self.T0, self.E(n - 1, j, w), out)
        if j:
            self._apply(self.T1, self.E(n - 1, j - 1, w), out)
        for v, a in self.T0(w).items():
            for u, b in self.E(n - 1, j, v).items():
                _acc(out, u, -a * b)
        if j:
            for v, a in self.T1(w).items():
                for u, b in self.E(n - 1, j - 1, v).items():
                    _acc(out, u, -a * b)
        self.e[key] = out
        return out


@lru_cache(maxsize=None)
def _graded(one) -> _Graded:
    return _Graded(one)


def hat_graded(n: int, w: tuple, one) -> list[NcPoly]:
    """[coefficient of c^j in d-hat_n^(c)(w) for j = 0..n-1], rational scalars."""
    g = _graded(one)
    scale = Fraction(1, 2 ** (n - 1) * factorial(n - 1))
    return [NcPoly({v: a * scale for v, a in g.E(n, j, w).items()}) for j in range(n)]


def clear_graded():
    _graded.cache_clear()


# ---------------------------------------------------------------- psi-hat and phi-hat

def _letter_combination(u) -> NcPoly:
    u = NcPoly.lift(u)
    if any(len(w) != 1 for w in u.terms):
        raise DomainError("u must be a linear combination of letters")
    return u


def nu(u) -> Fraction:
    """nu(x) = 0, nu(y_s) = 1, extended linearly."""
    return sum((c for w, c in _letter_combination(u).items() if w[0] is not X), Fraction(0))


@lru_cache(maxsize=None)
def _psi_hat_cached(n, c, one, key):
    u = NcPoly.from_terms(key)
    if n == 1:
        return L(partial_1(one)(u))
    prev = _psi_hat_cached(n - 1, c, one, key)
    lz = L(z_poly(one))
    th = theta_hat(c, one)
    out = commutator(th, prev) - (lz @ prev + prev @ lz).scaled(HALF)
    if c:
        out = out - (prev @ partial_1(one)).scaled(c)
    return out.scaled(Fraction(1, n - 1))


def psi_hat(n: int, c, one, u) -> LinearMap:
    u = _letter_combination(u)
    key = tuple(sorted(u.items(), key=lambda t: t[0][0].order))
    return _psi_hat_cached(n, c, one, key)


@lru_cache(maxsize=None)
def phi_hat(n: int, c, one) -> LinearMap:
    if n == 0:
        return identity()
    prev = phi_hat(n - 1, c, one)
    lz = L(z_poly(one))
    out = commutator(theta_hat(c, one), prev) + (lz @ prev + prev @ lz).scaled(HALF)
    if c:
        out = out + (partial_1(one) @ prev).scaled(c)
    return out.scaled(Fraction(1, n))


def psi_hat_factored(n: int, c, one, u) -> LinearMap:
    """The factorized form of psi-hat_n^(c)(u) through phi-hat_{n-1}^(c)."""
    u = _letter_combination(u)
    v = nu(u)
    y1 = NcPoly.word((Y(one),))
    ph = phi_hat(n - 1, c, one)
    first = L(px_poly()) @ ph @ L(y1 + (u - y1).scale(v))
    out = first
    if v:
        out = out + (L(u) @ ph @ L(u - y1)).scaled(v)
    sign = 1 if v == 0 else -1 if v == 1 else None
    if sign is None:
        raise DomainError("nu(u) must be 0 or 1")
    return out.scaled(sign)


def px_poly():
    return NcPoly.word((X,))


# ---------------------------------------------------------------- truncated automorphisms

def delta_hat_truncated(W: int, p, one) -> NcPoly:
    """exp(sum_n d_n / n) applied to p, keeping terms of weight <= W."""
    p = NcPoly.lift(p)
    if p and max(p.weights()) > W:
        raise DomainError("truncation weight below the input weight")
    lo = min(p.weights(), default=W)
    ops = [(partial_n(n, one), Fraction(1, n)) for n in range(1, W - lo + 1)]
    acc, term = p, p
    for k in range(1, W - lo + 1):
        nxt = NcPoly()
        for w, c in term.items():
            for n, (op, f) in enumerate(ops, start=1):
                if len(w) + n > W:
                    break
                nxt = nxt + op.on_word(w).scale(c * f)
        term = nxt.scale(Fraction(1, k))
        if not term:
            break
        acc = acc + term
    return acc


def geometric(u, W: int) -> NcPoly:
    """sum_{j} u^j truncated at weight W, for u without constant term."""
    u = NcPoly.lift(u)
    out, term = NcPoly.word(()), NcPoly.word(())
    while True:
        term = (term * u).truncate(W)
        if not term:
            return out
        out = out + term


def phi_big_truncated(W: int, p, one) -> NcPoly:
    """(1 + y_1)((1/(1 + y_1)) * p) truncated at weight W; needs p in A^1."""
    p = NcPoly.lift(p)
    if p and max(p.weights()) > W:
        raise DomainError("truncation weight below the input weight")
    y1 = NcPoly.word((Y(one),))
    g = geometric(-y1, W)
    return ((NcPoly.word(()) + y1) * hprod(STAR, g, p)).truncate(W)


def phi_big_auto_truncated(W: int, p, one) -> NcPoly:
    """Phi through its letter images x -> x, y_s -> (1 - x) y_s (1/(1 + y_1))."""
    p = NcPoly.lift(p)
    y1 = NcPoly.word((Y(one),))
    g = geometric(-y1, W)
    one_minus_x = NcPoly.word(()) - NcPoly.word((X,))
    cache = {}

    def img(a):
        if a is X:
            return NcPoly.word((X,))
        got = cache.get(a)
        if got is None:
            got = (one_minus_x * NcPoly.word((a,)) * g).truncate(W)
            cache[a] = got
        return got

    out = NcPoly()
    for w, c in p.items():
        t = NcPoly.word(())
        for a in w:
            t = (t * img(a)).truncate(W)
        out = out + t.scale(c)
    return out
