"""Truncated MLV sequences, sequence transforms, Newton series and MPL series.

Exact evaluators work over Q or Q(i) (``Fraction`` / ``QI``) and require
complex-rational (``Num``) labels.  Float evaluators accept any label and are
used for MLV limits and Newton series at non-integer arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.signal import lfilter

from .algebra import (
    X, Y, Cyc, Num, NcPoly, QI, DomainError, LabelError,
    in_A1, in_A0, z_factors,
)
from .linmaps import (
    star, I, I_inv, M, L, iota, phi, d_sh, d_star_inv, x_plus, left_divide,
)
from .hproducts import hprod, DOT_STAR, BAR_STAR, STAR

SH, AST = "SH", "AST"
EQUAL, LEQ = "EQUAL", "LEQ"
NONE, AITKEN = "NONE", "AITKEN"

# float binomial transforms lose all digits past this index
FLOAT_NABLA_LIMIT = 40


# ---------------------------------------------------------------- labels

def exact_value(s):
    if type(s) is Num:
        return s.value()
    if type(s) is Cyc:
        if (2 * s.exp) % s.r == 0:
            return Fraction(1) if s.exp % s.r == 0 else Fraction(-1)
        raise LabelError(f"root of unity {s.text()} has no exact rational value")
    raise LabelError(f"unsupported label {s!r}")


def float_value(s) -> complex:
    v = s.value()
    return complex(v)


def as_num(w: tuple) -> tuple:
    """Relabel a word over {+1, -1} roots of unity with exact Num labels."""
    return tuple(a if a is X else Y(Num(exact_value(a.label))) for a in w)


def as_num_poly(p: NcPoly) -> NcPoly:
    out = NcPoly()
    for w, c in NcPoly.lift(p).items():
        out = out + NcPoly.word(as_num(w), c)
    return out


def _blocks(w):
    if not in_A1(w):
        raise DomainError("truncated sums are defined for words ending in a y letter")
    return z_factors(w)[0]


# ---------------------------------------------------------------- exact truncated sums

def s_table(kind: str, w: tuple, M_: int) -> list:
    """Exact s_w(m) for m = 0..M_ (outer index pinned to m)."""
    blocks = _blocks(w)
    if not blocks:
        return [Fraction(1)] * (M_ + 1)
    vals = [(k, exact_value(s)) for k, s in blocks]
    k, s = vals[-1]
    g = [s ** (j + 1) / Fraction(j + 1) ** k for j in range(M_ + 1)]
    for k, s in reversed(vals[:-1]):
        out, h = [], 0
        if kind == SH:
            for j in range(M_ + 1):
                h = s * h + g[j]
                out.append(h / Fraction(j + 1) ** k)
        elif kind == AST:
            for j in range(M_ + 1):
                h = h + g[j]
                out.append(s ** (j + 1) * h / Fraction(j + 1) ** k)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        g = out
    return g


def partial_sums(a: list) -> list:
    out, acc = [], 0
    for v in a:
        acc = acc + v
        out.append(acc)
    return out


def truncated_table(kind: str, variant: str, w: tuple, M_: int) -> list:
    t = s_table(kind, w, M_)
    if variant == EQUAL:
        return t
    if variant == LEQ:
        # the empty word is the constant 1 in both variants
        return t if not w else partial_sums(t)
    raise ValueError(f"unknown variant {variant!r}")


def s_trunc(kind: str, variant: str, w: tuple, m: int):
    """s_w(m) (EQUAL) or S_w(m) (LEQ), exact."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return truncated_table(kind, variant, w, m)[m]


def poly_table(kind: str, variant: str, p, M_: int) -> list:
    """Linear extension of ``truncated_table`` to polynomials in A^1."""
    out = [0] * (M_ + 1)
    for w, c in NcPoly.lift(p).items():
        t = truncated_table(kind, variant, w, M_)
        out = [o + c * v for o, v in zip(out, t)]
    return out


# ---------------------------------------------------------------- sequences

class Sequence:
    """A sequence a(0), a(1), ... given by a prefix-table rule, memoized."""

    def __init__(self, table, exact=True, name="a"):
        self._table = table
        self.exact = exact
        self.name = name
        self._memo = []

    @staticmethod
    def of(values, exact=True, name="a"):
        values = list(values)

        def table(M_):
            if M_ >= len(values):
                raise IndexError("sequence is only known on a finite range")
            return values[:M_ + 1]

        return Sequence(table, exact, name)

    @staticmethod
    def truncated(kind, variant, w, name=None):
        return Sequence(lambda M_: truncated_table(kind, variant, w, M_), True,
                        name or f"{kind}-{variant}")

    def values(self, M_: int) -> list:
        if len(self._memo) <= M_:
            self._memo = list(self._table(max(M_, 2 * len(self._memo))))
        return self._memo[:M_ + 1]

    def __call__(self, m: int):
        return self.values(m)[m]

    def _derived(self, fn, name):
        return Sequence(lambda M_: fn(self, M_), self.exact, name)

    def sigma(self) -> "Sequence":
        return self._derived(lambda a, M_: partial_sums(a.values(M_)), f"S({self.name})")

    def sigma_inv(self) -> "Sequence":
        def t(a, M_):
            v = a.values(M_)
            return [v[0]] + [v[m] - v[m - 1] for m in range(1, M_ + 1)]
        return self._derived(t, f"Sinv({self.name})")

    def nabla(self) -> "Sequence":
        def t(a, M_):
            if not a.exact and M_ > FLOAT_NABLA_LIMIT:
                raise ValueError(f"float binomial transform refused beyond m={FLOAT_NABLA_LIMIT}")
            return nabla_values(a.values(M_))
        return self._derived(t, f"nabla({self.name})")

    def delta(self, l: int = 1) -> "Sequence":
        def t(a, M_):
            v = a.values(M_ + l)
            for _ in range(l):
                v = [v[m] - v[m + 1] for m in range(len(v) - 1)]
            return v
        return self._derived(t, f"delta^{l}({self.name})")


def nabla_values(v: list) -> list:
    """(nabla a)(m) = sum_i (-1)^i C(m, i) a(i) for every m in range."""
    out = []
    for m in range(len(v)):
        acc, b = 0, 1
        for i in range(m + 1):
            acc = acc + (b if i % 2 == 0 else -b) * v[i]
            b = b * (m - i) // (i + 1)
        out.append(acc)
    return out


def transform(op: str, a: Sequence) -> Sequence:
    table = {"SIGMA": a.sigma, "SIGMA_INV": a.sigma_inv, "NABLA": a.nabla, "DELTA": a.delta}
    return table[op.upper()]()


# ---------------------------------------------------------------- inversion

def star_image(w: tuple) -> NcPoly:
    return star(Num(1))(NcPoly.word(as_num(w)))


def inversion_check(w: tuple, m_max: int) -> bool:
    """nabla s^sh_w equals s^sh_{star(w)} on 0..m_max, exactly."""
    w = as_num(w)
    lhs = nabla_values(s_table(SH, w, m_max))
    rhs = poly_table(SH, EQUAL, star_image(w), m_max)
    return lhs == rhs


def nabla_of_word(kind: str, variant: str, w: tuple) -> NcPoly:
    """Word polynomial u with nabla(a_w) = s^sh_u, for a_w = s_w (EQUAL).

    For LEQ the binomial transform is sigma^{-1} of s^sh_u.
    """
    w = as_num(w)
    if kind == AST:
        w_sh = I()(NcPoly.word(w))
    else:
        w_sh = NcPoly.word(w)
    return star(Num(1))(w_sh)


def nabla_table(kind: str, variant: str, w: tuple, M_: int) -> list:
    """Exact binomial transform of the truncated sequence through the star map."""
    u = nabla_of_word(kind, variant, w)
    b = poly_table(SH, EQUAL, u, M_)
    if variant == EQUAL:
        return b
    return [b[0]] + [b[m] - b[m - 1] for m in range(1, M_ + 1)]


# ---------------------------------------------------------------- c-arrays

def c_array(labels, M_: int) -> list:
    """c_{s_1..s_p}(m) for m = 0..M_."""
    vals = [Fraction(s) if not isinstance(s, QI) else s for s in labels]
    g = [vals[-1] ** j for j in range(M_ + 1)]
    for s in reversed(vals[:-1]):
        out, h = [], 0
        for j in range(M_ + 1):
            h = s * h + g[j]
            out.append(h / (j + 1))
        g = out
    return g


def bivariate_c(s, t, m: int, l: int):
    """c_{s;t}(m, l) by the binomial-weighted nested sum."""
    p = len(s)
    if p != len(t) or p == 0:
        raise ValueError("need equally many s and t labels")
    s = [Fraction(v) for v in s]
    t = [Fraction(v) for v in t]
    # B[i][(a, b)]: contribution of positions i..p with (m_i, l_i) = (a, b)
    B = {(a, b): math.comb(a + b, a) * s[-1] ** a * t[-1] ** b
         for a in range(m + 1) for b in range(l + 1)}
    for i in range(p - 2, -1, -1):
        nxt = {}
        for a in range(m + 1):
            for b in range(l + 1):
                acc = Fraction(0)
                for a2 in range(a + 1):
                    for b2 in range(b + 1):
                        da, db = a - a2, b - b2
                        acc += math.comb(da + db, da) * s[i] ** da * t[i] ** db * B[(a2, b2)]
                nxt[(a, b)] = acc / (a + b + 1)
        B = nxt
    return B[(m, l)] / math.comb(m + l, m)


def diff_identity_check(labels, m_max: int, l_max: int) -> bool:
    """(Delta^l c_s)(m) equals c_{s;1-s}(m, l) on the grid, exactly."""
    seq = Sequence(lambda M_: c_array(labels, M_))
    comp = [1 - Fraction(v) for v in labels]
    for l in range(l_max + 1):
        d = seq.delta(l).values(m_max)
        for m in range(m_max + 1):
            if d[m] != bivariate_c(labels, comp, m, l):
                return False
    return True


def c_recurrence_check(s, t, m: int, l: int) -> bool:
    """(m+l+1)c(m,l) - s_1 m c(m-1,l) - t_1 l c(m,l-1) = c_{tail}(m,l)."""
    lhs = (m + l + 1) * bivariate_c(s, t, m, l)
    if m:
        lhs -= Fraction(s[0]) * m * bivariate_c(s, t, m - 1, l)
    if l:
        lhs -= Fraction(t[0]) * l * bivariate_c(s, t, m, l - 1)
    return lhs == bivariate_c(s[1:], t[1:], m, l)


# ---------------------------------------------------------------- Newton series

def binom_z(z, n_max: int) -> list:
    """C(z, n) for n = 0..n_max; exact for Fraction z."""
    out, b = [], (Fraction(1) if isinstance(z, (int, Fraction)) else 1.0)
    for n in range(n_max + 1):
        out.append(b)
        b = b * (z - n) / (n + 1)
    return out


def newton_partial(coeffs, z) -> list:
    """Partial sums of sum_n (-1)^n coeffs[n] C(z, n)."""
    bz = binom_z(z, len(coeffs) - 1)
    out, acc = [], 0
    for n, (c, b) in enumerate(zip(coeffs, bz)):
        acc = acc + (c * b if n % 2 == 0 else -(c * b))
        out.append(acc)
    return out


def aitken(x0, x1, x2):
    d1, d2 = x1 - x0, x2 - x1
    den = d2 - d1
    if den == 0:
        return x2
    return x2 - d2 * d2 / den


@dataclass
class Estimate:
    estimate: complex
    error_proxy: float
    m_max: int
    accel: str

    def to_json(self) -> dict:
        return {"estimate_re": float(self.estimate.real), "estimate_im": float(self.estimate.imag),
                "error_proxy": float(self.error_proxy), "m_max": self.m_max, "accel": self.accel}


def _accelerate(P, N: int, accel: str, last) -> Estimate:
    """Estimate a limit from partial sums P[0..N-1]."""
    if accel == NONE or N < 16:
        return Estimate(complex(P[N - 1]), float(abs(last)), N, NONE if N < 16 else accel)
    A = aitken(P[N // 4 - 1], P[N // 2 - 1], P[N - 1])
    B = aitken(P[N // 8 - 1], P[N // 4 - 1], P[N // 2 - 1])
    return Estimate(complex(A), float(abs(A - B) + abs(last)), N, accel)


def newton_coefficients_float(kind: str, variant: str, w: tuple, N: int) -> np.ndarray:
    """(nabla a)(n), n < N, for a the truncated sequence of w, in floats."""
    u = nabla_of_word(kind, variant, w)
    b = np.zeros(N, dtype=complex)
    for v, c in u.items():
        b += complex(c) * float_table(SH, v, N)
    if variant == LEQ:
        b = np.concatenate([b[:1], np.diff(b)])
    return b


def newton_eval(w: tuple, z, N: int, kind: str = AST, variant: str = EQUAL,
                accel: str = AITKEN) -> Estimate:
    """Newton series of the truncated sequence of ``w`` at ``z``.

    At a non-negative integer z < N the sum is finite and returned exactly.
    """
    if N < 1:
        raise ValueError("need at least one term")
    if isinstance(z, (int, Fraction)) and z == int(z) and 0 <= z < N:
        coeffs = nabla_table(kind, variant, w, int(z))
        val = newton_partial(coeffs, Fraction(z))[-1]
        return Estimate(complex(val), 0.0, int(z) + 1, "EXACT")
    zf = complex(z)
    coeffs = newton_coefficients_float(kind, variant, w, N)
    bz = np.array(binom_z(zf, N - 1), dtype=complex)
    signs = np.where(np.arange(N) % 2 == 0, 1.0, -1.0)
    terms = signs * coeffs * bz
    P = np.cumsum(terms)
    return _accelerate(P, N, accel, terms[-1])


def newton_exact(w: tuple, z: int, kind: str = AST, variant: str = EQUAL):
    """Exact Newton series value at a non-negative integer."""
    coeffs = nabla_table(kind, variant, w, z)
    return newton_partial(coeffs, Fraction(z))[-1]


def binomial_newton_sides(a: list, l: int, z: int):
    """Both sides of (-1)^l C(z,l) sum_n (-1)^n a(n) C(z,n)
    = sum_{n>=l} (-1)^n C(n,l) (Delta^l a)(n-l) C(z,n), at integer z >= 0."""
    lhs = (-1) ** l * math.comb(z, l) * newton_partial(a[:z + 1], Fraction(z))[-1]
    d = list(a)
    for _ in range(l):
        d = [d[m] - d[m + 1] for m in range(len(d) - 1)]
    rhs = Fraction(0)
    for n in range(l, z + 1):
        rhs += (-1) ** n * math.comb(n, l) * d[n - l] * math.comb(z, n)
    return lhs, rhs


# ---------------------------------------------------------------- MPL series

def mpl_series(w: tuple, strict: bool, Ncap: int) -> list:
    """Coefficients [z^0..z^Ncap] of Li^sh_w (strict) or its non-strict variant."""
    blocks = _blocks(as_num(w))
    if not blocks:
        return [Fraction(1)] + [Fraction(0)] * Ncap
    vals = [(k, exact_value(s)) for k, s in blocks]
    k, s = vals[-1]
    g = [Fraction(0)] + [s ** j / Fraction(j) ** k for j in range(1, Ncap + 1)]
    for k, s in reversed(vals[:-1]):
        out, h = [Fraction(0)], 0
        for j in range(1, Ncap + 1):
            # strict: sum over j' < j; non-strict: j' <= j
            h = s * (h + g[j - 1]) if strict else s * h + g[j]
            out.append(h / Fraction(j) ** k)
        g = out
    return g


def series_poly(p, strict: bool, Ncap: int) -> list:
    out = [0] * (Ncap + 1)
    for w, c in NcPoly.lift(p).items():
        out = [o + c * v for o, v in zip(out, mpl_series(w, strict, Ncap))]
    return out


def series_mul(a: list, b: list) -> list:
    n = len(a)
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] = out[i + j] + x * b[j]
    return out


def compose(a: list, u: list) -> list:
    """sum_m a_m u(z)^m truncated to len(a) terms; u has no constant term."""
    if u[0]:
        raise ValueError("inner series must vanish at 0")
    n = len(a)
    out = [0] * n
    power = [1] + [0] * (n - 1)
    for m in range(n):
        if a[m]:
            out = [o + a[m] * p for o, p in zip(out, power)]
        power = series_mul(power, u)
    return out


def landen_variable(Ncap: int) -> list:
    """z/(z-1) = -sum_{j>=1} z^j."""
    return [0] + [-1] * Ncap


def landen_check(w: tuple, Ncap: int) -> bool:
    """Li_w(z) = Li_{phi iota(w)}(z/(z-1)) as exact series through order Ncap."""
    w = as_num(w)
    lhs = mpl_series(w, True, Ncap)
    image = phi(Num(1))(iota()(NcPoly.word(w)))
    rhs = compose(series_poly(image, True, Ncap), landen_variable(Ncap))
    return lhs == rhs


def landen_bar_check(w: tuple, Ncap: int) -> bool:
    """Non-strict form: Li-bar_w(z) = -Li-bar_{star(w)}(z/(z-1))."""
    w = as_num(w)
    lhs = mpl_series(w, False, Ncap)
    rhs = compose(series_poly(star_image(w), False, Ncap), landen_variable(Ncap))
    return lhs == [-v for v in rhs]


def log_identity_check(s, Ncap: int, variable: list) -> bool:
    """Li_{y_s}(u(z)) = Li_{y_{1-s}}(z) - Li_{y_1}(z) for the given inner series u."""
    s = Num(s)
    lhs = compose(mpl_series((Y(s),), True, Ncap), variable)
    a = mpl_series((Y(s.one_minus()),), True, Ncap) if not s.is_one() else [0] * (Ncap + 1)
    b = mpl_series((Y(Num(1)),), True, Ncap)
    return lhs == [x - y for x, y in zip(a, b)]


def derivative_check(w: tuple, Ncap: int) -> bool:
    """Coefficientwise derivative rule for strict MPL series."""
    w = as_num(w)
    f = mpl_series(w, True, Ncap)
    df = [(m + 1) * f[m + 1] for m in range(Ncap)]
    blocks = _blocks(w)
    k1, s1 = blocks[0]
    if k1 > 1:
        g = mpl_series(w[1:], True, Ncap)
        rhs = [g[m + 1] for m in range(Ncap)]
    else:
        s = exact_value(s1)
        geo = [s ** (j + 1) for j in range(Ncap)]
        if len(blocks) == 1:
            rhs = geo
        else:
            g = mpl_series(w[1:], True, Ncap)[:Ncap]
            rhs = series_mul(geo, g)
    return df == rhs


def sigma_series_check(w: tuple, Ncap: int) -> bool:
    """(1/(1-z)) Li-bar_w(z) has z^{m+1} coefficient S^sh_w(m), and
    (1/(1-z)) Li-bar_w(z/(z-1)) has z^{m+1} coefficient -(nabla Sigma^{-1} s^sh_w)(m)."""
    w = as_num(w)
    geo = [Fraction(1)] * (Ncap + 1)
    bar = mpl_series(w, False, Ncap)
    first = series_mul(geo, bar)
    S = truncated_table(SH, LEQ, w, Ncap)
    if first[1:] != S[:Ncap] or first[0] != 0:
        return False
    second = series_mul(geo, compose(bar, landen_variable(Ncap)))
    seq = Sequence.truncated(SH, EQUAL, w).sigma_inv().nabla()
    target = seq.values(Ncap - 1)
    return second[0] == 0 and second[1:] == [-v for v in target]


# ---------------------------------------------------------------- float tables

def _powers(s, n: int, offset: int) -> np.ndarray:
    """s**(j + offset) for j = 0..n-1, exact phase for roots of unity."""
    j = np.arange(n) + offset
    if type(s) is Cyc:
        return np.exp(2j * np.pi * ((s.exp * j) % s.r) / s.r)
    v = float_value(s)
    if v.imag == 0:
        return np.power(v.real, j.astype(float)).astype(complex)
    return np.power(v, j.astype(float))


def float_table(kind: str, w: tuple, N: int) -> np.ndarray:
    """s_w(m), m = 0..N-1, in complex floats."""
    blocks = _blocks(w)
    if not blocks:
        return np.ones(N, dtype=complex)
    idx = np.arange(1, N + 1, dtype=float)
    k, s = blocks[-1]
    g = _powers(s, N, 1) / idx ** k
    for k, s in reversed(blocks[:-1]):
        if kind == SH:
            h = lfilter([1.0], [1.0, -float_value(s)], g)
            g = h / idx ** k
        else:
            g = _powers(s, N, 1) * np.cumsum(g) / idx ** k
    return g


def strict_terms(w: tuple, N: int) -> np.ndarray:
    """Terms G(j), j = 1..N, of the strict nested sum sum_j G(j) -> L^sh(w)."""
    blocks = _blocks(w)
    idx = np.arange(1, N + 1, dtype=float)
    k, s = blocks[-1]
    g = _powers(s, N, 1) / idx ** k
    for k, s in reversed(blocks[:-1]):
        sv = float_value(s)
        run = lfilter([1.0], [1.0, -sv], g)        # sum_{j' <= j} s^{j-j'} G(j')
        h = np.concatenate([[0.0], sv * run[:-1]])  # sum_{j' < j}
        g = h / idx ** k
    return g


def _check_admissible(w):
    if not in_A0(w):
        raise DomainError("MLV evaluation needs an admissible word")


def mlv_numeric(w: tuple, m_max: int, accel: str = AITKEN) -> Estimate:
    """Strict MLV L^sh(w) from partial sums up to m_max.

    With AITKEN, the truncation is rounded down to a multiple of 8 r so that
    S(M/4), S(M/2), S(M) sit at the same residue modulo the root order.
    """
    _check_admissible(w)
    r = max([a.label.r for a in w if a is not X and type(a.label) is Cyc] or [1])
    N = m_max
    if accel == AITKEN:
        N = (m_max // (8 * r)) * (8 * r)
        if N < 16:
            raise ValueError("m_max too small for acceleration")
    terms = strict_terms(w, N)
    P = np.cumsum(terms)
    return _accelerate(P, N, accel, terms[-1])


def mlv_combination(p, m_max: int, accel: str = AITKEN, cache=None) -> Estimate:
    """Linear combination of MLVs; error proxies add in absolute value."""
    total, err, n, used = 0j, 0.0, 0, accel
    cache = {} if cache is None else cache
    for w, c in NcPoly.lift(p).items():
        if not w:
            e = Estimate(1 + 0j, 0.0, m_max, accel)
        else:
            e = cache.get((w, m_max, accel))
            if e is None:
                e = mlv_numeric(w, m_max, accel)
                cache[(w, m_max, accel)] = e
        total += complex(c) * e.estimate
        err += abs(complex(c)) * e.error_proxy
        n, used = max(n, e.m_max), e.accel
    return Estimate(total, err, n, used)


# ---------------------------------------------------------------- functional equation

def product_identity_polys(s, w: tuple, wp: tuple):
    """Words for s^*_{y_s w}, S^*_{w'} and s^*_{y_s (w bar* w')}."""
    s = Num(s) if not isinstance(s, Num) else s
    ys = (Y(s),)
    left = NcPoly.word(ys + w)
    right = hprod(BAR_STAR, NcPoly.word(w), NcPoly.word(wp)).lmul_word(ys)
    return left, NcPoly.word(wp), right


def product_identity_exact(s, w, wp, m_max: int) -> bool:
    """The functional equation at every integer 0..m_max, exactly."""
    left, mid, right = product_identity_polys(s, as_num(w), as_num(wp))
    a = poly_table(AST, EQUAL, left, m_max)
    b = poly_table(AST, LEQ, mid, m_max)
    c = poly_table(AST, EQUAL, right, m_max)
    return all(x * y == v for x, y, v in zip(a, b, c))


def newton_poly(p, kind, variant, z, N, accel=AITKEN) -> Estimate:
    total, err = 0j, 0.0
    for w, c in NcPoly.lift(p).items():
        e = newton_eval(w, z, N, kind, variant, accel)
        total += complex(c) * e.estimate
        err += abs(complex(c)) * e.error_proxy
    return Estimate(total, err, N, accel)


def product_identity_numeric(s, w, wp, z, N: int, accel=AITKEN):
    """(lhs, rhs, tolerance) of the functional equation at a real z > -2."""
    left, mid, right = product_identity_polys(s, as_num(w), as_num(wp))
    a = newton_poly(left, AST, EQUAL, z, N, accel)
    b = newton_poly(mid, AST, LEQ, z, N, accel)
    c = newton_poly(right, AST, EQUAL, z, N, accel)
    lhs = a.estimate * b.estimate
    tol = abs(a.estimate) * b.error_proxy + abs(b.estimate) * a.error_proxy + c.error_proxy
    return lhs, c.estimate, tol


# ---------------------------------------------------------------- Taylor coefficient at -1 (j = 0)

def _lx_inv(p):
    return left_divide(NcPoly.lift(p), NcPoly.word((X,)))


def taylor_zero_sides(w: tuple, s, M_: int):
    """Termwise sides of the j = 0 identity at z = -1, for n = 0..M_.

    Left: (nabla a)(n) with a = s^*_{I^{-1} iota L_{y_s}(w)}, via the star map.
    Right: -s^*_{L_x^{-1} d_*^{-1}(I^{-1} L_{x+d(s)y_s} phi d_sh(w) dot* y_1)}(n).
    """
    w = as_num(w)
    s = Num(s) if not isinstance(s, Num) else s
    one = Num(1)
    lys_w = NcPoly.word((Y(s),) + w)
    seq_word = I_inv()(iota()(lys_w))
    left = poly_table(SH, EQUAL, star(one)(I()(seq_word)), M_)
    inner = I_inv()(L(x_plus(s))(phi(one)(d_sh()(NcPoly.word(w)))))
    prod = hprod(DOT_STAR, inner, NcPoly.word((Y(one),)))
    u = _lx_inv(d_star_inv()(prod))
    right = [-v for v in poly_table(AST, EQUAL, u, M_)]
    return seq_word, left, right


def taylor_zero_direct(seq_word: NcPoly, M_: int) -> list:
    """Binomial transform of s^*_{seq_word} by direct alternating sums."""
    return nabla_values(poly_table(AST, EQUAL, seq_word, M_))


# ---------------------------------------------------------------- quadratic relation (smoke)

def _y1_power(one, k: int) -> NcPoly:
    return NcPoly.word((Y(one),) * k)


def quadratic_relation_polys(w, wp, s, m: int):
    """Left-hand factor pairs and right-hand side of the quadratic MLV relation.

    ``w`` over mu_r, ``wp`` over {1}; both polynomials without constant term.
    """
    w, wp = NcPoly.lift(w), NcPoly.lift(wp)
    one = s.one()
    head = x_plus(s)

    def first(p, k):
        inner = I_inv()(L(head)(phi(one)(I()(M(s)(p)))))
        return _lx_inv(I()(hprod(DOT_STAR, inner, _y1_power(one, k))))

    def second(p, l):
        lx = NcPoly.word((X,))
        return _lx_inv(hprod(DOT_STAR, lx * phi(one)(p), _y1_power(one, l)))

    pairs = [(first(w, k + 1), second(wp, m - k)) for k in range(m)]
    rhs = first(hprod(STAR, w, wp), m + 1)
    return pairs, rhs


def quadratic_relation_numeric(w, wp, s, m: int, m_max: int):
    pairs, rhs = quadratic_relation_polys(w, wp, s, m)
    cache = {}
    lhs, tol = 0j, 0.0
    for a, b in pairs:
        ea = mlv_combination(a, m_max, cache=cache)
        eb = mlv_combination(b, m_max, cache=cache)
        lhs += ea.estimate * eb.estimate
        tol += abs(ea.estimate) * eb.error_proxy + abs(eb.estimate) * ea.error_proxy
    er = mlv_combination(rhs, m_max, cache=cache)
    return lhs, er.estimate, tol + er.error_proxy


# ---------------------------------------------------------------- decay

def decay_profile(labels, l: int, m_max: int) -> np.ndarray:
    """m^{l+1/2} |(Delta^l s^sh_{y_{s_1}..y_{s_p}})(m)| for m = 1..m_max."""
    w = tuple(Y(Num(s)) if not isinstance(s, (Num, Cyc)) else Y(s) for s in labels)
    v = float_table(SH, w, m_max + l + 1)
    for _ in range(l):
        v = v[:-1] - v[1:]
    m = np.arange(len(v), dtype=float)
    return (m ** (l + 0.5) * np.abs(v))[1:m_max + 1]
