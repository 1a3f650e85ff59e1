"""Independent reference implementations used to produce frozen expected values.

Everything here works on plain tuples: a word is a tuple of letters, where a
letter is the string "x" or a label (Fraction) standing for y_label.  Nothing
is imported from the package under test.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

XL = "x"


# ---------------------------------------------------------------- words as blocks

def blocks(w):
    """Index blocks (k, s) of a word ending in a y letter."""
    out, k = [], 0
    for a in w:
        k += 1
        if a != XL:
            out.append((k, Fraction(a)))
            k = 0
    if k:
        raise ValueError("word must end in a y letter")
    return out


def unblocks(bl):
    out = []
    for k, s in bl:
        out += [XL] * (k - 1) + [s]
    return tuple(out)


# ---------------------------------------------------------------- nested sums

def nested(kind, w, m, pinned):
    """s_w(m) (pinned) or S_w(m) straight from the defining multiple sum.

    kind 'sh': s1^(m1-m2) ... sn^(mn+1); kind 'ast': s1^(m1+1) ... sn^(mn+1).
    """
    bl = blocks(w)
    n = len(bl)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    tops = [m] if pinned else range(m + 1)
    for top in tops:
        for rest in itertools.product(range(top + 1), repeat=n - 1):
            ms = (top,) + rest
            if any(ms[i] < ms[i + 1] for i in range(n - 1)):
                continue
            t = Fraction(1)
            for i, (k, s) in enumerate(bl):
                if kind == "sh":
                    e = ms[i] - ms[i + 1] if i < n - 1 else ms[i] + 1
                else:
                    e = ms[i] + 1
                t *= s ** e / Fraction(ms[i] + 1) ** k
            total += t
    return total


def li_coeffs(w, N, strict=True):
    """Coefficients z^0..z^N of the shuffle-type polylogarithm of w, by brute force."""
    bl = blocks(w)
    n = len(bl)
    out = [Fraction(0)] * (N + 1)
    if n == 0:
        out[0] = Fraction(1)
        return out
    for ms in itertools.product(range(1, N + 1), repeat=n):
        ok = all((ms[i] > ms[i + 1]) if strict else (ms[i] >= ms[i + 1]) for i in range(n - 1))
        if not ok:
            continue
        t = Fraction(1)
        for i, (k, s) in enumerate(bl):
            e = ms[i] - ms[i + 1] if i < n - 1 else ms[i]
            t *= s ** e / Fraction(ms[i]) ** k
        out[ms[0]] += t
    return out


def li_poly(p, N, strict=True):
    out = [Fraction(0)] * (N + 1)
    for w, c in p.items():
        out = [o + c * v for o, v in zip(out, li_coeffs(w, N, strict))]
    return out


def substitute_landen(a, N):
    """Coefficients of sum_m a_m (z/(z-1))^m, using
    (z/(z-1))^m = (-1)^m sum_j C(m+j-1, j) z^(m+j)."""
    out = [Fraction(0)] * (N + 1)
    out[0] = a[0]
    for n in range(1, N + 1):
        out[n] = sum(a[m] * (-1) ** m * math.comb(n - 1, n - m) for m in range(1, n + 1))
    return out


# ---------------------------------------------------------------- sequences

def nabla(a):
    return [sum((-1) ** i * math.comb(m, i) * a[i] for i in range(m + 1)) for m in range(len(a))]


def delta_l(a, l):
    """(Delta^l a)(m) = sum_j (-1)^j C(l, j) a(m + j)."""
    return [sum((-1) ** j * math.comb(l, j) * a[m + j] for j in range(l + 1))
            for m in range(len(a) - l)]


def c_single(labels, m):
    p = len(labels)
    total = Fraction(0)
    for rest in itertools.product(range(m + 1), repeat=p - 1):
        ms = (m,) + rest
        if any(ms[i] < ms[i + 1] for i in range(p - 1)):
            continue
        t = Fraction(1)
        for i in range(p - 1):
            t *= Fraction(labels[i]) ** (ms[i] - ms[i + 1]) / (ms[i] + 1)
        total += t * Fraction(labels[-1]) ** ms[-1]
    return total


def c_bivariate(s, t, m, l):
    p = len(s)
    total = Fraction(0)
    for mr in itertools.product(range(m + 1), repeat=p - 1):
        ms = (m,) + mr
        if any(ms[i] < ms[i + 1] for i in range(p - 1)):
            continue
        for lr in itertools.product(range(l + 1), repeat=p - 1):
            ls = (l,) + lr
            if any(ls[i] < ls[i + 1] for i in range(p - 1)):
                continue
            v = Fraction(math.comb(ms[-1] + ls[-1], ms[-1]))
            v *= Fraction(s[-1]) ** ms[-1] * Fraction(t[-1]) ** ls[-1]
            for i in range(p - 1):
                dm, dl = ms[i] - ms[i + 1], ls[i] - ls[i + 1]
                v *= math.comb(dm + dl, dm) * Fraction(s[i]) ** dm * Fraction(t[i]) ** dl
                v /= ms[i] + ls[i] + 1
            total += v
    return total / math.comb(m + l, m)


# ---------------------------------------------------------------- quasi-shuffles

def quasi_shuffle(u, v, sign=1, first_merge=False):
    """Harmonic product of two words as lattice paths over their index blocks.

    Each path step takes a block of u, a block of v, or merges one of each
    (z_{k,s}, z_{l,t} -> z_{k+l,st}) with weight ``sign``.  ``first_merge``
    keeps only paths starting with a merge.
    """
    a, b = blocks(u), blocks(v)
    out = {}

    def walk(i, j, acc, coeff, first):
        if i == len(a) and j == len(b):
            w = unblocks(acc)
            out[w] = out.get(w, 0) + coeff
            return
        if not (first and first_merge):
            if i < len(a):
                walk(i + 1, j, acc + [a[i]], coeff, False)
            if j < len(b):
                walk(i, j + 1, acc + [b[j]], coeff, False)
        if i < len(a) and j < len(b):
            k, s = a[i]
            l, t = b[j]
            walk(i + 1, j + 1, acc + [(k + l, s * t)], coeff * sign, False)

    if not a or not b:
        return {tuple(u) + tuple(v): 1}
    walk(0, 0, [], 1, True)
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------- derivations on words

def _padd(d, w, c):
    d[w] = d.get(w, 0) + c
    if d[w] == 0:
        del d[w]


def apply_derivation(letter_img, p):
    out = {}
    for w, c in p.items():
        for i, a in enumerate(w):
            for v, e in letter_img(a).items():
                _padd(out, w[:i] + v + w[i + 1:], c * e)
    return out


def theta_img(one):
    def img(a):
        d = {}
        for v in ((a, XL), (a, one), (XL, a), (one, a)):
            _padd(d, v, Fraction(1, 2))
        return d
    return img


def d1_img(one):
    def img(a):
        if a == XL:
            return {(XL, one): 1}
        d = {}
        _padd(d, (XL, a), -1)
        _padd(d, (a, one), 1)
        _padd(d, (a, a), -1)
        return d
    return img


def partial_n_word(n, p, one=Fraction(1)):
    """d_n = ad(theta)^{n-1}(d_1)/(n-1)!, expanded as
    sum_k (-1)^k C(n-1,k) theta^{n-1-k} d_1 theta^k on polynomials."""
    th, d1 = theta_img(one), d1_img(one)
    out = {}
    for k in range(n):
        q = dict(p)
        for _ in range(k):
            q = apply_derivation(th, q)
        q = apply_derivation(d1, q)
        for _ in range(n - 1 - k):
            q = apply_derivation(th, q)
        for w, c in q.items():
            _padd(out, w, Fraction((-1) ** k * math.comb(n - 1, k), math.factorial(n - 1)) * c)
    return out


# ---------------------------------------------------------------- numerics

ZETA2 = math.pi ** 2 / 6
ZETA3 = 1.2020569031595942854
