"""Seeded randomized identity suites.

Each suite is a list of properties; a property draws one random case from a
``random.Random`` and returns True or False.  ``run`` executes K cases per
property and tallies the outcomes.  The same functions back ``mlvrel verify``
and the test suite.

A property flagged ``printed_false`` checks a statement in the form it is
usually written although that form does not hold; the tally is expected to be
all failures and the run only counts as a mismatch if one of them passes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import X, Y, Num, NcPoly, in_A0, in_A1, mu, unit
from .linmaps import (
    phi, iota, alpha, gamma, star, d_sh, d_sh_inv, I, I_inv, M, N,
    d_star, d_star_inv, F, sigma, x_plus, left_divide, delta,
)
from .hproducts import KINDS, STAR, BAR_STAR, DOT_STAR, DOT_BAR_STAR, hprod
from .derivations import (
    C, C2, theta, partial_1, partial_n, theta_hat, theta_c, theta_hat_split,
    theta_c_split, partial_hat, partial_c, c_degree, c_coeff, hat_graded,
    psi_hat, phi_hat, psi_hat_factored, delta_hat_truncated, geometric,
    phi_big_truncated, phi_big_auto_truncated, z_poly,
)
from .relations import integer_rows, bareiss_rank
from . import seqnum as sq

SUITES = ("inversion", "landen", "products", "homs", "commute", "tower", "newton")


# ---------------------------------------------------------------- random data

def unit_label(rng) -> Fraction:
    """Rational in (0, 1]."""
    q = rng.randint(1, 6)
    return Fraction(rng.randint(1, q), q)


def rational_label(rng, exclude_one=False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if v and not (exclude_one and v == 1):
            return v


def num_word(rng, weight, label=unit_label, a1=True, x_prob=0.35) -> tuple:
    out = []
    for i in range(weight):
        last = i == weight - 1
        if (a1 and last) or rng.random() >= x_prob:
            out.append(Y(Num(label(rng))))
        else:
            out.append(X)
    return tuple(out)


def cyc_word(rng, r, weight, a1=False, labels=None, x_prob=0.35) -> tuple:
    labels = mu(r) if labels is None else labels
    out = []
    for i in range(weight):
        last = i == weight - 1
        if (a1 and last) or rng.random() >= x_prob:
            out.append(Y(rng.choice(labels)))
        else:
            out.append(X)
    return tuple(out)


def cyc_admissible(rng, r, weight) -> tuple:
    while True:
        w = cyc_word(rng, r, weight, a1=True)
        if in_A0(w):
            return w


def word(w) -> NcPoly:
    return NcPoly.word(w)


def _poly(*pairs) -> NcPoly:
    d = {}
    for w, c in pairs:
        d[w] = d.get(w, 0) + c
    return NcPoly({w: c for w, c in d.items() if c})


def letters_poly(rng, one, labels) -> NcPoly:
    """Random nonzero element of Q x + sum_s Q y_s."""
    while True:
        pairs = [((X,), rng.randint(-2, 2))]
        for s in rng.sample(labels, min(len(labels), rng.randint(1, 2))):
            pairs.append(((Y(s),), rng.randint(-2, 2)))
        u = _poly(*pairs)
        if u:
            return u


def _commutator_on(a, b, w) -> NcPoly:
    return a(b.on_word(w)) - b(a.on_word(w))


# ---------------------------------------------------------------- suite plumbing

@dataclass
class Tally:
    suite: str
    name: str
    passed: int = 0
    total: int = 0
    printed_false: bool = False
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        if self.printed_false:
            return self.passed == 0
        return self.passed == self.total

    def line(self) -> str:
        tag = "printed form, expected to fail" if self.printed_false else "exact"
        verdict = "ok" if self.ok else "MISMATCH"
        out = f"{self.suite}/{self.name}: {self.passed}/{self.total} ({tag}) {verdict}"
        if not self.ok and self.first_failure:
            out += f" first failing case: {self.first_failure}"
        return out


@dataclass
class Report:
    tallies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.tallies)

    def lines(self) -> list[str]:
        return [t.line() for t in self.tallies]

    def get(self, name: str) -> Tally:
        for t in self.tallies:
            if t.name == name or f"{t.suite}/{t.name}" == name:
                return t
        raise KeyError(name)


PROPERTIES: dict = {s: [] for s in SUITES}


def prop(suite, printed_false=False):
    def deco(fn):
        PROPERTIES[suite].append((fn.__name__, fn, printed_false))
        return fn
    return deco


def run(suites, cases: int, seed: int, only=None) -> Report:
    """Run ``cases`` random cases of every property of the listed suites."""
    if cases < 1:
        raise ValueError("cases must be positive")
    rep = Report()
    for suite in suites:
        for name, fn, printed_false in PROPERTIES[suite]:
            if only and name not in only:
                continue
            t = Tally(suite, name, printed_false=printed_false)
            rng = random.Random(f"{seed}:{suite}:{name}")
            for i in range(cases):
                ok = bool(fn(rng))
                t.total += 1
                t.passed += ok
                if ok == printed_false and t.first_failure is None:
                    t.first_failure = f"case {i}"
            rep.tallies.append(t)
    return rep


# ---------------------------------------------------------------- inversion

@prop("inversion")
def inversion_theorem(rng):
    w = num_word(rng, rng.randint(1, 5))
    return sq.inversion_check(w, 15)


@prop("inversion")
def sequence_operators(rng):
    vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(26)]
    a = sq.Sequence.of(vals)
    M_ = 25
    base = a.values(M_)
    sn = a.sigma().nabla()
    return (a.sigma().sigma_inv().values(M_) == base
            and a.sigma_inv().sigma().values(M_) == base
            and a.nabla().nabla().values(M_) == base
            and sn.sigma().nabla().values(M_) == base)


def _brute_S(kind, w, m):
    """S_w(m) straight from the nested-sum definition."""
    blocks = sq._blocks(sq.as_num(w))
    vals = [(k, sq.exact_value(s)) for k, s in blocks]
    n = len(vals)
    total = Fraction(0)
    for idx in itertools.combinations_with_replacement(range(m + 1), n):
        ms = idx[::-1]
        t = Fraction(1)
        for i, (k, s) in enumerate(vals):
            if kind == sq.SH:
                e = ms[i] - ms[i + 1] if i + 1 < n else ms[i] + 1
            else:
                e = ms[i] + 1
            t *= s ** e / Fraction(ms[i] + 1) ** k
        total += t
    return total


@prop("inversion")
def partial_sum_relation(rng):
    w = num_word(rng, rng.randint(1, 4), x_prob=0.4)
    while sum(a is not X for a in w) > 3:
        w = num_word(rng, rng.randint(1, 4), x_prob=0.4)
    m = rng.randint(0, 40 if sum(a is not X for a in w) <= 2 else 18)
    kind = rng.choice((sq.SH, sq.AST))
    return sq.s_trunc(kind, sq.LEQ, w, m) == _brute_S(kind, w, m)


@prop("inversion")
def harmonic_via_iwasawa(rng):
    w = num_word(rng, rng.randint(1, 5))
    M_ = rng.randint(0, 40)
    return sq.s_table(sq.AST, w, M_) == sq.poly_table(sq.SH, sq.EQUAL, I()(word(w)), M_)


@prop("inversion")
def involutions(rng):
    one = Num(1)
    w = num_word(rng, rng.randint(1, 8), label=rational_label, a1=False)
    p = word(w)
    ok = phi(one)(phi(one)(p)) == p and iota()(iota()(p)) == p
    ok = ok and alpha(one)(alpha(one)(p)) == p
    ok = ok and phi(one)(iota()(p)) == iota()(phi(one)(p))
    ok = ok and alpha(one)(iota()(p)) == iota()(alpha(one)(p))
    ok = ok and phi(one)(iota()(gamma()(p))) == gamma()(alpha(one)(iota()(p)))
    if in_A1(w):
        ok = ok and star(one)(star(one)(p)) == p
        ok = ok and d_sh_inv()(d_sh()(p)) == p
    return ok


@prop("inversion")
def landen_shuffle_regularization(rng):
    """phi iota d_sh = -d_sh star on A^1."""
    one = Num(1)
    p = word(num_word(rng, rng.randint(1, 6), label=rational_label))
    return phi(one)(iota()(d_sh()(p))) == -d_sh()(star(one)(p))


@prop("inversion")
def iwasawa_lemma(rng):
    use_cyc = rng.random() < 0.5
    if use_cyc:
        r = rng.randint(1, 4)
        w = cyc_word(rng, r, rng.randint(1, 6))
        s, t = rng.choice(mu(r)), rng.choice(mu(r))
    else:
        w = num_word(rng, rng.randint(1, 6), label=rational_label, a1=False)
        s, t = Num(rational_label(rng)), Num(rational_label(rng))
    p = word(w)
    k = rng.randint(1, 3)
    zks = (X,) * (k - 1) + (Y(s),)
    lx = (X,)
    ok = I()(I_inv()(p)) == p and I_inv()(I()(p)) == p
    ok = ok and M(s)(M(t)(p)) == M(s * t)(p)
    ok = ok and I()(p.lmul_word(zks)) == I()(M(s)(p)).lmul_word(zks)
    for op in (I(), I_inv(), M(s)):
        ok = ok and op(p.lmul_word(lx)) == op(p).lmul_word(lx)
    ok = ok and N(s)(p) == I()(M(s)(I_inv()(p)))
    if in_A1(w):
        ok = ok and d_star()(M(s)(p)) == M(s)(d_star()(p))
        ok = ok and d_star_inv()(d_star()(p)) == p
    return ok


@prop("inversion")
def linearity(rng):
    one = Num(1)
    p = word(num_word(rng, rng.randint(1, 5), label=rational_label))
    q = word(num_word(rng, rng.randint(1, 5), label=rational_label))
    a, b = rational_label(rng), rational_label(rng)
    comb = p.scale(a) + q.scale(b)
    for m in (phi(one), iota(), alpha(one), gamma(), star(one), d_sh(), I(), d_star()):
        if m(comb) != m(p).scale(a) + m(q).scale(b):
            return False
    return True


# ---------------------------------------------------------------- landen

@prop("landen")
def landen_formula(rng):
    w = num_word(rng, rng.randint(1, 4))
    return sq.landen_check(w, 25)


@prop("landen")
def landen_nonstrict(rng):
    w = num_word(rng, rng.randint(1, 4))
    return sq.landen_bar_check(w, 25)


@prop("landen")
def nonstrict_via_regularization(rng):
    w = num_word(rng, rng.randint(1, 4))
    n = 20
    return sq.mpl_series(w, False, n) == sq.series_poly(d_sh()(word(w)), True, n)


@prop("landen")
def partial_sum_series(rng):
    w = num_word(rng, rng.randint(1, 4))
    return sq.sigma_series_check(w, 20)


@prop("landen")
def differential_formula(rng):
    w = num_word(rng, rng.randint(1, 4), label=rational_label)
    return sq.derivative_check(w, 20)


@prop("landen")
def log_change_of_variable(rng):
    s = rational_label(rng)
    return sq.log_identity_check(s, 25, sq.landen_variable(25))


# ---------------------------------------------------------------- products

def _product_word(rng, weight):
    if rng.random() < 0.5:
        r = rng.randint(1, 3)
        return cyc_word(rng, r, weight, a1=True), ("cyc", r)
    return num_word(rng, weight, label=rational_label), ("num", None)


def _same_domain_words(rng, weights):
    if rng.random() < 0.5:
        r = rng.randint(1, 3)
        return [cyc_word(rng, r, n, a1=True) for n in weights]
    return [num_word(rng, n, label=rational_label) for n in weights]


def _weights(rng, parts, total_max):
    while True:
        ws = [rng.randint(1, total_max - parts + 1) for _ in range(parts)]
        if sum(ws) <= total_max:
            return ws


@prop("products")
def commutativity(rng):
    u, v = _same_domain_words(rng, _weights(rng, 2, 9))
    return all(hprod(k, word(u), word(v)) == hprod(k, word(v), word(u)) for k in KINDS)


@prop("products")
def associativity(rng):
    u, v, w = _same_domain_words(rng, _weights(rng, 3, 9))
    for k in KINDS:
        left = hprod(k, hprod(k, word(u), word(v)), word(w))
        right = hprod(k, word(u), hprod(k, word(v), word(w)))
        if left != right:
            return False
    return True


@prop("products")
def unit_laws(rng):
    (u,) = _same_domain_words(rng, [rng.randint(1, 6)])
    e = NcPoly.word(())
    return all(hprod(k, e, word(u)) == word(u) == hprod(k, word(u), e) for k in KINDS)


@prop("products")
def regularization_products(rng):
    u, v = _same_domain_words(rng, _weights(rng, 2, 7))
    u, v = word(u), word(v)
    ds, dsi = d_star(), d_star_inv()
    return (ds(hprod(BAR_STAR, u, v)) == hprod(STAR, ds(u), ds(v))
            and dsi(hprod(STAR, u, v)) == hprod(BAR_STAR, dsi(u), dsi(v))
            and ds(hprod(DOT_BAR_STAR, u, v)) == hprod(DOT_STAR, ds(u), ds(v))
            and dsi(hprod(DOT_STAR, u, v)) == hprod(DOT_BAR_STAR, dsi(u), dsi(v)))


def _twist_case(rng):
    a, b = _weights(rng, 2, 6)
    w = word(num_word(rng, a, label=rational_label))
    wp = word(num_word(rng, b, label=lambda _: Fraction(1)))
    s = Num(rational_label(rng, exclude_one=True))
    return w, wp, s


@prop("products")
def twisted_regularization(rng):
    """F_s d_*^{-1}(w) bar* d_*^{-1}(w') = F_s d_*^{-1}(w * w') for w' labelled by 1."""
    w, wp, s = _twist_case(rng)
    dsi = d_star_inv()
    return hprod(BAR_STAR, F(s)(dsi(w)), dsi(wp)) == F(s)(dsi(hprod(STAR, w, wp)))


@prop("products")
def twist_commutes_with_bar_product(rng):
    w, wp, s = _twist_case(rng)
    return hprod(BAR_STAR, F(s)(w), wp) == F(s)(hprod(BAR_STAR, w, wp))


@prop("products")
def twist_shift(rng):
    """F_s L_{z_{k,t}} = L_{z_{k,(1-d(st)st)/(1-d(s)s)}} F_{st}."""
    while True:
        s, t = Num(rational_label(rng, True)), Num(rational_label(rng, True))
        if not (s * t).is_one():
            break
    k = rng.randint(1, 3)
    w = word(num_word(rng, rng.randint(1, 5), label=rational_label, a1=False))
    st = s * t
    label = st.one_minus() / s.one_minus()
    lhs = F(s)(w.lmul_word((X,) * (k - 1) + (Y(t),)))
    rhs = F(st)(w).lmul_word((X,) * (k - 1) + (Y(label),))
    return lhs == rhs


# ---------------------------------------------------------------- homs

@prop("homs")
def evaluation_homomorphisms(rng):
    a, b = _weights(rng, 2, 6)
    u = num_word(rng, a, label=rational_label)
    v = num_word(rng, b, label=rational_label)
    M_ = 30
    Su = sq.truncated_table(sq.AST, sq.LEQ, u, M_)
    Sv = sq.truncated_table(sq.AST, sq.LEQ, v, M_)
    Suv = sq.poly_table(sq.AST, sq.LEQ, hprod(BAR_STAR, word(u), word(v)), M_)
    su = sq.s_table(sq.AST, u, M_)
    sv = sq.s_table(sq.AST, v, M_)
    suv = sq.poly_table(sq.AST, sq.EQUAL, hprod(DOT_BAR_STAR, word(u), word(v)), M_)
    return (all(x * y == z for x, y, z in zip(Su, Sv, Suv))
            and all(x * y == z for x, y, z in zip(su, sv, suv)))


@prop("homs")
def functional_equation_at_integers(rng):
    a, b = _weights(rng, 2, 5)
    w = num_word(rng, a)
    wp = num_word(rng, b)
    s = unit_label(rng)
    return sq.product_identity_exact(s, w, wp, 12)


# ---------------------------------------------------------------- commute

def _cyc_case(rng, wmax, rmax=3, a1=False):
    r = rng.randint(1, rmax)
    return r, unit(r), cyc_word(rng, r, rng.randint(1, wmax), a1=a1)


@prop("commute")
def hat_family_commutes(rng):
    """[d-hat_n^(c), d-hat_m^(c')] = 0 over two formal parameters, n+m <= 6."""
    n = rng.randint(1, 5)
    m = rng.randint(1, 6 - n)
    r, one, w = _cyc_case(rng, 4 if n + m <= 4 else 3, rmax=2 if n + m >= 5 else 3)
    return not _commutator_on(partial_hat(n, C, one), partial_hat(m, C2, one), w)


@prop("commute")
def mixed_families_commute(rng):
    """[d_n^(c), d-hat_m^(c')] = 0 for n+m <= 5."""
    n = rng.randint(1, 4)
    m = rng.randint(1, 5 - n)
    r, one, w = _cyc_case(rng, 3, rmax=2)
    return not _commutator_on(partial_c(n, C, one), partial_hat(m, C2, one), w)


@prop("commute")
def plain_derivations_commute(rng):
    n, m = rng.randint(1, 3), rng.randint(1, 3)
    r, one, w = _cyc_case(rng, 5 - max(n, m) + 1)
    return not _commutator_on(partial_n(n, one), partial_n(m, one), w)


@prop("commute")
def theta_variants_relation(rng):
    """theta^(c) = theta-hat^(-c) + c d_1 (H - 1)."""
    r, one, w = _cyc_case(rng, 5)
    lhs = theta_c(C, one).on_word(w)
    rhs = theta_hat(-C, one).on_word(w) + partial_1(one).on_word(w).scale(C * (len(w) - 1))
    return lhs == rhs


@prop("commute")
def theta_split_independence(rng):
    r, one, w = _cyc_case(rng, 6, rmax=2)
    a = theta_hat(C, one).on_word(w)
    b = theta_c(C, one).on_word(w)
    return all(theta_hat_split(C, one, w, i) == a and theta_c_split(C, one, w, i) == b
               for i in range(len(w) + 1))


@prop("commute")
def theta_reductions(rng):
    r, one, w = _cyc_case(rng, 5)
    return (theta_hat(0, one).on_word(w) == theta(one).on_word(w)
            and theta_c(0, one).on_word(w) == theta(one).on_word(w))


@prop("commute")
def hat_reductions(rng):
    n = rng.randint(1, 3)
    r, one, w = _cyc_case(rng, 4)
    img = partial_hat(n, C, one).on_word(w)
    ok = partial_hat(1, C, one).on_word(w) == partial_1(one).on_word(w)
    ok = ok and partial_hat(n, 0, one).on_word(w) == partial_n(n, one).on_word(w)
    ok = ok and img.subs({"c": 0}) == partial_n(n, one).on_word(w)
    ok = ok and c_degree(img) <= n - 1
    ok = ok and all(len(v) == len(w) + n for v in img.terms)
    graded = hat_graded(n, w, one)
    ok = ok and all(graded[j] == c_coeff(img, j) for j in range(n))
    return ok


@prop("commute")
def derivation_rules(rng):
    n = rng.randint(1, 3)
    r = rng.randint(1, 3)
    one = unit(r)
    u = cyc_word(rng, r, rng.randint(1, 3))
    v = cyc_word(rng, r, rng.randint(1, 3))
    d = partial_n(n, one)
    ok = d.on_word(u + v) == d.on_word(u).rmul_word(v) + d.on_word(v).lmul_word(u)
    a = cyc_admissible(rng, r, rng.randint(2, 4))
    ok = ok and d.on_word(a).in_A0()
    ok = ok and all(len(t) == len(u) + n for t in d.on_word(u).terms)
    return ok


def _flatten(images, basis):
    """Concatenate the images of the basis words into one coefficient map."""
    out = {}
    for i, w in enumerate(basis):
        for v, c in images(w).items():
            out[(i, v)] = c
    return out


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


@prop("commute")
def plain_family_in_hat_algebra(rng):
    """d_n^(c) lies in the degree-n part of Q[d-hat_1^(-c), .., d-hat_n^(-c)]."""
    n = rng.randint(1, 3)
    r = rng.randint(1, 2)
    one = unit(r)
    c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    basis = [w for k in (1, 2) for w in itertools.product([X] + [Y(s) for s in mu(r)], repeat=k)]
    gens = []
    for comp in _compositions(n):
        ops = [partial_hat(i, -c, one) for i in comp]

        def images(w, ops=ops):
            p = word(w)
            for op in reversed(ops):
                p = op(p)
            return p

        gens.append(_flatten(images, basis))
    target = _flatten(lambda w: partial_c(n, c, one).on_word(w), basis)
    keys = sorted({k for g in gens + [target] for k in g},
                  key=lambda k: (k[0], len(k[1]), tuple(a.order for a in k[1])))
    index = {k: i for i, k in enumerate(keys)}
    a = bareiss_rank(integer_rows(gens, index))
    b = bareiss_rank(integer_rows(gens + [target], index))
    return a == b and a > 0


# ---------------------------------------------------------------- tower

def _tower_case(rng, wmax=3):
    r = rng.randint(1, 3)
    one = unit(r)
    return r, one, rng.choice(mu(r)), cyc_word(rng, r, rng.randint(1, wmax))


@prop("tower")
def psi_hat_factorization(rng):
    """Factorization of psi-hat_n^(c)(u) through phi-hat_{n-1}^(c), u a single letter."""
    n = rng.randint(1, 3)
    r, one, s, w = _tower_case(rng)
    u = word((X,)) if rng.random() < 0.4 else word((Y(s),))
    return psi_hat(n, C, one, u)(word(w)) == psi_hat_factored(n, C, one, u)(word(w))


@prop("tower")
def psi_hat_special_values(rng):
    n = rng.randint(1, 3)
    r, one, s, w = _tower_case(rng)
    p = word(w)
    ok = not psi_hat(n, C, one, z_poly(one))(p)
    head = x_plus(s)
    tail = word((Y(one),)) - (word((Y(s),)) if delta(s) else NcPoly())
    rhs = head * phi_hat(n - 1, C, one)(tail * p)
    return ok and psi_hat(n, C, one, head)(p) == rhs


@prop("tower")
def hat_left_multiplication(rng):
    """[d-hat_n^(c), L_u] = psi-hat_n^(c)(u)."""
    n = rng.randint(1, 3)
    r, one, s, w = _tower_case(rng)
    u = letters_poly(rng, one, mu(r))
    d = partial_hat(n, C, one)
    p = word(w)
    return d(u * p) - u * d(p) == psi_hat(n, C, one, u)(p)


@prop("tower")
def left_ideal_containment(rng):
    n = rng.randint(1, 3)
    r, one, s, w = _tower_case(rng)
    if not in_A1(w):
        w = w + (Y(one),)
    head = x_plus(s)
    img = partial_hat(n, C, one)(head * word(w))
    q = left_divide(img, head)
    return q.in_A1()


@prop("tower")
def hat_factorization_through_products(rng):
    """d-hat_n^(c) L_{x+d(s)y_s} sigma_s = L_{x+d(s)y_s} sigma_s H_w,
    w = phi L_x^{-1} d-hat_n^(c)(x)."""
    n = rng.randint(1, 3)
    r, one, s, v = _tower_case(rng)
    if not in_A1(v):
        v = v + (Y(rng.choice(mu(r))),)
    head = x_plus(s)
    sg = sigma(s)
    wpoly = phi(one)(left_divide(partial_hat(n, C, one)(word((X,))), word((X,))))
    if not all(a is X or a.label.is_one() for t in wpoly.terms for a in t):
        return False
    lhs = partial_hat(n, C, one)(head * sg(word(v)))
    rhs = head * sg(hprod(STAR, wpoly, word(v)))
    return lhs == rhs


def _trunc_case(rng):
    r = rng.randint(1, 3)
    one = unit(r)
    W = rng.randint(5, 6)
    s = rng.choice(mu(r))
    w = cyc_word(rng, r, rng.randint(1, 3 if W == 6 else 4))
    return r, one, s, W, w


@prop("tower")
def lift_intertwines(rng):
    """phi I M_s Phi = Delta-hat phi I M_s, truncated."""
    r, one, s, W, w = _trunc_case(rng)
    sg = sigma(s)
    lhs = sg(phi_big_auto_truncated(W, word(w), one))
    rhs = delta_hat_truncated(W, sg(word(w)), one)
    ok = lhs == rhs
    if in_A1(w):
        ok = ok and phi_big_truncated(W, word(w), one) == phi_big_auto_truncated(W, word(w), one)
    return ok


def _harmonic_inverse(W, v, one):
    g = geometric(-word((Y(one),)), W)
    return hprod(STAR, g, word(v)).truncate(W)


def _tower_a1_case(rng):
    r = rng.randint(1, 3)
    one = unit(r)
    W = rng.randint(5, 6)
    s = rng.choice(mu(r))
    v = cyc_word(rng, r, rng.randint(1, 3), a1=True)
    return r, one, s, W, v


@prop("tower", printed_false=True)
def harmonic_inverse_printed(rng):
    r, one, s, W, v = _tower_a1_case(rng)
    head = x_plus(s)
    inner = head * delta_hat_truncated(W, head * sigma(s)(word(v)), one)
    rhs = (M(s.inv()) @ I_inv() @ phi(one))(inner).truncate(W)
    return _harmonic_inverse(W, v, one) == rhs


@prop("tower")
def harmonic_inverse_divided(rng):
    """H_{1/(1+y_1)} = M_{1/s} I^{-1} phi L_{x+d(s)y_s}^{-1} Delta-hat L_{x+d(s)y_s} phi I M_s."""
    r, one, s, W, v = _tower_a1_case(rng)
    head = x_plus(s)
    lifted = delta_hat_truncated(W + 1, head * sigma(s)(word(v)), one)
    inner = left_divide(lifted, head)
    rhs = (M(s.inv()) @ I_inv() @ phi(one))(inner).truncate(W)
    return _harmonic_inverse(W, v, one) == rhs


@prop("tower")
def exponential_values(rng):
    r = rng.randint(1, 3)
    one = unit(r)
    W = rng.randint(2, 6)
    s = rng.choice(mu(r))
    y1 = word((Y(one),))
    x = word((X,))
    head = x_plus(s)
    ok = delta_hat_truncated(W, x, one) == x * geometric(y1, W - 1)
    tail = y1 - (word((Y(s),)) if delta(s) else NcPoly())
    ok = ok and delta_hat_truncated(W, head, one) == head * geometric(tail, W - 1)
    ok = ok and delta_hat_truncated(W, z_poly(one), one) == z_poly(one)
    ok = ok and phi_big_auto_truncated(W, x, one) == x
    return ok


# ---------------------------------------------------------------- newton

@prop("newton")
def integer_interpolation(rng):
    w = num_word(rng, rng.randint(1, 4))
    m = rng.randint(0, 10)
    kind = rng.choice((sq.SH, sq.AST))
    variant = rng.choice((sq.EQUAL, sq.LEQ))
    return (sq.newton_exact(w, m, kind, variant)
            == sq.truncated_table(kind, variant, w, m)[m])


@prop("newton")
def binomial_times_newton(rng):
    w = num_word(rng, rng.randint(1, 4))
    z = rng.randint(0, 12)
    l = rng.randint(0, 4)
    a = sq.s_table(sq.AST, w, z + l + 1)
    lhs, rhs = sq.binomial_newton_sides(a, l, z)
    return lhs == rhs


@prop("newton")
def taylor_coefficient_at_minus_one(rng):
    w = num_word(rng, rng.randint(1, 3))
    s = unit_label(rng)
    seq_word, left, right = sq.taylor_zero_sides(w, s, 12)
    return left == right and left == sq.taylor_zero_direct(seq_word, 12)


@prop("newton")
def difference_identity(rng):
    p = rng.randint(1, 3)
    labels = [unit_label(rng) for _ in range(p)]
    return sq.diff_identity_check(labels, 6, 6)


@prop("newton")
def difference_nonnegative(rng):
    p = rng.randint(1, 3)
    labels = [Fraction(rng.randint(0, 4), 4) for _ in range(p)]
    comp = [1 - v for v in labels]
    return all(sq.bivariate_c(labels, comp, m, l) >= 0
               for m in range(7) for l in range(7))


@prop("newton")
def c_array_recurrence(rng):
    p = rng.randint(2, 3)
    s = [unit_label(rng) for _ in range(p)]
    t = [unit_label(rng) for _ in range(p)]
    return sq.c_recurrence_check(s, t, rng.randint(0, 5), rng.randint(0, 5))


@prop("newton")
def depth_one_blocks(rng):
    """s^sh_{(1..1; s_1..s_p)} = s_p c_{s_1..s_p,0}."""
    p = rng.randint(1, 4)
    labels = [unit_label(rng) for _ in range(p)]
    M_ = 20
    w = tuple(Y(Num(v)) for v in labels)
    c = sq.c_array(labels + [Fraction(0)], M_)
    return sq.s_table(sq.SH, w, M_) == [labels[-1] * v for v in c]


@prop("newton")
def single_label_differences(rng):
    s = unit_label(rng)
    l = rng.randint(0, 6)
    seq = sq.Sequence(lambda M_: sq.c_array([s], M_))
    vals = seq.delta(l).values(10)
    return vals == [s ** m * (1 - s) ** l for m in range(11)]


def suite_names(arg: str) -> list[str]:
    if arg == "all":
        return list(SUITES)
    if arg not in SUITES:
        raise ValueError(f"unknown suite {arg!r}")
    return [arg]
