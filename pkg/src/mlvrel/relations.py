"""Relation families over mu_r, relation matrices and exact rank."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import NcPoly, enumerate_words, word_print, in_A0, mu, unit
from .linmaps import sigma, x_plus
from .hproducts import word_product, STAR
from .derivations import partial_n, hat_graded, partial_c, c_coeff, C

FAMILIES = ("deriv", "ext", "lin")

# default resource caps
MAX_COLUMNS = 1500
MAX_ROWS = 50000


class ResourceCap(RuntimeError):
    pass


@dataclass
class RelationMatrix:
    r: int
    weight: int
    family: str
    basis: list
    rows: list = field(default_factory=list)        # dict word -> Fraction
    provenance: list = field(default_factory=list)

    def add(self, p: NcPoly, prov: str):
        if not p:
            return
        for w in p.terms:
            if not in_A0(w) or len(w) != self.weight:
                raise AssertionError(f"non-admissible term {w!r} in row {prov}")
        self.rows.append(dict(p.terms))
        self.provenance.append(prov)

    def index(self):
        return {w: i for i, w in enumerate(self.basis)}

    def integer_rows(self) -> list[list[int]]:
        return integer_rows(self.rows, self.index())

    def to_json(self) -> dict:
        out = []
        for row, prov in zip(self.rows, self.provenance):
            coeffs = {}
            for w in sorted(row, key=self.index().__getitem__):
                v = Fraction(row[w])
                coeffs[word_print(w)] = f"{v.numerator}/{v.denominator}"
            out.append({"coeffs": coeffs, "provenance": prov})
        return {"r": self.r, "weight": self.weight, "family": self.family,
                "basis": [word_print(w) for w in self.basis], "rows": out}


def basis(r: int, N: int) -> list:
    return enumerate_words(N, r, "A0")


def _check_caps(ncols, nrows_est, force):
    if force:
        return
    if ncols > MAX_COLUMNS:
        raise ResourceCap(f"{ncols} basis columns exceed the cap of {MAX_COLUMNS}")
    if nrows_est > MAX_ROWS:
        raise ResourceCap(f"about {nrows_est} rows exceed the cap of {MAX_ROWS}")


def estimate_rows(family: str, r: int, N: int) -> int:
    a0 = lambda n: len(basis(r, n)) if n >= 2 else 0
    if family == "deriv":
        return sum(a0(N - n) for n in range(1, N - 1))
    if family == "ext":
        return sum(n * a0(N - n) for n in range(1, N - 1))
    total = 0
    for a in range(1, N - 1):
        b = N - 1 - a
        total += r * r * (r + 1) ** (a - 1) * 2 ** (b - 1)
    return total


def gen_deriv(r: int, N: int, force=False) -> RelationMatrix:
    if N < 3:
        raise ValueError("weight must be at least 3")
    m = RelationMatrix(r, N, "deriv", basis(r, N))
    _check_caps(len(m.basis), estimate_rows("deriv", r, N), force)
    one = unit(r)
    for n in range(1, N - 1):
        d = partial_n(n, one)
        for w in basis(r, N - n):
            m.add(d.on_word(w), f"deriv n={n} w={word_print(w)}")
    return m


def gen_ext(r: int, N: int, force=False, operator="hat") -> RelationMatrix:
    """Rows are the c^j coefficients of d-hat_n^(c)(w); operator='plain' uses d_n^(c)."""
    if N < 3:
        raise ValueError("weight must be at least 3")
    m = RelationMatrix(r, N, "ext", basis(r, N))
    _check_caps(len(m.basis), estimate_rows("ext", r, N), force)
    one = unit(r)
    for n in range(1, N - 1):
        for w in basis(r, N - n):
            if operator == "hat":
                parts = hat_graded(n, w, one)
            else:
                img = partial_c(n, C, one).on_word(w)
                parts = [c_coeff(img, j) for j in range(n)]
            for j, p in enumerate(parts):
                m.add(p, f"ext n={n} j={j} w={word_print(w)}")
    return m


def gen_lin(r: int, N: int, force=False, labels=None) -> RelationMatrix:
    """Rows L_{x+d(s)y_s} phi I M_s (w * w'), unioned over s (or over ``labels``)."""
    if N < 3:
        raise ValueError("weight must be at least 3")
    m = RelationMatrix(r, N, "lin", basis(r, N))
    _check_caps(len(m.basis), estimate_rows("lin", r, N), force)
    labels = mu(r) if labels is None else labels
    for s in labels:
        sg = sigma(s)
        head = x_plus(s)
        for a in range(1, N - 1):
            b = N - 1 - a
            left = enumerate_words(a, r, "A1")
            right = enumerate_words(b, r, "A1_LABELS_ONE")
            for w in left:
                for v in right:
                    prod = word_product(STAR, w, v)
                    img = head * sg(prod)
                    m.add(img, f"lin s={s.exp} w={word_print(w)} w'={word_print(v)}")
    return m


GENERATORS = {"deriv": gen_deriv, "ext": gen_ext, "lin": gen_lin}


# ---------------------------------------------------------------- exact rank

def integer_rows(rows, index) -> list[list[int]]:
    """Clear denominators, make primitive with positive leading entry, deduplicate."""
    seen, out = set(), []
    n = len(index)
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            den = math.lcm(den, Fraction(v).denominator)
        vec = [0] * n
        for w, v in row.items():
            v = Fraction(v) * den
            vec[index[w]] = v.numerator
        g = 0
        for v in vec:
            g = math.gcd(g, v)
        if g == 0:
            continue
        lead = next(v for v in vec if v)
        if lead < 0:
            g = -g
        vec = [v // g for v in vec]
        key = tuple(vec)
        if key not in seen:
            seen.add(key)
            out.append(vec)
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination on integer rows.

    Pivot rows are chosen by smallest nonzero magnitude in the pivot column.
    """
    if not rows:
        return 0
    A = np.array(rows, dtype=object)
    # drop all-zero columns
    A = A[:, np.any(A != 0, axis=0)]
    nrows, ncols = A.shape
    prev = 1
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        column = A[rank:, col]
        nz = np.nonzero(column)[0]
        if nz.size == 0:
            continue
        mags = [abs(column[i]) for i in nz]
        piv = rank + int(nz[int(np.argmin(mags))])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        p = A[rank, col]
        below = A[rank + 1:, col:]
        if below.shape[0]:
            factors = below[:, 0].copy()
            # rows with a zero in the pivot column still need the p/prev scaling
            below[:] = (below * p - np.outer(factors, A[rank, col:])) // prev
        prev = p
        rank += 1
    return rank


PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def modular_rank(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p), p < 2^31, by Gaussian elimination in int64."""
    if not rows:
        return 0
    A = np.array([[v % p for v in row] for row in rows], dtype=np.int64)
    nrows, ncols = A.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = (A[rank] * inv) % p
        f = A[rank + 1:, col].copy()
        if f.size:
            A[rank + 1:] = (A[rank + 1:] - (f[:, None] * A[rank][None, :]) % p) % p
        rank += 1
    return rank


def rank(m, method="bareiss") -> int:
    rows = m.integer_rows() if isinstance(m, RelationMatrix) else m
    if method == "bareiss":
        return bareiss_rank(rows)
    if method == "modular":
        return max(modular_rank(rows, p) for p in PRIMES[:3])
    raise ValueError(f"unknown rank method {method!r}")


def augmented_contains(small: RelationMatrix, big: RelationMatrix) -> bool:
    """True when rowspace(small) lies in rowspace(big)."""
    idx = big.index()
    a = integer_rows(big.rows, idx)
    both = integer_rows(big.rows + small.rows, idx)
    return bareiss_rank(a) == bareiss_rank(both)


# ---------------------------------------------------------------- tables

@dataclass
class Cell:
    family: str
    r: int
    weight: int
    rank: int
    basis_count: int


def compute_cell(family: str, r: int, N: int, force=False) -> Cell:
    m = GENERATORS[family](r, N, force=force)
    return Cell(family, r, N, rank(m), len(m.basis))


def _cell_job(args):
    return compute_cell(*args)


def table(r: int, weights, families, force=False, workers=None) -> list[Cell]:
    """Ranks for every (family, weight), ordered by family then weight."""
    jobs = [(f, r, N, force) for f in FAMILIES if f in families for N in weights]
    for f, _, N, _ in jobs:
        _check_caps(len(basis(r, N)), estimate_rows(f, r, N), force)
    if workers and workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            cells = list(ex.map(_cell_job, jobs))
    else:
        cells = [_cell_job(j) for j in jobs]
    order = {f: i for i, f in enumerate(FAMILIES)}
    return sorted(cells, key=lambda c: (order[c.family], c.weight))


def table_csv(cells) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "r", "weight", "rank", "basis_count"])
    for c in cells:
        w.writerow([c.family, c.r, c.weight, c.rank, c.basis_count])
    return buf.getvalue()


def table_json(cells) -> str:
    return json.dumps([c.__dict__ for c in cells], indent=2) + "\n"
