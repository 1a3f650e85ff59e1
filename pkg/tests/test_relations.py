import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from mlvrel import relations as rel
from mlvrel.algebra import Cyc, in_A0, word_parse
from mlvrel.relations import (
    gen_deriv, gen_ext, gen_lin, rank, bareiss_rank, modular_rank, integer_rows,
    augmented_contains, ResourceCap, RelationMatrix, PRIMES,
)

SMALL = {
    1: {"deriv": [1, 2, 5, 10, 22, 44], "ext": [1, 2, 5, 10, 23, 46], "lin": [1, 2, 5, 10, 23, 46]},
    2: {"deriv": [4, 14, 46], "ext": [4, 14, 48], "lin": [4, 14, 48]},
    3: {"deriv": [9, 42], "ext": [9, 42], "lin": [9, 42]},
}


@pytest.mark.parametrize("r", sorted(SMALL))
@pytest.mark.parametrize("family", rel.FAMILIES)
def test_small_cells(r, family):
    for i, want in enumerate(SMALL[r][family]):
        m = rel.GENERATORS[family](r, 3 + i)
        assert rank(m) == want, (family, r, 3 + i)


matrices = st.integers(1, 7).flatmap(lambda n: st.lists(
    st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=0, max_size=7))


@given(matrices)
def test_bareiss_agrees_with_sympy(rows):
    want = sympy.Matrix(rows).rank() if rows else 0
    assert bareiss_rank([list(r) for r in rows]) == want
    assert max(modular_rank(rows, p) for p in PRIMES[:3]) == want


@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 10**6))
def test_low_rank_products(n, k, seed):
    """Rank of a product of random n x k and k x n integer matrices, with big entries."""
    rng = random.Random(seed)
    a = sympy.Matrix(n, k, lambda i, j: rng.randint(-10**6, 10**6))
    b = sympy.Matrix(k, n, lambda i, j: rng.randint(-10**6, 10**6))
    prod = a * b
    rows = [[int(prod[i, j]) for j in range(n)] for i in range(n)]
    assert bareiss_rank(rows) == prod.rank()


def test_rank_edge_cases():
    assert bareiss_rank([]) == 0
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert bareiss_rank([[1, 2, 3], [1, 2, 3], [2, 4, 6]]) == 1
    rows = [{"a": Fraction(1, 2), "b": 1}, {"a": 1, "b": 2}, {"b": Fraction(-3, 7)}]
    ints = integer_rows(rows, {"a": 0, "b": 1})
    assert ints == [[1, 2], [0, 1]]


@pytest.mark.parametrize("family", rel.FAMILIES)
def test_rank_invariant_under_permutation(family):
    m = rel.GENERATORS[family](2, 5)
    base = rank(m)
    rng = random.Random(3)
    for _ in range(3):
        rows = list(m.rows)
        rng.shuffle(rows)
        basis = list(m.basis)
        rng.shuffle(basis)
        idx = {w: i for i, w in enumerate(basis)}
        assert bareiss_rank(integer_rows(rows, idx)) == base
    assert rank(m, "modular") == base


def test_extended_constant_term_reproduces_derivation_rows():
    for r, N in ((1, 6), (2, 5)):
        d = gen_deriv(r, N)
        e = gen_ext(r, N)
        dmap = {p.replace("deriv ", ""): row for row, p in zip(d.rows, d.provenance)}
        j0 = {p.replace("ext ", "").replace(" j=0", ""): row
              for row, p in zip(e.rows, e.provenance) if " j=0 " in p}
        assert dmap == j0


@pytest.mark.parametrize("N", [3, 4, 5, 6, 7])
def test_both_extended_operators_give_the_same_rank(N):
    assert rank(gen_ext(1, N)) == rank(gen_ext(1, N, operator="plain"))


@pytest.mark.parametrize("r,N", [(1, 5), (1, 6), (2, 4), (2, 5), (3, 4)])
def test_nesting(r, N):
    d, e, l = gen_deriv(r, N), gen_ext(r, N), gen_lin(r, N)
    assert augmented_contains(d, e)
    assert augmented_contains(e, l)


def test_nesting_detects_a_strict_superset():
    d, e = gen_deriv(1, 7), gen_ext(1, 7)
    assert not augmented_contains(e, d)


def test_rows_supported_on_admissible_words():
    for fam in rel.FAMILIES:
        m = rel.GENERATORS[fam](2, 4)
        assert all(in_A0(w) and len(w) == 4 for row in m.rows for w in row)


def test_non_admissible_row_rejected():
    m = RelationMatrix(1, 3, "lin", rel.basis(1, 3))
    from mlvrel.algebra import NcPoly
    with pytest.raises(AssertionError):
        m.add(NcPoly.word(word_parse("1:0,1:0,1:0", 1)), "bad")


def test_union_over_labels_dominates_each_label():
    full = rank(gen_lin(2, 5))
    for e in range(2):
        part = rank(gen_lin(2, 5, labels=[Cyc(e, 2)]))
        assert part <= full
    assert augmented_contains(gen_lin(2, 5, labels=[Cyc(1, 2)]), gen_lin(2, 5))


def test_caps():
    with pytest.raises(ResourceCap):
        gen_deriv(6, 5)
    with pytest.raises(ResourceCap):
        rel.table(6, [4], ["deriv"])
    with pytest.raises(ValueError):
        gen_lin(1, 2)


def test_json_dump_schema():
    d = gen_lin(1, 4).to_json()
    assert set(d) == {"r", "weight", "family", "basis", "rows"}
    assert [word_parse(b, 1) for b in d["basis"]] == rel.basis(1, 4)
    assert d["basis"] == ["4:0", "3:0,1:0", "2:0,2:0", "2:0,1:0,1:0"]
    for row in d["rows"]:
        assert set(row) == {"coeffs", "provenance"}
        for k, v in row["coeffs"].items():
            word_parse(k, 1)
            num, den = v.split("/")
            assert int(den) > 0 and Fraction(int(num), int(den)) != 0
    json.dumps(d)


def test_table_output_formats():
    cells = rel.table(1, [3, 4], ["deriv", "lin"], workers=1)
    assert [(c.family, c.weight) for c in cells] == [("deriv", 3), ("deriv", 4), ("lin", 3), ("lin", 4)]
    csv = rel.table_csv(cells).splitlines()
    assert csv[0] == "family,r,weight,rank,basis_count"
    assert csv[1] == "deriv,1,3,1,2"
    assert json.loads(rel.table_json(cells))[3] == {"family": "lin", "r": 1, "weight": 4,
                                                     "rank": 2, "basis_count": 4}


def test_parallel_table_matches_serial():
    a = rel.table(2, [3, 4], list(rel.FAMILIES), workers=2)
    b = rel.table(2, [3, 4], list(rel.FAMILIES), workers=1)
    assert a == b
