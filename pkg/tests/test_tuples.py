import random

import pytest
from hypothesis import given, strategies as st

from almost_abelian.errors import ParseError, PreconditionError
from almost_abelian.exact import Matrix
from almost_abelian.jordan import nilpotent_matrix, nilpotent_tuple
from almost_abelian.tuples import (
    JordanTuple,
    format_tuple,
    generate_admissible,
    generate_all,
    is_complex_admissible,
    is_symplectic_admissible,
    parse_tuple,
    sigma_member,
    successors,
)

from _steps import optimality_examples, step_violations

T = parse_tuple


def partition_count(m):
    """Partition numbers by the classic coin-change recurrence (independent of the generator)."""
    table = [1] + [0] * m
    for part in range(1, m + 1):
        for total in range(part, m + 1):
            table[total] += table[total - part]
    return table[m]


def bordering_oracle(t0, rng):
    """Types of [[0,0],[v,B]] over B of type t0, for basis, pair-sum and random border vectors."""
    B = nilpotent_matrix(t0)
    n = B.nrows
    vectors = [[0] * n]
    for i in range(n):
        vectors.append([int(k == i) for k in range(n)])
        for j in range(i + 1, n):
            vectors.append([int(k in (i, j)) for k in range(n)])
    for _ in range(10):
        vectors.append([rng.randint(-2, 2) for _ in range(n)])
    out = set()
    for v in vectors:
        rows = [[0] * (n + 1)] + [[v[i]] + list(B.rows[i]) for i in range(n)]
        out.add(nilpotent_tuple(Matrix(rows)))
    return out


# --- generation ---------------------------------------------------------------------

def test_generate_three():
    assert set(generate_all(3)) == {T("3;1;0"), T("2;1;1"), T("3")}


@pytest.mark.parametrize("m, count", [(7, 15), (9, 30)])
def test_generate_counts(m, count):
    assert len(generate_all(m)) == count


@pytest.mark.parametrize("m", range(1, 31))
def test_generate_matches_partition_count(m):
    tuples = generate_all(m)
    assert len(tuples) == len(set(tuples)) == partition_count(m)
    assert all(t.total() == m for t in tuples)


# --- predicates ---------------------------------------------------------------------

COMPLEX_7 = ["4,3;1,1;0", "3;2;1", "3,2;1,1;2", "2;3;1", "2;2;3", "2;1;5", "7"]
COMPLEX_9 = ["5,4;1,1;0", "4;2;1", "4,3;1,1;2", "3,2;2,1;1", "3;2;3", "3,2;1,3;0",
             "3,2;1,1;4", "2;4;1", "2;3;3", "2;2;5", "2;1;7", "9"]


def test_complex_census_seven():
    assert set(generate_admissible(7, "complex")) == {T(s) for s in COMPLEX_7}
    assert is_complex_admissible(T("4,3;1,1;0"))
    assert not is_complex_admissible(T("7;1;0"))


def test_complex_census_nine():
    assert set(generate_admissible(9, "complex")) == {T(s) for s in COMPLEX_9}
    assert not is_complex_admissible(T("5,3;1,1;1"))
    assert not is_complex_admissible(T("9;1;0"))


def test_symplectic_censuses():
    assert len(generate_admissible(7, "symplectic")) == 15
    assert set(generate_all(9)) - set(generate_admissible(9, "symplectic")) == {T("5,3;1,1;1")}
    assert is_symplectic_admissible(T("5;1;0"))


def test_symplectic_needs_a_unique_odd_odd_index():
    # with t even the number of (odd size, odd multiplicity) indices is odd: 1 passes, 3 fails
    assert is_symplectic_admissible(T("5,3;1,2;0"))
    assert not is_symplectic_admissible(T("7,5,3;1,1,1;0"))


@pytest.mark.parametrize("pred", [is_complex_admissible, is_symplectic_admissible])
def test_even_total_rejected(pred):
    with pytest.raises(PreconditionError):
        pred(T("3;1;1"))
    with pytest.raises(PreconditionError):
        generate_admissible(8, "complex")


@pytest.mark.parametrize("m", range(1, 26, 2))
def test_complex_implies_symplectic_nilpotent(m):
    assert set(generate_admissible(m, "complex")) <= set(generate_admissible(m, "symplectic"))


# --- successors -----------------------------------------------------------------------

@pytest.mark.parametrize("t, expected", [
    ("2;1;2", {"2;1;3", "3;1;2", "2;2;1"}),
    ("3,2;1,1;0", {"3,2;1,1;1", "4,2;1,1;0", "3;2;0"}),
    ("4", {"5", "2;1;3"}),
])
def test_successor_examples(t, expected):
    assert successors(T(t)) == {T(s) for s in expected}


@pytest.mark.parametrize("m", range(0, 9))
def test_successors_match_bordering_oracle(m):
    rng = random.Random(m)
    for t0 in generate_all(m) if m else [JordanTuple.scalar(0)]:
        got = successors(t0)
        assert all(t.total() == t0.total() + 1 for t in got)
        assert got == bordering_oracle(t0, rng), t0


def test_merging_at_equal_sizes():
    # growing a block next to a block one larger merges multiplicities
    assert T("3,2;1,2;0") in successors(T("2;3;0"))
    assert successors(T("3;2;0")) == {T("3;2;1"), T("4,3;1,1;0")}


# --- sigma pairing ---------------------------------------------------------------------

@pytest.mark.parametrize("n", range(2, 8))
def test_sigma_diagonalizable_minus(n):
    minus = JordanTuple.scalar(n - 1)
    assert sigma_member(minus, JordanTuple.scalar(n))
    assert sigma_member(minus, JordanTuple(((2, 1),), n - 2))
    if n >= 4:
        assert not sigma_member(minus, JordanTuple(((3, 1),), n - 3))


def test_sigma_cases():
    assert sigma_member(T("2;1;0"), T("3;1;0"))
    assert not sigma_member(T("2;1;0"), T("3"))
    assert sigma_member(T("2;1;1"), T("2;2;0"))
    assert sigma_member(T("3;1;1"), T("3,2;1,1;0"))
    assert sigma_member(T("3;1;1"), T("3;1;2"))
    assert not sigma_member(T("3;1;1"), T("5"))


def test_sigma_needs_adjacent_totals():
    with pytest.raises(PreconditionError):
        sigma_member(T("2;1;0"), T("3;1;1"))


@pytest.mark.parametrize("m", range(1, 10))
def test_sigma_agrees_with_successors(m):
    for minus in generate_all(m):
        for plus in generate_all(m + 1):
            assert sigma_member(minus, plus) == (plus in successors(minus))


# --- text form -----------------------------------------------------------------------

def test_parse_examples():
    t = T("5,3;1,1;1")
    assert t.parts == ((5, 1), (3, 1)) and t.trailing_ones == 1
    assert T("7") == JordanTuple.scalar(7)
    assert T(" (3, 2 ; 1,1; 4) ") == T("3,2;1,1;4")


@pytest.mark.parametrize("bad", ["3,3;1,1;0", "2,3;1,1;0", "3;0;1", "3;1", "a;b;c", "", "3,2;1;0", "1;1;0", "3;1;-1"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        T(bad)


@given(st.integers(1, 18).flatmap(lambda m: st.sampled_from(generate_all(m))))
def test_roundtrip(t):
    assert parse_tuple(format_tuple(t)) == t
    assert JordanTuple.from_blocks(t.blocks()) == t


# --- step bounds -----------------------------------------------------------------------

def test_step_bounds_small():
    assert step_violations(11) == []


@pytest.mark.parametrize("t", optimality_examples(12), ids=str)
def test_step_bound_optimality(t):
    assert not is_symplectic_admissible(t)
