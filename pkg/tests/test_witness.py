import random
from fractions import Fraction

import pytest

from almost_abelian.errors import InadmissibleError, PreconditionError
from almost_abelian.exact import Matrix, determinant, rank
from almost_abelian.jordan import jordan_block, nilpotent_matrix, nilpotent_tuple
from almost_abelian.tuples import generate_admissible, generate_all, parse_tuple as T
from almost_abelian.witness import (
    BracketTable,
    ComplexWitness,
    SymplecticWitness,
    build_complex_witness,
    build_symplectic_witness,
    closed_two_form_space,
    d_omega,
    is_closed,
    sp_even_block,
    standard_complex,
    symbolic_pfaffian,
    symplectic_oracle,
    two_form,
    verify_complex,
    verify_symplectic,
)

J5_J3_01 = nilpotent_matrix(T("5,3;1,1;1"))


def closed_space_dimension_by_brute_force(b):
    """Rank of the linear map ω -> (dω on all triples), computed from d_omega directly."""
    import itertools

    n = b.dimension
    pairs = list(itertools.combinations(range(n), 2))
    basis = [b.basis(i) for i in range(n)]
    columns = []
    for p in pairs:
        omega = two_form(n, {p: 1})
        columns.append([d_omega(b, omega, basis[i], basis[j], basis[k])
                        for i, j, k in itertools.combinations(range(n), 3)])
    if not columns[0]:
        return len(pairs)
    return len(pairs) - rank(Matrix(columns).T)


# --- complex ------------------------------------------------------------------------

def test_complex_dim4_example():
    w = build_complex_witness(T("2;1;1"))
    assert w.bracket.C == Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    assert w.j.column(0)[1] == 1
    assert verify_complex(w)


def test_complex_abelian():
    w = build_complex_witness(T("5"))
    assert w.bracket.C == Matrix.zeros(5)
    assert verify_complex(w)
    assert verify_complex(ComplexWitness(BracketTable(Matrix.zeros(3)), standard_complex(2)))


def test_complex_broken_j():
    w = build_complex_witness(T("2;1;1"))
    rows = [list(r) for r in w.j.rows]
    for r in rows:
        r[2] = 0
    rows[2][2] = 1  # j e2 = e2
    assert not verify_complex(ComplexWitness(w.bracket, Matrix(rows)))


def test_complex_rotation_that_is_not_integrable():
    # j e1 = e2 on [e0,e1] = e2 breaks integrability: N(e0, e1) != 0
    b = BracketTable(jordan_block(3))
    j = Matrix([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    assert j @ j == Matrix.identity(4) * -1
    assert not verify_complex(ComplexWitness(b, j))


@pytest.mark.parametrize("t", ["3,2;1,1;2", "4,3;1,1;0", "2;1;5", "3,2;2,1;1", "7"])
def test_complex_examples(t):
    w = build_complex_witness(T(t))
    assert verify_complex(w)
    assert nilpotent_tuple(w.bracket.C) == T(t)


def test_complex_inadmissible():
    with pytest.raises(InadmissibleError):
        build_complex_witness(T("7;1;0"))


# --- symplectic ---------------------------------------------------------------------

def test_symplectic_dim4_example():
    w = build_symplectic_witness(T("2;1;1"))
    assert nilpotent_tuple(w.bracket.C) == T("2;1;1")
    assert w.omega[0, 1] == 1
    assert verify_symplectic(w)


def test_symplectic_five_one_zero():
    w = build_symplectic_witness(T("5;1;0"))
    assert w.bracket.dimension == 6
    assert verify_symplectic(w)
    assert nilpotent_tuple(w.bracket.C) == T("5;1;0")


def test_symplectic_abelian():
    w = build_symplectic_witness(T("3"))
    assert w.bracket.C == Matrix.zeros(3) and verify_symplectic(w)
    assert verify_symplectic(SymplecticWitness(BracketTable(Matrix.zeros(3)), two_form(4, {(0, 1): 1, (2, 3): 1})))


def test_symplectic_inadmissible():
    with pytest.raises(InadmissibleError):
        build_symplectic_witness(T("5,3;1,1;1"))


def test_verify_symplectic_rejects_non_skew():
    b = BracketTable(Matrix.zeros(3))
    with pytest.raises(PreconditionError):
        verify_symplectic(SymplecticWitness(b, Matrix.identity(4)))


def test_open_form_fails():
    # [e0,e1] = e2, [e0,e2] = e3 gives dω(e0,e1,e2) = ω(e3,e1), nonzero for e0^e2 + e1^e3
    b = BracketTable(jordan_block(3))
    omega = two_form(4, {(0, 2): 1, (1, 3): 1})
    assert determinant(omega) != 0
    assert not is_closed(b, omega)
    assert not verify_symplectic(SymplecticWitness(b, omega))


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11])
def test_witness_sweep(m):
    for t in generate_admissible(m, "symplectic"):
        w = build_symplectic_witness(t)
        assert verify_symplectic(w) and nilpotent_tuple(w.bracket.C) == t, t
    for t in generate_admissible(m, "complex"):
        w = build_complex_witness(t)
        assert verify_complex(w) and nilpotent_tuple(w.bracket.C) == t, t


@pytest.mark.parametrize("k", range(1, 9))
def test_even_block_inside_sp(k):
    N = sp_even_block(k)
    omega = standard_complex(k)
    assert N.T @ omega + omega @ N == Matrix.zeros(2 * k)
    assert N ** (2 * k - 1) != Matrix.zeros(2 * k)
    assert N ** (2 * k) == Matrix.zeros(2 * k)
    assert nilpotent_tuple(N) == T(f"{2 * k};1;0")


# --- closed forms ---------------------------------------------------------------------

def test_closed_space_abelian():
    assert len(closed_two_form_space(BracketTable(Matrix.zeros(5)))) == 15


def test_closed_space_dim4():
    b = BracketTable(nilpotent_matrix(T("2;1;1")))
    forms = closed_two_form_space(b)
    assert len(forms) == closed_space_dimension_by_brute_force(b)
    assert all(is_closed(b, f) for f in forms)


def test_closed_space_hand_computation():
    b = BracketTable(J5_J3_01)
    forms = closed_two_form_space(b)
    assert len(forms) == 17
    assert all(is_closed(b, f) for f in forms)
    assert len(closed_two_form_space(BracketTable(J5_J3_01.T))) == 17


def hand_family(a, bb):
    """Σ a_j e^{0j} + β with the 8-parameter β for superdiagonal blocks."""
    b1, b2, b3, b4, b5, b6, b7, b8 = bb
    pairs = {(0, j): a[j - 1] for j in range(1, 10)}
    terms = [((2, 5), b1), ((3, 4), -b1), ((3, 8), b2), ((4, 5), b3), ((4, 7), -b2), ((4, 8), b4),
             ((5, 6), b2), ((5, 7), -b4), ((5, 8), b5), ((5, 9), b6), ((7, 8), b7), ((8, 9), b8)]
    for p, c in terms:
        pairs[p] = pairs.get(p, 0) + c
    return two_form(10, pairs)


@pytest.mark.parametrize("seed", range(10))
def test_hand_family_is_closed_and_degenerate(seed):
    rng = random.Random(seed)
    b = BracketTable(J5_J3_01.T)
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(9)]
    bb = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)]
    omega = hand_family(a, bb)
    assert is_closed(b, omega)
    assert determinant(omega) == 0
    assert not verify_symplectic(SymplecticWitness(b, omega))


def test_hand_family_spans_closed_space():
    b = BracketTable(J5_J3_01.T)
    members = []
    for i in range(17):
        params = [Fraction(int(k == i)) for k in range(17)]
        members.append(hand_family(params[:9], params[9:]))
    flat = Matrix([[f[x, y] for x in range(10) for y in range(x + 1, 10)] for f in members])
    assert rank(flat) == 17 == len(closed_two_form_space(b))


@pytest.mark.parametrize("t", ["5,3;1,1;1", "3;1;2", "2;2;1"])
def test_closed_space_dimension_is_a_conjugacy_invariant(t):
    m = nilpotent_matrix(T(t))
    rng = random.Random(t)
    n = m.nrows
    q = Matrix([[rng.randint(-2, 2) + (3 if i == j else 0) for j in range(n)] for i in range(n)])
    assert determinant(q) != 0
    a = len(closed_two_form_space(BracketTable(m)))
    assert a == len(closed_two_form_space(BracketTable(q @ m @ q.inverse())))


# --- oracle ---------------------------------------------------------------------------

def test_oracle_hand_computation():
    r = symplectic_oracle(BracketTable(J5_J3_01))
    assert not r.exists and not r.certain and r.log2_bound <= -128


def test_oracle_abelian_dim4():
    r = symplectic_oracle(BracketTable(Matrix.zeros(3)))
    assert r.exists and r.certain
    assert verify_symplectic(SymplecticWitness(BracketTable(Matrix.zeros(3)), r.form))


def test_oracle_identity_has_no_form():
    # [e0, e_i] = e_i: every closed form is e^0 ^ (something), so the Pfaffian vanishes
    b = BracketTable(Matrix.identity(3))
    assert symbolic_pfaffian(closed_two_form_space(b)) == {}
    r = symplectic_oracle(b)
    assert not r.exists and r.certain


def test_oracle_odd_dimension():
    with pytest.raises(PreconditionError):
        symplectic_oracle(BracketTable(Matrix.zeros(2)))


def test_oracle_small_nilpotent_sweep():
    from almost_abelian.tuples import is_symplectic_admissible

    for m in (1, 3, 5, 7):
        for t in generate_all(m):
            r = symplectic_oracle(BracketTable(nilpotent_matrix(t)))
            assert r.certain and r.exists == is_symplectic_admissible(t), t
