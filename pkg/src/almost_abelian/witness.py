"""Explicit complex and symplectic structures on nilpotent almost abelian algebras.

Basis conventions: the algebra has basis e0, ..., e_{2n-1}; the ideal
h = span(e1, ..., e_{2n-1}) is abelian and [e0, e_i] = sum_j C[j][i] e_j,
where C is the (2n-1) x (2n-1) bracket matrix (row/column 0 of C is e1).
Forms and endomorphisms of the whole algebra are 2n x 2n matrices in the
basis e0, ..., e_{2n-1}; a 2-form ω is stored as the skew matrix
ω[a][b] = ω(e_a, e_b).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InadmissibleError, PreconditionError
from .exact import Matrix, determinant, nullspace
from .jordan import jordan_block, nilpotent_tuple
from .tuples import JordanTuple, is_complex_admissible, is_symplectic_admissible

Vector = tuple


# ----------------------------------------------------------------------------
# brackets


@dataclass(frozen=True)
class BracketTable:
    """Structure constants of g_C = R e0 ⋉_C R^(2n-1)."""

    C: Matrix

    def __post_init__(self):
        if not self.C.is_square:
            raise PreconditionError("bracket matrix must be square")

    @property
    def dimension(self) -> int:
        return self.C.nrows + 1

    def bracket(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        """[x, y] for coordinate vectors of length 2n."""
        x0, y0 = x[0], y[0]
        out = [Fraction(0)] * self.dimension
        if x0:
            for j, v in enumerate(self.C.apply(tuple(y[1:]))):
                out[j + 1] += x0 * v
        if y0:
            for j, v in enumerate(self.C.apply(tuple(x[1:]))):
                out[j + 1] -= y0 * v
        return tuple(out)

    def basis(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(k == i)) for k in range(self.dimension))

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "C": self.C.to_json()}


def standard_complex(m: int) -> Matrix:
    """[[0, -I_m], [I_m, 0]]."""
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        rows[i][m + i] = -1
        rows[m + i][i] = 1
    return Matrix(rows, 2 * m)


def _block_diag(blocks: Sequence[Matrix]) -> Matrix:
    blocks = [b for b in blocks if b.nrows]
    return Matrix.direct_sum(*blocks) if blocks else Matrix.zeros(0)


def _bordered(v: Sequence, B: Matrix) -> Matrix:
    """[[0, 0], [v, B]]."""
    size = B.nrows + 1
    rows = [[Fraction(0)] * size]
    for i in range(B.nrows):
        rows.append([v[i]] + list(B.rows[i]))
    return Matrix(rows, size)


# ----------------------------------------------------------------------------
# complex structures


@dataclass(frozen=True)
class ComplexWitness:
    bracket: BracketTable
    j: Matrix

    def to_json(self) -> dict:
        return {
            "structure": "complex",
            "dimension": self.bracket.dimension,
            "C": self.bracket.C.to_json(),
            "j": self.j.to_json(),
        }


def _apply(M: Matrix, x: Sequence) -> tuple[Fraction, ...]:
    return M.apply(tuple(x))


def _vadd(*vs):
    return tuple(sum(c) for c in zip(*vs))


def nijenhuis(w: ComplexWitness, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    """N_j(x,y) = [x,y] + j([jx,y] + [x,jy]) - [jx,jy]."""
    b, j = w.bracket, w.j
    jx, jy = _apply(j, x), _apply(j, y)
    inner = _vadd(b.bracket(jx, y), b.bracket(x, jy))
    return _vadd(b.bracket(x, y), _apply(j, inner), tuple(-c for c in b.bracket(jx, jy)))


def verify_complex(w: ComplexWitness) -> bool:
    n = w.bracket.dimension
    if w.j.shape != (n, n):
        return False
    if w.j @ w.j != Matrix.identity(n) * -1:
        return False
    basis = [w.bracket.basis(i) for i in range(n)]
    return all(not any(nijenhuis(w, basis[a], basis[b])) for a in range(n) for b in range(a + 1, n))


def build_complex_witness(t: JordanTuple) -> ComplexWitness:
    """Bracket matrix of type t together with an integrable j (j e0 = e1).

    C = [[0, 0], [v, B]] on span(e1, ...), where B = Bc ⊕ Bc commutes with
    the standard J on u = span(e2, ...). The border v either vanishes, hits a
    zero block (adding a J2) or hits the head of a J_n block (turning it into
    J_{n+1}), depending on which admissibility condition t satisfies.
    """
    if t.total() % 2 == 0 or not is_complex_admissible(t):
        raise InadmissibleError(f"{t} admits no complex structure")
    half = (t.total() - 1) // 2
    # multiplicities of B (size 1 = zero blocks); all of them end up even
    b_mult = dict(t.parts)
    b_mult[1] = t.trailing_ones
    ps = t.multiplicities
    odd_t = t.trailing_ones % 2 == 1
    head = None  # size of the block of Bc whose first vector is v
    if t.is_scalar or (odd_t and all(p % 2 == 0 for p in ps)):
        b_mult[1] -= 1  # e1 is the extra zero block
    elif odd_t and t.sizes[-1] == 2:
        b_mult[2] -= 1
        b_mult[1] += 1
        head = 1
    else:
        odd = [i for i, p in enumerate(ps) if p % 2 == 1]
        big, small = t.sizes[odd[0]], t.sizes[odd[1]]
        b_mult[big] -= 1
        b_mult[small] += 1
        head = small
    assert all(p % 2 == 0 for p in b_mult.values()), b_mult
    bc_sizes = [n for n in sorted(b_mult, reverse=True) for _ in range(b_mult[n] // 2)]
    if head is not None:
        bc_sizes.remove(head)
        bc_sizes.insert(0, head)
    Bc = _block_diag([jordan_block(n) for n in bc_sizes])
    assert Bc.nrows == half
    B = _block_diag([Bc, Bc])
    v = [Fraction(0)] * (2 * half)
    if head is not None:
        v[0] = Fraction(1)
    C = _bordered(v, B)
    j = Matrix.direct_sum(standard_complex(1), standard_complex(half)) if half else standard_complex(1)
    return ComplexWitness(BracketTable(C), j)


# ----------------------------------------------------------------------------
# symplectic structures


@dataclass(frozen=True)
class SymplecticWitness:
    bracket: BracketTable
    omega: Matrix

    def to_json(self) -> dict:
        return {
            "structure": "symplectic",
            "dimension": self.bracket.dimension,
            "C": self.bracket.C.to_json(),
            "omega": self.omega.to_json(),
            "form": format_form(self.omega),
        }


def format_form(omega: Matrix) -> str:
    """Basis notation, e.g. ``e0^e1 + e2^e3 - 1/2*e1^e4``."""
    terms = []
    for a in range(omega.nrows):
        for b in range(a + 1, omega.ncols):
            c = omega[a, b]
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            terms.append(("-" if c < 0 else "+", f"{mag}e{a}^e{b}"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def two_form(dim: int, pairs: dict) -> Matrix:
    """Skew matrix from ``{(a, b): coefficient}``, meaning sum of coefficient * e^a ∧ e^b."""
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for (a, b), c in pairs.items():
        rows[a][b] += c
        rows[b][a] -= c
    return Matrix(rows, dim)


def d_omega(b: BracketTable, omega: Matrix, x, y, z) -> Fraction:
    """dω(x,y,z) = -ω([x,y],z) - ω([y,z],x) - ω([z,x],y)."""

    def w(u, v):
        return sum((u[i] * omega[i, j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]), Fraction(0))

    return -w(b.bracket(x, y), z) - w(b.bracket(y, z), x) - w(b.bracket(z, x), y)


def is_closed(b: BracketTable, omega: Matrix) -> bool:
    n = b.dimension
    basis = [b.basis(i) for i in range(n)]
    return all(d_omega(b, omega, basis[i], basis[j], basis[k]) == 0 for i, j, k in itertools.combinations(range(n), 3))


def verify_symplectic(w: SymplecticWitness) -> bool:
    n = w.bracket.dimension
    if w.omega.shape != (n, n) or not w.omega.is_skew():
        raise PreconditionError("omega must be a skew-symmetric matrix of the algebra's size")
    return is_closed(w.bracket, w.omega) and determinant(w.omega) != 0


def sp_even_block(k: int) -> Matrix:
    """[[J_k, I_k], [0, -J_k^T]]: a single nilpotent block of size 2k inside sp(2k)."""
    X = jordan_block(k)
    rows = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        for j in range(k):
            rows[i][j] = X[i, j]
            rows[k + i][k + j] = -X[j, i]
        rows[i][k + i] = Fraction(1)
    return Matrix(rows, 2 * k)


def _sp_pieces(sizes: dict) -> list[tuple[Matrix, Matrix]]:
    """(E_i, Ω_i) pieces with E_i in sp(Ω_i) realizing the multiset ``{size: count}``."""
    pieces = []
    for n in sorted(sizes, reverse=True):
        count = sizes[n]
        if count == 0:
            continue
        if n % 2 == 0:
            pieces += [(sp_even_block(n // 2), standard_complex(n // 2))] * count
        else:
            assert count % 2 == 0, (n, count)
            X = jordan_block(n)
            pair = Matrix.direct_sum(X, -X.T) if n > 1 else Matrix.zeros(2)
            pieces += [(pair, standard_complex(n))] * (count // 2)
    return pieces


def build_symplectic_witness(t: JordanTuple) -> SymplecticWitness:
    """Bracket matrix of type t with a closed non-degenerate ω = e^0∧e^1 + ω_u.

    The column form [[0, 0], [v, E]] with E in sp(Ω0) is built first; the
    algebra uses its transpose as bracket matrix and ω_u = Ω0^{-1} on u.
    """
    if t.total() % 2 == 0 or not is_symplectic_admissible(t):
        raise InadmissibleError(f"{t} admits no symplectic structure")
    m = t.total()
    d_mult = dict(t.parts)
    d_mult[1] = t.trailing_ones
    head = None
    if t.is_scalar or t.trailing_ones % 2 == 1:
        d_mult[1] -= 1  # e1 is the extra zero block
    else:
        n_l = next(n for n, p in t.parts if n % 2 == 1 and p % 2 == 1)
        d_mult[n_l] -= 1
        d_mult[n_l - 1] = d_mult.get(n_l - 1, 0) + 1
        head = n_l - 1
    pieces = _sp_pieces(d_mult)
    v = [Fraction(0)] * (m - 1)
    if head is not None:
        idx = next(i for i, (E, _) in enumerate(pieces) if E.nrows == head and head % 2 == 0)
        pieces.insert(0, pieces.pop(idx))
        E0 = pieces[0][0]
        top = E0 ** (head - 1)
        v[next(i for i in range(head) if any(top[r, i] for r in range(head)))] = Fraction(1)
    E = _block_diag([p[0] for p in pieces])
    omega0 = _block_diag([p[1] for p in pieces])
    C = _bordered(v, E).T
    omega = Matrix.direct_sum(two_form(2, {(0, 1): 1}), omega0.inverse()) if m > 1 else two_form(2, {(0, 1): 1})
    return SymplecticWitness(BracketTable(C), omega)


# ----------------------------------------------------------------------------
# closed forms and the Pfaffian oracle


def closed_two_form_space(b: BracketTable) -> list[Matrix]:
    """Basis of the closed 2-forms, solving dω = 0 on all basis triples."""
    n = b.dimension
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    basis = [b.basis(i) for i in range(n)]

    def coeff_row(u, c):
        """Coefficients of ω(u, e_c) in the pair unknowns."""
        row = [Fraction(0)] * len(pairs)
        for i, ui in enumerate(u):
            if not ui or i == c:
                continue
            if i < c:
                row[index[(i, c)]] += ui
            else:
                row[index[(c, i)]] -= ui
        return row

    rows = []
    for i, j, k in itertools.combinations(range(n), 3):
        r = [Fraction(0)] * len(pairs)
        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
            br = b.bracket(basis[x], basis[y])
            if any(br):
                r = [a - c for a, c in zip(r, coeff_row(br, z))]
        if any(r):
            rows.append(r)
    if rows:
        sol = nullspace(Matrix(rows, len(pairs)))
    else:
        sol = [tuple(Fraction(int(i == k)) for i in range(len(pairs))) for k in range(len(pairs))]
    return [two_form(n, {pairs[k]: c for k, c in enumerate(vec) if c}) for vec in sol]


def _poly_mul_linear(poly: dict, lin: dict) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        for var, a in lin.items():
            key = tuple(sorted(mono + (var,)))
            out[key] = out.get(key, 0) + c * a
    return {k: v for k, v in out.items() if v}


def symbolic_pfaffian(forms: Sequence[Matrix]) -> dict:
    """Pfaffian of sum_k x_k forms[k] as a polynomial ``{sorted var tuple: coeff}``."""
    n = forms[0].nrows
    entry = {}
    for a in range(n):
        for c in range(a + 1, n):
            lin = {k: f[a, c] for k, f in enumerate(forms) if f[a, c]}
            entry[(a, c)] = lin

    @lru_cache(maxsize=None)
    def pf(idx: tuple) -> tuple:
        if not idx:
            return (((), Fraction(1)),)
        first, rest = idx[0], idx[1:]
        total: dict = {}
        for pos, c in enumerate(rest):
            lin = entry[(first, c)]
            if not lin:
                continue
            sub = dict(pf(rest[:pos] + rest[pos + 1:]))
            if not sub:
                continue
            sign = 1 if pos % 2 == 0 else -1
            for mono, v in _poly_mul_linear(sub, lin).items():
                total[mono] = total.get(mono, 0) + sign * v
        return tuple((k, v) for k, v in total.items() if v)

    return dict(pf(tuple(range(n))))


@dataclass(frozen=True)
class OracleResult:
    exists: bool
    form: Matrix | None
    method: str
    samples: int
    certain: bool
    log2_bound: float | None = None  # log2 of the false-negative probability when not certain

    def to_json(self) -> dict:
        return {
            "verdict": "exists" if self.exists else "none",
            "certain": self.certain,
            "method": self.method,
            "samples": self.samples,
            "false_negative_log2_bound": self.log2_bound,
            "form": None if self.form is None else format_form(self.form),
            "omega": None if self.form is None else self.form.to_json(),
        }


def _combine(forms: Sequence[Matrix], coeffs: Sequence[int]) -> Matrix:
    n = forms[0].nrows
    rows = [[Fraction(0)] * n for _ in range(n)]
    for f, c in zip(forms, coeffs):
        if c:
            for a in range(n):
                for b in range(n):
                    if f[a, b]:
                        rows[a][b] += c * f[a, b]
    return Matrix(rows, n)


SMALL_TRIES = 8
EXACT_PFAFFIAN_MAX_DIM = 8
TARGET_LOG2_BOUND = -128
BOX_BITS = 64


def symplectic_oracle(b: BracketTable, seed: int = 0, trials: int | None = None) -> OracleResult:
    """Search the closed 2-forms for a non-degenerate one.

    Positive answers come with a verified form. Negative answers are exact up
    to dimension 8 (the symbolic Pfaffian vanishes) and otherwise carry a
    Schwartz-Zippel bound: the Pfaffian has degree n/2, so each sample in a box of
    side (n/2)*2^64 misses a nonzero Pfaffian with probability at most 2^-64.
    """
    n = b.dimension
    if n % 2:
        raise PreconditionError("symplectic forms need even dimension")
    forms = closed_two_form_space(b)
    rng = random.Random(seed)
    samples = 0

    def found(form, method, certain=True):
        w = SymplecticWitness(b, form)
        assert verify_symplectic(w)
        return OracleResult(True, form, method, samples, certain)

    if not forms:
        return OracleResult(False, None, "no closed forms", 0, True)
    for _ in range(SMALL_TRIES):
        samples += 1
        form = _combine(forms, [rng.randint(-3, 3) for _ in forms])
        if determinant(form) != 0:
            return found(form, "small random point")
    degree = n // 2
    if n <= EXACT_PFAFFIAN_MAX_DIM:
        pf = symbolic_pfaffian(forms)
        if not pf:
            return OracleResult(False, None, "symbolic Pfaffian vanishes", samples, True)
        # nonzero polynomial of degree n/2: a box of side 2*degree+1 hits a non-root with probability >= 1/2
        side = 2 * degree + 1
        while True:
            samples += 1
            form = _combine(forms, [rng.randint(-side, side) for _ in forms])
            if determinant(form) != 0:
                return found(form, "symbolic Pfaffian nonzero")
    side = degree * 2**BOX_BITS
    per_sample = math.log2(degree / side)
    count = trials if trials is not None else math.ceil(TARGET_LOG2_BOUND / per_sample)
    for _ in range(count):
        samples += 1
        form = _combine(forms, [rng.randrange(side) for _ in forms])
        if determinant(form) != 0:
            return found(form, "random point in large box")
    return OracleResult(False, None, "polynomial identity testing", samples, False, count * per_sample)
