"""Exact linear algebra and polynomial kernels over the rationals.

Scalars are :class:`fractions.Fraction`. Nothing in this module uses floating
point; every zero test is exact.
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotSquarefreeError, ParseError, PreconditionError, UnsupportedFactorError

Rational = Fraction

# Limits of the factorization kernel; beyond these factor_over_rationals refuses.
MAX_FACTOR_DEGREE = 40
MAX_MODULAR_FACTORS = 16
MAX_DIVISOR_ARGUMENT = 10**12


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar")
        return Fraction(text)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


# ----------------------------------------------------------------------------
# Matrices


class Matrix:
    """Immutable dense matrix with rational entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise PreconditionError("ragged rows")
        else:
            width = ncols or 0
        self.rows = data
        self.nrows = len(data)
        self.ncols = width
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def direct_sum(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r + i][c:c + b.ncols] = row
            r += b.nrows
            c += b.ncols
        return cls(out, ncols=m)

    # basic protocol --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # arithmetic ------------------------------------------------------------
    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise PreconditionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(([-a for a in r] for r in self.rows), self.ncols)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return self @ scalar
        c = as_rational(scalar)
        return Matrix(([c * a for a in r] for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in cols])
        return Matrix(out, other.ncols)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise PreconditionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        if len(vector) != self.ncols:
            raise PreconditionError("vector length mismatch")
        return tuple(sum((a * v for a, v in zip(r, vector) if a and v), Fraction(0)) for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.nrows) if self.nrows else Matrix.zeros(self.ncols, 0)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_skew(self) -> bool:
        return self.is_square and all(
            self.rows[i][j] == -self.rows[j][i] for i in range(self.nrows) for j in range(i, self.ncols)
        )

    # exact elimination -----------------------------------------------------
    def rank(self) -> int:
        return rank(self)

    def det(self) -> Fraction:
        return determinant(self)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise PreconditionError("inverse of a non-square matrix")
        n = self.nrows
        aug = Matrix([list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)])
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise PreconditionError("matrix is singular")
        return Matrix([r[n:] for r in red.rows], n)

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        return nullspace(self)

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {"rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ParseError('matrix JSON must be an object with a "rows" array')
        rows = obj["rows"]
        if not isinstance(rows, list):
            raise ParseError('"rows" must be an array of arrays')
        parsed = []
        for i, row in enumerate(rows):
            if not isinstance(row, list):
                raise ParseError(f"row {i} is not an array")
            out = []
            for j, cell in enumerate(row):
                if not isinstance(cell, (str, int)) or isinstance(cell, bool):
                    raise ParseError(f"entry at row {i}, column {j} must be a string like \"3\" or \"-2/5\"")
                try:
                    out.append(as_rational(cell))
                except (ValueError, ZeroDivisionError, TypeError) as exc:
                    raise ParseError(f"bad entry {cell!r} at row {i}, column {j}: {exc}") from None
            parsed.append(out)
        if parsed and any(len(r) != len(parsed[0]) for r in parsed):
            bad = next(i for i, r in enumerate(parsed) if len(r) != len(parsed[0]))
            raise ParseError(f"row {bad} has {len(parsed[bad])} entries, expected {len(parsed[0])}")
        return cls(parsed)


def _integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Scale every row to integers; returns rows and the product of the scalings."""
    rows = []
    scale = 1
    for r in m.rows:
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
        scale *= den
    return rows, scale


def _bareiss(rows: list[list[int]]) -> tuple[int, int, int]:
    """Fraction-free elimination in place. Returns (rank, last pivot, swap sign)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    r = 0
    prev = 1
    sign = 1
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            sign = -sign
        pr = rows[r]
        pc = pr[c]
        for i in range(r + 1, m):
            ri = rows[i]
            a = ri[c]
            for j in range(c + 1, n):
                ri[j] = (ri[j] * pc - a * pr[j]) // prev
            ri[c] = 0
        prev = pc
        r += 1
    return r, prev, sign


def rank(m: Matrix) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows, _ = _integer_rows(m)
    return _bareiss(rows)[0]


def determinant(m: Matrix) -> Fraction:
    if not m.is_square:
        raise PreconditionError("determinant of a non-square matrix")
    if m.nrows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(m)
    r, last, sign = _bareiss(rows)
    if r < m.nrows:
        return Fraction(0)
    return Fraction(sign * last, scale)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        p = next((i for i in range(r, m.nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return Matrix(rows, m.ncols), pivots


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column of the RREF."""
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, pc in zip(red.rows, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel_dimension_sequence(m: Matrix) -> list[int]:
    """``[dim ker m, dim ker m^2, ...]`` up to (not repeating) the stable value."""
    if not m.is_square:
        raise PreconditionError("kernel sequence needs a square matrix")
    n = m.nrows
    seq: list[int] = []
    power = m
    prev = 0
    while True:
        d = n - rank(power)
        if seq and d == prev:
            return seq
        seq.append(d)
        if d == prev or d == n:
            return seq
        prev = d
        power = power @ m


# ----------------------------------------------------------------------------
# Polynomials


class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __lt__(self, other: "Poly"):
        return (self.degree, self.coeffs) < (other.degree, other.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, value):
        if isinstance(value, Matrix):
            n = value.nrows
            result = Matrix.zeros(n)
            ident = Matrix.identity(n)
            for c in reversed(self.coeffs):
                result = result @ value + ident * c
            return result
        x = as_rational(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def negated_variable(self) -> "Poly":
        """``p(-x)``."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def root_scaled(self, c) -> "Poly":
        """Monic polynomial whose roots are ``c`` times the roots of ``self``."""
        c = as_rational(c)
        if c == 0:
            raise PreconditionError("scaling by zero")
        d = self.degree
        return Poly(a * c ** (d - k) for k, a in enumerate(self.coeffs)).monic()

    def in_x_squared(self) -> "Poly | None":
        """Return q with self(x) = q(x^2), or None if an odd power occurs."""
        if any(c for k, c in enumerate(self.coeffs) if k % 2):
            return None
        return Poly(self.coeffs[::2])

    def integer_coefficients(self) -> list[int]:
        """Primitive integer multiple with positive leading coefficient."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints


def _as_poly(value) -> Poly:
    return value if isinstance(value, Poly) else Poly([value])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def char_poly(m: Matrix) -> Poly:
    """Characteristic polynomial det(xI - m) by the Faddeev-LeVerrier recurrence."""
    if not m.is_square:
        raise PreconditionError("characteristic polynomial needs a square matrix")
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        aux = m @ aux + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(m @ aux).trace() / k
    return Poly(coeffs)


# --- factorization -----------------------------------------------------------


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime a_i with p ~ prod a_i^i."""
    f = p.monic()
    if f.degree < 1:
        return []
    out = []
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f // a0
    c = df // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise PreconditionError("divisors of zero")
    if n > MAX_DIVISOR_ARGUMENT:
        raise UnsupportedFactorError(f"coefficient {n} too large for divisor enumeration")
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _rational_roots(coeffs: list[int]) -> list[Fraction]:
    """Rational roots of an integer polynomial with nonzero constant term."""
    roots = []
    d = len(coeffs) - 1
    for q in _divisors(coeffs[-1]):
        for p in _divisors(coeffs[0]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r.denominator != q or r in roots:
                    continue
                # q^d f(p/q) as an integer avoids Fraction churn
                if sum(c * (s * p) ** k * q ** (d - k) for k, c in enumerate(coeffs)) == 0:
                    roots.append(r)
    return roots


# --- arithmetic in GF(P)[x], lists of ints lowest degree first ------------------

def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mul(a: list[int], b: list[int], P: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _gf_trim([c % P for c in out])


def _gf_divmod(a: list[int], b: list[int], P: int) -> tuple[list[int], list[int]]:
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, P)
    quot = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * inv % P
        if c:
            quot[k - db] = c
            for i, y in enumerate(b):
                rem[k - db + i] = (rem[k - db + i] - c * y) % P
    return _gf_trim(quot), _gf_trim(rem[:db])


def _gf_monic(a: list[int], P: int) -> list[int]:
    inv = pow(a[-1], -1, P)
    return [c * inv % P for c in a]


def _gf_gcd(a: list[int], b: list[int], P: int) -> list[int]:
    while b:
        a, b = b, _gf_divmod(a, b, P)[1]
    return _gf_monic(a, P) if a else a


def _gf_powmod(base: list[int], e: int, mod: list[int], P: int) -> list[int]:
    result = [1]
    base = _gf_divmod(base, mod, P)[1]
    while e:
        if e & 1:
            result = _gf_divmod(_gf_mul(result, base, P), mod, P)[1]
        e >>= 1
        if e:
            base = _gf_divmod(_gf_mul(base, base, P), mod, P)[1]
    return result


def _gf_sub(a: list[int], b: list[int], P: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _gf_trim([(x - y) % P for x, y in zip(a, b)])


def _gf_distinct_degree(f: list[int], P: int) -> list[tuple[list[int], int]]:
    out = []
    h = [0, 1]
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = _gf_powmod(h, P, f, P)
        g = _gf_gcd(f, _gf_sub(h, [0, 1], P), P)
        if len(g) > 1:
            out.append((g, k))
            f = _gf_divmod(f, g, P)[0]
            h = _gf_divmod(h, f, P)[1] if len(f) > 1 else h
    if len(f) > 1:
        out.append((_gf_monic(f, P), len(f) - 1))
    return out


def _gf_equal_degree(f: list[int], k: int, P: int, rng) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of a product of degree-k irreducibles (P odd)."""
    if len(f) - 1 == k:
        return [f]
    e = (P**k - 1) // 2
    while True:
        a = [rng.randrange(P) for _ in range(len(f) - 1)]
        if len(_gf_trim(list(a))) < 2:
            continue
        g = _gf_gcd(f, _gf_sub(_gf_powmod(_gf_trim(a), e, f, P), [1], P), P)
        if 1 < len(g) < len(f):
            return _gf_equal_degree(g, k, P, rng) + _gf_equal_degree(_gf_divmod(f, g, P)[0], k, P, rng)


# Mersenne primes, used as moduli that comfortably exceed the coefficient bound.
_MERSENNE_EXPONENTS = (127, 521, 607, 1279, 2203, 2281)


def _zassenhaus(ints: list[int]) -> list[Poly]:
    """Irreducible factors over Q of a squarefree primitive integer polynomial.

    The polynomial is factored modulo a prime larger than twice a Mignotte-type
    coefficient bound, so no Hensel lifting is needed; true factors are then
    recovered by trying products of modular factors.
    """
    n = len(ints) - 1
    if n > MAX_FACTOR_DEGREE:
        raise UnsupportedFactorError(f"degree {n} exceeds the factorization limit {MAX_FACTOR_DEGREE}")
    lc = ints[-1]
    norm = math.isqrt(sum(c * c for c in ints)) + 1
    bound = abs(lc) * norm * 2**n
    f_rat = Poly(ints)
    for exp in _MERSENNE_EXPONENTS:
        P = 2**exp - 1
        if P <= 2 * bound:
            continue
        fp = _gf_monic([c % P for c in ints], P)
        if len(_gf_gcd(fp, _gf_derivative(fp, P), P)) > 1:
            continue
        break
    else:
        raise UnsupportedFactorError("no usable modulus for the coefficient bound")
    rng = random.Random(0x5EED)
    modular: list[list[int]] = []
    for g, k in _gf_distinct_degree(fp, P):
        modular.extend(_gf_equal_degree(g, k, P, rng))
    if len(modular) > MAX_MODULAR_FACTORS:
        raise UnsupportedFactorError(f"{len(modular)} modular factors exceed the recombination limit")

    def symmetric(c: int) -> int:
        c %= P
        return c - P if c > P // 2 else c

    factors: list[Poly] = []
    remaining = list(range(len(modular)))
    f = f_rat
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in itertools.combinations(remaining, size):
            g = [lc % P]
            for i in subset:
                g = _gf_mul(g, modular[i], P)
            cand = Poly([symmetric(c) for c in g])
            q, r = divmod(f, cand)
            if r.is_zero():
                factors.append(cand.monic())
                f = q
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            size += 1
    factors.append(f.monic())
    return factors


def _gf_derivative(a: list[int], P: int) -> list[int]:
    return _gf_trim([k * c % P for k, c in enumerate(a)][1:])


def _factor_squarefree(f: Poly) -> list[Poly]:
    f = f.monic()
    factors: list[Poly] = []
    if f.degree < 1:
        return factors
    if f.coeffs[0] == 0:
        factors.append(Poly.x())
        f = f // Poly.x()
        if f.degree < 1:
            return factors
    ints = f.integer_coefficients()
    small = max(abs(ints[0]), abs(ints[-1])) <= MAX_DIVISOR_ARGUMENT
    for r in _rational_roots(ints) if small else []:
        lin = Poly([-r, 1])
        factors.append(lin)
        f = f // lin
    f = f.monic()
    if f.degree < 1:
        return factors
    if f.degree <= 3:
        # no rational root left, so a quadratic or cubic is irreducible
        factors.append(f)
        return factors
    factors.extend(_zassenhaus(f.integer_coefficients()))
    return factors


def factor_over_rationals(p: Poly) -> list[tuple[Poly, int]]:
    """Complete factorization into monic irreducibles over Q with multiplicities.

    The result is sorted by (degree, coefficients); the leading coefficient of
    ``p`` is dropped.
    """
    if p.is_zero():
        raise PreconditionError("cannot factor the zero polynomial")
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(part):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


# --- real roots ----------------------------------------------------------------


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _at_infinity(seq: list[Poly], positive: bool) -> list[Fraction]:
    return [s.lc if positive or s.degree % 2 == 0 else -s.lc for s in seq]


def _require_squarefree(p: Poly):
    if p.is_zero():
        raise PreconditionError("zero polynomial has no finite root count")
    if poly_gcd(p, p.derivative()).degree > 0:
        raise NotSquarefreeError(f"{p} is not squarefree")


def real_root_count(p: Poly) -> int:
    """Number of distinct real roots of a squarefree polynomial (Sturm)."""
    _require_squarefree(p)
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes(_at_infinity(seq, False)) - _sign_changes(_at_infinity(seq, True))


def real_roots_between(p: Poly, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; ``None`` means the matching infinity."""
    _require_squarefree(p)
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    va = _sign_changes(_at_infinity(seq, False) if lo is None else [s(lo) for s in seq])
    vb = _sign_changes(_at_infinity(seq, True) if hi is None else [s(hi) for s in seq])
    return va - vb
