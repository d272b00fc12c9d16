"""Jordan-type invariants of rational matrices and the isomorphism test for g_A.

A matrix A defines the almost abelian algebra g_A = R e0 ⋉_A R^d with
[e0, v] = A v. Two such algebras are isomorphic exactly when one matrix is
conjugate to a nonzero multiple of the other, so everything here works with
conjugacy invariants: the Jordan tuple of each eigenvalue, grouped into a
:class:`SpectralProfile`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconclusiveError, NotNilpotentError, ParseError, PreconditionError
from .exact import (
    Matrix,
    Poly,
    as_rational,
    char_poly,
    factor_over_rationals,
    kernel_dimension_sequence,
    rank,
    real_root_count,
    real_roots_between,
)
from .tuples import JordanTuple, as_tuple, format_tuple, parse_tuple

__all__ = [
    "Eigenvalue",
    "EigenClass",
    "SpectralProfile",
    "LieAlgebraSpec",
    "JordanTuple",
    "jordan_block",
    "companion",
    "nilpotent_matrix",
    "realize",
    "tuple_from_kernel_sequence",
    "nilpotent_tuple",
    "spectral_profile",
    "semisimple_profile",
    "nilpotent_part_tuple",
    "isomorphic",
    "normalize_generator",
]


# ----------------------------------------------------------------------------
# eigenvalue descriptors


def _purely_imaginary(p: Poly) -> bool:
    """All roots of the irreducible p lie on the imaginary axis (p(x) = q(x^2), q with negative roots)."""
    q = p.in_x_squared()
    if q is None or q.degree < 1:
        return False
    # q(0) != 0 because p is irreducible of degree >= 2
    return real_roots_between(q, None, Fraction(0)) == q.degree


@dataclass(frozen=True)
class Eigenvalue:
    """A rational eigenvalue, or the set of roots of one irreducible factor."""

    value: Fraction | None = None
    minpoly: Poly | None = None
    real_roots: int = 1
    imaginary: bool = False

    @classmethod
    def rational(cls, value) -> "Eigenvalue":
        return cls(value=as_rational(value))

    @classmethod
    def algebraic(cls, minpoly: Poly) -> "Eigenvalue":
        p = minpoly.monic()
        if p.degree < 2:
            raise PreconditionError("algebraic descriptors need degree >= 2; use a rational value")
        return cls(minpoly=p, real_roots=real_root_count(p), imaginary=_purely_imaginary(p))

    @classmethod
    def from_factor(cls, p: Poly) -> "Eigenvalue":
        if p.degree == 1:
            return cls.rational(-p.coeffs[0] / p.coeffs[1])
        return cls.algebraic(p)

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def degree(self) -> int:
        """Number of (complex) roots described."""
        return 1 if self.is_rational else self.minpoly.degree

    @property
    def real_count(self) -> int:
        return 1 if self.is_rational else self.real_roots

    @property
    def poly(self) -> Poly:
        if self.is_rational:
            return Poly([-self.value, 1])
        return self.minpoly

    def negated(self) -> "Eigenvalue":
        if self.is_rational:
            return Eigenvalue(value=-self.value)
        return Eigenvalue(self.value, self.minpoly.negated_variable().monic(), self.real_roots, self.imaginary)

    def scaled(self, c) -> "Eigenvalue":
        c = as_rational(c)
        if c == 0:
            raise PreconditionError("scaling by zero")
        if self.is_rational:
            return Eigenvalue(value=c * self.value)
        return Eigenvalue(None, self.minpoly.root_scaled(c), self.real_roots, self.imaginary)

    def is_self_negating(self) -> bool:
        """The root set is closed under negation (only 0, or even/odd minimal polynomials)."""
        return self.negated() == self

    @property
    def key(self):
        if self.is_rational:
            return (0, self.value)
        return (1, self.minpoly.degree, self.minpoly.coeffs)

    def __str__(self):
        if self.is_rational:
            return str(self.value)
        return f"roots of {self.minpoly}"

    def to_json(self):
        if self.is_rational:
            return str(self.value)
        return {
            "minpoly": [str(c) for c in self.minpoly.coeffs],
            "real_roots": self.real_roots,
            "imaginary": self.imaginary,
        }

    @classmethod
    def from_json(cls, obj) -> "Eigenvalue":
        if isinstance(obj, (str, int)) and not isinstance(obj, bool):
            try:
                return cls.rational(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad eigenvalue {obj!r}: {exc}") from None
        if not isinstance(obj, dict) or "minpoly" not in obj:
            raise ParseError(f"eigenvalue must be a rational string or an object with 'minpoly', got {obj!r}")
        try:
            p = Poly(as_rational(c) for c in obj["minpoly"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad minpoly {obj['minpoly']!r}: {exc}") from None
        if p.degree < 1:
            raise ParseError("minpoly must have positive degree")
        factors = factor_over_rationals(p)
        if len(factors) != 1 or factors[0][1] != 1:
            raise ParseError(f"minpoly {p} is not irreducible over the rationals")
        if p.degree == 1:
            return cls.from_factor(p)
        ev = cls.algebraic(p)
        if "real_roots" in obj and obj["real_roots"] != ev.real_roots:
            raise ParseError(f"minpoly {p} has {ev.real_roots} real roots, not {obj['real_roots']}")
        if "imaginary" in obj and bool(obj["imaginary"]) != ev.imaginary:
            raise ParseError(f"imaginary flag {obj['imaginary']} disagrees with minpoly {p}")
        return ev


def _as_eigenvalue(value) -> Eigenvalue:
    if isinstance(value, Eigenvalue):
        return value
    if isinstance(value, Poly):
        return Eigenvalue.from_factor(value)
    return Eigenvalue.rational(value)


@dataclass(frozen=True)
class EigenClass:
    eigenvalue: Eigenvalue
    tuple: JordanTuple

    @property
    def m(self) -> int:
        """Per-root generalized eigenspace dimension."""
        return self.tuple.total()

    @property
    def size(self) -> int:
        return self.m * self.eigenvalue.degree

    def to_json(self) -> dict:
        return {"eigenvalue": self.eigenvalue.to_json(), "tuple": format_tuple(self.tuple)}

    def __str__(self):
        return f"{self.eigenvalue} -> {self.tuple}"


@dataclass(frozen=True)
class SpectralProfile:
    """Conjugacy invariant of a real matrix: eigenvalue classes with per-root Jordan tuples."""

    dimension: int
    classes: tuple[EigenClass, ...] = field(default=())

    def __post_init__(self):
        classes = tuple(sorted(self.classes, key=lambda c: c.eigenvalue.key))
        object.__setattr__(self, "classes", classes)
        keys = [c.eigenvalue.key for c in classes]
        if len(set(keys)) != len(keys):
            raise PreconditionError("eigenvalue descriptors must be distinct")
        if any(c.m == 0 for c in classes):
            raise PreconditionError("empty eigenvalue class")
        covered = sum(c.size for c in classes)
        if covered != self.dimension:
            raise PreconditionError(f"classes cover {covered} dimensions, profile says {self.dimension}")

    @classmethod
    def from_mapping(cls, mapping: Mapping, dimension: int | None = None) -> "SpectralProfile":
        """Build from ``{eigenvalue: tuple}``; keys may be rationals, Polys or Eigenvalues,
        values JordanTuples or tuple text."""
        classes = tuple(EigenClass(_as_eigenvalue(k), as_tuple(v)) for k, v in mapping.items())
        if dimension is None:
            dimension = sum(c.size for c in classes)
        return cls(dimension, classes)

    @classmethod
    def nilpotent(cls, t: JordanTuple) -> "SpectralProfile":
        return cls(t.total(), (EigenClass(Eigenvalue.rational(0), t),))

    # queries ----------------------------------------------------------------
    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def is_nilpotent(self) -> bool:
        return all(c.eigenvalue.is_zero for c in self.classes)

    def zero_class(self) -> EigenClass | None:
        return next((c for c in self.classes if c.eigenvalue.is_zero), None)

    def find(self, eigenvalue: Eigenvalue) -> EigenClass | None:
        return next((c for c in self.classes if c.eigenvalue == eigenvalue), None)

    def has_algebraic(self) -> bool:
        return any(not c.eigenvalue.is_rational for c in self.classes)

    def without(self, *eigenvalues: Eigenvalue) -> "SpectralProfile":
        keep = tuple(c for c in self.classes if c.eigenvalue not in eigenvalues)
        return SpectralProfile(sum(c.size for c in keep), keep)

    def scaled(self, c) -> "SpectralProfile":
        return SpectralProfile(
            self.dimension, tuple(EigenClass(k.eigenvalue.scaled(c), k.tuple) for k in self.classes)
        )

    def sort_key(self):
        return tuple((c.eigenvalue.key, c.tuple.sort_key()) for c in self.classes)

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        return {"dimension": self.dimension, "classes": [c.to_json() for c in self.classes]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "SpectralProfile":
        if not isinstance(obj, dict) or "classes" not in obj or "dimension" not in obj:
            raise ParseError('profile JSON needs "dimension" and "classes"')
        if not isinstance(obj["dimension"], int) or obj["dimension"] < 0:
            raise ParseError('"dimension" must be a non-negative integer')
        classes = []
        for i, entry in enumerate(obj["classes"]):
            if not isinstance(entry, dict) or "eigenvalue" not in entry or "tuple" not in entry:
                raise ParseError(f'class {i} needs "eigenvalue" and "tuple"')
            try:
                classes.append(EigenClass(Eigenvalue.from_json(entry["eigenvalue"]), parse_tuple(str(entry["tuple"]))))
            except ParseError as exc:
                raise ParseError(f"class {i}: {exc}") from None
        try:
            return cls(obj["dimension"], tuple(classes))
        except PreconditionError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.classes) + "}"


@dataclass(frozen=True)
class LieAlgebraSpec:
    """The algebra g_A with brackets [e0, v] = A v on the abelian ideal R^d."""

    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise PreconditionError("the defining matrix must be square")

    @property
    def dimension(self) -> int:
        return self.matrix.nrows + 1


# ----------------------------------------------------------------------------
# matrices from invariants


def jordan_block(n: int, eigenvalue=0) -> Matrix:
    """n x n Jordan block with ones on the subdiagonal (J e_k = e_{k+1})."""
    lam = as_rational(eigenvalue)
    return Matrix([[lam if i == j else (1 if i == j + 1 else 0) for j in range(n)] for i in range(n)], n)


def companion(p: Poly) -> Matrix:
    """Companion matrix of a monic p: ones on the subdiagonal, last column -p_0..-p_{d-1}."""
    p = p.monic()
    d = p.degree
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -p.coeffs[i]
    return Matrix(rows, d)


def nilpotent_matrix(t: JordanTuple) -> Matrix:
    """Direct sum of nilpotent Jordan blocks of type t, largest first."""
    return Matrix.direct_sum(*(jordan_block(n) for n in t.blocks())) if t.total() else Matrix.zeros(0)


def realize(profile: SpectralProfile) -> Matrix:
    """A rational matrix with the given profile (companion blocks for algebraic classes)."""
    blocks = []
    for c in profile.classes:
        for n in c.tuple.blocks():
            if c.eigenvalue.is_rational:
                blocks.append(jordan_block(n, c.eigenvalue.value))
            else:
                blocks.append(companion(c.eigenvalue.minpoly ** n))
    if not blocks:
        return Matrix.zeros(0)
    return Matrix.direct_sum(*blocks)


# ----------------------------------------------------------------------------
# invariants from matrices


def tuple_from_kernel_sequence(seq: Iterable[int]) -> JordanTuple:
    """Jordan tuple from dim ker N^1, dim ker N^2, ... (given up to stabilization).

    d_s - d_{s-1} counts the blocks of size >= s.
    """
    d = [0] + list(seq)
    at_least = [d[s] - d[s - 1] for s in range(1, len(d))] + [0]
    sizes = []
    for s in range(1, len(d)):
        count = at_least[s - 1] - at_least[s]
        if count < 0:
            raise PreconditionError(f"{list(seq)} is not a kernel dimension sequence")
        sizes += [s] * count
    return JordanTuple.from_blocks(sizes)


def nilpotent_tuple(m: Matrix) -> JordanTuple:
    seq = kernel_dimension_sequence(m)
    if seq[-1] != m.nrows:
        raise NotNilpotentError(
            f"matrix is not nilpotent: kernels of its powers stabilize at dimension {seq[-1]} "
            f"< {m.nrows} from power {len(seq)} on",
            power=len(seq),
        )
    return tuple_from_kernel_sequence(seq)


def _factor_kernel_sequence(m: Matrix, p: Poly, target: int) -> list[int]:
    base = p(m)
    power = base
    seq = []
    n = m.nrows
    while True:
        d = n - rank(power)
        seq.append(d)
        if d == target:
            return seq
        if len(seq) > n:
            raise AssertionError("generalized kernel did not reach its expected dimension")
        power = power @ base


def spectral_profile(m: Matrix) -> SpectralProfile:
    if not m.is_square:
        raise PreconditionError("spectral profile needs a square matrix")
    classes = []
    for p, mult in factor_over_rationals(char_poly(m)) if m.nrows else []:
        deg = p.degree
        seq = _factor_kernel_sequence(m, p, deg * mult)
        if any(d % deg for d in seq):
            raise AssertionError(f"kernel dimensions {seq} of {p} not divisible by its degree")
        classes.append(EigenClass(Eigenvalue.from_factor(p), tuple_from_kernel_sequence([d // deg for d in seq])))
    return SpectralProfile(m.nrows, tuple(classes))


def semisimple_profile(p: SpectralProfile) -> SpectralProfile:
    return SpectralProfile(
        p.dimension, tuple(EigenClass(c.eigenvalue, JordanTuple.scalar(c.m)) for c in p.classes)
    )


def nilpotent_part_tuple(p: SpectralProfile) -> JordanTuple:
    blocks = []
    for c in p.classes:
        blocks += c.tuple.blocks() * c.eigenvalue.degree
    return JordanTuple.from_blocks(blocks)


# ----------------------------------------------------------------------------
# isomorphism and normalization


def _as_profile(x) -> SpectralProfile:
    if isinstance(x, SpectralProfile):
        return x
    if isinstance(x, LieAlgebraSpec):
        return spectral_profile(x.matrix)
    if isinstance(x, Matrix):
        return spectral_profile(x)
    raise TypeError(f"expected a matrix, LieAlgebraSpec or SpectralProfile, got {type(x).__name__}")


def _scale_free_invariant(p: SpectralProfile):
    """Per-root data preserved by every real scaling: tuple, zero/real/imaginary flags."""
    out = []
    for c in p.classes:
        ev = c.eigenvalue
        if ev.is_zero:
            out.append(("zero", c.tuple.sort_key(), 1))
            continue
        real = ev.real_count
        imag = ev.degree if ev.imaginary else 0
        other = ev.degree - real - imag
        for kind, count in (("real", real), ("imaginary", imag), ("complex", other)):
            if count:
                out.append((kind, c.tuple.sort_key(), count))
    merged: dict = {}
    for kind, key, count in out:
        merged[(kind, key)] = merged.get((kind, key), 0) + count
    return merged


def _integer_root(value: int, i: int) -> int | None:
    lo, hi = 0, 1
    while hi ** i <= value:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** i < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** i == value else None


def _rational_root(r: Fraction, i: int) -> Fraction | None:
    n, d = _integer_root(r.numerator, i), _integer_root(r.denominator, i)
    return None if n is None or d is None else Fraction(n, d)


def _scalings_between(p: Poly, q: Poly) -> set[Fraction]:
    """Rational c with c^deg p(x/c) = q: coefficient i places below the top scales by c^i."""
    d = p.degree
    if d != q.degree or d < 2:
        return set()
    for i in range(1, d + 1):
        pc, qc = p.coeffs[d - i], q.coeffs[d - i]
        if (pc == 0) != (qc == 0):
            return set()
        if pc == 0:
            continue
        r = Fraction(qc) / Fraction(pc)
        if i % 2 == 1:
            root = _rational_root(abs(r), i)
            return set() if root is None else {root if r > 0 else -root}
        if r < 0:
            return set()
        root = _rational_root(r, i)
        return set() if root is None else {root, -root}
    return set()


def isomorphic(a, b) -> tuple[bool, Fraction | None]:
    """Decide whether g_a and g_b are isomorphic, i.e. b ~ c*a for some real c != 0.

    Returns ``(answer, c)`` with a rational witness scalar when the answer is
    yes. Raises :class:`InconclusiveError` when only an irrational c could
    work and algebraic eigenvalues make that impossible to settle exactly.
    """
    pa, pb = _as_profile(a), _as_profile(b)
    if pa.dimension != pb.dimension:
        raise PreconditionError(f"sizes differ ({pa.dimension} vs {pb.dimension})")
    if pa.is_nilpotent() or pb.is_nilpotent():
        if pa.is_nilpotent() and pb.is_nilpotent() and pa == pb:
            return True, Fraction(1)
        return False, None
    if _scale_free_invariant(pa) != _scale_free_invariant(pb):
        return False, None
    candidates = {Fraction(1), Fraction(-1)}
    for ca in pa.classes:
        for cb in pb.classes:
            if ca.eigenvalue.is_rational and cb.eigenvalue.is_rational and not ca.eigenvalue.is_zero and not cb.eigenvalue.is_zero:
                candidates.add(cb.eigenvalue.value / ca.eigenvalue.value)
            elif not ca.eigenvalue.is_rational and not cb.eigenvalue.is_rational:
                candidates |= _scalings_between(ca.eigenvalue.minpoly, cb.eigenvalue.minpoly)
    for c in sorted(candidates, key=lambda x: (abs(x), x < 0)):
        if pa.scaled(c) == pb:
            return True, c
    if not pa.has_algebraic() and not pb.has_algebraic():
        # any valid c maps a nonzero rational eigenvalue onto another, so it was a candidate
        return False, None
    raise InconclusiveError(
        "no rational scaling relates the spectra; an irrational scaling between algebraic classes "
        "cannot be ruled out exactly"
    )


def _max_modulus(p: SpectralProfile) -> Fraction | None:
    """Largest modulus among nonzero eigenvalues if it is a certified rational, else None."""
    rational = [abs(c.eigenvalue.value) for c in p.classes if c.eigenvalue.is_rational and not c.eigenvalue.is_zero]
    if not rational:
        return None
    r = max(rational)
    for c in p.classes:
        ev = c.eigenvalue
        if ev.is_rational:
            continue
        if ev.real_roots:
            # a real irrational root: any root beyond r means the max is irrational
            poly = ev.minpoly
            if real_roots_between(poly, None, -r) + real_roots_between(poly, r, None) > 0:
                return None
        if ev.degree - ev.real_roots:
            if ev.degree != 2:
                return None  # modulus of higher-degree non-real roots is not compared exactly
            # x^2 + b x + c with non-real roots has |root|^2 = c
            if ev.minpoly.coeffs[0] > r * r:
                return None
    return r


def _default_distinguished(p: SpectralProfile) -> Eigenvalue | None:
    rational = [c for c in p.classes if c.eigenvalue.is_rational]
    if not rational:
        return None
    best = min(rational, key=lambda c: (-c.m, abs(c.eigenvalue.value), c.eigenvalue.value < 0))
    return best.eigenvalue


def normalize_generator(p: SpectralProfile, distinguished: Eigenvalue | None = None) -> tuple[SpectralProfile, str]:
    """Canonical scaling of a profile up to isomorphism of the algebra.

    With a zero class the profile is scaled so the largest nonzero modulus is
    1; otherwise the distinguished eigenvalue (by default the rational class
    of largest multiplicity, smallest modulus breaking ties) is sent to 1. Where the ± sign is free,
    the smaller profile in the lexicographic order wins.
    """
    if p.is_nilpotent():
        return p, "nilpotent: unchanged"
    if p.zero_class() is not None:
        d = _max_modulus(p)
        if d is None:
            return p, "irrational normalizer: the largest modulus is not a certified rational"
        up, down = p.scaled(1 / d), p.scaled(-1 / d)
        chosen = min(up, down, key=SpectralProfile.sort_key)
        sign = "+" if chosen is up else "-"
        return chosen, f"zero eigenvalue present: scaled by {sign}1/{d}; sign fixed by profile order"
    target = distinguished if distinguished is not None else _default_distinguished(p)
    if target is None or not target.is_rational:
        return p, "irrational normalizer: no rational distinguished eigenvalue"
    if p.find(target) is None:
        raise PreconditionError(f"distinguished eigenvalue {target} is not in the profile")
    return p.scaled(1 / target.value), f"distinguished eigenvalue {target} scaled to 1"
