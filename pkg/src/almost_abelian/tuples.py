"""Jordan tuples of nilpotent matrices and the combinatorics built on them.

A tuple ``(n1,...,nk; p1,...,pk; t)`` records p_i Jordan blocks of size n_i
(sizes >= 2, strictly decreasing) plus t blocks of size 1. The scalar case,
where every block has size 1, is written ``(m)`` and stored with no parts.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import ParseError, PreconditionError

COMPLEX = "complex"
SYMPLECTIC = "symplectic"
STRUCTURES = (COMPLEX, SYMPLECTIC)


@dataclass(frozen=True, order=False)
class JordanTuple:
    parts: tuple[tuple[int, int], ...] = ()
    trailing_ones: int = 0

    def __post_init__(self):
        parts = tuple((int(n), int(p)) for n, p in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.trailing_ones < 0:
            raise PreconditionError("trailing_ones must be non-negative")
        prev = None
        for n, p in parts:
            if n < 2:
                raise PreconditionError(f"block size {n} must be at least 2 (size-1 blocks go in trailing_ones)")
            if p < 1:
                raise PreconditionError(f"multiplicity of size {n} must be positive")
            if prev is not None and n >= prev:
                raise PreconditionError("block sizes must strictly decrease")
            prev = n

    # construction -----------------------------------------------------------
    @classmethod
    def scalar(cls, m: int) -> "JordanTuple":
        """The all-ones tuple (m)."""
        return cls((), m)

    @classmethod
    def from_blocks(cls, sizes: Iterable[int]) -> "JordanTuple":
        """Canonical tuple from an unordered list of block sizes."""
        counts = Counter(int(s) for s in sizes)
        if any(s < 1 for s in counts):
            raise PreconditionError("block sizes must be positive")
        ones = counts.pop(1, 0)
        return cls(tuple(sorted(counts.items(), reverse=True)), ones)

    # views ------------------------------------------------------------------
    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.parts)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def is_scalar(self) -> bool:
        return not self.parts

    def total(self) -> int:
        return sum(n * p for n, p in self.parts) + self.trailing_ones

    def blocks(self) -> list[int]:
        """Block sizes in non-increasing order, ones included."""
        out = [n for n, p in self.parts for _ in range(p)]
        return out + [1] * self.trailing_ones

    def step(self) -> int:
        """Nilpotency index: the largest block (1 for the scalar tuple, 0 if empty)."""
        if self.parts:
            return self.parts[0][0]
        return 1 if self.trailing_ones else 0

    def sort_key(self):
        return (self.total(), tuple(-b for b in self.blocks()))

    def __lt__(self, other: "JordanTuple"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "(" + format_tuple(self) + ")"

    def __repr__(self):
        return f"JordanTuple({format_tuple(self)!r})"


# ----------------------------------------------------------------------------
# text form

_INT = re.compile(r"^\d+$")


def format_tuple(t: JordanTuple) -> str:
    if t.is_scalar:
        return str(t.trailing_ones)
    sizes = ",".join(str(n) for n in t.sizes)
    mults = ",".join(str(p) for p in t.multiplicities)
    return f"{sizes};{mults};{t.trailing_ones}"


def parse_tuple(text: str) -> JordanTuple:
    """Parse ``"n1,..,nk;p1,..,pk;t"`` or a bare ``"m"``; parentheses and spaces are tolerated."""
    if not isinstance(text, str):
        raise ParseError("tuple text must be a string")
    s = re.sub(r"\s+", "", text)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ParseError("empty tuple text")
    fields = s.split(";")
    if len(fields) == 1:
        if not _INT.match(fields[0]):
            raise ParseError(f"malformed tuple {text!r}")
        return JordanTuple.scalar(int(fields[0]))
    if len(fields) != 3:
        raise ParseError(f"malformed tuple {text!r}: expected 'sizes;multiplicities;t'")
    size_txt, mult_txt, t_txt = fields
    sizes = size_txt.split(",")
    mults = mult_txt.split(",")
    if not all(_INT.match(x) for x in sizes + mults + [t_txt]):
        raise ParseError(f"malformed tuple {text!r}: fields must be comma-separated integers")
    if len(sizes) != len(mults):
        raise ParseError(f"malformed tuple {text!r}: {len(sizes)} sizes but {len(mults)} multiplicities")
    sizes_i = [int(x) for x in sizes]
    mults_i = [int(x) for x in mults]
    if any(p == 0 for p in mults_i):
        raise ParseError(f"malformed tuple {text!r}: multiplicities must be positive")
    if any(n < 2 for n in sizes_i):
        raise ParseError(f"malformed tuple {text!r}: block sizes must be at least 2")
    if any(a <= b for a, b in zip(sizes_i, sizes_i[1:])):
        raise ParseError(f"malformed tuple {text!r}: sizes must strictly decrease")
    return JordanTuple(tuple(zip(sizes_i, mults_i)), int(t_txt))


def as_tuple(value) -> JordanTuple:
    return value if isinstance(value, JordanTuple) else parse_tuple(value)


# ----------------------------------------------------------------------------
# enumeration


def _partitions(m: int, largest: int) -> Iterator[list[int]]:
    if m == 0:
        yield []
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield [first] + rest


@lru_cache(maxsize=64)
def _all_tuples(m: int) -> tuple[JordanTuple, ...]:
    return tuple(JordanTuple.from_blocks(p) for p in _partitions(m, m))


def generate_all(m: int) -> list[JordanTuple]:
    """Every tuple of total m, largest blocks first (the scalar tuple last)."""
    if m < 1:
        raise PreconditionError("m must be at least 1")
    return list(_all_tuples(m))


def _require_odd(t: JordanTuple):
    if t.total() % 2 == 0:
        raise PreconditionError(f"tuple {t} has even total {t.total()}; odd totals only")


def is_complex_admissible(t: JordanTuple) -> bool:
    """Whether the nilpotent algebra of type t (odd total) carries a complex structure."""
    _require_odd(t)
    if t.is_scalar:
        return True
    ps = t.multiplicities
    ns = t.sizes
    k = t.k
    odd_t = t.trailing_ones % 2 == 1
    if odd_t and all(p % 2 == 0 for p in ps):
        return True
    if odd_t and all(p % 2 == 0 for p in ps[:-1]) and ns[-1] == 2 and ps[-1] % 2 == 1:
        return True
    if not odd_t and k >= 2:
        odd_idx = [i for i, p in enumerate(ps) if p % 2 == 1]
        if len(odd_idx) == 2 and odd_idx[1] == odd_idx[0] + 1 and ns[odd_idx[0]] == ns[odd_idx[1]] + 1:
            return True
    return False


def is_symplectic_admissible(t: JordanTuple) -> bool:
    """Whether the nilpotent algebra of type t (odd total) carries a symplectic structure."""
    _require_odd(t)
    if t.is_scalar:
        return True
    both_odd = [i for i, (n, p) in enumerate(t.parts) if n % 2 == 1 and p % 2 == 1]
    if t.trailing_ones % 2 == 1:
        return not both_odd
    return len(both_odd) == 1


_PREDICATES = {COMPLEX: is_complex_admissible, SYMPLECTIC: is_symplectic_admissible}


def predicate_for(structure: str):
    try:
        return _PREDICATES[structure]
    except KeyError:
        raise PreconditionError(f"unknown structure {structure!r}; expected one of {STRUCTURES}") from None


def generate_admissible(m: int, structure: str) -> list[JordanTuple]:
    if m % 2 == 0:
        raise PreconditionError(f"m = {m} must be odd")
    pred = predicate_for(structure)
    return [t for t in generate_all(m) if pred(t)]


# ----------------------------------------------------------------------------
# bordering


def _grow_block(t: JordanTuple, d: int) -> JordanTuple:
    """Replace one block of size n_d by a block of size n_d + 1."""
    parts = [list(x) for x in t.parts]
    n, _ = parts[d]
    parts[d][1] -= 1
    if d > 0 and parts[d - 1][0] == n + 1:
        parts[d - 1][1] += 1
    else:
        parts.insert(d, [n + 1, 1])
    return JordanTuple(tuple((a, b) for a, b in parts if b > 0), t.trailing_ones)


def _append_two(t: JordanTuple) -> JordanTuple:
    """Turn one size-1 block into a size-2 block."""
    parts = [list(x) for x in t.parts]
    if parts and parts[-1][0] == 2:
        parts[-1][1] += 1
    else:
        parts.append([2, 1])
    return JordanTuple(tuple(map(tuple, parts)), t.trailing_ones - 1)


def successors(t: JordanTuple) -> set[JordanTuple]:
    """Types reachable as [[0, 0], [v, B]] over a nilpotent B of type t."""
    out = {JordanTuple(t.parts, t.trailing_ones + 1)}
    for d in range(t.k):
        out.add(_grow_block(t, d))
    if t.trailing_ones > 0:
        out.add(_append_two(t))
    return out


def sigma_member(minus: JordanTuple, plus: JordanTuple) -> bool:
    """Pairing between the types at -c (total n-1) and c (total n) for a symplectic M(c) + M(-c)."""
    if plus.total() != minus.total() + 1:
        raise PreconditionError(
            f"totals must differ by one (got {minus.total()} and {plus.total()})"
        )
    n = plus.total()
    if minus.is_scalar:
        return plus in (JordanTuple.scalar(n), JordanTuple(((2, 1),), n - 2))
    # (i) one more trailing one
    if plus == JordanTuple(minus.parts, minus.trailing_ones + 1):
        return True
    # (ii) one block of size n_d grows by one, for exactly one d
    grown = [d for d in range(minus.k) if _grow_block(minus, d) == plus]
    if len(grown) == 1:
        return True
    # (iii) a trailing one becomes a J2 block, merged when n_k = 2
    if minus.trailing_ones >= 1:
        ns, ps = list(minus.sizes), list(minus.multiplicities)
        if ns[-1] > 2:
            target = JordanTuple(tuple(zip(ns + [2], ps + [1])), minus.trailing_ones - 1)
        else:
            target = JordanTuple(tuple(zip(ns, ps[:-1] + [ps[-1] + 1])), minus.trailing_ones - 1)
        if plus == target:
            return True
    return False
