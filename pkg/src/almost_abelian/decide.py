"""Existence of complex and symplectic structures on g_M for arbitrary spectra.

Each procedure picks out a distinguished real eigenvalue (the one sitting in
the top-left corner of the normal form), checks its Jordan tuple with the
nilpotent predicates, and requires the remaining spectrum to be conjugate
into the commutant of a complex structure, or into some sp(Ω).

Real roots are counted one by one: an irreducible factor with two real roots
contributes two real eigenvalues that share one Jordan tuple.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from .errors import PreconditionError
from .jordan import EigenClass, Eigenvalue, SpectralProfile, nilpotent_part_tuple, semisimple_profile
from .tuples import (
    COMPLEX,
    SYMPLECTIC,
    JordanTuple,
    is_complex_admissible,
    is_symplectic_admissible,
    predicate_for,
    sigma_member,
)

log = logging.getLogger(__name__)

# removed[class eigenvalue] = how many real roots of that class were taken out
Removed = Mapping[Eigenvalue, int]


@dataclass(frozen=True)
class Decision:
    admissible: bool
    case: str
    distinguished: Eigenvalue | None = None
    failures: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "case": self.case,
            "distinguished": None if self.distinguished is None else self.distinguished.to_json(),
            "failures": list(self.failures),
        }

    def __bool__(self):
        return self.admissible


def _even_blocks(t: JordanTuple) -> bool:
    return t.trailing_ones % 2 == 0 and all(p % 2 == 0 for p in t.multiplicities)


def _complex_failures(sub: SpectralProfile, removed: Removed | None = None) -> list[str]:
    removed = removed or {}
    out = []
    for c in sub.classes:
        remaining_real = c.eigenvalue.real_count - removed.get(c.eigenvalue, 0)
        if remaining_real > 0 and not _even_blocks(c.tuple):
            out.append(f"real eigenvalue {c.eigenvalue} has tuple {c.tuple} with an odd multiplicity")
    return out


def q_complex_admissible(sub: SpectralProfile, removed: Removed | None = None) -> bool:
    """Every real eigenvalue has even block multiplicities (non-real ones are free)."""
    return not _complex_failures(sub, removed)


def _zero_class_symplectic(t: JordanTuple) -> bool:
    return t.trailing_ones % 2 == 0 and all(p % 2 == 0 for n, p in t.parts if n % 2 == 1)


def _symplectic_failures(sub: SpectralProfile, removed: Removed | None = None) -> list[str]:
    removed = removed or {}
    out = []
    for c in sub.classes:
        ev = c.eigenvalue
        gone = removed.get(ev, 0)
        remaining = ev.degree - gone
        if remaining == 0:
            continue
        if ev.is_zero:
            if not _zero_class_symplectic(c.tuple):
                out.append(f"zero eigenvalue has tuple {c.tuple}: needs t even and p even for odd sizes")
            continue
        if ev.imaginary:
            continue
        if ev.is_self_negating():
            if gone:
                out.append(f"{ev}: a removed root leaves its negative unpaired")
            continue
        partner = sub.find(ev.negated())
        if partner is None:
            out.append(f"{ev} has no negative counterpart")
        elif partner.tuple != c.tuple:
            out.append(f"{ev} and its negative have different tuples {c.tuple} vs {partner.tuple}")
        elif partner.eigenvalue.degree - removed.get(partner.eigenvalue, 0) != remaining:
            out.append(f"{ev} and its negative have unequal numbers of remaining roots")
    return out


def q_symplectic_admissible(sub: SpectralProfile, removed: Removed | None = None) -> bool:
    """Whether the spectrum is conjugate into some sp(Ω): zero class condition plus ±λ pairing."""
    return not _symplectic_failures(sub, removed)


def _require_odd(p: SpectralProfile):
    if p.dimension % 2 == 0:
        raise PreconditionError(f"profile dimension {p.dimension} is even; the ideal must be odd-dimensional")


def _real_root_slots(p: SpectralProfile) -> list[EigenClass]:
    """One entry per real eigenvalue (algebraic classes repeated per real root)."""
    return [c for c in p.classes for _ in range(c.eigenvalue.real_count)]


def complex_admissible_profile(p: SpectralProfile) -> Decision:
    _require_odd(p)
    odd = [c for c in _real_root_slots(p) if c.m % 2 == 1]
    if len(odd) != 1:
        return Decision(
            False,
            "none",
            None,
            (f"expected exactly one real eigenvalue with odd multiplicity, found {len(odd)}",),
        )
    a = odd[0]
    failures = []
    if not is_complex_admissible(a.tuple):
        failures.append(f"tuple {a.tuple} at the distinguished eigenvalue {a.eigenvalue} is not complex admissible")
    failures += _complex_failures(p, {a.eigenvalue: 1})
    if failures:
        return Decision(False, "none", a.eigenvalue, tuple(failures))
    return Decision(True, f"distinguished a = {a.eigenvalue} with tuple {a.tuple}", a.eigenvalue)


def _symplectic_candidates(p: SpectralProfile):
    """Yield (case, distinguished eigenvalue, list of failures) for every candidate."""
    zero = p.zero_class()
    if zero is not None and zero.m % 2 == 1:
        fails = []
        if not is_symplectic_admissible(zero.tuple):
            fails.append(f"tuple {zero.tuple} at 0 is not symplectic admissible")
        fails += _symplectic_failures(p.without(zero.eigenvalue))
        yield "I", zero.eigenvalue, fails
    for c in p.classes:
        ev = c.eigenvalue
        if ev.is_zero or ev.real_count == 0:
            continue
        neg = ev.negated()
        if neg == ev:
            # -c is a root of the same class and has the same multiplicity
            if c.m == 1:
                yield "III", ev, [f"{ev}: the negative of the distinguished root is also an eigenvalue"]
            continue
        partner = p.find(neg)
        if partner is not None and partner.m == c.m - 1:
            fails = []
            if not sigma_member(partner.tuple, c.tuple):
                fails.append(f"tuples {partner.tuple} at -c and {c.tuple} at c are not paired")
            fails += _symplectic_failures(p, {ev: 1, neg: 1})
            yield "II", ev, fails
        if c.m == 1 and partner is None:
            yield "III", ev, _symplectic_failures(p, {ev: 1})


def symplectic_admissible_profile(p: SpectralProfile) -> Decision:
    _require_odd(p)
    firing, failed = [], []
    for case, ev, fails in _symplectic_candidates(p):
        if fails:
            failed += [f"case {case} at {ev}: {f}" for f in fails]
        else:
            firing.append((case, ev))
    if not firing:
        return Decision(False, "none", None, tuple(failed or ["no eigenvalue fits case I, II or III"]))
    if len(firing) > 1:
        log.info("several symplectic candidates fire on %s: %s", p, firing)
    case = "; ".join(f"case {c} at c = {ev}" for c, ev in firing)
    return Decision(True, case, firing[0][1])


def decide(p: SpectralProfile, structure: str) -> Decision:
    if structure == COMPLEX:
        return complex_admissible_profile(p)
    if structure == SYMPLECTIC:
        return symplectic_admissible_profile(p)
    raise PreconditionError(f"unknown structure {structure!r}")


def decide_tuple(t: JordanTuple, structure: str) -> Decision:
    """Nilpotent decision straight from the tuple predicate."""
    ok = predicate_for(structure)(t)
    zero = Eigenvalue.rational(0)
    if ok:
        return Decision(True, f"nilpotent tuple {t}", zero)
    return Decision(False, "none", zero, (f"nilpotent tuple {t} is not {structure} admissible",))


def inheritance_decisions(p: SpectralProfile, structure: str) -> tuple[Decision, Decision, Decision]:
    """Decisions for g_M, for its semisimple part g_{M_s} and its nilpotent part g_{M_n}."""
    _require_odd(p)
    return (
        decide(p, structure),
        decide(semisimple_profile(p), structure),
        decide_tuple(nilpotent_part_tuple(p), structure),
    )
