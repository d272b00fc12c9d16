import json
from collections import Counter

import pytest

from almost_abelian.decide import (
    _real_root_slots,
    _symplectic_candidates,
    complex_admissible_profile,
    decide,
    decide_tuple,
    inheritance_decisions,
    q_complex_admissible,
    q_symplectic_admissible,
    symplectic_admissible_profile,
)
from almost_abelian.errors import PreconditionError
from almost_abelian.exact import Poly
from almost_abelian.jordan import SpectralProfile, realize
from almost_abelian.tuples import generate_all, is_complex_admissible, is_symplectic_admissible
from almost_abelian.witness import BracketTable, symplectic_oracle

from _profiles import random_profiles

P = SpectralProfile.from_mapping
X2P1 = Poly([1, 0, 1])
X2M2 = Poly([-2, 0, 1])


# --- sub-profile conditions -----------------------------------------------------------

def test_q_complex():
    assert q_complex_admissible(P({2: "3;2;0"}))
    assert not q_complex_admissible(P({2: "3;1;0"}))
    assert q_complex_admissible(P({X2P1: "1"}))
    assert not q_complex_admissible(P({X2M2: "2;1;0"}))


def test_q_symplectic():
    assert q_symplectic_admissible(P({2: "1", -2: "1"}))
    assert not q_symplectic_admissible(P({2: "1"}))
    assert not q_symplectic_admissible(P({0: "3;1;1"}))
    assert q_symplectic_admissible(P({X2P1: "2;1;0"}))
    assert not q_symplectic_admissible(P({2: "2;1;0", -2: "2"}))
    # x^2-2 pairs its own two roots
    assert q_symplectic_admissible(P({X2M2: "3;1;1"}))


# --- full decisions -------------------------------------------------------------------

def test_both():
    p = P({1: "3,2;1,1;0", -1: "2;2;0"})
    assert decide(p, "complex") and decide(p, "symplectic")


@pytest.mark.parametrize("m", [3, 5, 7])
def test_neither(m):
    p = P({1: f"{m};1;0"})
    assert not decide(p, "complex") and not decide(p, "symplectic")


def test_complex_only():
    p = P({1: "3,2;1,1;0", -1: "2"})
    assert complex_admissible_profile(p)
    d = symplectic_admissible_profile(p)
    assert not d and d.case == "none" and d.failures


def test_symplectic_only():
    p = P({1: "3;1;0", -1: "2;1;0"})
    d = symplectic_admissible_profile(p)
    assert d and "II" in d.case
    assert not complex_admissible_profile(p)


def test_case_three_with_rotation():
    d = symplectic_admissible_profile(P({1: "1", X2P1: "1"}))
    assert d and "III" in d.case


def test_algebraic_distinguished_root_needs_uniqueness():
    # x^3-2 has one real root, so it can be the distinguished eigenvalue
    cube = Poly([-2, 0, 0, 1])
    assert complex_admissible_profile(P({cube: "1"}))
    # x^2-2 has two real roots with odd m: uniqueness fails
    assert not complex_admissible_profile(P({X2M2: "1", 0: "1"}))


@pytest.mark.parametrize("structure", ["complex", "symplectic"])
def test_even_dimension_rejected(structure):
    with pytest.raises(PreconditionError):
        decide(P({1: "2"}), structure)


def test_unknown_structure():
    with pytest.raises(PreconditionError):
        decide(P({1: "1"}), "kahler")


def test_decision_json():
    d = decide(P({1: "3;1;0", -1: "2;1;0"}), "symplectic")
    obj = json.loads(json.dumps(d.to_json()))
    assert obj["admissible"] is True and obj["distinguished"] == "1"


@pytest.mark.parametrize("m", range(1, 14, 2))
def test_nilpotent_profiles_match_tuple_predicates(m):
    for t in generate_all(m):
        p = SpectralProfile.nilpotent(t)
        assert decide(p, "complex").admissible == is_complex_admissible(t), t
        assert decide(p, "symplectic").admissible == is_symplectic_admissible(t), t
        assert decide_tuple(t, "complex").admissible == is_complex_admissible(t)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("t", [2, 4, 6])
def test_complex_does_not_imply_symplectic(m, t):
    p = P({1: f"{m + 1},{m};1,1;0", -1: str(t)})
    assert decide(p, "complex")
    assert not decide(p, "symplectic")


# --- structure of admissible profiles ----------------------------------------------------

PROFILES = random_profiles(seed=17, count=400)


def test_complex_distinguished_is_the_unique_odd_real_eigenvalue():
    for p in PROFILES:
        d = complex_admissible_profile(p)
        if d:
            odd = [c.eigenvalue for c in _real_root_slots(p) if c.m % 2 == 1]
            assert odd == [d.distinguished], p


def test_symplectic_cases_exclusive_per_eigenvalue():
    for p in PROFILES:
        per_ev = Counter(ev for _, ev, _ in _symplectic_candidates(p))
        assert all(n == 1 for n in per_ev.values()), p


def test_firing_case_preconditions():
    for p in PROFILES:
        for case, ev, fails in _symplectic_candidates(p):
            c = p.find(ev)
            if case == "I":
                assert ev.is_zero and c.m % 2 == 1
            elif case == "II":
                assert p.find(ev.negated()).m == c.m - 1
            else:
                assert c.m == 1


@pytest.mark.parametrize("p", random_profiles(seed=29, count=400, max_dim=9), ids=str)
def test_symplectic_decision_matches_pfaffian_oracle(p):
    r = symplectic_oracle(BracketTable(realize(p)))
    assert r.exists == decide(p, "symplectic").admissible


# --- inheritance -------------------------------------------------------------------------

def test_inheritance_counterexample_complex():
    p = P({0: "1", 1: "3;1;1", 2: "3;1;1"})
    whole, semi, nil = inheritance_decisions(p, "complex")
    assert not whole and semi and nil


def test_inheritance_counterexample_symplectic():
    p = P({1: "3", -1: "2", 0: "3;1;1"})
    whole, semi, nil = inheritance_decisions(p, "symplectic")
    assert not whole and semi and nil


@pytest.mark.parametrize("structure", ["complex", "symplectic"])
def test_inheritance_on_nilpotent_profiles(structure):
    for t in generate_all(9):
        whole, semi, nil = inheritance_decisions(SpectralProfile.nilpotent(t), structure)
        # the semisimple part is zero, so its algebra is abelian
        assert semi and bool(whole) == bool(nil)
