import random
from math import gcd
from functools import reduce

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from semitrace.ideals import ideal_from_degrees
from semitrace.semigroup import enumerate_semigroups, new_semigroup

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@st.composite
def semigroups(draw, max_gen=13, max_count=4):
    gens = draw(st.lists(st.integers(2, max_gen), min_size=1, max_size=max_count, unique=True))
    if reduce(gcd, gens) != 1:
        gens.append(draw(st.sampled_from([g + 1 for g in gens])))
    return new_semigroup(gens)


@st.composite
def ideals_in(draw, S, k_max=4):
    pool = [s for s in range(0, S.conductor + S.multiplicity) if S.contains(s)]
    k = draw(st.integers(1, min(k_max, len(pool))))
    return ideal_from_degrees(S, draw(st.lists(st.sampled_from(pool), min_size=1, max_size=k, unique=True)))


@st.composite
def semigroup_and_ideal(draw, max_gen=11):
    S = draw(semigroups(max_gen=max_gen))
    return S, draw(ideals_in(S))


MM_SEMIGROUPS = [
    S for S in enumerate_semigroups(max_frobenius=16, predicate=lambda s: s.has_minimal_multiplicity())
    if not S.is_dvr
]


def mm_semigroups():
    return st.sampled_from(MM_SEMIGROUPS)


@st.composite
def mm_semigroup_and_ideal(draw):
    S = draw(mm_semigroups())
    pool = [s for s in range(1, S.conductor + S.multiplicity) if S.contains(s)]
    k = draw(st.integers(2, 4))
    return S, ideal_from_degrees(S, draw(st.lists(st.sampled_from(pool), min_size=1, max_size=k, unique=True)))


def random_pairs(n, seed, max_gen=12, nonprincipal=True, inside_m=True):
    """A frozen corpus of (S, I) pairs."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        k = rng.randint(2, 4)
        gens = rng.sample(range(2, max_gen + 1), k)
        if reduce(gcd, gens) != 1:
            continue
        S = new_semigroup(gens)
        lo = 1 if inside_m else 0
        pool = [s for s in range(lo, S.conductor + S.multiplicity) if S.contains(s)]
        I = ideal_from_degrees(S, rng.sample(pool, min(len(pool), rng.randint(1, 4))))
        if nonprincipal and I.is_principal():
            continue
        out.append((S, I))
    return out


@pytest.fixture
def s5():
    return new_semigroup([5, 6, 13, 14])


@pytest.fixture
def s4():
    return new_semigroup([4, 9, 14, 15])


@st.composite
def nonprincipal_pair(draw, max_gen=11):
    """Like semigroup_and_ideal, but a principal draw is widened by a member it misses."""
    S = draw(semigroups(max_gen=max_gen))
    I = draw(ideals_in(S))
    if I.is_principal():
        pool = [s for s in range(1, S.conductor + S.multiplicity) if S.contains(s)]
        g = I.min_gens[0]
        extra = next((s for s in pool if not I.contains(s) and not S.contains(g - s)), None)
        I = ideal_from_degrees(S, [g, extra]) if extra is not None else ideal_from_degrees(S, S.generators[:2])
    return S, I
