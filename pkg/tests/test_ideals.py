import pytest
from hypothesis import assume, given

from semitrace.errors import EmptyGenerators, NotAGenerator, PrincipalIdeal, DvrInput
from semitrace.ideals import (
    canonical_fractional,
    canonical_ideal,
    classify,
    colon,
    conductor_ideal,
    hom_ideal,
    ideal_from_degrees,
    ideal_sum,
    intersection,
    is_ulrich_ideal,
    issubset,
    maximal_ideal,
    principal,
    product,
    shift,
    theorem38_semigroup_report,
    trace_ideal,
    trace_via_single_colon,
    unit_ideal,
)
from semitrace.semigroup import enumerate_semigroups, new_semigroup

from conftest import mm_semigroup_and_ideal, mm_semigroups, semigroup_and_ideal


def _window(S, I, J=None):
    lo = min(I.lo, J.lo if J else I.lo) - 2 * S.conductor - 2 * S.max_generator
    hi = max(I.hi, J.hi if J else I.hi) + 2 * S.conductor + 2 * S.max_generator
    return range(lo, hi)


def _brute_colon(S, J, I):
    # d with d + x in J for all x in I; generators suffice
    return {d for d in _window(S, I, J) if all(J.contains(d + x) for x in I.min_gens)}


def _as_set(I, rng):
    return {d for d in rng if I.contains(d)}


def test_ideal_examples(s5, s4):
    I = ideal_from_degrees(s5, [10, 11, 12])
    assert I.min_gens == (10, 11, 12)
    assert all(d in I for d in (10, 11, 12, 15, 16, 17, 20))
    assert 13 not in I and 14 not in I
    assert ideal_from_degrees(s5, [0]) == unit_ideal(s5)
    assert ideal_from_degrees(s4, [8, 9, 14]).min_gens == (8, 9, 14)
    with pytest.raises(EmptyGenerators):
        ideal_from_degrees(s5, [])


def test_colon_examples(s4, s5):
    I = ideal_from_degrees(s4, [8, 9, 14])
    c = colon(principal(s4, 8), I)
    assert 15 in c and 4 not in c
    assert 0 in hom_ideal(I, I)
    J = ideal_from_degrees(s5, [10, 11, 12])
    assert _as_set(colon(J, principal(s5, 5)), range(-5, 60)) == {d for d in range(-5, 60) if J.contains(d + 5)}


def test_canonical_examples(s5, s4):
    K = canonical_fractional(s5)
    assert K.min_gens == (0, 1, 2)
    assert canonical_ideal(s5).min_gens == (10, 11, 12)
    assert canonical_fractional(s4).min_gens == (0, 1, 6)
    assert canonical_ideal(s4).min_gens == (8, 9, 14)
    assert canonical_ideal(new_semigroup([2, 3])).is_principal()


def test_conductor_and_trace_examples(s5, s4):
    assert conductor_ideal(new_semigroup([3, 7, 8])).min_gens == (6, 7, 8)
    assert conductor_ideal(s5).min_gens == (10, 11, 12, 13, 14)
    assert conductor_ideal(new_semigroup([1])).is_unit()
    w5 = canonical_ideal(s5)
    assert trace_ideal(w5) == conductor_ideal(s5)
    assert trace_ideal(principal(s5, 5)).is_unit()
    assert trace_ideal(canonical_ideal(s4)).min_gens == (8, 9, 14, 15)
    assert trace_via_single_colon(w5, 10) == conductor_ideal(s5)
    assert trace_via_single_colon(principal(s5, 5), 5).is_unit()
    assert trace_via_single_colon(canonical_ideal(s4), 9).min_gens == (8, 9, 14, 15)
    with pytest.raises(NotAGenerator):
        trace_via_single_colon(w5, 13)


def test_dual_of_canonical_is_principal(s5):
    w = canonical_ideal(s5)
    assert hom_ideal(w, w).is_unit()
    assert hom_ideal(w, canonical_ideal(s5)).is_principal()


def test_hom_m_m():
    S = new_semigroup([3, 4, 5])
    E = hom_ideal(maximal_ideal(S), maximal_ideal(S))
    # End(m) is the integral closure k[t], generated over S by 1, t, t^2
    assert E.min_gens == (0, 1, 2)
    assert all(d in E for d in range(0, 10))


def test_ulrich_examples(s4):
    assert is_ulrich_ideal(conductor_ideal(new_semigroup([3, 7, 8])))
    assert not is_ulrich_ideal(principal(s4, 8))
    assert is_ulrich_ideal(colon(principal(s4, 8), canonical_ideal(s4)))


def test_semigroup_report_examples(s4):
    r = theorem38_semigroup_report(canonical_ideal(s4))
    assert r.agree and not r.c1_colon_is_m
    S = new_semigroup([3, 4, 5])
    r = theorem38_semigroup_report(maximal_ideal(S))
    assert r.agree and r.c1_colon_is_m
    with pytest.raises(PrincipalIdeal):
        theorem38_semigroup_report(principal(S, 3))


def test_classification_examples(s5):
    c = classify(s5)
    assert c.farflung and not c.nearly
    c = classify(new_semigroup([3, 7, 8]))
    assert c.farflung and not c.nearly
    assert classify(new_semigroup([2, 3])).category == "gorenstein"
    assert classify(new_semigroup([3, 4, 5])).nearly
    with pytest.raises(DvrInput):
        classify(new_semigroup([1]))


@given(semigroup_and_ideal())
def test_colon_matches_brute_force(pair):
    S, I = pair
    J = ideal_sum(I, principal(S, S.multiplicity))
    C = colon(J, I)
    rng = _window(S, I, J)
    assert _as_set(C, rng) == _brute_colon(S, J, I)


@given(semigroup_and_ideal())
def test_product_and_intersection(pair):
    S, I = pair
    J = maximal_ideal(S)
    P = product(I, J)
    rng = range(-5, I.hi + J.hi + 2 * S.max_generator)
    members_I = [d for d in rng if I.contains(d)]
    members_J = [d for d in rng if J.contains(d)]
    ref = {a + b for a in members_I for b in members_J}
    assert {d for d in rng if P.contains(d)} == {d for d in ref if d in rng}
    X = intersection(I, J)
    assert {d for d in rng if X.contains(d)} == {d for d in rng if I.contains(d) and J.contains(d)}
    assert issubset(P, I) or not I.inside_ring()


@given(semigroup_and_ideal())
def test_min_gens_generate(pair):
    S, I = pair
    assert ideal_from_degrees(S, I.min_gens) == I
    for g in I.min_gens:
        rest = [h for h in I.min_gens if h != g]
        if rest:
            assert not ideal_from_degrees(S, rest).contains(g)


@given(semigroup_and_ideal())
def test_flip_identity(pair):
    S, I = pair
    gens = I.min_gens
    for x in gens:
        for y in gens:
            left = shift(colon(principal(S, y), I), x)
            right = shift(colon(principal(S, x), I), y)
            assert left == right


@given(semigroup_and_ideal())
def test_trace_properties(pair):
    S, I = pair
    tr = trace_ideal(I)
    for x in I.min_gens:
        assert trace_via_single_colon(I, x) == tr
    assert trace_ideal(tr) == tr
    assert trace_ideal(shift(I, 7)) == tr
    assert trace_ideal(shift(I, -I.lo)) == tr
    if I.inside_ring():
        assert issubset(I, tr)


@given(semigroup_and_ideal())
def test_trace_brute_force(pair):
    S, I = pair
    tr = trace_ideal(I)
    rng = range(0, S.conductor + 2 * S.max_generator + I.hi - I.lo)
    ref = set()
    for x in I.min_gens:
        ref |= _brute_colon(S, principal(S, x), I)
    # close up: the sum of ideals is generated by the union
    closed = {d for d in rng if any((d - r) >= 0 and S.contains(d - r) for r in ref)}
    assert {d for d in rng if tr.contains(d)} == closed


@given(mm_semigroup_and_ideal())
def test_ulrich_properties_under_minimal_multiplicity(pair):
    S, I = pair
    assume(not I.is_principal())
    x = I.min_gens[0]
    assert is_ulrich_ideal(colon(principal(S, x), I))
    assert is_ulrich_ideal(trace_ideal(I))
    assert is_ulrich_ideal(product(canonical_ideal(S), I))
    J = trace_ideal(I)
    assert is_ulrich_ideal(product(J, I))


@given(mm_semigroups())
def test_semigroup_report_agrees_under_minimal_multiplicity(S):
    for I in (maximal_ideal(S), canonical_ideal(S), conductor_ideal(S)):
        if not I.is_principal():
            assert theorem38_semigroup_report(I).agree


def test_ulrich_containing_e_is_m():
    for S in enumerate_semigroups(max_frobenius=9, predicate=lambda s: s.has_minimal_multiplicity() and not s.is_dvr):
        e = S.multiplicity
        m = maximal_ideal(S)
        pool = [s for s in range(e + 1, S.conductor + e) if S.contains(s)]
        # every ideal generated by e and up to two more members
        cands = [[e]] + [[e, a] for a in pool] + [[e, a, b] for a in pool for b in pool if a < b]
        for gens in cands:
            I = ideal_from_degrees(S, gens)
            if is_ulrich_ideal(I):
                assert I == m
