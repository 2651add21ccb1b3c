"""Fractional monomial ideals of a numerical semigroup ring as degree sets.

A homogeneous fractional ideal E is a set of integers, bounded below,
with E + S contained in E.  It is stored as ``(lo, hi, bits)``: ``lo`` is
the least member, every degree >= ``hi`` is a member, and bit k of
``bits`` records degree lo + k for lo <= degree < hi.  The triple is kept
normalized (hi as small as possible) so equality is tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DvrInput,
    EmptyGenerators,
    MixedSemigroups,
    NotAGenerator,
    NotInsideRing,
    NotMinimalMultiplicity,
    PrincipalIdeal,
)
from .semigroup import NumericalSemigroup


def _window_from(S, lo, hi, mask) -> "FractionalMonomialIdeal":
    """Ideal whose members are the set bits of ``mask`` (from lo) plus [hi, inf)."""
    width = hi - lo
    mask &= (1 << width) - 1 if width > 0 else 0
    if mask == 0:
        return FractionalMonomialIdeal(S, hi, hi, 0)
    new_lo = lo + (mask & -mask).bit_length() - 1
    holes = ~mask & ((1 << width) - 1)
    new_hi = lo + holes.bit_length() if holes else lo
    new_hi = max(new_hi, new_lo)
    bits = (mask >> (new_lo - lo)) & ((1 << (new_hi - new_lo)) - 1)
    return FractionalMonomialIdeal(S, new_lo, new_hi, bits)


class FractionalMonomialIdeal:
    __slots__ = ("semigroup", "lo", "hi", "bits", "_gens")

    def __init__(self, semigroup: NumericalSemigroup, lo: int, hi: int, bits: int):
        self.semigroup = semigroup
        self.lo = lo
        self.hi = hi
        self.bits = bits
        self._gens = None

    # -- basic queries ------------------------------------------------
    @property
    def offset(self) -> int:
        return self.lo

    @property
    def full_from(self) -> int:
        return self.hi

    def contains(self, d: int) -> bool:
        if d >= self.hi:
            return True
        if d < self.lo:
            return False
        return bool((self.bits >> (d - self.lo)) & 1)

    __contains__ = contains

    def window(self, lo: int, hi: int) -> int:
        """Bitmask (bit k <-> degree lo + k) of members in [lo, hi)."""
        if hi <= lo:
            return 0
        out = 0
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a < b:
            chunk = (self.bits >> (a - self.lo)) & ((1 << (b - a)) - 1)
            out = chunk << (a - lo)
        f = max(lo, self.hi)
        if f < hi:
            out |= ((1 << (hi - f)) - 1) << (f - lo)
        return out

    def members_in(self, lo: int, hi: int) -> list[int]:
        return [d for d in range(lo, hi) if self.contains(d)]

    @property
    def min_gens(self) -> tuple[int, ...]:
        if self._gens is None:
            # members not of the form (member) + (generator of S)
            top = self.hi + self.semigroup.multiplicity
            width = top - self.lo
            W = self.window(self.lo, top)
            hit = 0
            for a in self.semigroup.generators:
                hit |= W << a
            G = W & ~hit & ((1 << width) - 1)
            out = []
            while G:
                low = G & -G
                out.append(self.lo + low.bit_length() - 1)
                G ^= low
            self._gens = tuple(out)
        return self._gens

    @property
    def mu(self) -> int:
        return len(self.min_gens)

    def is_principal(self) -> bool:
        return len(self.min_gens) == 1

    def inside_ring(self) -> bool:
        return all(g in self.semigroup for g in self.min_gens)

    def is_unit(self) -> bool:
        return self.min_gens == (0,) and self.inside_ring()

    def _key(self):
        return (self.semigroup.generators, self.lo, self.hi, self.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, FractionalMonomialIdeal) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __le__(self, other: "FractionalMonomialIdeal") -> bool:
        return issubset(self, other)

    def __repr__(self) -> str:
        return f"Ideal{list(self.min_gens)} over {self.semigroup!r}"

    def as_dict(self) -> dict:
        return {"min_gens": list(self.min_gens), "full_from": self.hi}


def _check_same(*ideals):
    s = ideals[0].semigroup
    for I in ideals[1:]:
        if I.semigroup != s:
            raise MixedSemigroups(f"{s!r} vs {I.semigroup!r}")
    return s


def ideal_from_degrees(S: NumericalSemigroup, gens: Iterable[int]) -> FractionalMonomialIdeal:
    """Smallest S-stable set containing ``gens``."""
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise EmptyGenerators("an ideal needs at least one generator")
    lo = gens[0]
    hi = gens[0] + S.conductor
    mask = 0
    for g in gens:
        mask |= S.mask_window(lo - g, hi - g)
    return _window_from(S, lo, hi, mask)


def unit_ideal(S: NumericalSemigroup) -> FractionalMonomialIdeal:
    return ideal_from_degrees(S, [0])


def maximal_ideal(S: NumericalSemigroup) -> FractionalMonomialIdeal:
    return ideal_from_degrees(S, S.generators)


def principal(S: NumericalSemigroup, d: int) -> FractionalMonomialIdeal:
    return ideal_from_degrees(S, [d])


def conductor_ideal(S: NumericalSemigroup) -> FractionalMonomialIdeal:
    c = S.conductor
    return FractionalMonomialIdeal(S, c, c, 0)


def shift(I: FractionalMonomialIdeal, s: int) -> FractionalMonomialIdeal:
    return FractionalMonomialIdeal(I.semigroup, I.lo + s, I.hi + s, I.bits)


def ideal_sum(I: FractionalMonomialIdeal, J: FractionalMonomialIdeal) -> FractionalMonomialIdeal:
    S = _check_same(I, J)
    lo, hi = min(I.lo, J.lo), max(I.hi, J.hi)
    return _window_from(S, lo, hi, I.window(lo, hi) | J.window(lo, hi))


def intersection(I: FractionalMonomialIdeal, J: FractionalMonomialIdeal) -> FractionalMonomialIdeal:
    S = _check_same(I, J)
    lo, hi = min(I.lo, J.lo), max(I.hi, J.hi)
    return _window_from(S, lo, hi, I.window(lo, hi) & J.window(lo, hi))


def product(I: FractionalMonomialIdeal, J: FractionalMonomialIdeal) -> FractionalMonomialIdeal:
    S = _check_same(I, J)
    return ideal_from_degrees(S, {a + b for a in I.min_gens for b in J.min_gens})


def equals(I: FractionalMonomialIdeal, J: FractionalMonomialIdeal) -> bool:
    _check_same(I, J)
    return I == J


def issubset(I: FractionalMonomialIdeal, J: FractionalMonomialIdeal) -> bool:
    _check_same(I, J)
    lo, hi = min(I.lo, J.lo), max(I.hi, J.hi)
    return I.window(lo, hi) & ~J.window(lo, hi) == 0


def colon(J: FractionalMonomialIdeal, I: FractionalMonomialIdeal) -> FractionalMonomialIdeal:
    """(J : I) = {z : z + g in J for every minimal generator g of I}."""
    S = _check_same(J, I)
    gens = I.min_gens
    g0 = gens[0]
    lo, hi = J.lo - g0, J.hi - g0
    if hi <= lo:
        return FractionalMonomialIdeal(S, hi, hi, 0)
    mask = (1 << (hi - lo)) - 1
    for g in gens:
        mask &= J.window(lo + g, hi + g)
    return _window_from(S, lo, hi, mask)


def hom_ideal(I: FractionalMonomialIdeal, J: FractionalMonomialIdeal) -> FractionalMonomialIdeal:
    """Hom(I, J) as the fractional ideal (J : I)."""
    return colon(J, I)


def canonical_fractional(S: NumericalSemigroup) -> FractionalMonomialIdeal:
    """K(S) = {z : F - z not in S}; least element 0."""
    F = S.frobenius
    lo, hi = 0, F + 1
    mask = 0
    for z in range(lo, hi):
        if not S.contains(F - z):
            mask |= 1 << z
    return _window_from(S, lo, hi, mask)


def canonical_shift(S: NumericalSemigroup) -> int:
    K = canonical_fractional(S)
    s = 0
    while not all((g + s) in S for g in K.min_gens):
        s += 1
    return s


def canonical_ideal(S: NumericalSemigroup) -> FractionalMonomialIdeal:
    """The canonical fractional ideal shifted by the least s >= 0 into R."""
    return shift(canonical_fractional(S), canonical_shift(S))


def trace_ideal(I: FractionalMonomialIdeal) -> FractionalMonomialIdeal:
    """Sum over minimal generators x of (x : I)."""
    S = I.semigroup
    out = None
    for x in I.min_gens:
        part = colon(principal(S, x), I)
        out = part if out is None else ideal_sum(out, part)
    return out


def trace_via_single_colon(I: FractionalMonomialIdeal, x: int) -> FractionalMonomialIdeal:
    """(I (x : I) : x) for a generator degree x of I."""
    if x not in I.min_gens:
        raise NotAGenerator(f"{x} is not a minimal generator degree of {I!r}")
    S = I.semigroup
    return colon(product(I, colon(principal(S, x), I)), principal(S, x))


def is_ulrich_ideal(I: FractionalMonomialIdeal) -> bool:
    """t^e I = m I, i.e. the minimal reduction already gives m I."""
    if not I.inside_ring():
        raise NotInsideRing(f"{I!r} is not inside R")
    S = I.semigroup
    return shift(I, S.multiplicity) == product(maximal_ideal(S), I)


# -- semigroup-level conditions of the sixteen-condition theorem --------

@dataclass(frozen=True)
class SetConditions:
    c1_colon_is_m: bool
    c2_trace_is_m: bool
    c8_y_in_colon: bool
    c14_y_in_trace: bool
    c15_iso_ideal_containing_y: bool

    @property
    def agree(self) -> bool:
        vals = self.as_dict().values()
        return len(set(vals)) == 1

    def as_dict(self) -> dict:
        return {
            "c1_colon_is_m": self.c1_colon_is_m,
            "c2_trace_is_m": self.c2_trace_is_m,
            "c8_y_in_colon": self.c8_y_in_colon,
            "c14_y_in_trace": self.c14_y_in_trace,
            "c15_iso_ideal_containing_y": self.c15_iso_ideal_containing_y,
        }


def _require_battery_input(I: FractionalMonomialIdeal, require_minimal_multiplicity: bool = True):
    S = I.semigroup
    if require_minimal_multiplicity and not S.has_minimal_multiplicity():
        raise NotMinimalMultiplicity(f"{S!r} does not have minimal multiplicity")
    if I.is_principal():
        raise PrincipalIdeal(f"{I!r} is principal")
    if not I.inside_ring():
        raise NotInsideRing(f"{I!r} is not inside R")


def theorem38_semigroup_report(I: FractionalMonomialIdeal, require_minimal_multiplicity: bool = True) -> SetConditions:
    _require_battery_input(I, require_minimal_multiplicity)
    S = I.semigroup
    e, c = S.multiplicity, S.conductor
    m = maximal_ideal(S)
    x1 = I.min_gens[0]
    col = colon(principal(S, x1), I)
    tr = trace_ideal(I)
    c15 = False
    for s in range(-x1, 2 * c + 1):
        L = shift(I, s)
        if L.inside_ring() and e in L:
            c15 = True
            break
    return SetConditions(col == m, tr == m, e in col, e in tr, c15)


# -- classification -----------------------------------------------------

@dataclass(frozen=True)
class Classification:
    category: str
    gorenstein: bool
    nearly: bool
    almost: bool
    farflung: bool
    canonical: tuple
    trace: tuple

    def as_dict(self) -> dict:
        return {
            "category": self.category,
            "gorenstein": self.gorenstein,
            "nearly": self.nearly,
            "almost": self.almost,
            "farflung": self.farflung,
            "canonical_min_gens": list(self.canonical),
            "trace_min_gens": list(self.trace),
        }


def classify(S: NumericalSemigroup) -> Classification:
    if S.is_dvr:
        raise DvrInput("the DVR has no Gorenstein-spectrum classification here")
    w = canonical_ideal(S)
    if S.type == 1:
        return Classification("gorenstein", True, True, True, False, w.min_gens, (0,))
    m = maximal_ideal(S)
    tr = trace_ideal(w)
    nearly = issubset(m, tr)
    almost = issubset(m, colon(principal(S, w.min_gens[0]), w))
    farflung = tr == conductor_ideal(S)
    if nearly:
        cat = "nearly_gorenstein"
    elif almost:
        cat = "almost_gorenstein_not_nearly"
    elif farflung:
        cat = "far_flung"
    else:
        cat = "intermediate"
    return Classification(cat, False, nearly, almost, farflung, w.min_gens, tr.min_gens)
