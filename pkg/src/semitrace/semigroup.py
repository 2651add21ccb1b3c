"""Numerical semigroups: membership, invariants and genus-tree enumeration.

A semigroup is stored as a bitmask of its members below ``limit``; every
integer at or above the conductor is a member, so the mask only has to
reach a little past it.
"""

from __future__ import annotations

import heapq
from functools import reduce
from math import gcd
from typing import Callable, Iterator, Optional

from .errors import BoundTooLarge, EmptyInput, GcdNotOne

# enumeration refuses bounds beyond these (the tree grows roughly like phi^g)
MAX_GENUS_CAP = 30
MAX_FROBENIUS_CAP = 45


def _apery_residues(gens: list[int]) -> list[int]:
    """Smallest member in each residue class mod the smallest generator."""
    m = gens[0]
    dist = [-1] * m
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if dist[r] >= 0:
            continue
        dist[r] = d
        for g in gens[1:]:
            nr = (r + g) % m
            if dist[nr] < 0:
                heapq.heappush(heap, (d + g, nr))
    return dist


def _sumset(mask: int, limit: int) -> int:
    """Mask of s + t (both nonzero members) below ``limit``."""
    star = mask & ~1
    out = 0
    full = (1 << limit) - 1
    t = star
    while t:
        low = t & -t
        s = low.bit_length() - 1
        out |= (star << s) & full
        t ^= low
    return out


class NumericalSemigroup:
    """An immutable numerical semigroup with cached invariants."""

    __slots__ = (
        "generators", "multiplicity", "embedding_dimension", "frobenius",
        "conductor", "limit", "_mask", "_apery", "_pf", "_gaps",
    )

    def __init__(self, generators: tuple[int, ...], frobenius: int, mask: int, limit: int):
        self.generators = generators
        self.multiplicity = generators[0]
        self.embedding_dimension = len(generators)
        self.frobenius = frobenius
        self.conductor = frobenius + 1
        self.limit = limit
        self._mask = mask
        self._apery = None
        self._pf = None
        self._gaps = None

    # -- membership ---------------------------------------------------
    def contains(self, z: int) -> bool:
        if z < 0:
            return False
        if z >= self.conductor:
            return True
        return bool((self._mask >> z) & 1)

    __contains__ = contains

    def members_below(self, bound: int) -> list[int]:
        return [z for z in range(bound) if self.contains(z)]

    def mask_window(self, lo: int, hi: int) -> int:
        """Bitmask (bit k <-> degree lo + k) of members in [lo, hi)."""
        if hi <= lo:
            return 0
        out = 0
        a = max(lo, 0)
        c = self.conductor
        if a < min(hi, c):
            width = min(hi, c) - a
            out = ((self._mask >> a) & ((1 << width) - 1)) << (a - lo)
        b = max(lo, c)
        if b < hi:
            out |= ((1 << (hi - b)) - 1) << (b - lo)
        return out

    # -- invariants ---------------------------------------------------
    @property
    def is_dvr(self) -> bool:
        return self.generators == (1,)

    @property
    def gaps(self) -> tuple[int, ...]:
        if self._gaps is None:
            self._gaps = tuple(z for z in range(1, self.conductor) if not self.contains(z))
        return self._gaps

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def pseudo_frobenius(self) -> tuple[int, ...]:
        if self._pf is None:
            self._pf = tuple(
                f for f in self.gaps if all(self.contains(f + a) for a in self.generators)
            )
        return self._pf

    @property
    def type(self) -> int:
        # S = N has no pseudo-Frobenius numbers; the DVR gets type 0
        return len(self.pseudo_frobenius)

    @property
    def apery(self) -> dict[int, tuple[int, ...]]:
        if self._apery is None:
            ap = {}
            for m in self.generators:
                ap[m] = tuple(sorted(_apery_residues([m] + [g for g in self.generators if g != m])))
            self._apery = ap
        return self._apery

    def is_symmetric(self) -> bool:
        F = self.frobenius
        return all(self.contains(z) != self.contains(F - z) for z in range(0, F + 1))

    def has_minimal_multiplicity(self) -> bool:
        return self.multiplicity == self.embedding_dimension

    @property
    def max_generator(self) -> int:
        return self.generators[-1]

    # -- plumbing -----------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalSemigroup) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return "<" + ",".join(map(str, self.generators)) + ">"

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "multiplicity": self.multiplicity,
            "embdim": self.embedding_dimension,
            "frobenius": self.frobenius,
            "type": self.type,
            "pf": list(self.pseudo_frobenius),
            "gaps": list(self.gaps),
            "minimal_multiplicity": self.has_minimal_multiplicity(),
        }


def _from_mask(mask: int, frobenius: int) -> NumericalSemigroup:
    """Build from a membership mask that is correct below conductor + e."""
    c = frobenius + 1
    e = (mask & ~1 & -(mask & ~1)).bit_length() - 1 if c > 0 else 1
    limit = c + e + 1
    full = (1 << limit) - 1
    # everything >= c is a member
    m = (mask & ((1 << c) - 1)) | (full & ~((1 << c) - 1))
    gens_mask = m & ~1 & ~_sumset(m, limit)
    gens = []
    t = gens_mask
    while t:
        low = t & -t
        gens.append(low.bit_length() - 1)
        t ^= low
    return NumericalSemigroup(tuple(gens), frobenius, m & ((1 << max(c, 1)) - 1), limit)


def new_semigroup(raw_generators) -> NumericalSemigroup:
    """Semigroup generated by ``raw_generators``, reduced to its minimal system."""
    raw = sorted({int(g) for g in raw_generators})
    if not raw:
        raise EmptyInput("no generators given")
    if raw[0] <= 0:
        raise ValueError("generators must be positive")
    if reduce(gcd, raw) != 1:
        raise GcdNotOne(f"gcd of {raw} is not 1")
    dist = _apery_residues(raw)
    frob = max(dist) - raw[0]
    c = frob + 1
    limit = c + raw[0] + 1
    mask = 0
    for r, d in enumerate(dist):
        for z in range(d, limit, raw[0]):
            mask |= 1 << z
    return _from_mask(mask, frob)


def enumerate_semigroups(
    max_frobenius: Optional[int] = None,
    max_genus: Optional[int] = None,
    predicate: Optional[Callable[[NumericalSemigroup], bool]] = None,
) -> Iterator[NumericalSemigroup]:
    """Yield every semigroup within the bound once, genus by genus.

    Children of S are S minus a minimal generator larger than F(S).
    Within a genus the order is lexicographic in the generators.
    """
    if max_frobenius is None and max_genus is None:
        raise ValueError("give max_frobenius or max_genus")
    if max_genus is not None and max_genus > MAX_GENUS_CAP:
        raise BoundTooLarge(f"max_genus {max_genus} > {MAX_GENUS_CAP}")
    if max_frobenius is not None and max_frobenius > MAX_FROBENIUS_CAP:
        raise BoundTooLarge(f"max_frobenius {max_frobenius} > {MAX_FROBENIUS_CAP}")
    fbound = max_frobenius if max_frobenius is not None else 2 * max_genus - 1
    if max_genus is not None and max_frobenius is not None:
        fbound = min(fbound, 2 * max_genus - 1)
    gbound = max_genus if max_genus is not None else max_frobenius
    level = [new_semigroup([1])]
    genus = 0
    while level:
        level.sort(key=lambda s: s.generators)
        for s in level:
            if predicate is None or predicate(s):
                yield s
        if genus >= gbound:
            break
        nxt = []
        for s in level:
            for g in s.generators:
                if g <= s.frobenius or g > fbound:
                    continue
                mask = s.mask_window(0, g + s.multiplicity + 2) & ~(1 << g)
                nxt.append(_from_mask(mask, g))
        level = nxt
        genus += 1


def count_by_brute_force(max_genus: int) -> list[int]:
    """Count semigroups of each genus by testing every candidate gap set.

    Independent of the tree walk: a gap set of genus g lives in [1, 2g - 1].
    """
    from itertools import combinations

    counts = [0] * (max_genus + 1)
    for g in range(max_genus + 1):
        span = list(range(1, 2 * g))
        for gaps in combinations(span, g):
            gs = set(gaps)
            top = 2 * g + 1
            members = [z for z in range(top * 2) if z not in gs]
            ok = all(
                (a + b) not in gs for i, a in enumerate(members) for b in members[i:] if a + b < top
            )
            if ok:
                counts[g] += 1
    return counts
