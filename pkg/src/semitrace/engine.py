"""Graded linear algebra over k[S] with prime-field coefficients.

Every graded piece of R = k[t^s : s in S] is at most one-dimensional, so a
homogeneous map between graded free modules is a plain coefficient
matrix C: entry (i, j) stands for C[i, j] * t^(col_j - row_i).  In degree d
the map is C restricted to the rows and columns whose summand is alive
in degree d (d - shift in S).  The same trick covers quotients R/I and
fractional ideals: each summand carries a degree set instead of S.

Computations below the guard band (cap - max generator) are exact; the
cap only bounds which degrees get examined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import CapExceeded, NotHomogeneous, NotPrime
from .linalg import Span, is_prime, nullspace, rank
from .semigroup import NumericalSemigroup


class TruncatedRing:
    """R / (degrees >= cap) over F_p."""

    def __init__(self, semigroup: NumericalSemigroup, prime: int, cap: int):
        self.semigroup = semigroup
        self.prime = prime
        self.cap = cap
        self.basis = semigroup.members_below(cap)
        self.index = {d: k for k, d in enumerate(self.basis)}

    @property
    def guard(self) -> int:
        return self.semigroup.max_generator

    @property
    def top(self) -> int:
        """Largest degree whose results are reported."""
        return self.cap - self.guard

    def raised(self, cap: int) -> "TruncatedRing":
        return TruncatedRing(self.semigroup, self.prime, max(cap, self.cap))

    def element(self, terms: dict) -> "RingElement":
        return RingElement(self, terms)

    def __repr__(self) -> str:
        return f"TruncatedRing({self.semigroup!r}, p={self.prime}, D={self.cap})"


def minimum_cap(S: NumericalSemigroup) -> int:
    return 2 * S.conductor + 2 * S.max_generator


def truncate(S: NumericalSemigroup, p: int = 101, D_hint: Optional[int] = None) -> TruncatedRing:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    cap = minimum_cap(S)
    if D_hint is not None:
        cap = max(cap, int(D_hint))
    return TruncatedRing(S, p, cap)


class RingElement:
    """Sparse element of a truncated ring: degree -> coefficient."""

    def __init__(self, ring: TruncatedRing, terms: dict):
        p = ring.prime
        clean = {}
        for d, c in terms.items():
            c %= p
            if c and d < ring.cap:
                if not ring.semigroup.contains(d):
                    raise ValueError(f"t^{d} is not in the ring")
                clean[d] = c
        self.ring = ring
        self.terms = clean

    @property
    def is_homogeneous(self) -> bool:
        return len(self.terms) <= 1

    def __mul__(self, other: "RingElement") -> "RingElement":
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return RingElement(self.ring, out)

    def __add__(self, other: "RingElement") -> "RingElement":
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return RingElement(self.ring, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElement) and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"{c}*t^{d}" for d, c in sorted(self.terms.items())) or "0"


# -- degree sets used as summand types ----------------------------------

class QuotientSet:
    """Degrees of R/I: members of S outside I."""

    def __init__(self, S: NumericalSemigroup, I):
        self.S = S
        self.I = I

    def contains(self, d: int) -> bool:
        return self.S.contains(d) and not self.I.contains(d)

    __contains__ = contains


def active(shifts: Sequence[int], degree: int, dset) -> list[int]:
    """Indices j with degree - shifts[j] in dset."""
    return [j for j, s in enumerate(shifts) if dset.contains(degree - s)]


# -- graded matrices ------------------------------------------------------

class GradedMatrix:
    """Homogeneous map between graded free modules over k[S].

    ``row_shifts`` are the degrees of the target basis, ``col_shifts``
    those of the source basis.  Coefficients are integers, reduced mod p
    only when a computation asks for a field.
    """

    def __init__(self, semigroup: NumericalSemigroup, row_shifts, col_shifts, coeffs=None, check=True):
        self.semigroup = semigroup
        self.row_shifts = tuple(int(r) for r in row_shifts)
        self.col_shifts = tuple(int(c) for c in col_shifts)
        shape = (len(self.row_shifts), len(self.col_shifts))
        if coeffs is None:
            coeffs = np.zeros(shape, dtype=np.int64)
        self.coeffs = np.asarray(coeffs, dtype=np.int64).reshape(shape)
        if check:
            self.check_homogeneous()

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape

    def check_homogeneous(self, p: Optional[int] = None):
        C = self.coeffs if p is None else self.coeffs % p
        for i, j in zip(*np.nonzero(C)):
            d = self.col_shifts[j] - self.row_shifts[i]
            if not self.semigroup.contains(d):
                raise NotHomogeneous(f"entry ({i},{j}) has degree {d} outside the semigroup")

    def entry(self, i: int, j: int, ring: Optional[TruncatedRing] = None):
        c = int(self.coeffs[i, j])
        d = self.col_shifts[j] - self.row_shifts[i]
        if ring is None:
            return {d: c} if c else {}
        return RingElement(ring, {d: c} if c else {})

    def column(self, j: int) -> np.ndarray:
        return self.coeffs[:, j]

    def transpose(self) -> "GradedMatrix":
        """The dual map Hom(target, R) -> Hom(source, R)."""
        return GradedMatrix(
            self.semigroup, [-c for c in self.col_shifts], [-r for r in self.row_shifts],
            self.coeffs.T.copy(), check=False,
        )

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.col_shifts != other.row_shifts:
            raise ValueError("shift mismatch in matrix product")
        # monomials compose additively in degree, so coefficients just multiply
        return GradedMatrix(self.semigroup, self.row_shifts, other.col_shifts, self.coeffs @ other.coeffs)

    def is_zero(self, p: int) -> bool:
        return not np.any(self.coeffs % p)

    def has_unit_entry(self, p: int) -> bool:
        C = self.coeffs % p
        return any(
            self.col_shifts[j] == self.row_shifts[i] for i, j in zip(*np.nonzero(C))
        )

    def column_supports(self, p: int) -> list[int]:
        return [int(np.count_nonzero(self.coeffs[:, j] % p)) for j in range(self.shape[1])]

    def to_json(self) -> dict:
        entries = []
        for i, j in zip(*np.nonzero(self.coeffs)):
            d = self.col_shifts[j] - self.row_shifts[i]
            entries.append([int(i), int(j), [[int(d), int(self.coeffs[i, j])]]])
        return {"row_shifts": list(self.row_shifts), "col_shifts": list(self.col_shifts), "entries": entries}

    @classmethod
    def from_json(cls, S: NumericalSemigroup, data: dict) -> "GradedMatrix":
        rows, cols = data["row_shifts"], data["col_shifts"]
        C = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for i, j, terms in data["entries"]:
            for d, c in terms:
                if d != cols[j] - rows[i]:
                    raise NotHomogeneous(f"entry ({i},{j}) has degree {d}, expected {cols[j] - rows[i]}")
                C[i, j] += c
        return cls(S, rows, cols, C)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"GradedMatrix({self.shape[0]}x{self.shape[1]})"


def generator_row(I) -> GradedMatrix:
    """The 1 x n map R(-x_1) + ... + R(-x_n) -> R onto a monomial ideal."""
    gens = I.min_gens
    return GradedMatrix(I.semigroup, [0], gens, np.ones((1, len(gens)), dtype=np.int64))


# -- degreewise kernels and generators ----------------------------------

def _kernel_in_degree(M: GradedMatrix, degree: int, p: int) -> np.ndarray:
    S = M.semigroup
    cols = active(M.col_shifts, degree, S)
    n = M.shape[1]
    if not cols:
        return np.zeros((0, n), dtype=np.int64)
    sub = M.coeffs[:, cols] % p
    if sub.shape[0] == 1 and sub[0, 0]:
        # one row: e_j - (c_j / c_0) e_0 for j > 0
        c0inv = pow(int(sub[0, 0]), p - 2, p)
        K = np.zeros((len(cols) - 1, len(cols)), dtype=np.int64)
        for r in range(1, len(cols)):
            K[r - 1, r] = 1
            K[r - 1, 0] = (-int(sub[0, r]) * c0inv) % p
    else:
        K = nullspace(sub, p)
    out = np.zeros((K.shape[0], n), dtype=np.int64)
    out[:, cols] = K
    return out


def kernel_degreewise(M: GradedMatrix, ring: TruncatedRing, up_to: int, lo: Optional[int] = None) -> dict:
    """Basis of the kernel in each degree lo..up_to (rows in source coordinates)."""
    if up_to > ring.top:
        raise CapExceeded(up_to + ring.guard, ring.cap)
    if lo is None:
        lo = min(M.col_shifts) if M.col_shifts else 0
    return {d: _kernel_in_degree(M, d, ring.prime) for d in range(lo, up_to + 1)}


def minimal_generators(vectors: Sequence[tuple[int, np.ndarray]], S: NumericalSemigroup, p: int) -> list[int]:
    """Indices of a minimal generating subset of homogeneous vectors.

    Greedy in (degree, input order): a vector is kept unless it lies in
    the span of kept vectors of its degree plus m times everything of
    lower degree.
    """
    order = sorted(range(len(vectors)), key=lambda k: (vectors[k][0], k))
    kept = []
    by_degree: dict[int, list[int]] = {}
    for k in order:
        by_degree.setdefault(vectors[k][0], []).append(k)
    n = len(vectors[0][1]) if vectors else 0
    for d in sorted(by_degree):
        span = Span(n, p)
        for k, (dk, v) in enumerate(vectors):
            if dk < d and S.contains(d - dk):
                span.add(v)
        for k in by_degree[d]:
            if span.add(vectors[k][1]):
                kept.append(k)
    return kept


def syzygy_bound(M: GradedMatrix) -> int:
    """No minimal kernel generator lives in degree >= this."""
    S = M.semigroup
    if not M.col_shifts:
        return 0
    return max(M.col_shifts) + S.conductor + S.multiplicity


def syzygy(M: GradedMatrix, ring: TruncatedRing) -> GradedMatrix:
    """Minimal generating matrix of ker M."""
    S = M.semigroup
    p = ring.prime
    n = M.shape[1]
    if n == 0:
        return GradedMatrix(S, (), (), np.zeros((0, 0), dtype=np.int64), check=False)
    lo, hi = min(M.col_shifts), syzygy_bound(M)
    if hi - 1 > ring.top:
        raise CapExceeded(hi - 1 + ring.guard, ring.cap)
    gens_S = S.generators
    K: dict[int, np.ndarray] = {}
    new_cols, new_degs = [], []
    for d in range(lo, hi):
        basis = _kernel_in_degree(M, d, p)
        K[d] = basis
        if basis.shape[0] == 0:
            continue
        span = Span(n, p)
        for a in gens_S:
            lower = K.get(d - a)
            if lower is not None:
                for v in lower:
                    span.add(v)
                    if span.rank == basis.shape[0]:
                        break
            if span.rank == basis.shape[0]:
                break
        if span.rank == basis.shape[0]:
            continue
        for v in basis:
            if span.add(v):
                new_cols.append(v)
                new_degs.append(d)
    C = np.array(new_cols, dtype=np.int64).T if new_cols else np.zeros((n, 0), dtype=np.int64)
    # present in symmetric residues so p = 2 and odd p give readable signs
    C = np.where(C > p // 2, C - p, C)
    return GradedMatrix(S, M.col_shifts, new_degs, C, check=False)


def free_resolution(gen_row: GradedMatrix, ring: TruncatedRing, steps: int) -> list[GradedMatrix]:
    """Matrices d_0, ..., d_{steps-1} of a minimal free resolution.

    d_0 is the syzygy matrix of ``gen_row``.  If a step needs a larger
    cap the cap is doubled once; a second shortfall raises CapExceeded.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    out = []
    prev = gen_row
    raised = False
    for _ in range(steps):
        try:
            nxt = syzygy(prev, ring)
        except CapExceeded as exc:
            if raised:
                raise
            raised = True
            ring = ring.raised(max(2 * ring.cap, exc.needed + 1))
            nxt = syzygy(prev, ring)
        out.append(nxt)
        prev = nxt
    return out


def betti_numbers(gen_row: GradedMatrix, resolution: Sequence[GradedMatrix]) -> list[int]:
    return [gen_row.shape[1]] + [d.shape[1] for d in resolution]


# -- modules given by presentations ------------------------------------

@dataclass
class GradedModule:
    """coker(relations), a quotient of the free module on ``gen_degrees``."""

    ring: TruncatedRing
    gen_degrees: tuple
    relations: GradedMatrix
    _cache: dict = field(default_factory=dict, repr=False)

    def dim(self, degree: int) -> int:
        if degree in self._cache:
            return self._cache[degree]
        S, p = self.ring.semigroup, self.ring.prime
        rows = active(self.gen_degrees, degree, S)
        cols = active(self.relations.col_shifts, degree, S)
        r = rank(self.relations.coeffs[np.ix_(rows, cols)] % p, p) if rows and cols else 0
        self._cache[degree] = len(rows) - r
        return self._cache[degree]


def module_from_ideal(ring: TruncatedRing, I) -> GradedModule:
    row = generator_row(I)
    return GradedModule(ring, row.col_shifts, syzygy(row, ring))


def hilbert_function(M: GradedModule, up_to: int, lo: int = 0) -> list[int]:
    if up_to > M.ring.top:
        raise CapExceeded(up_to + M.ring.guard, M.ring.cap)
    return [M.dim(d) for d in range(lo, up_to + 1)]


def module_multiplicity(M: GradedModule) -> int:
    """dim_k M / t^e M for a torsion-free M."""
    S = M.ring.semigroup
    e = S.multiplicity
    k = len(M.gen_degrees)
    extra = GradedMatrix(S, M.gen_degrees, [g + e for g in M.gen_degrees], np.eye(k, dtype=np.int64), check=False)
    rel = GradedMatrix(
        S, M.gen_degrees, M.relations.col_shifts + extra.col_shifts,
        np.hstack([M.relations.coeffs, extra.coeffs]), check=False,
    )
    Q = GradedModule(M.ring, M.gen_degrees, rel)
    lo = min(M.gen_degrees)
    hi = max(M.gen_degrees) + S.conductor + e
    return sum(Q.dim(d) for d in range(lo, hi + 1))


def stabilization_check(computation: Callable[[TruncatedRing], object], ring: TruncatedRing, D2: Optional[int] = None) -> bool:
    """Re-run ``computation`` with a larger cap and compare the outcomes.

    ``computation`` takes a ring and returns something comparable (a
    report's ``signature()`` or plain data).  D2 defaults to D1 + e.
    """
    D2 = ring.cap + ring.semigroup.multiplicity if D2 is None else D2
    first = computation(ring)
    second = computation(ring.raised(D2))
    return first == second

