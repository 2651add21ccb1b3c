"""Finite-length homology of monomial ideals and their annihilators.

Everything here is a degreewise subquotient N_d / D_d of a coordinate
space k^n (N_d given by a basis, D_d by a :class:`Span`), where the
coordinates are the summands of some graded free or monomial module.
Multiplying by t^a keeps coordinates, except that summands dead in
degree d + a drop out; annihilation by t^a means every basis vector of
N_d lands in D_{d+a}.

Two routes exist for Tor_1(I, R/I) and Ext^i(I, E):

* ``resolution`` follows the definition through a minimal free resolution;
* ``koszul`` / ``dual`` need only the first syzygies.  Tor_1(I, R/I) is
  (Z_1 cap I F) / I Z_1, and Ext^i(I, E) is computed as the functionals on
  Omega^i (inside F_{i-1}) with values in E, modulo those extending to
  F_{i-1}.  The scan layer uses these since second syzygies get large.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

import numpy as np

from .engine import (
    GradedMatrix,
    QuotientSet,
    TruncatedRing,
    active,
    free_resolution,
    generator_row,
    syzygy,
    syzygy_bound,
    truncate,
)
from .errors import (
    CertificateNotFound,
    NotMinimal,
    NotMinimalMultiplicity,
    PrincipalIdeal,
)
from .ideals import (
    FractionalMonomialIdeal,
    canonical_ideal,
    colon,
    hom_ideal,
    ideal_from_degrees,
    intersection,
    unit_ideal,
    issubset,
    maximal_ideal,
    principal,
    theorem38_semigroup_report,
    trace_ideal,
    _require_battery_input,
)
from .linalg import Span, nullspace, sparse_rank
from .semigroup import NumericalSemigroup


@dataclass
class HomologyReport:
    target: str
    dims: dict
    killed_by_y: bool
    killed_by_m: bool
    stabilized: Optional[bool] = None
    finite: bool = True
    cap: int = 0

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    @property
    def total_dim(self) -> int:
        return self.total

    def signature(self) -> tuple:
        return (self.target, tuple(sorted(self.dims.items())), self.killed_by_y, self.killed_by_m, self.finite)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "dims": {str(d): v for d, v in sorted(self.dims.items())},
            "total": self.total,
            "killed_by_y": self.killed_by_y,
            "killed_by_m": self.killed_by_m,
            "stabilized": self.stabilized,
            "finite": self.finite,
        }


# -- the generic subquotient ----------------------------------------------
#
# Vectors travel as tuples of (coordinate, coefficient) pairs; nearly all
# of them have two entries, which keeps Span on its union-find path.

def _items(v, p) -> tuple:
    v = np.asarray(v, dtype=np.int64) % p
    return tuple((int(i), int(v[i])) for i in np.flatnonzero(v))


def _columns(M: GradedMatrix, p) -> list:
    return [_items(M.coeffs[:, g], p) for g in range(M.shape[1])]


def _rows(A: np.ndarray, p) -> list:
    return [_items(r, p) for r in A]


class _Subquotient:
    """Degreewise N_d / D_d inside k^n with lazily cached pieces."""

    def __init__(self, n, p, numerator, denominator, alive=None):
        self.n = n
        self.p = p
        self._num = numerator
        self._den = denominator
        self._alive = alive
        self._dcache: dict = {}
        self._ncache: dict = {}
        self._rcache: dict = {}

    def num(self, d) -> list:
        if d not in self._ncache:
            self._ncache[d] = self._num(d)
        return self._ncache[d]

    def den(self, d) -> Span:
        if d not in self._dcache:
            self._dcache[d] = self._den(d)
        return self._dcache[d]

    def dim(self, d) -> int:
        N = self.num(d)
        if not N:
            return 0
        span = self.den(d).copy()
        before = span.rank
        for v in N:
            span.add_sparse(v)
        return span.rank - before

    def moved(self, v: tuple, d: int) -> tuple:
        if self._alive is None:
            return v
        keep = set(self._alive(d))
        return tuple((i, c) for i, c in v if i in keep)

    def holds(self, d, v) -> bool:
        return self.den(d).contains_sparse(self.moved(v, d))

    def reps(self, d) -> list:
        """Vectors of N_d independent modulo D_d (a basis of the quotient)."""
        span = self.den(d).copy()
        return [v for v in self.num(d) if span.add_sparse(v)]

    def kills(self, d, a) -> bool:
        # D is a submodule, so checking quotient representatives suffices
        if d not in self._rcache:
            self._rcache[d] = self.reps(d)
        return all(self.holds(d + a, v) for v in self._rcache[d])


def _run_report(target, sq: _Subquotient, degrees, S: NumericalSemigroup, cap, generators=None, finite=True):
    dims = {}
    for d in degrees:
        k = sq.dim(d)
        if k:
            dims[d] = k
    killed_y, killed_m = _kill_flags(sq, S, dims, generators)
    return HomologyReport(target, dims, killed_y, killed_m, None, finite, cap)


def _kill_flags(sq, S, dims, generators=None) -> tuple:
    if generators is None:
        # every degree with a nonzero piece must be pushed into the denominator
        check = lambda a: all(sq.kills(d, a) for d in dims)
    else:
        check = lambda a: all(sq.holds(d + a, v) for d, v in generators)
    killed_y = check(S.multiplicity)
    killed_m = killed_y and all(check(a) for a in S.generators[1:])
    return killed_y, killed_m


def _ring(S, prime, cap, bound) -> TruncatedRing:
    """A ring whose reporting window reaches ``bound``."""
    need = bound + S.max_generator
    return truncate(S, prime, max(need, cap or 0))


def _stabilize(build: Callable[[TruncatedRing], HomologyReport], ring: TruncatedRing, stabilize: bool) -> HomologyReport:
    rep = build(ring)
    if stabilize:
        again = build(ring.raised(ring.cap + ring.semigroup.multiplicity))
        rep.stabilized = again.signature() == rep.signature()
    return rep


def _kernel_on(C: np.ndarray, rows, cols, p) -> list:
    """Kernel of C[rows, cols] as sparse vectors in the full coordinates."""
    if not cols:
        return []
    sub = C[np.ix_(rows, cols)] % p if rows else np.zeros((0, len(cols)), dtype=np.int64)
    K = nullspace(sub, p)
    return [tuple((cols[k], int(c)) for k, c in enumerate(r) if c) for r in K]


# -- homology of a three-term complex X -> Y -> Z at Y ------------------

def _complex_homology(target, S, p, A, B, x_sh, y_sh, z_sh, dset, degrees, cap):
    """H at Y of X --A--> Y --B--> Z, each summand alive where d - shift in dset."""
    ny = len(y_sh)
    acols = [_items(A[:, j], p) for j in range(A.shape[1])]

    def num(d):
        return _kernel_on(B, active(z_sh, d, dset), active(y_sh, d, dset), p)

    def den(d):
        keep = set(active(y_sh, d, dset))
        sp = Span(ny, p)
        for j in active(x_sh, d, dset):
            sp.add_sparse([(i, c) for i, c in acols[j] if i in keep])
        return sp

    sq = _Subquotient(ny, p, num, den, alive=lambda d: active(y_sh, d, dset))
    return _run_report(target, sq, degrees, S, cap)


# -- Koszul data ------------------------------------------------------------

def _require_nonprincipal(I):
    if I.is_principal():
        raise PrincipalIdeal(f"{I!r} is principal")


def first_syzygies(I: FractionalMonomialIdeal, prime: int = 101) -> GradedMatrix:
    """Z_1 of the minimal generators, as a matrix; columns have two entries."""
    row = generator_row(I)
    S = I.semigroup
    ring = _ring(S, prime, None, syzygy_bound(row))
    Z = syzygy(row, ring)
    if any(k != 2 for k in Z.column_supports(prime)):
        raise AssertionError("ideal syzygy with a column not of two entries")
    return Z


def koszul_boundaries(I: FractionalMonomialIdeal) -> GradedMatrix:
    gens = I.min_gens
    n = len(gens)
    pairs = list(combinations(range(n), 2))
    C = np.zeros((n, len(pairs)), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        C[j, k] = 1
        C[i, k] = -1
    return GradedMatrix(I.semigroup, gens, [gens[i] + gens[j] for i, j in pairs], C, check=False)


class _Koszul:
    """Z_1, B_1 and their degreewise spans for one ideal, cached."""

    def __init__(self, I: FractionalMonomialIdeal, p: int, Z: Optional[GradedMatrix] = None):
        self.I = I
        self.S = I.semigroup
        self.p = p
        self.gens = I.min_gens
        self.n = len(self.gens)
        self.Z = first_syzygies(I, p) if Z is None else Z
        self.B = koszul_boundaries(I)
        self.zcols = _columns(self.Z, p)
        self.bcols = _columns(self.B, p)
        self._iz1: dict = {}
        self._b1: dict = {}

    def iz1(self, d) -> Span:
        if d not in self._iz1:
            sp = Span(self.n, self.p)
            I = self.I
            sp.extend([v for v, dg in zip(self.zcols, self.Z.col_shifts) if I.contains(d - dg)])
            self._iz1[d] = sp
        return self._iz1[d]

    def b1(self, d) -> Span:
        if d not in self._b1:
            sp = Span(self.n, self.p)
            S = self.S
            sp.extend([v for v, dk in zip(self.bcols, self.B.col_shifts) if S.contains(d - dk)])
            self._b1[d] = sp
        return self._b1[d]

    def z1_cap_if(self, d) -> list:
        return _sum_zero([j for j, x in enumerate(self.gens) if self.I.contains(d - x)], self.p)

    def z1(self, d) -> list:
        return _sum_zero(active(self.gens, d, self.S), self.p)


def _koszul(I, prime, Z) -> _Koszul:
    if isinstance(Z, _Koszul):
        return Z
    _require_nonprincipal(I)
    return _Koszul(I, prime, Z)


def _sum_zero(J, p) -> list:
    """Kernel of the all-ones generator row on the coordinates J."""
    if len(J) < 2:
        return []
    j0 = J[0]
    return [((j0, p - 1), (j, 1)) for j in J[1:]]


def _z1_in_degree(I, d, prime) -> list:
    return _sum_zero(active(I.min_gens, d, I.semigroup), prime)


@dataclass
class KoszulData:
    Z1: GradedMatrix
    B1: GradedMatrix
    H1: HomologyReport


def koszul_ZB(I: FractionalMonomialIdeal, prime: int = 101, stabilize: bool = True, cap=None) -> KoszulData:
    K = _koszul(I, prime, None)
    S = I.semigroup
    # I H_1 = 0: every x_k z_g is a boundary
    for v, dg in zip(K.zcols, K.Z.col_shifts):
        for x in K.gens:
            if not K.b1(dg + x).contains_sparse(v):
                raise AssertionError("I H_1 is not zero")
    gens = K.gens
    lo, bound = gens[0] + gens[1], 2 * gens[-1] + S.conductor

    def build(ring):
        sq = _Subquotient(K.n, prime, K.z1, K.b1)
        return _run_report("H1", sq, range(lo, ring.top + 1), S, ring.cap)

    return KoszulData(K.Z, K.B, _stabilize(build, _ring(S, prime, cap, bound), stabilize))


def check_yB1_in_IZ1(I: FractionalMonomialIdeal, multiplier: str = "y", prime: int = 101, Z=None) -> bool:
    """Is t^a B_1 inside I Z_1 for a = e (``y``) or every generator a (``all_of_m``)?"""
    K = _koszul(I, prime, Z)
    S = I.semigroup
    mults = (S.multiplicity,) if multiplier == "y" else S.generators
    for v, dk in zip(K.bcols, K.B.col_shifts):
        for a in mults:
            if not K.iz1(dk + a).contains_sparse(v):
                return False
    return True


def delta1(I: FractionalMonomialIdeal, prime: int = 101, stabilize: bool = True, cap=None, Z=None) -> HomologyReport:
    """(Z_1 cap I F) / B_1."""
    K = _koszul(I, prime, Z)
    S = I.semigroup
    gens = K.gens
    lo = gens[0] + I.lo
    bound = max(2 * gens[-1] + S.conductor, gens[-1] + I.hi)

    def build(ring):
        sq = _Subquotient(K.n, prime, K.z1_cap_if, K.b1)
        return _run_report("Delta1", sq, range(lo, ring.top + 1), S, ring.cap)

    return _stabilize(build, _ring(S, prime, cap, bound), stabilize)


def b1_mod_iz1(I: FractionalMonomialIdeal, prime: int = 101, stabilize: bool = True, cap=None, Z=None) -> HomologyReport:
    K = _koszul(I, prime, Z)
    S = I.semigroup
    gens = K.gens
    lo = gens[0] + gens[1]
    bound = max(2 * gens[-1] + S.conductor, max(K.Z.col_shifts) + I.hi)

    def num(d):
        return [v for v, dk in zip(K.bcols, K.B.col_shifts) if S.contains(d - dk)]

    def build(ring):
        sq = _Subquotient(K.n, prime, num, K.iz1)
        return _run_report("B1modIZ1", sq, range(lo, ring.top + 1), S, ring.cap)

    return _stabilize(build, _ring(S, prime, cap, bound), stabilize)


# -- Tor_1(I, R/I) ------------------------------------------------------------

def tor1_self(
    I: FractionalMonomialIdeal,
    prime: int = 101,
    method: str = "resolution",
    stabilize: bool = True,
    cap=None,
    Z=None,
    resolution=None,
) -> HomologyReport:
    S = I.semigroup
    gens = I.min_gens
    if len(gens) == 1:
        return HomologyReport("Tor1Self", {}, True, True, True if stabilize else None, True, 0)
    n = len(gens)
    if method == "koszul":
        K = _koszul(I, prime, Z)
        lo = gens[0] + I.lo
        bound = max(K.Z.col_shifts) + I.hi

        def build(ring):
            sq = _Subquotient(n, prime, K.z1_cap_if, K.iz1)
            return _run_report("Tor1Self", sq, range(lo, ring.top + 1), S, ring.cap)

        return _stabilize(build, _ring(S, prime, cap, bound), stabilize)
    if method != "resolution":
        raise ValueError(f"unknown method {method!r}")
    if resolution is None:
        resolution = free_resolution(generator_row(I), truncate(S, prime, cap), 2)
    d0, d1 = resolution[0], resolution[1]
    Q = QuotientSet(S, I)
    lo = min(d0.col_shifts)
    bound = max(d0.col_shifts) + I.hi

    def build(ring):
        return _complex_homology(
            "Tor1Self", S, prime, d1.coeffs, d0.coeffs, d1.col_shifts, d0.col_shifts, gens, Q,
            range(lo, ring.top + 1), ring.cap,
        )

    return _stabilize(build, _ring(S, prime, cap, bound), stabilize)


# -- Ext^i(I, E) ------------------------------------------------------------

def _target_ideal(I, target) -> FractionalMonomialIdeal:
    S = I.semigroup
    if isinstance(target, FractionalMonomialIdeal):
        return target
    if target == "R":
        return ideal_from_degrees(S, [0])
    if target in ("canonical_dual", "dual"):
        return hom_ideal(I, canonical_ideal(S))
    raise ValueError(f"unknown Ext target {target!r}")


def _target_name(target, i) -> str:
    if isinstance(target, FractionalMonomialIdeal):
        return f"Ext{i}_E"
    if target == "R":
        return "Ext1_R" if i == 1 else f"Ext{i}_R"
    return "Ext1_Dual" if i == 1 else f"Ext{i}_Dual"


def ext_i(
    I: FractionalMonomialIdeal,
    target="R",
    i: int = 1,
    prime: int = 101,
    method: str = "resolution",
    stabilize: bool = True,
    cap=None,
    resolution=None,
) -> HomologyReport:
    """Ext^i(I, E) for E = R, the dual I^v = (omega : I), or a given fractional ideal."""
    if i < 1:
        raise ValueError("i must be positive")
    S = I.semigroup
    E = _target_ideal(I, target)
    name = _target_name(target, i)
    if I.is_principal():
        return HomologyReport(name, {}, True, True, True if stabilize else None, True, 0)
    steps = i + 1 if method == "resolution" else i
    if resolution is None or len(resolution) < steps:
        resolution = free_resolution(generator_row(I), truncate(S, prime, cap), steps)
    shifts = [generator_row(I).col_shifts] + [r.col_shifts for r in resolution]
    # shifts[k] are the basis degrees of F_k; resolution[k] maps F_{k+1} -> F_k
    if method == "dual":
        Zm = resolution[i - 1]
        src = shifts[i - 1]  # coordinates of F_{i-1}
        gdeg = Zm.col_shifts
        if not gdeg:
            return HomologyReport(name, {}, True, True, True if stabilize else None, True, 0)
        n = len(src)
        zcols = _columns(Zm, prime)
        W = Span(n, prime)
        for v in zcols:
            W.add_sparse(v)
        Wann = _rows(W.annihilator(), prime)
        lo = E.lo - max(gdeg)
        bound = E.hi - min(src)

        def num(d):
            bad = Span(n, prime)
            for v, dg in zip(zcols, gdeg):
                if not E.contains(d + dg):
                    bad.add_sparse(v)
            return _rows(bad.annihilator(), prime)

        def den(d):
            sp = Span(n, prime)
            for k, s in enumerate(src):
                if E.contains(d + s):
                    sp.add_sparse([(k, 1)])
            for u in Wann:
                sp.add_sparse(u)
            return sp

        rank_v = W.rank

        memo: dict = {}

        g_lo, g_hi = min(gdeg), max(gdeg) + 1
        s_lo, s_hi = min(src), max(src) + 1

        def badmask(d):
            return tuple(not E.contains(d + dg) for dg in gdeg)

        def pmask_at(d):
            return tuple(E.contains(d + s) for s in src)

        def dim(d):
            # dim U - dim(P + W) = rank V - rank(bad) - rank(V restricted to P)
            # the answer only depends on E near d, so memoize on that window
            key = (E.window(d + g_lo, d + g_hi), E.window(d + s_lo, d + s_hi))
            if key not in memo:
                bm, pmask = badmask(d), pmask_at(d)
                bad = [v for v, b in zip(zcols, bm) if b]
                onp = [tuple((k, c) for k, c in v if pmask[k]) for v in zcols]
                memo[key] = rank_v - sparse_rank(n, prime, bad) - sparse_rank(n, prime, onp)
            return memo[key]

        vspan = Span(n, prime)
        vspan.extend(zcols)
        vbasis = vspan.basis()
        xmemo: dict = {}
        kmemo: dict = {}
        bmemo: dict = {}

        def inside_p_plus_w(pmask):
            # X = {x in V : x_k = 0 for k in P}; u lies in P + W iff u kills X
            if pmask not in xmemo:
                P = [k for k in range(n) if pmask[k]]
                lam = nullspace(vbasis[:, P].T % prime, prime) if P else np.eye(len(vbasis), dtype=np.int64)
                xmemo[pmask] = _rows((lam @ vbasis) % prime, prime)
            return xmemo[pmask]

        def kills(d, a):
            # every u in U_d lies in P_{d+a} + W  iff  X_{d+a} is inside span(bad_d)
            bkey = E.window(d + g_lo, d + g_hi)
            key = (bkey, E.window(d + a + s_lo, d + a + s_hi))
            if key not in kmemo:
                if bkey not in bmemo:
                    bad = Span(n, prime)
                    bad.extend([v for v, b in zip(zcols, badmask(d)) if b])
                    bmemo[bkey] = bad
                xs = inside_p_plus_w(pmask_at(d + a))
                kmemo[key] = all(bmemo[bkey].contains_sparse(x) for x in xs)
            return kmemo[key]

        def build(ring):
            sq = _Subquotient(n, prime, num, den)
            sq.dim = dim
            sq.kills = kills
            return _run_report(name, sq, range(lo, ring.top + 1), S, ring.cap)

        return _stabilize(build, _ring(S, prime, cap, bound), stabilize)
    if method != "resolution":
        raise ValueError(f"unknown method {method!r}")
    prev, here, nxt = shifts[i - 1], shifts[i], shifts[i + 1]
    A = resolution[i - 1].coeffs.T  # Hom(F_{i-1}) -> Hom(F_i)
    B = resolution[i].coeffs.T  # Hom(F_i) -> Hom(F_{i+1})
    neg = lambda xs: [-x for x in xs]
    if not here:
        return HomologyReport(name, {}, True, True, True if stabilize else None, True, 0)
    lo = E.lo - max(here)
    bound = E.hi - min(list(prev) + list(here) + list(nxt))

    def build(ring):
        return _complex_homology(
            name, S, prime, A, B, neg(prev), neg(here), neg(nxt), E, range(lo, ring.top + 1), ring.cap
        )

    return _stabilize(build, _ring(S, prime, cap, bound), stabilize)


def matlis_consistency(I: FractionalMonomialIdeal, prime: int = 101, tor_method="resolution", ext_method="resolution") -> bool:
    """Tor_1(I, R/I) and Ext^1(I, I^v) have equal length and annihilation flags."""
    t = tor1_self(I, prime, method=tor_method, stabilize=False)
    x = ext_i(I, "canonical_dual", 1, prime, method=ext_method, stabilize=False)
    return (t.total, t.killed_by_y, t.killed_by_m) == (x.total, x.killed_by_y, x.killed_by_m)


# -- exterior and symmetric squares ----------------------------------------

def _square(I, prime, symmetric: bool, cap, stabilize, flags_only=False):
    S = I.semigroup
    gens = I.min_gens
    n = len(gens)
    pairs = [(i, j) for i in range(n) for j in range(i if symmetric else i + 1, n)]
    index = {pr: k for k, pr in enumerate(pairs)}
    N = len(pairs)
    pdeg = [gens[i] + gens[j] for i, j in pairs]

    def term(a, j):
        # e_a * e_j in the pair basis as (index, sign), or None when it vanishes
        if a == j and not symmetric:
            return None
        sign = -1 if (not symmetric and a > j) else 1
        return index[(min(a, j), max(a, j))], sign

    def den(d):
        # (Z_1 * F)_d = sum_j Z_1(d - x_j) * e_j, and Z_1 in each degree is
        # spanned by e_a - e_a0 over the generators alive there
        vecs = []
        for j, x in enumerate(gens):
            alive = active(gens, d - x, S)
            if len(alive) < 2:
                continue
            t0 = term(alive[0], j)
            for a in alive[1:]:
                t1 = term(a, j)
                items: dict = {}
                if t1 is not None:
                    items[t1[0]] = t1[1]
                if t0 is not None:
                    items[t0[0]] = items.get(t0[0], 0) - t0[1]
                vecs.append(tuple((k, c % prime) for k, c in items.items() if c % prime))
        sp = Span(N, prime)
        sp.extend(vecs)
        return sp

    def num(d):
        return [((k, 1),) for k in range(N) if S.contains(d - pdeg[k])]

    generators = [(pdeg[k], ((k, 1),)) for k in range(N)]
    if flags_only:
        return _kill_flags(_Subquotient(N, prime, num, den), S, None, generators)
    lo = min(pdeg)
    # every relation lives below 2 max(x) + c, and past that the quotient is zero
    bound = 2 * gens[-1] + 2 * S.conductor + S.max_generator
    target = "Sym2" if symmetric else "Wedge2"

    def build(ring):
        sq = _Subquotient(N, prime, num, den)
        rep = _run_report(target, sq, range(lo, ring.top + 1), S, ring.cap, generators=generators)
        top = ring.top
        tail = range(max(lo, top - S.multiplicity + 1), top + 1)
        rep.finite = all(sq.dim(d) == 0 for d in tail)
        return rep

    return _stabilize(build, _ring(S, prime, cap, bound), stabilize)


def wedge2(I: FractionalMonomialIdeal, prime: int = 101, stabilize: bool = True, cap=None) -> HomologyReport:
    _require_nonprincipal(I)
    return _square(I, prime, False, cap, stabilize)


def sym2(I: FractionalMonomialIdeal, prime: int = 101, stabilize: bool = True, cap=None) -> HomologyReport:
    _require_nonprincipal(I)
    return _square(I, prime, True, cap, stabilize)


def wedge2_flags(I: FractionalMonomialIdeal, prime: int = 101) -> tuple:
    """(killed_by_y, killed_by_m) for wedge^2(I), skipping the dimension count."""
    _require_nonprincipal(I)
    return _square(I, prime, False, None, False, flags_only=True)


# -- traces of modules --------------------------------------------------------

def trace_of_module(A: GradedMatrix, prime: int = 101) -> FractionalMonomialIdeal:
    """Trace of coker(A): the ideal generated by the entries of the generators of ker(A^T)."""
    S = A.semigroup
    if A.has_unit_entry(prime):
        raise NotMinimal("presentation has a unit entry")
    if A.shape[0] == 0:
        raise ValueError("presentation of the zero module")
    At = A.transpose()
    ring = _ring(S, prime, None, syzygy_bound(At))
    B = syzygy(At, ring)
    degs = set()
    for i, g in zip(*np.nonzero(B.coeffs % prime)):
        degs.add(B.col_shifts[g] - B.row_shifts[i])
    if not degs:
        raise ValueError("module has no nonzero functionals")
    return ideal_from_degrees(S, degs)


def syzygy_presentation(I: FractionalMonomialIdeal, j: int, prime: int = 101, resolution=None) -> GradedMatrix:
    """Minimal presentation matrix of Omega^j(I) (j = 0 gives I itself)."""
    if resolution is None or len(resolution) < j + 1:
        resolution = free_resolution(generator_row(I), truncate(I.semigroup, prime), j + 1)
    return resolution[j]


def end_over_trace(I: FractionalMonomialIdeal, prime: int = 101) -> HomologyReport:
    """End(I) / tr(I) as a graded module, with its annihilation flags.

    Its annihilator is tr(I), so killed_by_y / killed_by_m should match
    membership of y and of all of m in tr(I).
    """
    S = I.semigroup
    end = hom_ideal(I, I)
    tr = trace_ideal(I)

    def den(d):
        sp = Span(1, prime)
        if tr.contains(d):
            sp.add_sparse([(0, 1)])
        return sp

    sq = _Subquotient(1, prime, lambda d: [((0, 1),)] if end.contains(d) else [], den)
    return _run_report("End/tr", sq, range(0, S.conductor + 1), S, 0)


# -- Z_1 as a sum of shifted copies of m ----------------------

def check_Z1_iso_shifted_m(
    I: FractionalMonomialIdeal, prime: int = 101, Z=None, require_minimal_multiplicity: bool = True
) -> bool:
    """Certify Z_1(I) = sum_{j>=2} m(-x_j) as graded modules, or refute it.

    Refutation: the Hilbert functions differ.  Certificate: each
    (x_1 : x_j) equals m, the map a -> a e_j - (a x_j / x_1) e_1 is
    injective modulo m Z_1 on minimal generators, and the Hilbert
    functions agree (an injective degree-0 map between modules with the
    same finite Hilbert function is onto).
    With ``require_minimal_multiplicity=False`` the same certificate or
    refutation is attempted outside minimal multiplicity.
    """
    S = I.semigroup
    if require_minimal_multiplicity and not S.has_minimal_multiplicity():
        raise NotMinimalMultiplicity(f"{S!r} does not have minimal multiplicity")
    _require_nonprincipal(I)
    Z = _koszul(I, prime, Z).Z
    gens = I.min_gens
    n = len(gens)
    m = maximal_ideal(S)
    top = max(gens) + S.conductor + S.max_generator
    for d in range(gens[0], top + 1):
        hz = len(_z1_in_degree(I, d, prime))
        hm = sum(1 for x in gens[1:] if m.contains(d - x))
        if hz != hm:
            return False
    R = unit_ideal(S)
    colons = [intersection(colon(principal(S, gens[0]), principal(S, x)), R) for x in gens[1:]]
    if not all(c == m for c in colons):
        raise CertificateNotFound("Hilbert functions agree but a colon is not m")
    images: dict = {}
    for j, c in zip(range(1, n), colons):
        for a in c.min_gens:
            images.setdefault(a + gens[j], []).append(((0, prime - 1), (j, 1)))
    zcols = _columns(Z, prime)
    for d, vecs in images.items():
        sp = Span(n, prime)
        for v, dg in zip(zcols, Z.col_shifts):
            if d != dg and S.contains(d - dg):
                sp.add_sparse(v)
        for v in vecs:
            if not sp.add_sparse(v):
                raise CertificateNotFound("map is not injective modulo m Z_1")
    return True


def z1_rank(I: FractionalMonomialIdeal, prime: int = 101) -> int:
    """Rank of Z_1(I): its dimension in any degree where every summand is alive."""
    d = max(I.min_gens) + I.semigroup.conductor
    return len(_z1_in_degree(I, d, prime))


def corollary_iso_certificate(S: NumericalSemigroup, prime: int = 101) -> bool:
    """Does Z_1(m) carry a certified graded iso onto m^(e-1) with shifts?"""
    m = maximal_ideal(S)
    if z1_rank(m, prime) != S.multiplicity - 1:
        return False
    return check_Z1_iso_shifted_m(m, prime)


# -- vanishing of all higher Ext with a syzygy-trace tail --------------------

@dataclass
class ExtVanishing:
    holds: bool
    certificate_index: Optional[int]
    direct: dict = field(default_factory=dict)


def ext_tail_vanishing(
    I: FractionalMonomialIdeal,
    target,
    killer: str,
    depth: int,
    prime: int = 101,
    method: str = "dual",
    first: Optional[HomologyReport] = None,
    direct_all=False,
    resolution=None,
) -> ExtVanishing:
    """Does ``killer`` (``m`` or ``y``) kill Ext^i(I, E) for every i > 0?

    Ext^i for i <= j is checked directly and the tail i > j is covered by
    tr(Omega^j I) containing the killer, searching j = 0..depth.
    With ``direct_all`` every i <= depth is checked directly first; an
    integer k instead checks i <= k directly.
    """
    S = I.semigroup
    flag = "killed_by_m" if killer == "m" else "killed_by_y"

    def covers(tr):
        if killer == "m":
            return issubset(maximal_ideal(S), tr)
        return S.multiplicity in tr

    if direct_all is True:
        n_direct = depth
    else:
        n_direct = int(direct_all) if direct_all else 1
    want = n_direct + 1 if n_direct > 1 else 1
    if resolution is None or len(resolution) < want:
        resolution = free_resolution(generator_row(I), truncate(S, prime), want)
    resolution = list(resolution)
    reports = {}

    def direct(i):
        nonlocal resolution
        if i not in reports:
            if i == 1 and first is not None:
                reports[i] = first
            else:
                need = i + 1 if method == "resolution" else i
                if len(resolution) < need:
                    resolution = free_resolution(generator_row(I), truncate(S, prime), need)
                reports[i] = ext_i(I, target, i, prime, method=method, stabilize=False, resolution=resolution)
        return getattr(reports[i], flag)

    for i in range(1, n_direct + 1):
        if not direct(i):
            return ExtVanishing(False, None, reports)
    for j in range(0, depth + 1):
        if j >= 1 and not direct(j):
            return ExtVanishing(False, None, reports)
        if len(resolution) < j + 1:
            resolution = free_resolution(generator_row(I), truncate(S, prime), j + 1)
        # coker d_0 is I itself, whose trace is a sum of colons
        tr = trace_ideal(I) if j == 0 else trace_of_module(resolution[j], prime)
        if covers(tr):
            return ExtVanishing(True, j, reports)
    raise CertificateNotFound(f"no syzygy trace certificate up to depth {depth}")


# -- the sixteen-condition battery --------------------------------------------

CONDITION_NAMES = {
    1: "(x1:I) = m",
    2: "tr(I) = m",
    3: "m Ext^i(I, I^v) = 0 for all i > 0",
    4: "m Ext^1(I, I^v) = 0",
    5: "m Tor_1(I, R/I) = 0",
    6: "m B_1 in I Z_1",
    7: "y B_1 in I Z_1",
    8: "y in (x1:I)",
    9: "m wedge^2(I) = 0",
    10: "y Ext^i(I, I^v) = 0 for all i > 0",
    11: "y Ext^1(I, I^v) = 0",
    12: "y Tor_1(I, R/I) = 0",
    13: "y wedge^2(I) = 0",
    14: "y in tr(I)",
    15: "some L = I contains y",
    16: "Z_1(I) = sum m(-x_i)",
}


@dataclass
class Theorem38Battery:
    conditions: dict
    evidence: dict = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return len(set(self.conditions.values())) == 1 and None not in self.conditions.values()

    @property
    def value(self) -> Optional[bool]:
        vals = set(self.conditions.values())
        return vals.pop() if len(vals) == 1 else None

    def to_json(self) -> dict:
        return {
            "conditions": {str(k): v for k, v in sorted(self.conditions.items())},
            "agreement": self.agreement,
            "evidence": self.evidence,
        }


def theorem38_battery(
    I: FractionalMonomialIdeal,
    prime: int = 101,
    ext_depth: int = 3,
    tor_method: str = "koszul",
    ext_method: str = "dual",
    require_minimal_multiplicity: bool = True,
) -> Theorem38Battery:
    """Evaluate the sixteen conditions of CONDITION_NAMES on I.

    The conditions are only known to agree when S has minimal
    multiplicity; ``require_minimal_multiplicity=False`` evaluates them
    anyway (the verdicts are then plain data, not an equivalence test).
    """
    mm = require_minimal_multiplicity
    _require_battery_input(I, mm)
    sets = theorem38_semigroup_report(I, mm)
    K = _Koszul(I, prime)
    dual = _target_ideal(I, "canonical_dual")
    ext1 = ext_i(I, dual, 1, prime, method=ext_method, stabilize=False, resolution=[K.Z])
    tor = tor1_self(I, prime, method=tor_method, stabilize=False, Z=K)
    wedge_y, wedge_m = wedge2_flags(I, prime)
    ev = {"ext1_dual": ext1.to_json(), "tor1": tor.to_json(), "wedge2": {"killed_by_y": wedge_y, "killed_by_m": wedge_m}}

    def tail(killer):
        try:
            res = ext_tail_vanishing(I, dual, killer, ext_depth, prime, ext_method, first=ext1, resolution=[K.Z])
        except CertificateNotFound:
            ev[f"tail_{killer}"] = "inconclusive"
            return None
        ev[f"tail_{killer}"] = res.certificate_index
        return res.holds

    try:
        c16 = check_Z1_iso_shifted_m(I, prime, Z=K, require_minimal_multiplicity=mm)
    except CertificateNotFound:
        c16 = None
    cond = {
        1: sets.c1_colon_is_m,
        2: sets.c2_trace_is_m,
        3: tail("m"),
        4: ext1.killed_by_m,
        5: tor.killed_by_m,
        6: check_yB1_in_IZ1(I, "all_of_m", prime, Z=K),
        7: check_yB1_in_IZ1(I, "y", prime, Z=K),
        8: sets.c8_y_in_colon,
        9: wedge_m,
        10: tail("y"),
        11: ext1.killed_by_y,
        12: tor.killed_by_y,
        13: wedge_y,
        14: sets.c14_y_in_trace,
        15: sets.c15_iso_ideal_containing_y,
        16: c16,
    }
    return Theorem38Battery(cond, ev)


# -- the nearly Gorenstein question ----------------------------------------

@dataclass
class Question12Verdict:
    m_kills_ext: bool
    nearly_gorenstein: bool
    is_counterexample: bool
    certificate_index: Optional[int] = None
    vacuous: bool = False

    def to_json(self) -> dict:
        return {
            "m_kills_ext": self.m_kills_ext,
            "nearly_gorenstein": self.nearly_gorenstein,
            "is_counterexample": self.is_counterexample,
            "certificate_index": self.certificate_index,
            "vacuous": self.vacuous,
        }


def question12_check(
    S: NumericalSemigroup,
    ext_depth: int = 3,
    prime: int = 101,
    method: str = "resolution",
    direct_depth: Optional[int] = None,
) -> Question12Verdict:
    """Does m kill every Ext^i(omega, R) without R being nearly Gorenstein?

    Ext^1..Ext^k are checked directly (k = ``direct_depth``, default
    ``ext_depth``) before searching for a tail certificate.  Raises
    CertificateNotFound when no syzygy trace certificate covers the tail.
    """
    if S.type <= 1:
        return Question12Verdict(True, True, False, None, vacuous=True)
    w = canonical_ideal(S)
    nearly = issubset(maximal_ideal(S), trace_ideal(w))
    k = ext_depth if direct_depth is None else direct_depth
    res = ext_tail_vanishing(w, "R", "m", ext_depth, prime, method, direct_all=max(k, 1))
    return Question12Verdict(res.holds, nearly, res.holds and not nearly, res.certificate_index)
