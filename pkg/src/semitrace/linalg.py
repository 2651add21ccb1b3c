"""Linear algebra over a prime field F_p.

Dense routines work on int64 numpy arrays reduced mod p (p < 2**31 so a
product of two residues fits).  :class:`Span` tracks a subspace of F_p^n
and answers membership and rank queries.  While every vector added has
at most two nonzero entries it runs a union-find with multiplicative
gains (the span of such vectors is determined by a gain graph); the
first wider vector switches it to an incremental reduced echelon form.
"""

from __future__ import annotations

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of A mod p; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        colv = A[:, c].copy()
        colv[r] = 0
        hit = np.flatnonzero(colv)
        if hit.size:
            A[hit] = (A[hit] - np.outer(colv[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0}, in the canonical RREF form."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for row, pc in enumerate(piv):
            out[k, pc] = (-R[row, f]) % p
    return out


def sparse_rank(n: int, p: int, vectors) -> int:
    """Rank of sparse vectors ((index, coeff) pairs, coefficients already mod p).

    A lean copy of the union-find in :class:`Span` for rank-only queries;
    falls back to Span on the first vector with more than two entries.
    """
    parent = list(range(n))
    gain = [1] * n
    zero = [False] * n
    r = 0
    done = []
    for v in vectors:
        if len(v) > 2:
            sp = Span(n, p)
            for w in done:
                sp.add_sparse(w)
            for w in vectors[len(done):]:
                sp.add_sparse(w)
            return sp.rank
        done.append(v)
        if not v:
            continue
        # find with path halving; gains multiply along the path
        u, a = v[0]
        gu = 1
        while parent[u] != u:
            gu = gu * gain[u] % p
            u = parent[u]
        if len(v) == 1:
            if not zero[u]:
                zero[u] = True
                r += 1
            continue
        w, b = v[1]
        gw = 1
        while parent[w] != w:
            gw = gw * gain[w] % p
            w = parent[w]
        if u == w:
            if not zero[u] and (a * gu + b * gw) % p:
                zero[u] = True
                r += 1
            continue
        # e_u == -(b gw)/(a gu) e_w
        parent[u] = w
        gain[u] = (-b * gw * pow(a * gu % p, p - 2, p)) % p
        if zero[u] and zero[w]:
            continue
        zero[w] = zero[w] or zero[u]
        r += 1
    return r


class Span:
    """A subspace of F_p^n built by adding vectors."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.dense = False
        # gain-graph state: e_v == gain[v] * e_parent[v] modulo the span
        self.parent = list(range(n))
        self.gain = [1] * n
        self.zero = [False] * n  # per root: whole component lies in the span
        self.size = [1] * n
        self._rank = 0
        self._log: list[tuple] = []
        # dense state
        self.R = None
        self.piv: list[int] = []

    # -- gain graph -----------------------------------------------------
    def _find(self, v: int) -> tuple[int, int]:
        p = self.p
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress: recompute gains to the root from the top down
        acc = 1
        for u in reversed(path):
            acc = (acc * self.gain[u]) % p
            self.gain[u] = acc
            self.parent[u] = root
        return root, (self.gain[path[0]] if path else 1)

    def _add_pair(self, u: int, a: int, v: int, b: int) -> bool:
        p = self.p
        ru, gu = self._find(u)
        rv, gv = self._find(v)
        if ru == rv:
            if self.zero[ru]:
                return False
            if (a * gu + b * gv) % p:
                self.zero[ru] = True
                self._rank += 1
                return True
            return False
        both = self.zero[ru] and self.zero[rv]
        # e_ru == -(b gv)/(a gu) e_rv
        g = (-b * gv * pow(a * gu % p, p - 2, p)) % p
        if self.size[ru] > self.size[rv]:
            ru, rv = rv, ru
            g = pow(g, p - 2, p)
        self.parent[ru] = rv
        self.gain[ru] = g
        self.size[rv] += self.size[ru]
        self.zero[rv] = self.zero[rv] or self.zero[ru]
        if both:
            return False
        self._rank += 1
        return True

    def _add_single(self, u: int) -> bool:
        r, _ = self._find(u)
        if self.zero[r]:
            return False
        self.zero[r] = True
        self._rank += 1
        return True

    def _reduce_sparse(self, items) -> bool:
        """True iff the sparse vector lies in the gain-graph span."""
        p = self.p
        acc: dict[int, int] = {}
        for i, c in items:
            r, g = self._find(i)
            if self.zero[r]:
                continue
            acc[r] = (acc.get(r, 0) + c * g) % p
        return all(v == 0 for v in acc.values())

    # -- dense --------------------------------------------------------
    def _to_dense(self):
        self.dense = True
        self.R = np.zeros((0, self.n), dtype=np.int64)
        self.piv = []
        log = self._log
        self._log = []
        self._rank = 0
        for items in log:
            self._dense_add(self._vec(items))

    def _vec(self, items) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        for i, c in items:
            v[i] = (v[i] + c) % self.p
        return v

    def _dense_reduce(self, v: np.ndarray) -> np.ndarray:
        if not self.piv:
            return v % self.p
        return (v - v[self.piv] @ self.R) % self.p

    def _dense_add(self, v: np.ndarray) -> bool:
        p = self.p
        w = self._dense_reduce(v)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = (w * pow(int(w[c]), p - 2, p)) % p
        if self.piv:
            col = self.R[:, c].copy()
            self.R = (self.R - np.outer(col, w)) % p
        self.R = np.vstack([self.R, w])
        self.piv.append(c)
        self._rank += 1
        return True

    # -- public ---------------------------------------------------------
    def add_sparse(self, items) -> bool:
        """Add sum c*e_i over (i, c) pairs; returns whether the rank grew."""
        items = [(int(i), int(c) % self.p) for i, c in items if int(c) % self.p]
        if not items:
            return False
        if not self.dense:
            if len(items) <= 2:
                self._log.append(items)
                if len(items) == 1:
                    return self._add_single(items[0][0])
                (u, a), (v, b) = items
                if u == v:
                    return self._add_single(u) if (a + b) % self.p else False
                return self._add_pair(u, a, v, b)
            self._to_dense()
        return self._dense_add(self._vec(items))

    def add(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        nz = np.flatnonzero(v)
        if not self.dense and nz.size <= 2:
            return self.add_sparse([(i, v[i]) for i in nz])
        if not self.dense:
            self._to_dense()
        return self._dense_add(v)

    def extend(self, vectors) -> None:
        """Add many sparse vectors whose coefficients are already reduced mod p."""
        if self.dense:
            for v in vectors:
                self.add_sparse(v)
            return
        p = self.p
        parent, gain, zero, log = self.parent, self.gain, self.zero, self._log
        r = self._rank
        vectors = list(vectors)
        for pos, v in enumerate(vectors):
            n_items = len(v)
            if n_items == 0:
                continue
            if n_items > 2:
                self._rank = r
                for w in vectors[pos:]:
                    self.add_sparse(w)
                return
            log.append(v)
            u, a = v[0]
            gu = 1
            while parent[u] != u:
                gu = gu * gain[u] % p
                u = parent[u]
            if n_items == 1:
                if not zero[u]:
                    zero[u] = True
                    r += 1
                continue
            w, b = v[1]
            gw = 1
            while parent[w] != w:
                gw = gw * gain[w] % p
                w = parent[w]
            if u == w:
                if not zero[u] and (a * gu + b * gw) % p:
                    zero[u] = True
                    r += 1
                continue
            parent[u] = w
            gain[u] = (-b * gw * pow(a * gu % p, p - 2, p)) % p
            self.size[w] += self.size[u]
            if zero[u] and zero[w]:
                continue
            zero[w] = zero[w] or zero[u]
            r += 1
        self._rank = r

    def contains_sparse(self, items) -> bool:
        items = [(int(i), int(c) % self.p) for i, c in items if int(c) % self.p]
        if not items:
            return True
        if not self.dense:
            return self._reduce_sparse(items)
        return not np.any(self._dense_reduce(self._vec(items)))

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.dense:
            nz = np.flatnonzero(v)
            return self._reduce_sparse([(i, v[i]) for i in nz])
        return not np.any(self._dense_reduce(v))

    @property
    def rank(self) -> int:
        return self._rank

    def basis(self) -> np.ndarray:
        if not self.dense:
            self._to_dense()
        return self.R.copy()

    def annihilator(self) -> np.ndarray:
        """Basis (rows) of {u : u . s = 0 for every s in the span}."""
        if self.dense:
            if self.R.shape[0] == 0:
                return np.eye(self.n, dtype=np.int64)
            return nullspace(self.R, self.p)
        comps: dict[int, list[tuple[int, int]]] = {}
        for v in range(self.n):
            r, g = self._find(v)
            comps.setdefault(r, []).append((v, g))
        rows = []
        for r, members in comps.items():
            if self.zero[r]:
                continue
            # a functional vanishing on the span factors through e_v -> g_v e_r
            u = np.zeros(self.n, dtype=np.int64)
            for v, g in members:
                u[v] = g
            rows.append(u)
        if not rows:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def copy(self) -> "Span":
        other = Span(self.n, self.p)
        other.dense = self.dense
        other.parent = self.parent[:]
        other.gain = self.gain[:]
        other.zero = self.zero[:]
        other.size = self.size[:]
        other._rank = self._rank
        other._log = self._log[:]
        if self.R is not None:
            other.R = self.R.copy()
        other.piv = self.piv[:]
        return other
