import json

import numpy as np
import pytest
from hypothesis import given, settings

from semitrace.engine import (
    GradedMatrix,
    GradedModule,
    TruncatedRing,
    betti_numbers,
    free_resolution,
    generator_row,
    hilbert_function,
    kernel_degreewise,
    minimal_generators,
    module_from_ideal,
    module_multiplicity,
    stabilization_check,
    syzygy,
    truncate,
)
from semitrace.errors import CapExceeded, NotHomogeneous, NotPrime
from semitrace.ideals import ideal_from_degrees, maximal_ideal, principal, unit_ideal
from semitrace.linalg import rank
from semitrace.semigroup import new_semigroup

from conftest import mm_semigroup_and_ideal, semigroup_and_ideal


def dense_kernel_check(M: GradedMatrix, ring: TruncatedRing) -> bool:
    """Compare degreewise kernels with the kernel of the whole truncated map.

    The source is cut at ring.top so no product falls off the cap.
    """
    S, p, top = M.semigroup, ring.prime, ring.top
    src = [(j, d) for j, c in enumerate(M.col_shifts) for d in range(c, top + 1) if S.contains(d - c)]
    tgt = [(i, d) for i, r in enumerate(M.row_shifts) for d in range(r, top + 1) if S.contains(d - r)]
    tix = {key: k for k, key in enumerate(tgt)}
    A = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for k, (j, d) in enumerate(src):
        for i in range(M.shape[0]):
            if M.coeffs[i, j] % p:
                A[tix[(i, d)], k] = M.coeffs[i, j] % p
    nullity = len(src) - (rank(A, p) if A.size else 0)
    K = kernel_degreewise(M, ring, top)
    six = {key: k for k, key in enumerate(src)}
    vecs = []
    for d, basis in K.items():
        for v in basis:
            w = np.zeros(len(src), dtype=np.int64)
            for j in np.flatnonzero(v % p):
                w[six[(j, d)]] = v[j]
            vecs.append(w)
    if sum(b.shape[0] for b in K.values()) != nullity:
        return False
    if not vecs:
        return nullity == 0
    V = np.array(vecs)
    return not ((A @ V.T) % p).any() and rank(V, p) == nullity


def random_graded_matrix(rng, S, p, max_basis=12):
    rows = rng.randint(1, 2)
    cols = rng.randint(1, 3)
    row_shifts = [rng.randint(0, 4) for _ in range(rows)]
    col_shifts = [rng.randint(0, 9) for _ in range(cols)]
    C = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            if S.contains(col_shifts[j] - row_shifts[i]) and rng.random() < 0.8:
                C[i, j] = rng.randint(1, p - 1) if p > 2 else 1
    M = GradedMatrix(S, row_shifts, col_shifts, C)
    # pick the cap so the source has at most max_basis basis vectors
    cap = max(col_shifts) + S.max_generator + 1
    while True:
        ring = TruncatedRing(S, p, cap + 1)
        size = sum(1 for c in col_shifts for d in range(c, ring.top + 1) if S.contains(d - c))
        if size > max_basis:
            break
        cap += 1
    return M, TruncatedRing(S, p, cap)


def test_truncation_examples(s5, s4):
    R = truncate(s5)
    assert R.cap == 48 and len(R.basis) == 41
    N = truncate(new_semigroup([1]), 2)
    assert R.guard == 14
    assert N.basis == list(range(N.cap))
    assert truncate(s4, 2, 64).cap == 64
    with pytest.raises(NotPrime):
        truncate(s5, 4)


def test_ring_element_arithmetic(s5):
    R = truncate(s5, 7)
    x, y = R.element({5: 1}), R.element({6: 3})
    assert (x * y).terms == {11: 3}
    assert (x + x).terms == {5: 2}
    big = R.element({40: 1})
    assert (big * big).terms == {}
    with pytest.raises(ValueError):
        R.element({9: 1})


def test_generator_row_syzygy(s5, s4):
    R = truncate(s5)
    I = ideal_from_degrees(s5, [10, 11, 12])
    Z = syzygy(generator_row(I), R)
    assert Z.shape == (3, 8)
    assert Z.column_supports(101) == [2] * 8
    P = syzygy(generator_row(principal(s5, 5)), R)
    assert P.shape[1] == 0
    Zm = syzygy(generator_row(maximal_ideal(s4)), truncate(s4))
    assert set(Zm.column_supports(101)) == {2}


def test_betti_numbers(s5):
    I = ideal_from_degrees(s5, [10, 11, 12])
    res = free_resolution(generator_row(I), truncate(s5), 2)
    assert betti_numbers(generator_row(I), res) == [3, 8, 24]
    S = new_semigroup([3, 4, 5])
    m = maximal_ideal(S)
    res = free_resolution(generator_row(m), truncate(S), 2)
    assert betti_numbers(generator_row(m), res)[:2] == [3, 6]


def test_quotient_length(s5):
    R = truncate(s5)
    rel = GradedMatrix(s5, [0], [5], np.ones((1, 1), dtype=np.int64))
    Q = GradedModule(R, (0,), rel)
    assert sum(hilbert_function(Q, R.top)) == 5


def test_unit_ideal_hilbert_function(s5):
    R = truncate(s5)
    M = module_from_ideal(R, unit_ideal(s5))
    assert hilbert_function(M, R.top) == [1 if s5.contains(d) else 0 for d in range(R.top + 1)]


def test_cap_exceeded(s5):
    I = ideal_from_degrees(s5, [10, 11, 12])
    small = TruncatedRing(s5, 101, 20)
    with pytest.raises(CapExceeded):
        syzygy(generator_row(I), small)
    with pytest.raises(CapExceeded):
        hilbert_function(module_from_ideal(truncate(s5), I), 100)


def test_json_round_trip(s5):
    I = ideal_from_degrees(s5, [10, 11, 12])
    Z = syzygy(generator_row(I), truncate(s5))
    again = GradedMatrix.from_json(s5, json.loads(Z.dumps()))
    assert again.row_shifts == Z.row_shifts and again.col_shifts == Z.col_shifts
    assert (again.coeffs == Z.coeffs).all()
    bad = Z.to_json()
    bad["entries"][0][2][0][0] += 1
    with pytest.raises(NotHomogeneous):
        GradedMatrix.from_json(s5, bad)


def test_not_homogeneous(s5):
    with pytest.raises(NotHomogeneous):
        GradedMatrix(s5, [0], [9], np.ones((1, 1), dtype=np.int64))


def test_minimal_generators_drops_multiples(s5):
    v = np.array([1, 2])
    assert minimal_generators([(0, v), (5, v)], s5, 101) == [0]
    assert minimal_generators([(0, v), (9, v)], s5, 101) == [0, 1]


def test_dense_kernel_oracle_small():
    import random

    rng = random.Random(7)
    S = new_semigroup([3, 5])
    for _ in range(20):
        M, ring = random_graded_matrix(rng, S, 5)
        assert dense_kernel_check(M, ring)


def test_stabilization(s5):
    I = ideal_from_degrees(s5, [10, 11, 12])

    def dims(ring):
        return hilbert_function(module_from_ideal(ring, I), 30)

    assert stabilization_check(dims, truncate(s5))


@settings(max_examples=40)
@given(semigroup_and_ideal(max_gen=9))
def test_resolution_is_a_minimal_complex(pair):
    S, I = pair
    if I.is_principal():
        return
    row = generator_row(I)
    res = free_resolution(row, truncate(S, 101), 2)
    prev = row
    for d in res:
        assert (prev @ d).is_zero(101)
        assert not d.has_unit_entry(101)
        prev = d
    assert set(res[0].column_supports(101)) == {2}


@settings(max_examples=30)
@given(mm_semigroup_and_ideal())
def test_maximal_ideal_multiplicity(pair):
    S, _ = pair
    R = truncate(S)
    # m / t^e m has length e under minimal multiplicity
    assert module_multiplicity(module_from_ideal(R, maximal_ideal(S))) == S.multiplicity
