import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicweights.errors import NotSymmetric
from cyclicweights.gf import make_field
from cyclicweights.quadform import (ExpSumClass, classify, classify_many, classify_matrix,
                                    diagonalize, form_trace, gram_matrix, legendre,
                                    linear_coefficients, linear_shift, slot_grams)

F5 = make_field(3, 5)


def rank_mod_p(H, p):
    """Row-reduction rank, independent of the congruence code path."""
    A = np.array(H, dtype=np.int64) % p
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return r


def quad_value(H, X, p):
    X = np.asarray(X)
    return int(X @ H @ X) % p


def test_legendre():
    assert legendre(1, 3) == 1
    assert legendre(2, 3) == -1
    assert legendre(0, 3) == 0
    assert [legendre(a, 7) for a in range(7)] == [0, 1, 1, -1, 1, -1, -1]


def test_gram_zero():
    assert not gram_matrix(F5, 0, 0, 0).any()


def test_gram_square_map_full_rank():
    d = diagonalize(gram_matrix(F5, 1, 0, 0))
    assert d.rank == 5


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 242), st.integers(0, 242), st.integers(0, 242), st.integers(0, 2**32 - 1))
def test_gram_reproduces_trace(a, b, c, seed):
    H = gram_matrix(F5, a, b, c)
    assert np.array_equal(H, H.T)
    rng = np.random.default_rng(seed)
    for x in rng.integers(0, F5.q, size=100):
        x = int(x)
        assert quad_value(H, F5.coordinates(x), 3) == form_trace(F5, (a, b, c), x)


def test_slot_grams_linear(f5):
    HA, HB, HG = slot_grams(f5)
    rng = np.random.default_rng(7)
    for a, b, c in rng.integers(0, 243, size=(50, 3)):
        want = gram_matrix(f5, int(a), int(b), int(c))
        assert np.array_equal((HA[a] + HB[b] + HG[c]) % 3, want)


def test_diagonalize_trivial():
    d = diagonalize(np.zeros((5, 5), dtype=int))
    assert d.rank == 0 and np.array_equal(d.transform, np.eye(5, dtype=int))
    d = diagonalize(np.eye(5, dtype=int))
    assert d.rank == 5 and d.diag.tolist() == [1] * 5
    assert classify_matrix(np.eye(5, dtype=int)) == ExpSumClass(5, 1)


def test_diagonalize_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        diagonalize([[0, 1], [0, 0]])
    with pytest.raises(NotSymmetric):
        diagonalize(np.zeros((2, 3)))


def test_off_diagonal_pivot():
    # zero diagonal forces the add-row-j-into-i step
    H = np.array([[0, 1], [1, 0]])
    d = diagonalize(H)
    assert d.rank == 2
    D = d.transform @ H @ d.transform.T % 3
    assert np.array_equal(D, np.diag(d.diag))
    # x y is a hyperbolic plane: discriminant -1, a non-residue mod 3
    assert classify_matrix(H).eps == -1


def random_symmetric(rng, m, p, density=1.0):
    A = rng.integers(0, p, size=(m, m)) * (rng.random((m, m)) < density)
    return (np.triu(A) + np.triu(A, 1).T) % p


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7), st.sampled_from([3, 7, 11]), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
def test_diagonalize_random(m, p, density, seed):
    H = random_symmetric(np.random.default_rng(seed), m, p, density)
    d = diagonalize(H, p)
    D = d.transform @ H @ d.transform.T % p
    assert np.array_equal(D, np.diag(d.diag))
    assert d.rank == rank_mod_p(H, p)
    assert all(d.diag[:d.rank]) and not d.diag[d.rank:].any()
    assert rank_mod_p(d.transform, p) == m  # M invertible
    # idempotence on the transformed output
    assert diagonalize(D, p).rank == d.rank
    # the class is a congruence invariant
    assert class_of_congruent(H, p, seed) == classify_matrix(H, p)


def class_of_congruent(H, p, seed):
    rng = np.random.default_rng(seed + 1)
    m = H.shape[0]
    while True:
        P = rng.integers(0, p, size=(m, m))
        if rank_mod_p(P, p) == m:
            return classify_matrix(P @ H @ P.T % p, p)


def test_classify_zero():
    assert classify(F5, 0, 0, 0) == ExpSumClass(0, 1)


def test_classify_many_matches_single(f5):
    rng = np.random.default_rng(3)
    T = rng.integers(0, 243, size=(300, 3))
    assert classify_many(f5, T) == [classify(f5, *map(int, t)) for t in T]


def test_rank_bounds_for_every_triple(census5):
    # the census would raise if any rank fell below m - 4; here just the counters
    assert census5.n4 > 0


@pytest.mark.parametrize("d, floor", [(0, 5), (1, 3)])
def test_rank_floor_of_short_families(f5, d, floor):
    """Forms with terms x^(p^i + 1), i <= d, have rank >= m - 2d; exhaustive at m = 5."""
    slots = [(a, b) for a in range(243) for b in (range(243) if d >= 1 else [0]) if a or b]
    ranks = {c.rank for c in classify_many(f5, [(a, b, 0) for a, b in slots])}
    assert min(ranks) >= floor
    assert min(ranks) == floor or d == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 242), st.integers(0, 242), st.integers(0, 242))
def test_scaling_law(a, b, c):
    if not (a or b or c):
        return
    cls = classify(F5, a, b, c)
    twice = classify(F5, *(F5.mul(2, x) for x in (a, b, c)))
    assert twice.rank == cls.rank
    assert twice.eps == cls.eps * legendre(2, 3) ** cls.rank


def test_linear_shift_basic():
    d = diagonalize(np.eye(3, dtype=int))
    assert linear_shift(d, [0, 0, 0]).solvable and linear_shift(d, [0, 0, 0]).c == 0
    rng = np.random.default_rng(0)
    for A in rng.integers(0, 3, size=(10, 3)):
        assert linear_shift(d, A).solvable
    dz = diagonalize(np.diag([1, 0, 0]))
    assert not linear_shift(dz, [0, 1, 0]).solvable


def all_solutions(H, A, p):
    m = H.shape[0]
    return [np.array(Y) for Y in itertools.product(range(p), repeat=m)
            if not ((2 * np.array(Y) @ H + A) % p).any()]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
def test_c_well_defined(m, density, seed):
    """c = A B^T / 2 is the same for every solution B and matches linear_shift."""
    p = 3
    rng = np.random.default_rng(seed)
    H = random_symmetric(rng, m, p, density)
    A = rng.integers(0, p, size=m)
    sols = all_solutions(H, A, p)
    res = linear_shift(diagonalize(H, p), A)
    assert res.solvable == bool(sols)
    if sols:
        cs = {int(A @ B) * pow(2, -1, p) % p for B in sols}
        assert cs == {res.c}


def test_linear_coefficients_represent_trace(f5):
    rng = np.random.default_rng(11)
    for d in rng.integers(0, 243, size=20):
        A = linear_coefficients(f5, int(d))
        for x in rng.integers(0, 243, size=20):
            assert int(A @ np.array(f5.coordinates(int(x)))) % 3 == f5.trace(f5.mul(int(d), int(x)))
