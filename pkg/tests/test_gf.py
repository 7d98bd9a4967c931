import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicweights.errors import BadParams, NonPrimeP, NonPrimitiveModulus, TooLarge
from cyclicweights.gf import (coordinates, find_primitive_modulus, is_primitive_modulus,
                              make_field, power_map, trace)


def mult_order(ctx, x):
    y, k = x, 1
    while y != 1:
        y = ctx.mul(y, x)
        k += 1
    return k


def test_prime_field():
    ctx = make_field(3, 1)
    assert ctx.q == 3
    assert ctx.pi == 2
    assert sorted(ctx.exp.tolist()) == [1, 2]


def test_default_modulus_m5(f5):
    assert f5.modulus == (1, 0, 0, 0, 2, 1)  # x^5 + 2x^4 + 1
    assert f5.pi == 3
    assert mult_order(f5, f5.pi) == 242


def test_default_modulus_is_smallest_primitive():
    # every lexicographically smaller candidate must fail the primitivity test
    import itertools
    chosen = find_primitive_modulus(3, 5)
    for low in itertools.product(range(3), repeat=5):
        cand = (*low, 1)
        if cand == chosen:
            break
        assert not is_primitive_modulus(3, 5, cand)


def test_reducible_modulus_rejected():
    # x^5 + x + 1 = (x^2 + x + 1)(x^3 + 2x^2 + 1) over F_3
    with pytest.raises(NonPrimitiveModulus):
        make_field(3, 5, (1, 1, 0, 0, 0, 1))


def test_irreducible_but_not_primitive_rejected():
    # x^2 + 1 is irreducible over F_3 but x has order 4, not 8
    with pytest.raises(NonPrimitiveModulus):
        make_field(3, 2, (1, 0, 1))


def test_bad_params():
    with pytest.raises(NonPrimeP):
        make_field(9, 2)
    with pytest.raises(NonPrimeP):
        make_field(2, 3)
    with pytest.raises(BadParams):
        make_field(3, 0)
    with pytest.raises(TooLarge):
        make_field(3, 14)
    with pytest.raises(NonPrimitiveModulus):
        make_field(3, 2, (1, 1))


def test_trace_examples(f5):
    assert trace(f5, 0) == 0
    assert trace(f5, 1) == 5 % 3
    # Frobenius-power summation oracle
    pi = f5.pi
    acc = 0
    for i in range(5):
        acc = f5.add(acc, f5.pow(pi, 3**i))
    assert acc < 3 and trace(f5, pi) == acc


def test_trace_matches_frobenius_everywhere(f3):
    for x in range(f3.q):
        acc = 0
        for i in range(3):
            acc = f3.add(acc, f3.pow(x, 3**i))
        assert acc == f3.trace(x)


def test_trace_balanced(f5):
    assert np.bincount(f5.tr, minlength=3).tolist() == [81, 81, 81]


def test_power_map(f5):
    assert power_map(f5, 0, 4) == 0
    assert power_map(f5, f5.pi, 242) == 1
    assert power_map(f5, f5.pi, 10) == int(f5.exp[10])
    # square-and-multiply by hand
    y = 1
    for _ in range(10):
        y = f5.mul(y, f5.pi)
    assert y == int(f5.exp[10])


def test_coordinates(f5):
    assert coordinates(f5, 0) == (0, 0, 0, 0, 0)
    assert coordinates(f5, 1) == (1, 0, 0, 0, 0)
    x = f5.add(f5.pi, f5.mul(2, f5.pow(f5.pi, 3)))
    assert coordinates(f5, x) == (0, 1, 0, 2, 0)
    assert f5.from_coordinates((0, 1, 0, 2, 0)) == x


def test_log_antilog_inverse(f5):
    assert f5.exp[0] == 1
    assert len(set(f5.exp.tolist())) == 242
    assert np.array_equal(f5.log[f5.exp], np.arange(242))


def test_tables_read_only(f5):
    with pytest.raises(ValueError):
        f5.exp[0] = 2


elems = st.integers(0, 242)


@settings(max_examples=300, deadline=None)
@given(elems, elems, elems)
def test_field_axioms(a, b, c):
    f = make_field(3, 5)
    assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.sub(f.add(a, b), b) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1


@settings(max_examples=200, deadline=None)
@given(elems, elems)
def test_trace_additive_and_coordinates_linear(a, b):
    f = make_field(3, 5)
    assert f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % 3
    ca, cb, cs = map(np.array, (coordinates(f, a), coordinates(f, b), coordinates(f, f.add(a, b))))
    assert np.array_equal((ca + cb) % 3, cs)


@settings(max_examples=100, deadline=None)
@given(elems)
def test_trace_lands_in_prime_field(x):
    f = make_field(3, 5)
    t = f.trace(x)
    assert f.pow(t, 3) == t


def test_other_primes():
    f = make_field(7, 2)
    assert mult_order(f, f.pi) == 48
    assert np.bincount(f.tr, minlength=7).tolist() == [7] * 7
