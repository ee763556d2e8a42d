import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from detspace.gf import (FieldError, extension_of, field_from_dict, field_from_order, field_make, field_to_dict,
                         frobenius, norm_trace, prime_field, smallest_irreducible)
from oracles import oracle_for, trial_division_irreducible


def test_prime_field_f2():
    F = field_make(2, 1)
    assert F.order == 2 and F.is_prime
    assert F.add(1, 1) == 0


def test_f4_with_given_modulus():
    F = field_make(2, 2, [1, 1, 1])
    assert F.order == 4
    w = F.generator
    assert F.mul(w, w) == F.add(w, 1)


def test_f7_inverse_of_3():
    F = field_make(7, 1)
    assert F.inv(3) == 5


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        field_make(6, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        field_make(2, 2, [1, 0, 1])


def test_non_monic_modulus_rejected():
    with pytest.raises(FieldError):
        field_make(3, 2, [1, 0, 2])


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        prime_field(5).inv(0)


def test_default_modulus_is_lexicographically_smallest():
    # scan in base-p counting order with the oracle's trial division
    for p, k in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3), (2, 5)]:
        expected = None
        for tail in itertools.product(range(p), repeat=k):
            cand = list(reversed(tail))
            if trial_division_irreducible(cand + [1], p):
                expected = tuple(cand + [1])
                break
        assert tuple(smallest_irreducible(prime_field(p), k)) == expected
        assert field_make(p, k).modulus == expected


def test_f343_modulus():
    assert field_make(7, 3).modulus == (2, 0, 0, 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_group_order_identity(q):
    F = field_from_order(q)
    for a in range(1, q):
        assert F.pow(a, q - 1) == 1


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 49, 125, 343])
def test_multiplication_matches_oracle(q):
    F = field_from_order(q)
    O = oracle_for(F)
    rng = random.Random(q)
    pairs = itertools.product(range(q), repeat=2) if q <= 27 else \
        [(rng.randrange(q), rng.randrange(q)) for _ in range(2000)]
    for a, b in pairs:
        assert F.mul(a, b) == O.mul(a, b)
        assert F.add(a, b) == O.add(a, b)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms_exhaustive(q):
    F = field_from_order(q)
    els = range(q)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_tower_axioms_exhaustive_f64_over_f4():
    F4 = field_from_order(4)
    L = extension_of(F4, 3)
    assert L.order == 64 and L.base == F4
    for a in range(64):
        if a:
            assert L.mul(a, L.inv(a)) == 1
        for b in range(64):
            assert L.mul(a, b) == L.mul(b, a)
            assert L.add(L.sub(a, b), b) == a


def test_tower_associativity_sampled():
    L = extension_of(field_from_order(9), 3)
    rng = random.Random(1)
    for _ in range(1000):
        a, b, c = (rng.randrange(L.order) for _ in range(3))
        assert L.mul(L.mul(a, b), c) == L.mul(a, L.mul(b, c))
        assert L.mul(a, L.add(b, c)) == L.add(L.mul(a, b), L.mul(a, c))


def test_frobenius_f4_generator():
    F4 = field_make(2, 2)
    w = F4.generator
    assert frobenius(w, F4, 1) == F4.add(w, 1)


@pytest.mark.parametrize("q,s", [(2, 3), (3, 2), (4, 3), (7, 3), (2, 4)])
def test_frobenius_order_and_base_fixed(q, s):
    L = extension_of(field_from_order(q), s)
    for x in range(min(L.order, 512)):
        assert L.frobenius(x, s) == x
    for c in range(q):
        assert L.frobenius(c, 1) == c


@pytest.mark.parametrize("q,s", [(2, 3), (3, 2), (4, 3), (2, 4), (3, 3)])
def test_frobenius_is_base_linear_ring_map(q, s):
    L = extension_of(field_from_order(q), s)
    K = L.base
    if L.order <= 512:
        pairs = list(itertools.product(range(L.order), repeat=2))
    else:
        rng = random.Random(0)
        pairs = [(rng.randrange(L.order), rng.randrange(L.order)) for _ in range(1000)]
    for x, y in pairs:
        assert L.frobenius(L.add(x, y)) == L.add(L.frobenius(x), L.frobenius(y))
        assert L.frobenius(L.mul(x, y)) == L.mul(L.frobenius(x), L.frobenius(y))
    for lam in range(K.order):
        for x in range(min(L.order, 64)):
            assert L.frobenius(L.mul(lam, x)) == L.mul(lam, L.frobenius(x))


def test_norm_of_f4_generator():
    F4 = field_make(2, 2)
    assert norm_trace(F4.generator, F4)[0] == 1


@pytest.mark.parametrize("q,s", [(2, 3), (3, 2), (5, 3), (4, 2)])
def test_trace_of_one(q, s):
    L = extension_of(field_from_order(q), s)
    assert L.trace(1) == L.base.scalar(s)


def test_norm_multiplicative_f8_all_pairs():
    L = extension_of(prime_field(2), 3)
    for x, y in itertools.product(range(8), repeat=2):
        assert L.norm(L.mul(x, y)) == L.mul(L.norm(x), L.norm(y))


@pytest.mark.parametrize("q,s", [(2, 3), (3, 3), (4, 3), (2, 4), (5, 2)])
def test_norm_trace_properties(q, s):
    L = extension_of(field_from_order(q), s)
    K = L.base
    norms, traces = set(), set()
    for x in range(L.order):
        n, t = L.norm_trace(x)
        assert n < K.order and t < K.order
        assert (n == 0) == (x == 0)
        norms.add(n)
        traces.add(t)
    assert traces == set(range(K.order))
    zero_trace = [x for x in range(L.order) if L.trace(x) == 0]
    assert len(zero_trace) == q ** (s - 1)
    rng = random.Random(3)
    for _ in range(200):
        a, x, y = rng.randrange(K.order), rng.randrange(L.order), rng.randrange(L.order)
        assert L.trace(L.add(L.mul(a, x), y)) == K.add(K.mul(a, L.trace(x)), L.trace(y))


@pytest.mark.parametrize("q,s", [(2, 3), (3, 3), (4, 3), (2, 4), (4, 4)])
def test_trace_zero_basis(q, s):
    L = extension_of(field_from_order(q), s)
    B = L.trace_zero_basis()
    assert len(B) == s - 1
    assert all(L.trace(b) == 0 for b in B)


def test_f64_as_tower_records_modulus():
    L = extension_of(field_from_order(4), 3)
    assert L.modulus == (2, 0, 0, 1)
    assert L.trace_zero_basis() == [4, 16]


@pytest.mark.parametrize("q", [3, 5, 7, 9, 13, 25])
def test_sqrt(q):
    F = field_from_order(q)
    for a in range(q):
        r = F.sqrt(a)
        if F.is_square(a):
            assert F.mul(r, r) == a
        else:
            assert r is None
    assert len(F.squares()) == (q + 1) // 2


@pytest.mark.parametrize("q", [2, 4, 8])
def test_sqrt_char2_unique(q):
    F = field_from_order(q)
    for a in range(q):
        r = F.sqrt(a)
        assert F.mul(r, r) == a


def test_field_roundtrip_through_dict():
    for F in [prime_field(7), field_make(3, 2), extension_of(field_from_order(4), 3)]:
        assert field_from_dict(field_to_dict(F)) == F


def test_field_element_wrapper():
    F = field_make(3, 2)
    a, b = F(4), F(7)
    assert int(a * b) == F.mul(4, 7)
    assert int(a - b) == F.sub(4, 7)
    assert (a / b) * b == a
    assert len(a.coeffs) == 2


def test_mixed_fields_raise():
    with pytest.raises(FieldError):
        prime_field(3)(1) + prime_field(5)(1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 8, 9, 25, 27, 49]), st.data())
def test_inverse_property(q, data):
    F = field_from_order(q)
    a = data.draw(st.integers(1, q - 1))
    assert F.mul(a, F.inv(a)) == 1
    assert F.div(F.mul(a, 5 % q), a) == 5 % q
