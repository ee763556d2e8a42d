import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from detspace.gf import extension_of, field_from_order, field_make, prime_field
from detspace.polyring import (ZERO_DEGREE, MultiPoly, PolyError, UniPoly, monomials, multi_divide, multi_sqrt,
                               uni_irreducible, uni_roots_in)
from oracles import trial_division_irreducible

F2, F3, F7 = prime_field(2), prime_field(3), prime_field(7)


def xs(F, d):
    return [MultiPoly.var(F, d, i) for i in range(d)]


def random_poly(F, d, rng, degree=3, terms=4, homogeneous=False):
    out = {}
    pool = monomials(d, degree) if homogeneous else [e for k in range(degree + 1) for e in monomials(d, k)]
    for _ in range(terms):
        out[rng.choice(pool)] = rng.randrange(1, F.order)
    return MultiPoly(F, d, out)


# -- examples ---------------------------------------------------------------------

def test_char2_square_of_sum():
    x1, x2 = xs(F2, 2)
    assert (x1 + x2) * (x1 + x2) == x1 * x1 + x2 * x2


def test_substitute_affine_forms():
    F = F7
    l1, l2 = 3, 5
    P = MultiPoly(F, 2, {(1, 1): 1})
    y = MultiPoly.var(F, 1, 0)
    out = P.substitute([y - MultiPoly.constant(F, 1, l1), MultiPoly.constant(F, 1, F.neg(l2))])
    expected = y.scale(F.neg(l2)) + MultiPoly.constant(F, 1, F.mul(l1, l2))
    assert out == expected


def test_substitute_identity_returns_input():
    rng = random.Random(0)
    for _ in range(20):
        P = random_poly(F3, 3, rng)
        assert P.substitute(xs(F3, 3)) == P


def test_char2_doubling_vanishes():
    x1, x2 = xs(F2, 2)
    P = x1 * x2 * (x1 + x2)
    assert (P + P).is_zero()


def test_homogeneity_verdicts():
    x1, x2 = xs(F2, 2)
    assert (x1 * x2 * (x1 + x2)).is_homogeneous() == 3
    assert (x1 * x1 + x2).is_homogeneous() is None
    assert MultiPoly.zero(F2, 2).is_homogeneous() == ZERO_DEGREE


def test_eval_example1_at_ones():
    x1, x2 = xs(F2, 2)
    assert (x1 * x2 * (x1 + x2))([1, 1]) == 0


def test_eval_pure_power():
    F = field_from_order(9)
    P = MultiPoly(F, 3, {(4, 0, 0): 1})
    for lam in range(9):
        assert P([lam, 0, 0]) == F.pow(lam, 4)


def test_eval_homogeneous_scaling():
    rng = random.Random(5)
    F = field_from_order(25)
    for _ in range(100):
        n = rng.randrange(1, 5)
        P = random_poly(F, 3, rng, degree=n, homogeneous=True)
        lam = rng.randrange(F.order)
        v = [rng.randrange(F.order) for _ in range(3)]
        assert P([F.mul(lam, c) for c in v]) == F.mul(F.pow(lam, n), P(v))


def test_eval_in_extension():
    L = extension_of(F7, 3)
    f = MultiPoly(F7, 1, {(3,): 1, (0,): F7.neg(2)})
    roots = [r for r, _ in uni_roots_in(f.to_uni(0), L)]
    for r in roots:
        assert f([r], L) == 0


def test_eval_arity_mismatch():
    with pytest.raises(PolyError):
        MultiPoly.var(F3, 2, 0)([1])


def test_arity_mismatch_on_add():
    with pytest.raises(PolyError):
        MultiPoly.var(F3, 2, 0) + MultiPoly.var(F3, 3, 0)


def test_uni_irreducible_examples():
    assert uni_irreducible(UniPoly(F2, [1, 1, 1]))
    assert not uni_irreducible(UniPoly(F2, [1, 0, 1]))
    assert uni_irreducible(UniPoly(F3, [1, 0, 2, 0, 0, 0, 1]))


def test_uni_irreducible_rejects_constants():
    with pytest.raises(PolyError):
        uni_irreducible(UniPoly(F3, [2]))


@pytest.mark.parametrize("p,maxdeg", [(2, 6), (3, 5)])
def test_uni_irreducible_matches_trial_division(p, maxdeg):
    F = prime_field(p)
    for deg in range(1, maxdeg + 1):
        for tail in itertools.product(range(p), repeat=deg):
            cs = list(tail) + [1]
            assert uni_irreducible(UniPoly(F, cs)) == trial_division_irreducible(cs, p), cs


def test_uni_irreducible_degree6_over_f3_sampled():
    rng = random.Random(6)
    for _ in range(300):
        cs = [rng.randrange(3) for _ in range(6)] + [1]
        assert uni_irreducible(UniPoly(F3, cs)) == trial_division_irreducible(cs, 3)


def test_roots_x2_x_1_in_f4():
    F4 = field_make(2, 2)
    roots = uni_roots_in(UniPoly(F2, [1, 1, 1]), F4)
    assert roots == [(2, 1), (3, 1)]


def test_roots_x3_minus_2_in_f343():
    L = field_make(7, 3)
    f = UniPoly(F7, [5, 0, 0, 1])
    roots = uni_roots_in(f, L)
    # frozen from exhaustive evaluation over all 343 elements
    assert [r for r, _ in roots] == [21, 35, 42]
    orbit = {L.frobenius(21, i) for i in range(3)}
    assert orbit == {21, 35, 42}


def test_double_root_multiplicity():
    for q in (3, 4, 7):
        F = field_from_order(q)
        f = UniPoly(F, [1, F.neg(2 % F.char), 1]) if q != 4 else UniPoly(F, [1, 0, 1])
        assert uni_roots_in(f, F) == [(1, 2)]


@pytest.mark.parametrize("q,s", [(2, 4), (3, 3), (4, 2), (5, 2), (7, 2)])
def test_roots_match_exhaustive_evaluation(q, s):
    F = field_from_order(q)
    L = extension_of(F, s)
    rng = random.Random(q * 10 + s)
    for _ in range(20):
        f = UniPoly(F, [rng.randrange(q) for _ in range(rng.randrange(2, 6))] + [1])
        expected = [e for e in range(L.order) if f.over(L)(e) == 0]
        assert [r for r, _ in uni_roots_in(f, L)] == expected


def test_roots_randomized_path_agrees():
    L = extension_of(F3, 4)
    f = UniPoly(F3, [2, 0, 0, 0, 0, 1, 1])
    fast = uni_roots_in(f, L, cap=1, seed=3)
    slow = uni_roots_in(f, L)
    assert [r for r, _ in fast] == [r for r, _ in slow]


def test_roots_cap_without_randomness_raises():
    with pytest.raises(PolyError):
        uni_roots_in(UniPoly(F2, [1, 1, 1]), field_make(2, 4), cap=4, allow_random=False)


def test_multi_sqrt_pfaffian_square():
    F = F3
    x = xs(F, 6)  # x12, x13, x14, x23, x24, x34
    g = x[0] * x[5] - x[1] * x[4] + x[2] * x[3]
    r = multi_sqrt(g * g)
    assert r == g or r == -g


def test_multi_sqrt_char2():
    x1, x2 = xs(F2, 2)
    assert multi_sqrt(x1 * x1 + x2 * x2) == x1 + x2


def test_multi_sqrt_artin_schreier_absent():
    P = MultiPoly(F3, 2, {(6, 0): 1, (2, 4): 2, (0, 6): 1})
    assert multi_sqrt(P) is None


def test_restrict_pair_example2():
    x1, x2, x3 = xs(F3, 3)
    P = x1 * x2 * (x1 + x2) * (x1 - x2) + x3 * x3 * x3 * x1
    R = P.restrict_pair(0, 1)
    y1, y2 = xs(F3, 2)
    assert R == y1 * y2 * (y1 + y2) * (y1 - y2)


def test_restrict_pair_pure_power():
    P = MultiPoly(F3, 3, {(4, 0, 0): 1})
    assert P.restrict_pair(0, 1) == MultiPoly(F3, 2, {(4, 0): 1})


def test_restrict_pair_same_index():
    with pytest.raises(PolyError):
        MultiPoly.var(F3, 3, 0).restrict_pair(1, 1)


def test_restrict_pair_out_of_range():
    with pytest.raises(PolyError):
        MultiPoly.var(F3, 3, 0).restrict_pair(0, 3)


def test_render_grlex():
    x1, x2 = xs(F2, 2)
    assert (x1 * x2 * (x1 + x2)).render() == "x1^2*x2 + x1*x2^2"
    P = MultiPoly(F7, 3, {(0, 3, 0): 3, (0, 0, 3): 2})
    assert P.render() == "3*x2^3 + 2*x3^3"
    assert MultiPoly.zero(F7, 2).render() == "0"


def test_multi_divide_exact_and_inexact():
    x1, x2 = xs(F3, 2)
    P = (x1 + x2) * (x1 - x2) * x1
    assert multi_divide(P, x1 + x2) == (x1 - x2) * x1
    assert multi_divide(P, x1 + x2 + MultiPoly.constant(F3, 2, 1)) is None


# -- properties -------------------------------------------------------------------

FIELDS = [prime_field(2), prime_field(3), field_make(2, 2), prime_field(7), field_make(3, 2)]


@st.composite
def poly_triples(draw):
    F = draw(st.sampled_from(FIELDS))
    d = draw(st.integers(1, 3))
    exps = st.tuples(*[st.integers(0, 3)] * d)
    coeff = st.integers(1, F.order - 1)

    def one():
        return MultiPoly(F, d, draw(st.dictionaries(exps, coeff, max_size=5)))
    return one(), one(), one()


@settings(max_examples=500, deadline=None)
@given(poly_triples())
def test_ring_axioms(t):
    a, b, c = t
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a - a).is_zero()


@st.composite
def homogeneous_polys(draw):
    F = draw(st.sampled_from([prime_field(3), field_make(2, 2), prime_field(7)]))
    d = draw(st.integers(1, 4))
    deg = draw(st.integers(1, 4))
    pool = monomials(d, deg)
    terms = draw(st.dictionaries(st.sampled_from(pool), st.integers(1, F.order - 1), min_size=1, max_size=6))
    return MultiPoly(F, d, terms)


@settings(max_examples=250, deadline=None)
@given(homogeneous_polys())
def test_multi_sqrt_roundtrip(g):
    r = multi_sqrt(g * g)
    if g.field.char == 2:
        assert r == g
    else:
        assert r == g or r == -g


@settings(max_examples=100, deadline=None)
@given(homogeneous_polys())
def test_multi_sqrt_result_squares_back(g):
    P = g * g + MultiPoly.var(g.field, g.nvars, 0) ** (2 * g.total_degree())
    r = multi_sqrt(P)
    if r is not None:
        assert r * r == P
