import itertools
import json
import random

import pytest

from detspace import matrix as mx
from detspace.detkit import char_poly, det_poly, singular_part
from detspace.gf import field_from_order, field_make, prime_field
from detspace.matspace import (CapExceeded, SubspaceError, all_invertible, all_singular, equivalence_transform, ex1,
                               ex2, ex3, extend_singular, field_reduction, field_subspace, full_space, is_cube,
                               reduce_construction, subspace_from_dict, subspace_make, thm3_7, thm4_1, thm4_4,
                               translate_to_identity)
from detspace.polyring import MultiPoly, uni_irreducible
from oracles import combine, gauss_det, gauss_rank, mat_mul, oracle_for

F2, F3 = prime_field(2), prime_field(3)


def test_subspace_make_example1():
    sub = subspace_make(F2, 3, [[[1, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0], [0, 0, 1]]])
    assert sub.d == 2 and sub.n == 3


def test_subspace_make_identity():
    assert subspace_make(F3, 2, [mx.identity(2)]).d == 1


def test_subspace_make_dependent():
    with pytest.raises(SubspaceError):
        subspace_make(F3, 2, [mx.identity(2), [[2, 0], [0, 2]]])


def test_subspace_make_size_mismatch():
    with pytest.raises(SubspaceError):
        subspace_make(F3, 2, [[[1, 0, 0], [0, 1, 0]]])


def test_subspace_make_empty():
    with pytest.raises(SubspaceError):
        subspace_make(F3, 2, [])


def test_field_subspace_f4():
    sub = field_subspace(F2, 2)
    assert sub.basis[0] == ((1, 0), (0, 1))
    assert [list(r) for r in sub.basis[1]] == mx.companion(F2, [1, 1, 1])
    O = oracle_for(F2)
    dets = [gauss_det(O, combine(O, sub.basis, cs)) for cs in itertools.product(range(2), repeat=2)]
    assert dets == [0, 1, 1, 1]


def test_field_subspace_degree_one():
    sub = field_subspace(prime_field(5), 1)
    assert sub.basis == (((1,),),)


@pytest.mark.parametrize("q,t", [(2, 3), (3, 2), (2, 4), (4, 2), (5, 3)])
def test_generator_matrix_is_companion_of_modulus(q, t):
    F = field_from_order(q)
    sub = field_subspace(F, t)
    from detspace.gf import extension_of
    L = extension_of(F, t)
    assert [list(r) for r in sub.basis[1]] == mx.companion(F, list(L.modulus))


@pytest.mark.parametrize("q,t", [(2, 3), (3, 3), (2, 5), (4, 3), (7, 2), (3, 4)])
def test_field_subspace_all_nonzero_invertible(q, t):
    sub = field_subspace(field_from_order(q), t)
    assert all_invertible(sub)


@pytest.mark.parametrize("q,t", [(2, 3), (3, 3), (4, 2)])
def test_field_subspace_ring_isomorphism(q, t):
    from detspace.gf import extension_of
    F = field_from_order(q)
    L = extension_of(F, t)
    sub = field_subspace(F, t)
    rng = random.Random(q + t)
    for _ in range(100):
        x, y = rng.randrange(L.order), rng.randrange(L.order)
        Mx, My = L.mult_matrix(x), L.mult_matrix(y)
        assert sub.contains(Mx)
        assert mx.mat_mul(F, Mx, My) == L.mult_matrix(L.mul(x, y))


def test_field_reduction_of_f4_scalars():
    F4 = field_make(2, 2)
    sub = subspace_make(F4, 1, [[[1]]])
    red = field_reduction(sub, F2)
    assert red.n == 2 and red.d == 2
    assert red.same_span(field_subspace(F2, 2))


def test_field_reduction_rank_multiplies():
    F4 = field_from_order(4)
    rng = random.Random(1)
    sub = subspace_make(F4, 3, [[[rng.randrange(4) for _ in range(3)] for _ in range(3)] for _ in range(2)])
    red = field_reduction(sub, F2)
    assert red.d == 4 and red.n == 6
    for a, b in itertools.product(range(4), repeat=2):
        M = sub.element([a, b])
        # coordinates of a*M1 + b*M2 in the reduced basis (M1, w M1, M2, w M2)
        big = red.element([a % 2, a // 2, b % 2, b // 2])
        assert mx.rank_of(big, F2) == 2 * mx.rank_of(M, F4)


def test_field_reduction_mismatch():
    with pytest.raises(SubspaceError):
        field_reduction(field_subspace(F3, 2), F2)


def test_reduce_construction_singular_part():
    for m in (2, 3):
        sub = reduce_construction(2, m)
        assert sub.d == 3 * m and sub.n == 3 * m
        sp = singular_part(sub)
        assert sp.is_subspace and sp.dim == m


def test_ex1_det_poly():
    x1, x2 = MultiPoly.var(F2, 2, 0), MultiPoly.var(F2, 2, 1)
    assert det_poly(ex1()) == x1 * x2 * (x1 + x2)


def test_ex3_parameters():
    F7 = prime_field(7)
    assert [b for b in range(1, 7) if is_cube(F7, b)] == [1, 6]
    assert det_poly(ex3(7, 3)).render() == "3*x2^3 + 2*x3^3"


def test_ex3_rejects_cube():
    with pytest.raises(SubspaceError):
        ex3(7, 6)


def test_ex3_rejects_q_not_1_mod_3():
    with pytest.raises(SubspaceError):
        ex3(5, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_thm4_1_singular_elements(q):
    sub = thm4_1(q)
    F = sub.field
    sp = singular_part(sub)
    assert sp.count == q and sp.is_subspace and sp.dim == 1
    tau = [list(r) for r in sub.basis[0]]
    assert sp.coords == [tuple([c, 0, 0]) for c in range(q)]
    for c in range(1, q):
        assert mx.rank_of(mx.mat_scale(F, c, tau), F) == 2


@pytest.mark.parametrize("q", [2, 4])
def test_thm4_4_singular_elements(q):
    sub = thm4_4(q)
    F = sub.field
    assert sub.contains(mx.identity(4))
    sp = singular_part(sub)
    assert sp.is_subspace and sp.dim == 1
    for cs in sp.coords:
        if any(cs):
            T = sub.element(cs)
            assert mx.is_zero(mx.mat_mul(F, T, T))
            assert mx.rank_of(T, F) == 2


def test_thm4_4_needs_char2():
    with pytest.raises(SubspaceError):
        thm4_4(3)


@pytest.mark.parametrize("q,d", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_thm3_7_construction(q, d):
    sub = thm3_7(q, d)
    F = sub.field
    assert sub.n == 2 * d + 1 and sub.d == d
    assert all_invertible(sub)
    elems = [sub.element(cs) for cs in itertools.product(range(q), repeat=d) if any(cs)]
    rng = random.Random(q * d)
    pairs = [(A, B) for A in elems for B in elems if mx.rank_of([mx.flatten(A), mx.flatten(B)], F) == 2]
    for A, B in rng.sample(pairs, min(len(pairs), 150)):
        f = char_poly(F, mx.mat_mul(F, mx.inverse(F, A), B))
        assert not uni_irreducible(f)


def test_equivalence_identity_is_noop():
    sub = ex1()
    out = equivalence_transform(mx.identity(3), sub, mx.identity(3))
    assert out.basis == sub.basis


def test_equivalence_scalar_scales_det_poly():
    F = prime_field(5)
    sub = full_space(F, 2)
    lam = 3
    out = equivalence_transform([[lam, 0], [0, lam]], sub, mx.identity(2))
    assert det_poly(out) == det_poly(sub).scale(F.pow(lam, 2))


def _proportional(P, Q):
    F = P.field
    (e, c), = [next(iter(P.terms.items()))]
    if e not in Q.terms:
        return False
    k = F.div(Q.terms[e], c)
    return P.scale(k) == Q and k != 0


@pytest.mark.parametrize("make", [ex1, ex2, lambda: ex3(7, 3), lambda: thm4_1(3)])
def test_equivalence_random_proportional(make):
    sub = make()
    F = sub.field
    O = oracle_for(F)
    rng = random.Random(11)
    P = det_poly(sub)
    for _ in range(5):
        while True:
            C = [[rng.randrange(F.order) for _ in range(sub.n)] for _ in range(sub.n)]
            D = [[rng.randrange(F.order) for _ in range(sub.n)] for _ in range(sub.n)]
            if gauss_det(O, C) and gauss_det(O, D):
                break
        out = equivalence_transform(C, sub, D)
        assert _proportional(P, det_poly(out))
        assert out.basis[0] == tuple(map(tuple, mat_mul(O, mat_mul(O, C, sub.basis[0]), D)))


def test_equivalence_singular_raises():
    with pytest.raises(SubspaceError):
        equivalence_transform([[1, 1, 0], [1, 1, 0], [0, 0, 1]], ex1(), mx.identity(3))


def test_translate_identity_unchanged():
    sub = field_subspace(F3, 3)
    assert translate_to_identity(mx.identity(3), sub).basis == sub.basis


def test_translate_field_by_generator_same_span():
    sub = field_subspace(F2, 3)
    out = translate_to_identity(sub.basis[1], sub)
    assert out.same_span(sub)


def test_translate_contains_identity():
    sub = ex3(7, 3)
    A = sub.element([0, 1, 0])
    assert translate_to_identity(A, sub).contains(mx.identity(3))


def test_translate_singular_raises():
    with pytest.raises(SubspaceError):
        translate_to_identity(ex1().basis[0], ex1())


def test_translate_non_member_raises():
    with pytest.raises(SubspaceError):
        translate_to_identity(mx.identity(3), ex1())


def test_extend_singular_ex1():
    out = extend_singular(ex1(), budget=50)
    assert all(out.contains(M) for M in ex1().basis)
    assert all_singular(out)
    assert out.d >= 2


def test_extend_singular_ex2():
    out = extend_singular(ex2(), budget=16)
    O = oracle_for(F3)
    assert out.d >= 2
    assert all(out.contains(M) for M in ex2().basis)
    assert all(gauss_det(O, combine(O, out.basis, cs)) == 0
               for cs in itertools.product(range(3), repeat=out.d))


def test_extend_singular_budget_zero():
    assert extend_singular(ex1(), budget=0).basis == ex1().basis


def test_extend_singular_rejects_nonsingular():
    with pytest.raises(SubspaceError):
        extend_singular(field_subspace(F2, 2))


def test_extend_singular_cap():
    with pytest.raises(CapExceeded):
        extend_singular(ex2(), cap=4)


def test_dict_roundtrip():
    for sub in [ex1(), ex2(), ex3(7, 3), thm4_4(4), full_space(F3, 2, 3)]:
        data = json.loads(json.dumps(sub.to_dict()))
        back = subspace_from_dict(data)
        assert back == sub and back.tags.get("construction") == sub.tags.get("construction")


def test_rectangular_ranks_against_oracle():
    sub = full_space(F3, 2, 3)
    O = oracle_for(F3)
    for cs in itertools.product(range(3), repeat=6):
        assert mx.rank_of(sub.element(cs), F3) == gauss_rank(O, combine(O, sub.basis, cs))
