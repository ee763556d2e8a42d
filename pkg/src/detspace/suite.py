"""The designated instance set for every catalogue entry, and the suite runner."""

from __future__ import annotations

import functools
import random

from . import matrix as mx
from .config import Config
from .gf import extension_of, field_from_order, prime_field
from .matspace import (MatrixSubspace, diagonal_subspace, ex1, ex2, ex3, extend_singular, field_reduction,
                       field_subspace, full_space, generic_skew_subspace, random_subspace, reduce_construction,
                       subspace_make, thm3_7, thm4_1, thm4_4, translate_to_identity)
from .polyring import MultiPoly
from .theorems import Instance, VerdictReport, verify


# -- instance builders (cached: several entries share an instance) -----------------

@functools.lru_cache(maxsize=None)
def field_sub(q: int, r: int) -> MatrixSubspace:
    return field_subspace(field_from_order(q), r)


@functools.lru_cache(maxsize=None)
def field_plus_unit(q: int, r: int) -> MatrixSubspace:
    """The degree-r field subspace enlarged by the matrix unit E_11."""
    base = field_sub(q, r)
    E = mx.zeros(r)
    E[0][0] = 1
    return subspace_make(base.field, r, base.basis_lists() + [E],
                         tags={"construction": "field_plus_unit", "q": q, "inner_dim": r})


@functools.lru_cache(maxsize=None)
def field_pencil(q: int, r: int, d: int) -> MatrixSubspace:
    """span{1, a, ..., a^(d-1)} inside the degree-r field subspace."""
    base = field_sub(q, r)
    return subspace_make(base.field, r, base.basis_lists()[:d],
                         tags={"construction": "field_pencil", "q": q, "d": d})


@functools.lru_cache(maxsize=None)
def twisted_field(q: int = 3, r: int = 3) -> MatrixSubspace:
    """Maps y -> x y - j x^q y^(q^2) of F_{q^r}, translated to contain I.

    j is the smallest encoding that keeps every nonzero element invertible.
    """
    F = field_from_order(q)
    L = extension_of(F, r)
    from .matspace import all_invertible

    for j in range(1, L.order):
        def op(x):
            return L.linear_map_matrix(lambda y: L.sub(L.mul(x, y),
                                                       L.mul(j, L.mul(L.frobenius(x, 1), L.frobenius(y, 2)))))
        mats = [op(q ** i) for i in range(r)]
        if mx.rank_of([mx.flatten(M) for M in mats], F) < r:
            continue
        sub = subspace_make(F, r, mats)
        if all_invertible(sub):
            out = translate_to_identity(mats[0], sub)
            out.tags.update({"construction": "twisted_field", "q": q, "j": j})
            return out
    raise ValueError("no twisting parameter keeps every element invertible")


@functools.lru_cache(maxsize=None)
def doubled_field(q: int, r: int) -> MatrixSubspace:
    """diag(A, A) for A in the degree-r field subspace: determinants are squares."""
    base = field_sub(q, r)
    return subspace_make(base.field, 2 * r, [mx.block_diag(M, M) for M in base.basis_lists()],
                         tags={"construction": "doubled_field", "q": q})


@functools.lru_cache(maxsize=None)
def ex2_extended() -> MatrixSubspace:
    return extend_singular(ex2(), budget=16, seed=0)


@functools.lru_cache(maxsize=None)
def c45_instance() -> MatrixSubspace:
    big = thm4_4(4)
    sub = field_reduction(big, prime_field(2))
    sub.tags.update({"construction": "reduce4_4", "q": 2, "m": 2})
    return sub


def artin_schreier(p: int) -> MultiPoly:
    """x^(2p) - x^2 y^(2p-2) + y^(2p): only square values on F_p^2, yet not a square."""
    F = prime_field(p)
    return MultiPoly(F, 2, {(2 * p, 0): 1, (2, 2 * p - 2): F.neg(1), (0, 2 * p): 1})


def twisted_square(q: int = 3) -> MultiPoly:
    """j h^2 with j the smallest non-square and h = x1^2 + x1 x2 + 2."""
    F = field_from_order(q)
    j = next(a for a in range(1, q) if not F.is_square(a))
    h = MultiPoly(F, 2, {(2, 0): 1, (1, 1): 1, (0, 0): 2 % q})
    return (h * h).scale(j)


def square_poly(q: int = 5) -> MultiPoly:
    F = field_from_order(q)
    h = MultiPoly(F, 2, {(1, 0): 1, (0, 1): 2, (0, 0): 1})
    return h * h


# -- designated sets -------------------------------------------------------------

def _s(label, sub, **params):
    return Instance(label, sub=sub, params=params)


def _p(label, poly, **params):
    return Instance(label, poly=poly, params=params)


FIELD_CASES = [(2, 3), (3, 3), (2, 5), (4, 3)]


def designated() -> list[tuple[str, Instance]]:
    """Every (theorem id, instance) pair the suite runs, in a fixed order."""
    out: list[tuple[str, Instance]] = []

    def add(tid, *insts):
        out.extend((tid, i) for i in insts)

    fields = [_s(f"field({q},{r})", field_sub(q, r)) for q, r in FIELD_CASES]
    t41 = [_s(f"thm4_1({q})", thm4_1(q)) for q in (2, 3, 4, 5, 7)]
    e3 = [_s("ex3(7,3)", ex3(7, 3), b=3), _s("ex3(13,2)", ex3(13, 2), b=2)]
    t37 = [_s(f"thm3_7({q},{d})", thm3_7(q, d)) for q, d in ((2, 2), (3, 2), (2, 3))]
    plus = [_s(f"field_plus_unit({q},3)", field_plus_unit(q, 3), inner_dim=3) for q in (2, 3)]
    pencils = [_s(f"field_pencil({q},3,2)", field_pencil(q, 3, 2)) for q in (2, 3, 4)] + \
        [_s("field_pencil(2,5,3)", field_pencil(2, 5, 3))]
    twisted = _s("twisted_field(3,3)", twisted_field(3, 3))
    groups = [_s("field(2,3)", field_sub(2, 3)), _s("field(3,3)", field_sub(3, 3)), twisted]

    add("T1.2", _s("ex1", ex1()), _s("ex2", ex2()), _s("ex2_extended", ex2_extended()))
    add("L1.3", _s("ex1", ex1()), _s("ex2", ex2()), e3[0])
    add("C1.4", *fields)
    add("C1.5", *fields)
    add("C1.6", *plus)
    add("T2.1", *[_s(f"full_M2({q})", full_space(field_from_order(q), 2)) for q in (3, 5, 7, 11, 67)])
    add("C2.2", _s("field(2,5)", field_sub(2, 5)), _s("field(3,5)", field_sub(3, 5)))
    add("T3.2", *e3, *fields, *t41)
    add("L3.3", e3[0], *t41)
    add("C3.4", e3[0], *t41)
    add("C3.5", *e3, *t41)
    add("T3.6", *fields)
    add("T3.7", *t37)
    add("C3.8", *t37)
    add("L3.9", *fields, *t41[:3])
    add("T3.10", *plus)
    add("T4.1", *t41)
    add("E3", *e3)
    add("C4.2", *[_s(f"reduce(2,{m})", reduce_construction(2, m), m=m) for m in (2, 3)])
    add("T4.4", *[_s(f"thm4_4({q})", thm4_4(q)) for q in (2, 4)])
    add("C4.5", _s("reduce4_4(2,2)", c45_instance(), m=2))
    add("L5.1", *pencils)
    add("C5.2", *pencils)
    add("L5.3", *fields, twisted)
    add("C5.4", *fields, twisted)
    add("T5.6", *groups)
    add("L5.7", Instance("grid(r<=13,q<=64)", params={"r_max": 13, "q_max": 64}))
    add("T5.8", *groups, *pencils[:2])
    add("C5.9", *groups)
    add("C5.10", *pencils[:2])
    add("L6.1", _p("artin_schreier(3)", artin_schreier(3)), _p("square(5)", square_poly(5)),
        _s("skew(4,3)", generic_skew_subspace(prime_field(3), 4)))
    add("T6.2", _p("twisted_square(3)", twisted_square(3)), _p("artin_schreier(3)", artin_schreier(3)))
    add("T6.3", _p("artin_schreier(3)", artin_schreier(3)), _p("artin_schreier(7)", artin_schreier(7)),
        _p("square(5)", square_poly(5)))
    add("C6.4", _s("doubled_field(3,2)", doubled_field(3, 2)), _s("doubled_field(3,3)", doubled_field(3, 3)))
    add("C6.5", _s("doubled_field(3,2)", doubled_field(3, 2)), _s("doubled_field(5,2)", doubled_field(5, 2)))
    add("C6.6", *[_s(f"skew({n},{q})", generic_skew_subspace(prime_field(q), n), samples=60)
                  for n in (4, 6) for q in (3, 5)], _s("doubled_field(3,3)", doubled_field(3, 3)))
    diag = [_s(f"diagonal({n},{q})", diagonal_subspace(field_from_order(q), n))
            for n in (1, 2, 3) for q in (2, 3, 4, 5)]
    rng = random.Random(0)
    rect = [_s(f"random_3x4(3,d={d})", random_subspace(prime_field(3), 3, d, rng, 4)) for d in (2, 3, 4)]
    skews = [_s(f"skew({n},2)", generic_skew_subspace(prime_field(2), n)) for n in (4, 5, 6)] + \
        [_s("skew(4,3)", generic_skew_subspace(prime_field(3), 4))]
    add("T7.1", *diag, *fields, *t37)
    add("T7.2", *diag, *fields, *t37, *rect)
    add("T7.3", *[s for s in skews if s.sub.n % 2 == 0])
    add("T7.4", *skews)
    return out


def run_suite(cfg: Config | None = None, only: set[str] | None = None) -> list[VerdictReport]:
    cfg = cfg or Config()
    return [verify(tid, inst, cfg) for tid, inst in designated() if only is None or tid in only]
