"""Determinantal and characteristic polynomials, Pfaffians, censuses and classification."""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import matrix as mx
from .gf import Field, extension_of
from .matspace import DEFAULT_CAP, CapExceeded, MatrixSubspace, SubspaceError, is_skew
from .polyring import MultiPoly, UniPoly, multi_divide, multi_sqrt, uni_irreducible, uni_roots_in


# -- symbolic determinants -------------------------------------------------------

def symbolic_matrix(sub: MatrixSubspace) -> list[list[MultiPoly]]:
    """The matrix x_1 M_1 + ... + x_d M_d with linear-form entries."""
    F = sub.field
    return [[MultiPoly.linear(F, [M[i][j] for M in sub.basis]) for j in range(sub.m)]
            for i in range(sub.n)]


def poly_det(entries: list[list[MultiPoly]], field: Field, nvars: int) -> MultiPoly:
    """Division-free determinant by memoised Laplace expansion along rows.

    minor(k, S) is the determinant of rows k.. and the columns in bitmask S.
    """
    n = len(entries)
    if n == 0:
        return MultiPoly.constant(field, nvars, 1)
    memo: dict[int, MultiPoly] = {}
    zero = MultiPoly.zero(field, nvars)

    def minor(S: int) -> MultiPoly:
        k = n - bin(S).count("1")
        if k == n:
            return MultiPoly.constant(field, nvars, 1)
        got = memo.get(S)
        if got is not None:
            return got
        acc = zero
        pos = 0
        for j in range(n):
            if S >> j & 1:
                e = entries[k][j]
                if e:
                    t = e * minor(S & ~(1 << j))
                    acc = acc - t if pos % 2 else acc + t
                pos += 1
        memo[S] = acc
        return acc

    return minor((1 << n) - 1)


def det_poly(sub: MatrixSubspace) -> MultiPoly:
    """P(x) = det(x_1 M_1 + ... + x_d M_d)."""
    if not sub.square:
        raise SubspaceError("determinantal polynomial needs square matrices")
    return poly_det(symbolic_matrix(sub), sub.field, sub.d)


def cofactor_det_poly(sub: MatrixSubspace) -> MultiPoly:
    """Plain recursive cofactor expansion with no memoisation; an independent check."""
    ent = symbolic_matrix(sub)
    F, d = sub.field, sub.d

    def rec(rows, cols):
        if not rows:
            return MultiPoly.constant(F, d, 1)
        r, rest = rows[0], rows[1:]
        acc = MultiPoly.zero(F, d)
        for idx, c in enumerate(cols):
            if ent[r][c]:
                t = ent[r][c] * rec(rest, cols[:idx] + cols[idx + 1:])
                acc = acc - t if idx % 2 else acc + t
        return acc

    return rec(list(range(sub.n)), list(range(sub.n)))


def char_poly(F: Field, A) -> UniPoly:
    """det(yI - A) by Berkowitz's division-free recurrence."""
    n = len(A)
    if n == 0:
        return UniPoly(F, (1,))
    # coefficient vectors are kept highest degree first
    p = [1, F.neg(A[0][0])]
    for r in range(1, n):
        R = A[r][:r]                    # row r, columns < r
        S = [A[i][r] for i in range(r)]  # column r, rows < r
        Amat = [row[:r] for row in A[:r]]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        col = [1, F.neg(a)]
        v = S
        for _ in range(r):
            col.append(F.neg(F.sum(F.mul(x, y) for x, y in zip(R, v))))
            v = mx.mat_vec(F, Amat, v)
        # new[i] = sum_{j<=i} col[i-j] * p[j]
        new = []
        for i in range(r + 2):
            acc = 0
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    acc = F.add(acc, F.mul(col[i - j], p[j]))
            new.append(acc)
        p = new
    return UniPoly(F, reversed(p))


def char_poly_naive(F: Field, A) -> UniPoly:
    """det(yI - A) through the symbolic determinant of span{I, -A}; a slow cross-check."""
    n = len(A)
    ent = [[MultiPoly.linear(F, [1 if i == j else 0, F.neg(A[i][j])]) for j in range(n)] for i in range(n)]
    P = poly_det(ent, F, 2)
    return P.dehomogenize(1)


# -- Pfaffians -------------------------------------------------------------------

def pfaffian_of(entries: list[list[MultiPoly]], field: Field, nvars: int) -> MultiPoly:
    """Pfaffian by first-row expansion with a bitmask memo; pf([[0,1],[-1,0]]) = 1."""
    n = len(entries)
    if n % 2:
        raise SubspaceError("Pfaffian needs even size")
    memo: dict[int, MultiPoly] = {}

    def rec(S: int) -> MultiPoly:
        if S == 0:
            return MultiPoly.constant(field, nvars, 1)
        got = memo.get(S)
        if got is not None:
            return got
        idx = [i for i in range(n) if S >> i & 1]
        i = idx[0]
        acc = MultiPoly.zero(field, nvars)
        for pos, j in enumerate(idx[1:]):
            e = entries[i][j]
            if e:
                t = e * rec(S & ~(1 << i) & ~(1 << j))
                acc = acc - t if pos % 2 else acc + t
        memo[S] = acc
        return acc

    return rec((1 << n) - 1)


def pfaffian(sub: MatrixSubspace) -> MultiPoly:
    if not sub.square or sub.n % 2:
        raise SubspaceError("Pfaffian needs square matrices of even size")
    for M in sub.basis:
        if not is_skew(sub.field, M):
            raise SubspaceError("basis matrix is not skew-symmetric with zero diagonal")
    return pfaffian_of(symbolic_matrix(sub), sub.field, sub.d)


# -- censuses ----------------------------------------------------------------------

@dataclass
class ZeroCensus:
    q: int
    d: int
    degree: int | None
    N_affine: int | None = None
    N_projective: int | None = None
    values: dict | None = None

    def to_dict(self) -> dict:
        return {"q": self.q, "d": self.d, "degree": self.degree,
                "N_affine": self.N_affine, "N_projective": self.N_projective}


class PolyEvaluator:
    """Vectorised evaluation of a MultiPoly at many points (rows of an int array)."""

    def __init__(self, P: MultiPoly):
        self.P = P
        self.F = P.field
        self.terms = P.sorted_terms()

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        F = self.F
        N = len(pts)
        acc = np.zeros(N, dtype=np.int64)
        pw_cache: dict[tuple[int, int], np.ndarray] = {}

        def power(i, a):
            key = (i, a)
            if key not in pw_cache:
                if a == 1:
                    pw_cache[key] = pts[:, i]
                else:
                    half = power(i, a // 2)
                    sq = F.vmul(half, half)
                    pw_cache[key] = F.vmul(sq, pts[:, i]) if a % 2 else sq
            return pw_cache[key]

        for e, c in self.terms:
            t = np.full(N, c, dtype=np.int64)
            for i, a in enumerate(e):
                if a:
                    t = F.vmul(t, power(i, a))
            acc = F.vadd(acc, t)
        return acc


def affine_points(q: int, d: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), d), dtype=np.int64)
    for i in range(d - 1, -1, -1):
        out[:, i] = idx % q
        idx //= q
    return out


def projective_points(q: int, d: int, start: int, stop: int) -> np.ndarray:
    """Normalised representatives (first nonzero coordinate 1), indexed 0..(q^d-1)/(q-1)-1.

    Representatives with leading 1 at position k come in blocks of q^(d-1-k).
    """
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((len(idx), d), dtype=np.int64)
    offset = 0
    for k in range(d):
        block = q ** (d - 1 - k)
        sel = (idx >= offset) & (idx < offset + block)
        if sel.any():
            local = idx[sel] - offset
            rows = np.zeros((len(local), d), dtype=np.int64)
            rows[:, k] = 1
            for i in range(d - 1, k, -1):
                rows[:, i] = local % q
                local //= q
            out[sel] = rows
        offset += block
    return out


def _run_chunks(fn, total: int, chunk: int, threads: int) -> list:
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(lambda r: fn(*r), ranges))
    return [fn(*r) for r in ranges]


def zero_census(P: MultiPoly, mode: str = "affine", cap: int = DEFAULT_CAP,
                projective_cap: int = DEFAULT_CAP, threads: int = 1, chunk: int = 1 << 15,
                value_hist: bool = False) -> ZeroCensus:
    """Exact zero counts of P over F_q^d (``affine``), P^{d-1}(F_q) (``projective``) or ``both``."""
    F = P.field
    q, d = F.order, P.nvars
    hom = P.is_homogeneous()
    deg = hom if isinstance(hom, int) else None
    out = ZeroCensus(q, d, deg)
    ev = PolyEvaluator(P)
    if mode not in ("affine", "projective", "both"):
        raise ValueError(f"unknown census mode {mode!r}")
    if mode in ("projective", "both"):
        if hom is None:
            raise SubspaceError("projective census needs a homogeneous polynomial")
        total = (q ** d - 1) // (q - 1)
        if total > projective_cap:
            raise CapExceeded(f"projective census needs {total} points, cap is {projective_cap}")
        counts = _run_chunks(lambda a, b: int((ev(projective_points(q, d, a, b)) == 0).sum()),
                             total, chunk, threads)
        out.N_projective = sum(counts)
    if mode in ("affine", "both"):
        total = q ** d
        if total > cap:
            raise CapExceeded(f"affine census needs q^d = {total} points, cap is {cap}")

        def part(a, b):
            vals = ev(affine_points(q, d, a, b))
            return int((vals == 0).sum()), (np.bincount(vals, minlength=q) if value_hist else None)

        parts = _run_chunks(part, total, chunk, threads)
        out.N_affine = sum(p[0] for p in parts)
        if value_hist:
            hist = sum(p[1] for p in parts)
            out.values = {int(v): int(c) for v, c in enumerate(hist) if c}
    if (out.N_affine is not None and out.N_projective is not None
            and isinstance(hom, int) and not P.is_zero()):
        if out.N_affine != 1 + (q - 1) * out.N_projective:
            raise AssertionError("affine and projective censuses disagree")
    return out


def census_any(P: MultiPoly, cap: int = DEFAULT_CAP, projective_cap: int = DEFAULT_CAP,
               threads: int = 1) -> ZeroCensus:
    """Affine census when it fits the cap, otherwise projective plus the derived affine count."""
    q, d = P.field.order, P.nvars
    hom = P.is_homogeneous()
    if q ** d <= cap:
        mode = "both" if hom is not None and (q ** d - 1) // (q - 1) <= projective_cap else "affine"
        return zero_census(P, mode, cap, projective_cap, threads)
    c = zero_census(P, "projective", cap, projective_cap, threads)
    if isinstance(hom, int) and not P.is_zero():
        c.N_affine = 1 + (q - 1) * c.N_projective
    return c


@dataclass
class RankCensus:
    q: int
    d: int
    n: int
    m: int
    counts: dict[int, int]
    bounds: list[dict] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {"q": self.q, "d": self.d, "n": self.n, "m": self.m,
                "counts": {str(k): v for k, v in sorted(self.counts.items())},
                "bounds": self.bounds}


def rank_counts(sub: MatrixSubspace, cap: int = DEFAULT_CAP, threads: int = 1) -> dict[int, int]:
    sub.check_cap(cap)
    F = sub.field

    def part(a, b):
        mats = sub.element_stack(sub.coeff_tuples(a, b))
        return np.bincount(mx.batch_rank(F, mats), minlength=min(sub.n, sub.m) + 1)

    parts = _run_chunks(part, sub.size, 1 << 14, threads)
    hist = sum(parts)
    return {int(r): int(c) for r, c in enumerate(hist) if c}


def _ore(q: int, d: int, k: int) -> int:
    return q ** d - k * q ** (d - 1) + k - 1


def rank_bounds(q: int, d: int, n: int, m: int, counts: dict[int, int], skew: bool = False) -> list[dict]:
    """Lower bounds on rank counts next to the observed values.

    T7.1: elements of rank n (square, rank n attained).  T7.2: elements of rank >= r for
    every attained r.  T7.3/T7.4: skew-symmetric versions with half the rank in the bound.
    "serre": the tighter bound q^d - n q^(d-1) + (n-1) q^(d-2) for n <= q, d >= 2.
    """
    out = []
    at_least = {r: sum(c for k, c in counts.items() if k >= r) for r in counts}
    if n == m and counts.get(n, 0) > 0:
        obs = counts[n]
        out.append({"id": "T7.1", "rank": n, "observed": obs, "bound": _ore(q, d, n),
                    "holds": obs >= _ore(q, d, n)})
        if n <= q and d >= 2:
            serre = q ** d - n * q ** (d - 1) + (n - 1) * q ** (d - 2)
            out.append({"id": "serre", "rank": n, "observed": obs, "bound": serre, "holds": obs >= serre})
    for r in sorted(k for k in counts if k > 0):
        obs = at_least[r]
        out.append({"id": "T7.2", "rank": r, "observed": obs, "bound": _ore(q, d, r),
                    "holds": obs >= _ore(q, d, r)})
    if skew and n == m:
        if counts.get(n, 0) > 0 and n % 2 == 0:
            obs, half = counts[n], n // 2
            out.append({"id": "T7.3", "rank": n, "observed": obs, "bound": _ore(q, d, half),
                        "holds": obs >= _ore(q, d, half)})
        for r in sorted(k for k in counts if k > 0 and k % 2 == 0):
            obs, half = at_least[r], r // 2
            out.append({"id": "T7.4", "rank": r, "observed": obs, "bound": _ore(q, d, half),
                        "holds": obs >= _ore(q, d, half)})
    return out


def rank_census(sub: MatrixSubspace, cap: int = DEFAULT_CAP, threads: int = 1) -> RankCensus:
    counts = rank_counts(sub, cap, threads)
    skew = sub.square and all(is_skew(sub.field, M) for M in sub.basis)
    return RankCensus(sub.q, sub.d, sub.n, sub.m, counts,
                      rank_bounds(sub.q, sub.d, sub.n, sub.m, counts, skew))


# -- singular part ---------------------------------------------------------------

@dataclass
class SingularPart:
    count: int
    is_subspace: bool
    basis: list | None
    coords: list = dc_field(default_factory=list)

    @property
    def dim(self) -> int | None:
        return len(self.basis) if self.basis is not None else None

    def to_dict(self) -> dict:
        return {"count": self.count, "is_subspace": self.is_subspace,
                "dim": self.dim, "basis": self.basis}


def singular_coords(sub: MatrixSubspace, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    F = sub.field
    out = []
    for cs, mats in sub.iter_chunks(cap):
        dets = mx.batch_det(F, mats)
        out.extend(tuple(c) for c in cs[dets == 0].tolist())
    return out


def singular_part(sub: MatrixSubspace, cap: int = DEFAULT_CAP) -> SingularPart:
    """Elements of determinant zero; a basis when they form a subspace."""
    if not sub.square:
        raise SubspaceError("singular part needs square matrices")
    F = sub.field
    pts = singular_coords(sub, cap)
    nonzero = [list(c) for c in pts if any(c)]
    if not nonzero:
        return SingularPart(len(pts), True, [], pts)
    R, piv = mx.rref(F, nonzero)
    k = len(piv)
    if F.order ** k != len(pts):
        return SingularPart(len(pts), False, None, pts)
    basis = [sub.element(r) for r in R[:k]]
    return SingularPart(len(pts), True, basis, pts)


# -- norm-form witness --------------------------------------------------------------

@dataclass
class NormFormWitness:
    r: int
    omega: list[int]
    scalar: int
    lam: int
    ext: Field
    transform: list | None = None

    def to_dict(self) -> dict:
        return {"r": self.r, "omega": self.omega, "scalar": self.scalar,
                "lambda": self.lam, "ext_order": self.ext.order,
                "substitution": self.transform}


def norm_product(P_field: Field, ext: Field, omega: Sequence[int], r: int) -> MultiPoly:
    """prod_{i<r} sigma^i(sum omega_j x_j), computed over ext."""
    L = MultiPoly.linear(ext, list(omega))
    prod = MultiPoly.constant(ext, len(omega), 1)
    for i in range(r):
        prod = prod * L.frobenius(i)
    return prod


def _is_prime(r: int) -> bool:
    return r >= 2 and all(r % k for k in range(2, int(math.isqrt(r)) + 1))


def norm_form_witness(P: MultiPoly, r: int | None = None, seed: int = 0,
                      root_cap: int = 4096) -> NormFormWitness | None:
    """Find omega over F_{q^r} (first nonzero entry 1) and c in F_q with
    P = c * prod_{i<r} sigma^i(omega_1 x_1 + ... + omega_d x_d), or return None.

    Only witnesses whose linear form is not defined over F_q count: a form
    over F_q would make P a power of a rational linear form.
    """
    F = P.field
    hom = P.is_homogeneous()
    if P.is_zero() or not isinstance(hom, int):
        raise ValueError("norm-form test needs a nonzero homogeneous polynomial")
    r = hom if r is None else r
    if not _is_prime(r):
        raise ValueError(f"r = {r} is not prime")
    if hom != r:
        raise ValueError(f"degree {hom} does not match r = {r}")
    d = P.nvars
    j0 = next((j for j in range(d) if P.coefficient(_unit_exp(d, j, r))), None)
    transform = None
    if j0 is None:
        G = _random_substitution(F, d, P, r, random.Random(seed))
        if G is None:
            return None
        transform = G
        forms = [MultiPoly.linear(F, G[i]) for i in range(d)]
        Pt = P.substitute(forms)
        w = _witness_with_pivot(Pt, r, 0, seed, root_cap)
        if w is None:
            return None
        # P(x) = Pt(G^{-1} x): omega_P = omega_t * G^{-1}
        L = w.ext
        Gi = mx.inverse(F, G)
        om = [L.sum(L.mul(w.omega[k], Gi[k][j]) for k in range(d)) for j in range(d)]
        lead = next(x for x in om if x)
        inv = L.inv(lead)
        om = [L.mul(inv, x) for x in om]
        c = _fit_scalar(P, L, om, r)
        if c is None:
            return None
        wit = NormFormWitness(r, om, c, _norm_preimage(L, c), L, transform)
    else:
        wit = _witness_with_pivot(P, r, j0, seed, root_cap)
        if wit is None:
            return None
    if not verify_witness(P, wit):
        raise AssertionError("norm-form witness failed coefficient verification")
    return wit


def _unit_exp(d, j, r):
    e = [0] * d
    e[j] = r
    return tuple(e)


def _random_substitution(F, d, P, r, rng):
    for _ in range(200):
        G = [[rng.randrange(F.order) for _ in range(d)] for _ in range(d)]
        if not mx.is_invertible(F, G):
            continue
        # coefficient of y_1^r in P(G y) is P(first column of G)
        if P.eval([G[i][0] for i in range(d)]) != 0:
            return G
    return None


def _fit_scalar(P, L, omega, r):
    prod = norm_product(P.field, L, omega, r)
    e, c = P.leading_term()
    pc = prod.coefficient(e)
    if pc == 0 or pc >= P.field.order:
        return None
    return P.field.div(c, pc)


def _norm_preimage(L: Field, c: int) -> int:
    """Smallest mu in L with N(mu) = c (the norm is onto the base)."""
    for mu in range(1, L.order):
        if L.norm(mu) == c:
            return mu
    raise AssertionError("norm map not surjective")


def _witness_with_pivot(P: MultiPoly, r: int, j0: int, seed: int, root_cap: int):
    F = P.field
    d = P.nvars
    L = extension_of(F, r)
    c = P.coefficient(_unit_exp(d, j0, r))
    # per-variable candidates for omega_j relative to omega_{j0} = 1
    cands: dict[int, list[int]] = {}
    rational = True
    for j in range(d):
        if j == j0:
            continue
        B = P.restrict_pair(j0, j) if j0 < j else _swap(P.restrict_pair(j, j0))
        # B(x0, xj) = c * prod(x0 + w_i xj);  with x0 = 1 - the univariate in t = xj
        f = B.dehomogenize(0)
        if f.degree <= 0:
            cands[j] = [0]
            continue
        roots = uni_roots_in(f, L, cap=root_cap, seed=seed)
        if len(roots) == 1 and roots[0][1] == r:
            root = roots[0][0]
            cands[j] = [L.neg(L.inv(root))]
            if root >= F.order:
                rational = False
        elif len(roots) == r and all(m == 1 for _, m in roots) and f.degree == r:
            cands[j] = sorted(L.neg(L.inv(x)) for x, _ in roots)
            rational = False
        else:
            return None
    if rational:
        return None
    order = sorted(cands)
    # fix the first irrational coordinate (Frobenius twist freedom)
    j1 = next(j for j in order if len(cands[j]) > 1 or cands[j][0] >= F.order)
    omega = [0] * d
    omega[j0] = 1
    omega[j1] = cands[j1][0]
    for j in order:
        if j == j1:
            continue
        if len(cands[j]) == 1:
            omega[j] = cands[j][0]
            continue
        picked = None
        for w in cands[j]:
            if _pair_consistent(P, L, j0, j1, j, omega[j1], w, c, r):
                picked = w
                break
        if picked is None:
            return None
        omega[j] = picked
    wit = NormFormWitness(r, omega, c, _norm_preimage(L, c), L)
    return wit if verify_witness(P, wit) else None


def _swap(B: MultiPoly) -> MultiPoly:
    return MultiPoly(B.field, 2, {(b, a): v for (a, b), v in B.terms.items()})


def _pair_consistent(P, L, j0, j1, j, w1, w, c, r) -> bool:
    """Check the 3-variable restriction to (x_{j0}, x_{j1}, x_j) against c * N(x0 + w1 x1 + w xj)."""
    keep = (j0, j1, j)
    sub_terms = {}
    for e, v in P.terms.items():
        if all(a == 0 for t, a in enumerate(e) if t not in keep):
            sub_terms[(e[j0], e[j1], e[j])] = v
    R = MultiPoly(P.field, 3, sub_terms).over(L)
    N = norm_product(P.field, L, [1, w1, w], r).scale(c)
    return R == N


def verify_witness(P: MultiPoly, wit: NormFormWitness) -> bool:
    """Full coefficient comparison P == c * prod sigma^i(L), plus N(lambda) = c."""
    L = wit.ext
    prod = norm_product(P.field, L, wit.omega, wit.r).scale(wit.scalar)
    if prod != P.over(L):
        return False
    return L.norm(wit.lam) == wit.scalar


# -- classification ---------------------------------------------------------------

def cafure_matera_ceiling(n: int) -> int:
    """Smallest integer C with C^3 >= n^13, i.e. ceil(n^(13/3))."""
    target = n ** 13
    c = round(target ** (1 / 3))
    while c ** 3 < target:
        c += 1
    while c > 0 and (c - 1) ** 3 >= target:
        c -= 1
    return c


def cafure_matera_holds(N: int, q: int, d: int, n: int) -> dict:
    """Exact check of |N - q^(d-1)| <= (n-1)(n-2) q^(d-3/2) + 5 n^(13/3) q^(d-2).

    Multiplying by q^2 clears negative powers: |N - q^(d-1)| q^2 - 5 C q^d <= (n-1)(n-2) q^d sqrt(q),
    with C = ceil(n^(13/3)); rounding C upward only loosens the bound.
    """
    C = cafure_matera_ceiling(n)
    lhs = abs(N - q ** (d - 1)) * q * q - 5 * C * q ** d
    rhs = (n - 1) * (n - 2) * q ** d
    holds = lhs <= 0 or lhs * lhs <= rhs * rhs * q
    return {"deviation": abs(N - q ** (d - 1)), "ceil_n_13_3": C,
            "bound_float": (n - 1) * (n - 2) * q ** (d - 1.5) + 5 * C * q ** (d - 2),
            "holds": holds, "ceiling_exact": C ** 3 == n ** 13}


@dataclass
class Classification:
    q: int
    n: int
    d: int
    poly: MultiPoly
    census: ZeroCensus | None
    verdicts: dict
    witness: NormFormWitness | None = None
    sqrt: MultiPoly | None = None
    notes: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"q": self.q, "n": self.n, "d": self.d,
                "N_affine": self.census.N_affine if self.census else None,
                "verdicts": self.verdicts,
                "witness": self.witness.to_dict() if self.witness else None,
                "sqrt": self.sqrt.render() if self.sqrt is not None else None,
                "notes": self.notes}


def classify(sub: MatrixSubspace, cap: int = DEFAULT_CAP, projective_cap: int = DEFAULT_CAP,
             seed: int = 0, threads: int = 1, root_cap: int = 4096) -> Classification:
    P = det_poly(sub)
    q, n, d = sub.q, sub.n, sub.d
    verdicts = {"is_zero_poly": P.is_zero(), "vanishes_everywhere": False,
                "chevalley_irreducible": False, "norm_form": False, "is_square": False,
                "heuristic_abs_irreducible": False}
    notes = {}
    out = Classification(q, n, d, P, None, verdicts, notes=notes)
    if P.is_zero():
        notes["is_zero_poly"] = "every element is singular and P = 0"
        return out
    census = census_any(P, cap, projective_cap, threads)
    out.census = census
    N = census.N_affine
    if N == q ** d:
        verdicts["vanishes_everywhere"] = True
        notes["vanishes_everywhere"] = f"nonzero P vanishes on all of F_q^d; q = {q} < n = {n}: {q < n}"
        if not q < n:
            raise AssertionError("nonzero polynomial of degree n vanishing everywhere with q >= n")
    if 2 * d >= 1 + n and N == 1:
        verdicts["chevalley_irreducible"] = True
        notes["chevalley_irreducible"] = "2d >= n+1 and the only zero is the origin"
    if _is_prime(n) and n >= 2:
        wit = norm_form_witness(P, n, seed=seed, root_cap=root_cap)
        if wit is not None:
            verdicts["norm_form"] = True
            out.witness = wit
            notes["norm_form"] = f"P is a norm form from F_{{q^{n}}}; irreducible over F_q, not absolutely"
    g = multi_sqrt(P)
    if g is not None:
        verdicts["is_square"] = True
        out.sqrt = g
        notes["is_square"] = "P is the square of a polynomial over F_q"
    cm = cafure_matera_holds(N, q, d, n)
    notes["cafure_matera"] = cm
    if not (verdicts["norm_form"] or verdicts["is_square"] or verdicts["vanishes_everywhere"]):
        verdicts["heuristic_abs_irreducible"] = cm["holds"]
        notes["heuristic_abs_irreducible"] = "heuristic: zero count consistent with the absolutely irreducible bound"
    return out


# -- misc helpers used by the verifiers ------------------------------------------

def is_nilpotent(F: Field, T) -> bool:
    n = len(T)
    P = mx.identity(n)
    for _ in range(n):
        P = mx.mat_mul(F, P, T)
    return mx.is_zero(P)


def uni_sqrt(f: UniPoly) -> UniPoly | None:
    """Monic g with g^2 = f for monic f, else None."""
    P = MultiPoly(f.field, 1, {(i,): c for i, c in enumerate(f.coeffs) if c})
    g = multi_sqrt(P)
    if g is None:
        return None
    u = g.to_uni(0)
    return u.monic() if u.lead and f.field.mul(u.lead, u.lead) == f.lead else None


def is_homogeneous_factorization(g: MultiPoly, h: MultiPoly) -> bool:
    return isinstance(g.is_homogeneous(), int) and isinstance(h.is_homogeneous(), int)


def line_restriction(P: MultiPoly, point, direction) -> UniPoly:
    """t -> P(point + t * direction)."""
    F = P.field
    forms = [MultiPoly.linear(F, [b], a) for a, b in zip(point, direction)]
    return P.substitute(forms).to_uni(0)


def irreducibility_certificate(P: MultiPoly, seed: int = 0, tries: int = 200) -> dict | None:
    """A line on which P restricts to an irreducible polynomial of full degree.

    If P = GH then P(a + tb) = G(a + tb) H(a + tb), and full degree forces both factors to
    keep their degrees, so such a line proves P irreducible over F_q.  Coordinate lines
    come first, then seeded random ones.  None means no certificate was found.
    """
    F, d, n = P.field, P.nvars, P.total_degree()
    if P.is_zero() or n < 1:
        return None
    cands = []
    for i in range(d):
        for j in range(d):
            if i != j:
                a = [0] * d
                b = [0] * d
                a[j], b[i] = 1, 1
                cands.append((a, b))
    rng = random.Random(seed)
    for _ in range(tries):
        cands.append(([rng.randrange(F.order) for _ in range(d)], [rng.randrange(F.order) for _ in range(d)]))
    if d == 1:
        cands.insert(0, ([0], [1]))
    for a, b in cands:
        u = line_restriction(P, a, b)
        if u.degree == n and uni_irreducible(u):
            return {"point": a, "direction": b, "restriction": u.render("t")}
    return None


def linear_factors(P: MultiPoly, cap: int = 4096) -> list[MultiPoly]:
    """Monic-normalised linear polynomials c_0 + sum c_i x_i dividing P, scanning at most cap candidates."""
    F, d = P.field, P.nvars
    q = F.order
    out = []
    seen = 0
    for lead in range(d):
        for rest in np.ndindex(*([q] * (d - lead - 1) + [q])):
            seen += 1
            if seen > cap:
                return out
            coeffs = [0] * lead + [1] + list(rest[:-1])
            L = MultiPoly.linear(F, coeffs, int(rest[-1]))
            if multi_divide(P, L) is not None:
                out.append(L)
    return out
