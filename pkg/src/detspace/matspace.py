"""Matrix subspaces with ordered bases and the explicit constructions built on them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from . import matrix as mx
from .gf import Field, extension_of, field_from_dict, field_from_order, field_to_dict


class SubspaceError(ValueError):
    """Invalid basis, size mismatch or violated construction hypothesis."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured cap."""


DEFAULT_CAP = 1 << 24
CHUNK = 1 << 14


@dataclass(frozen=True)
class MatrixSubspace:
    """Span of linearly independent n x m matrices over ``field``.

    Build through :func:`subspace_make`, which validates the basis.
    """

    field: Field
    n: int
    m: int
    basis: tuple
    tags: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @property
    def d(self) -> int:
        return len(self.basis)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def square(self) -> bool:
        return self.n == self.m

    @property
    def size(self) -> int:
        return self.q ** self.d

    def basis_lists(self) -> list[mx.Mat]:
        return [[list(r) for r in M] for M in self.basis]

    def element(self, coeffs: Sequence[int]) -> mx.Mat:
        if len(coeffs) != self.d:
            raise SubspaceError(f"need {self.d} coordinates, got {len(coeffs)}")
        return mx.lin_comb(self.field, coeffs, self.basis)

    def flat_basis(self) -> list[list[int]]:
        return [mx.flatten(M) for M in self.basis]

    def echelon(self) -> tuple:
        R, _ = mx.rref(self.field, self.flat_basis())
        return tuple(tuple(r) for r in R)

    def same_span(self, other: MatrixSubspace) -> bool:
        return (self.field == other.field and (self.n, self.m) == (other.n, other.m)
                and self.echelon() == other.echelon())

    def contains(self, M) -> bool:
        rows = self.flat_basis()
        return mx.rank_of(rows + [mx.flatten(M)], self.field) == len(rows)

    def coordinates(self, M) -> list[int] | None:
        """Coordinates of M in the basis, or None if M is outside the span."""
        F = self.field
        cols = self.flat_basis()
        aug = [[cols[j][i] for j in range(self.d)] + [x] for i, x in enumerate(mx.flatten(M))]
        R, piv = mx.rref(F, aug)
        if self.d in piv:
            return None
        out = [0] * self.d
        for r, c in enumerate(piv):
            out[c] = R[r][self.d]
        return out

    def check_cap(self, cap: int, what: str = "enumeration"):
        if self.size > cap:
            raise CapExceeded(f"{what} needs q^d = {self.q}^{self.d} = {self.size} points, cap is {cap}")

    def coeff_tuples(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Coordinate tuples number start..stop-1 in lexicographic order, as an (N, d) array."""
        stop = self.size if stop is None else stop
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((len(idx), self.d), dtype=np.int64)
        for i in range(self.d - 1, -1, -1):
            out[:, i] = idx % self.q
            idx //= self.q
        return out

    def element_stack(self, coeffs: np.ndarray) -> np.ndarray:
        """Matrices sum(c_i M_i) for each row of an (N, d) coefficient array."""
        F = self.field
        B = np.asarray(self.basis, dtype=np.int64).reshape(self.d, self.n * self.m)
        if F.is_prime:
            flat = (coeffs @ B) % F.p if F.p < (1 << 20) else _prime_combine(F, coeffs, B)
        else:
            flat = np.zeros((len(coeffs), self.n * self.m), dtype=np.int64)
            for i in range(self.d):
                flat = F.vadd(flat, F.vmul(coeffs[:, i:i + 1], B[i][None, :]))
        return flat.reshape(len(coeffs), self.n, self.m)

    def iter_chunks(self, cap: int = DEFAULT_CAP, chunk: int = CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield (coefficients, matrices) covering every element, in lexicographic order."""
        self.check_cap(cap)
        for start in range(0, self.size, chunk):
            c = self.coeff_tuples(start, min(start + chunk, self.size))
            yield c, self.element_stack(c)

    def elements(self, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], mx.Mat]]:
        for cs, mats in self.iter_chunks(cap):
            for c, M in zip(cs.tolist(), mats.tolist()):
                yield tuple(c), M

    def to_dict(self) -> dict:
        d = {"field": field_to_dict(self.field), "n": self.n}
        if self.m != self.n:
            d["m"] = self.m
        d["basis"] = [[list(r) for r in M] for M in self.basis]
        tags = {k: v for k, v in sorted(self.tags.items()) if isinstance(v, (int, str, bool))}
        if tags:
            d["tags"] = tags
        return d

    def describe(self) -> dict:
        return {"q": self.q, "n": self.n, "m": self.m, "d": self.d, **self.tags}

    def __repr__(self):
        name = self.tags.get("construction", "subspace")
        return f"<{name}: dim {self.d} in {self.n}x{self.m} over {self.field}>"


def _prime_combine(F, coeffs, B):
    out = np.zeros((len(coeffs), B.shape[1]), dtype=np.int64)
    for i in range(B.shape[0]):
        out = (out + coeffs[:, i:i + 1] * B[i][None, :] % F.p) % F.p
    return out


def subspace_make(field: Field, n: int, basis, m: int | None = None, tags: dict | None = None,
                  allow_rectangular: bool = True) -> MatrixSubspace:
    """Validated subspace; a dependent or mis-sized basis is an error."""
    m = n if m is None else m
    if not basis:
        raise SubspaceError("basis must be nonempty")
    if m != n and not allow_rectangular:
        raise SubspaceError("square matrices required")
    mats = []
    for M in basis:
        if len(M) != n or any(len(r) != m for r in M):
            raise SubspaceError(f"basis matrix is not {n}x{m}")
        mats.append(tuple(tuple(field.check(int(x)) for x in r) for r in M))
    flat = [mx.flatten(M) for M in mats]
    if mx.rank_of(flat, field) != len(flat):
        raise SubspaceError("basis is linearly dependent")
    return MatrixSubspace(field, n, m, tuple(mats), dict(tags or {}))


def subspace_from_dict(d: dict) -> MatrixSubspace:
    F = field_from_dict(d["field"])
    n = int(d["n"])
    m = int(d.get("m", n))
    return subspace_make(F, n, d["basis"], m, tags=d.get("tags"))


def span_of(field: Field, mats, n: int, m: int | None = None, tags=None) -> MatrixSubspace:
    """Subspace spanned by possibly dependent matrices (echelon basis)."""
    m = n if m is None else m
    R, piv = mx.rref(field, [mx.flatten(M) for M in mats])
    rows = [mx.unflatten(r, n, m) for r in R[:len(piv)]]
    return subspace_make(field, n, rows, m, tags)


# -- standard subspaces --------------------------------------------------------

def field_subspace(F: Field, t: int) -> MatrixSubspace:
    """Regular representation of F_{q^t} on its power basis: multiplication by 1, a, ..., a^(t-1)."""
    if t < 1:
        raise SubspaceError("degree must be at least 1")
    if t == 1:
        return subspace_make(F, 1, [[[1]]], tags={"construction": "field", "q": F.order, "t": 1})
    L = extension_of(F, t)
    basis = [L.mult_matrix(F.order ** j) for j in range(t)]
    return subspace_make(F, t, basis, tags={"construction": "field", "q": F.order, "t": t})


def full_space(F: Field, n: int, m: int | None = None) -> MatrixSubspace:
    m = n if m is None else m
    basis = []
    for i in range(n):
        for j in range(m):
            E = mx.zeros(n, m)
            E[i][j] = 1
            basis.append(E)
    return subspace_make(F, n, basis, m, tags={"construction": "full"})


def diagonal_subspace(F: Field, n: int) -> MatrixSubspace:
    basis = []
    for i in range(n):
        E = mx.zeros(n)
        E[i][i] = 1
        basis.append(E)
    return subspace_make(F, n, basis, tags={"construction": "diagonal"})


def scalar_subspace(F: Field, n: int) -> MatrixSubspace:
    return subspace_make(F, n, [mx.identity(n)], tags={"construction": "scalars"})


def generic_skew_subspace(F: Field, size: int) -> MatrixSubspace:
    """All skew-symmetric (zero-diagonal) matrices of the given size, one variable per upper entry."""
    basis = []
    for i in range(size):
        for j in range(i + 1, size):
            E = mx.zeros(size)
            E[i][j] = 1
            E[j][i] = F.neg(1)
            basis.append(E)
    return subspace_make(F, size, basis, tags={"construction": "skew"})


def random_subspace(F: Field, n: int, d: int, rng: random.Random, m: int | None = None) -> MatrixSubspace:
    m = n if m is None else m
    while True:
        mats = [[[rng.randrange(F.order) for _ in range(m)] for _ in range(n)] for _ in range(d)]
        if mx.rank_of([mx.flatten(M) for M in mats], F) == d:
            return subspace_make(F, n, mats, m, tags={"construction": "random"})


def random_skew(F: Field, size: int, rng: random.Random) -> mx.Mat:
    A = mx.zeros(size)
    for i in range(size):
        for j in range(i + 1, size):
            v = rng.randrange(F.order)
            A[i][j] = v
            A[j][i] = F.neg(v)
    return A


def is_skew(F: Field, A) -> bool:
    n = len(A)
    return all(A[i][i] == 0 for i in range(n)) and all(
        A[i][j] == F.neg(A[j][i]) for i in range(n) for j in range(i + 1, n))


# -- constructions ---------------------------------------------------------------

def ex1() -> MatrixSubspace:
    from .gf import prime_field

    F = prime_field(2)
    basis = [[[1, 0, 0], [0, 1, 0], [0, 0, 0]],
             [[0, 0, 0], [0, 1, 0], [0, 0, 1]]]
    return subspace_make(F, 3, basis, tags={"construction": "ex1"})


def ex2() -> MatrixSubspace:
    from .gf import prime_field

    F = prime_field(3)
    basis = [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
             [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]]
    return subspace_make(F, 4, basis, tags={"construction": "ex2"})


def primitive_cube_root(F: Field) -> int:
    """Smallest-encoding primitive cube root of unity in F (needs q = 1 mod 3)."""
    for w in range(2, F.order):
        if F.pow(w, 3) == 1 and w != 1:
            return w
    raise SubspaceError(f"{F} has no primitive cube root of unity")


def is_cube(F: Field, b: int) -> bool:
    return b == 0 or F.pow(b, (F.order - 1) // 3) == 1 if (F.order - 1) % 3 == 0 else True


def ex3(q: int = 7, b: int = 3) -> MatrixSubspace:
    """Span of A = diag(0, lam, -lam) (lam = w^2 - w), B = companion-type matrix of x^3 - b, C = B^2.

    A is the matrix of z -> z^(q^2) - z^q on the basis 1, a, a^2 with a^3 = b.
    """
    F = field_from_order(q)
    if (q - 1) % 3:
        raise SubspaceError(f"q = {q} is not 1 mod 3")
    F.check(b)
    if is_cube(F, b):
        raise SubspaceError(f"b = {b} is a cube in {F}")
    w = primitive_cube_root(F)
    lam = F.sub(F.mul(w, w), w)
    A = [[0, 0, 0], [0, lam, 0], [0, 0, F.neg(lam)]]
    B = [[0, 1, 0], [0, 0, 1], [b, 0, 0]]
    C = mx.mat_mul(F, B, B)
    return subspace_make(F, 3, [A, B, C], tags={"construction": "ex3", "q": q, "b": b, "omega": w})


def thm3_7(q: int, d: int) -> MatrixSubspace:
    """Block-diagonal diag(M_i, N_i): M_i a basis of the degree-d field subspace,
    N_i the first d power-basis matrices of the degree-(d+1) one."""
    F = field_from_order(q)
    if d < 1:
        raise SubspaceError("d must be positive")
    Ms = field_subspace(F, d).basis
    Ns = field_subspace(F, d + 1).basis[:d]
    basis = [mx.block_diag(M, N) for M, N in zip(Ms, Ns)]
    return subspace_make(F, 2 * d + 1, basis, tags={"construction": "thm3_7", "q": q, "d": d})


def thm4_1(q: int) -> MatrixSubspace:
    """Maps z -> a(s^2 - s)(z) + b z on F_{q^3} (s the q-Frobenius, a in F_q, b of trace zero).

    Basis: the matrix of s^2 - s, then multiplication by a basis of the trace-zero hyperplane.
    """
    F = field_from_order(q)
    L = extension_of(F, 3)
    tau = L.linear_map_matrix(lambda z: L.sub(L.frobenius(z, 2), L.frobenius(z, 1)))
    basis = [tau] + [L.mult_matrix(c) for c in L.trace_zero_basis()]
    return subspace_make(F, 3, basis, tags={"construction": "thm4_1", "q": q})


def thm4_4(q: int) -> MatrixSubspace:
    """Maps z -> a s^2(z) + (a + c) z on F_{q^4}, characteristic 2, a in F_q, c of trace zero.

    Basis: the map for (a, c) = (1, 0), then multiplication by a trace-zero basis.
    """
    F = field_from_order(q)
    if F.p != 2:
        raise SubspaceError("this construction needs characteristic 2")
    L = extension_of(F, 4)
    T = L.linear_map_matrix(lambda z: L.add(L.frobenius(z, 2), z))
    basis = [T] + [L.mult_matrix(c) for c in L.trace_zero_basis()]
    return subspace_make(F, 4, basis, tags={"construction": "thm4_4", "q": q})


def field_reduction(sub: MatrixSubspace, base: Field) -> MatrixSubspace:
    """View a subspace of M_m(F_{q^s}) as a subspace of M_{ms}(F_q).

    Each basis matrix M and each power a^j (j < s) of the power-basis generator
    give the matrix of a^j M acting on (F_{q^s})^m as an F_q-space.
    Multi-level towers are reduced one level at a time.
    """
    L = sub.field
    if L == base:
        return sub
    if not L.has_subfield(base):
        raise SubspaceError(f"{base} is not a subfield of {L}")
    K = L.base
    s = L.s
    alpha = K.order
    blown = []
    for M in sub.basis:
        for j in range(s):
            aj = L.pow(alpha, j)
            big = mx.zeros(sub.n * s, sub.m * s)
            for r in range(sub.n):
                for c in range(sub.m):
                    blk = L.mult_matrix(L.mul(aj, M[r][c]))
                    for u in range(s):
                        big[r * s + u][c * s:(c + 1) * s] = blk[u]
            blown.append(big)
    tags = dict(sub.tags)
    tags["reduced_from"] = L.order
    out = subspace_make(K, sub.n * s, blown, sub.m * s, tags=tags)
    return field_reduction(out, base)


def reduce_construction(q: int, m: int) -> MatrixSubspace:
    """Field reduction of the construction over F_{q^m} down to F_q."""
    big = thm4_1(q ** m)
    base = next(f for f in big.field.tower() if f.order == q)
    sub = field_reduction(big, base)
    sub.tags.update({"construction": "reduce", "q": q, "m": m})
    return sub


# -- transformations -------------------------------------------------------------

def equivalence_transform(C, sub: MatrixSubspace, D) -> MatrixSubspace:
    F = sub.field
    if not mx.is_invertible(F, C) or not mx.is_invertible(F, D):
        raise SubspaceError("C and D must be invertible")
    basis = [mx.mat_mul(F, mx.mat_mul(F, C, M), D) for M in sub.basis]
    return subspace_make(F, sub.n, basis, sub.m, tags=dict(sub.tags))


def translate_to_identity(A, sub: MatrixSubspace) -> MatrixSubspace:
    """The subspace A^{-1} sub, which contains I."""
    F = sub.field
    if not sub.contains(A):
        raise SubspaceError("A is not an element of the subspace")
    if not mx.is_invertible(F, A):
        raise SubspaceError("A is singular")
    Ai = mx.inverse(F, A)
    basis = [mx.mat_mul(F, Ai, M) for M in sub.basis]
    return subspace_make(F, sub.n, basis, sub.m, tags=dict(sub.tags))


def conjugate(F: Field, A, sub: MatrixSubspace) -> MatrixSubspace:
    Ai = mx.inverse(F, A)
    basis = [mx.mat_mul(F, mx.mat_mul(F, A, M), Ai) for M in sub.basis]
    return subspace_make(F, sub.n, basis, sub.m)


def all_singular(sub: MatrixSubspace, cap: int = DEFAULT_CAP) -> bool:
    F = sub.field
    for _, mats in sub.iter_chunks(cap):
        if mx.batch_det(F, mats).any():
            return False
    return True


def all_invertible(sub: MatrixSubspace, cap: int = DEFAULT_CAP) -> bool:
    """Every nonzero element has nonzero determinant."""
    F = sub.field
    for cs, mats in sub.iter_chunks(cap):
        dets = mx.batch_det(F, mats)
        nonzero = cs.any(axis=1)
        if ((dets == 0) & nonzero).any():
            return False
    return True


def _coset_ok(sub: MatrixSubspace, X, singular: bool, cap: int) -> bool:
    """True if X + S keeps the property for every S in sub (scaling covers the rest)."""
    F = sub.field
    Xa = np.asarray(X, dtype=np.int64)
    for _, mats in sub.iter_chunks(cap):
        dets = mx.batch_det(F, F.vadd(mats, Xa[None]))
        if singular and dets.any():
            return False
        if not singular and (dets == 0).any():
            return False
    return True


def candidate_pool(F: Field, n: int, rng: random.Random, count: int, units_first: bool = True):
    """Unit matrices E_ij in row-major order, then seeded random matrices."""
    produced = 0
    if units_first:
        for i in range(n):
            for j in range(n):
                if produced >= count:
                    return
                E = mx.zeros(n)
                E[i][j] = 1
                produced += 1
                yield E
    while produced < count:
        produced += 1
        yield [[rng.randrange(F.order) for _ in range(n)] for _ in range(n)]


def extend_singular(sub: MatrixSubspace, pool=None, budget: int = 1000, seed: int = 0,
                    cap: int = DEFAULT_CAP) -> MatrixSubspace:
    """Greedily enlarge an all-singular subspace while every element stays singular."""
    if not sub.square:
        raise SubspaceError("square matrices required")
    sub.check_cap(cap)
    if not all_singular(sub, cap):
        raise SubspaceError("input has an element of nonzero determinant")
    if pool is None:
        pool = candidate_pool(sub.field, sub.n, random.Random(seed), budget)
    cur = sub
    for steps, X in enumerate(pool):
        if steps >= budget:
            break
        if cur.contains(X):
            continue
        if cur.size * cur.q > cap:
            break
        if _coset_ok(cur, X, True, cap):
            cur = subspace_make(cur.field, cur.n, list(cur.basis) + [X], tags=dict(sub.tags))
    return cur


def find_invertible_extension(sub: MatrixSubspace, budget: int = 1000, seed: int = 0,
                              cap: int = DEFAULT_CAP):
    """Search seeded candidates X with sub + span(X) still free of nonzero singular elements.

    Returns (X or None, number of candidates tried).
    """
    rng = random.Random(seed)
    F = sub.field
    tried = 0
    for X in candidate_pool(F, sub.n, rng, budget, units_first=False):
        tried += 1
        if sub.contains(X):
            continue
        if _coset_ok(sub, X, False, cap):
            return X, tried
    return None, tried
