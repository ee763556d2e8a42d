"""Dense linear algebra over a :class:`~detspace.gf.Field`.

Matrices are lists of rows of int encodings.  The batch helpers at the bottom
work on numpy stacks of shape (N, n, m) and are what the enumeration code uses.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

Mat = list[list[int]]


def zeros(n: int, m: int | None = None) -> Mat:
    return [[0] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy(A: Sequence[Sequence[int]]) -> Mat:
    return [list(r) for r in A]


def shape(A) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def mat_add(F, A, B) -> Mat:
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F, A, B) -> Mat:
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F, c: int, A) -> Mat:
    return [[F.mul(c, a) for a in r] for r in A]


def mat_mul(F, A, B) -> Mat:
    n, m = shape(A)
    m2, l = shape(B)
    if m != m2:
        raise ValueError(f"shape mismatch {n}x{m} * {m2}x{l}")
    out = zeros(n, l)
    for i in range(n):
        row = A[i]
        acc = out[i]
        for t in range(m):
            a = row[t]
            if a == 0:
                continue
            brow = B[t]
            for j in range(l):
                b = brow[j]
                if b:
                    acc[j] = F.add(acc[j], F.mul(a, b))
    return out


def mat_vec(F, A, v) -> list[int]:
    return [F.sum(F.mul(a, x) for a, x in zip(r, v)) for r in A]


def transpose(A) -> Mat:
    return [list(c) for c in zip(*A)] if A else []


def lin_comb(F, coeffs: Sequence[int], mats) -> Mat:
    """sum(c_i * M_i)."""
    n, m = shape(mats[0])
    out = zeros(n, m)
    for c, M in zip(coeffs, mats):
        if c == 0:
            continue
        for i in range(n):
            oi, Mi = out[i], M[i]
            for j in range(m):
                if Mi[j]:
                    oi[j] = F.add(oi[j], F.mul(c, Mi[j]))
    return out


def is_zero(A) -> bool:
    return all(x == 0 for r in A for x in r)


def rref(F, A) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = copy(A)
    rows, cols = shape(R)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank_of(A, F) -> int:
    if not A:
        return 0
    return len(rref(F, A)[1])


def nullspace(F, A) -> Mat:
    """Basis (as vectors) of {v : A v = 0}."""
    n, m = shape(A)
    R, piv = rref(F, A)
    free = [c for c in range(m) if c not in piv]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def det(F, A) -> int:
    """Determinant by Gaussian elimination."""
    M = copy(A)
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def inverse(F, A) -> Mat:
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n))]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def is_invertible(F, A) -> bool:
    return det(F, A) != 0


def flatten(A) -> list[int]:
    return [x for r in A for x in r]


def unflatten(v: Sequence[int], n: int, m: int | None = None) -> Mat:
    m = n if m is None else m
    return [list(v[i * m:(i + 1) * m]) for i in range(n)]


def block_diag(*blocks) -> Mat:
    n = sum(len(b) for b in blocks)
    m = sum(len(b[0]) for b in blocks)
    out = zeros(n, m)
    r = c = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[r + i][c:c + len(row)] = row
        r += len(b)
        c += len(b[0])
    return out


def companion(F, coeffs: Sequence[int]) -> Mat:
    """Companion matrix of the monic polynomial with low-to-high ``coeffs``.

    Column j is the coordinate vector of x * x^j modulo the polynomial, so the
    matrix represents multiplication by x on the power basis.
    """
    d = len(coeffs) - 1
    C = zeros(d)
    for i in range(1, d):
        C[i][i - 1] = 1
    for i in range(d):
        C[i][d - 1] = F.neg(coeffs[i])
    return C


# -- batch operations on numpy stacks ------------------------------------------

def batch_rank(F, stack: np.ndarray) -> np.ndarray:
    """Ranks of every matrix in a (N, n, m) int64 stack."""
    A = np.array(stack, dtype=np.int64, copy=True)
    N, n, m = A.shape
    rank = np.zeros(N, dtype=np.int64)
    idx = np.arange(N)
    for c in range(m):
        if n == 0:
            break
        # rows >= rank that still have a nonzero entry in column c
        rows = np.arange(n)[None, :]
        cand = (A[:, :, c] != 0) & (rows >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = idx[has]
        pr = piv[has]
        rk = rank[has]
        ok = rk < n
        sel, pr, rk = sel[ok], pr[ok], rk[ok]
        # swap pivot row into position rk
        prow = A[sel, pr, :].copy()
        A[sel, pr, :] = A[sel, rk, :]
        A[sel, rk, :] = prow
        inv = F.vinv(prow[:, c])
        prow = F.vmul(prow, inv[:, None])
        A[sel, rk, :] = prow
        sub = A[sel]
        f = sub[:, :, c].copy()
        f[np.arange(len(sel)), rk] = 0
        sub = F.vsub(sub, F.vmul(f[:, :, None], prow[:, None, :]))
        A[sel] = sub
        rank[sel] += 1
    return rank


def batch_det(F, stack: np.ndarray) -> np.ndarray:
    """Determinants of every square matrix in a (N, n, n) stack."""
    A = np.array(stack, dtype=np.int64, copy=True)
    N, n, _ = A.shape
    d = np.ones(N, dtype=np.int64)
    alive = np.ones(N, dtype=bool)
    ar = np.arange(N)
    for c in range(n):
        col = A[:, c:, c] != 0
        has = col.any(axis=1)
        alive &= has
        piv = np.argmax(col, axis=1) + c
        swap = (piv != c) & alive
        if swap.any():
            s = ar[swap]
            rows_c = A[s, c, :].copy()
            A[s, c, :] = A[s, piv[swap], :]
            A[s, piv[swap], :] = rows_c
            d[swap] = F.vneg(d[swap])
        pv = np.where(alive, A[:, c, c], 1)
        d = F.vmul(d, pv)
        if c + 1 < n:
            inv = F.vinv(pv)
            f = F.vmul(A[:, c + 1:, c], inv[:, None])
            A[:, c + 1:, :] = F.vsub(A[:, c + 1:, :], F.vmul(f[:, :, None], A[:, None, c, :]))
    return np.where(alive, d, 0)
