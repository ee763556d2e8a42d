"""Univariate and sparse multivariate polynomials over a :class:`~detspace.gf.Field`.

Coefficients are int encodings.  Because a base field element has the same
encoding in every extension of it, changing the coefficient field of a
polynomial to an extension (``.over(ext)``) does not touch the coefficients.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from sympy import factorint

ZERO_DEGREE = "zero"


class PolyError(ValueError):
    """Arity, field or argument mismatch."""


# -- univariate --------------------------------------------------------------

def _strip(cs: Sequence[int]) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class UniPoly:
    """Univariate polynomial with coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable[int] = ()):
        self.field = field
        self.coeffs = _strip(int(c) for c in coeffs)

    @classmethod
    def x(cls, field) -> UniPoly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field, c: int) -> UniPoly:
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def over(self, ext) -> UniPoly:
        return UniPoly(ext, self.coeffs)

    def _check(self, other: UniPoly):
        if other.field != self.field:
            raise PolyError(f"field mismatch {self.field} vs {other.field}")

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other: UniPoly) -> UniPoly:
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(F, [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> UniPoly:
        return UniPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: UniPoly) -> UniPoly:
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return UniPoly(F, out)

    def scale(self, c: int) -> UniPoly:
        return UniPoly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lead))

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        d = other.degree
        inv = F.inv(other.lead)
        q = [0] * max(len(r) - d, 0)
        b = other.coeffs
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c == 0:
                continue
            f = F.mul(c, inv)
            q[i - d] = f
            for j in range(d + 1):
                if b[j]:
                    r[i - d + j] = F.sub(r[i - d + j], F.mul(f, b[j]))
        return UniPoly(F, q), UniPoly(F, r[:d])

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[0]

    def __call__(self, x: int, field=None) -> int:
        """Horner evaluation, optionally in an extension field."""
        F = field or self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> UniPoly:
        F = self.field
        return UniPoly(F, [F.mul(F.scalar(i), c) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, mod: UniPoly) -> UniPoly:
        result = UniPoly(self.field, (1,)) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def render(self, var: str = "x") -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"UniPoly({self.field}, {self.render()})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _x_power_chain(f: UniPoly, q: int, steps: int) -> list[UniPoly]:
    """[x^(q^1), ..., x^(q^steps)] modulo f."""
    out = []
    cur = UniPoly.x(f.field) % f
    for _ in range(steps):
        cur = cur.powmod(q, f)
        out.append(cur)
    return out


def uni_irreducible(f: UniPoly) -> bool:
    """Rabin's test over f's coefficient field."""
    m = f.degree
    if m < 1:
        raise PolyError("irreducibility of a constant is undefined")
    if m == 1:
        return True
    f = f.monic()
    x = UniPoly.x(f.field)
    q = f.field.order
    chain = _x_power_chain(f, q, m)
    if chain[m - 1] != x % f:
        return False
    for l in factorint(m):
        h = chain[m // l - 1] - x
        if uni_gcd(f, h).degree != 0:
            return False
    return True


def _multiplicity(f: UniPoly, root: int) -> int:
    lin = UniPoly(f.field, (f.field.neg(root), 1))
    k = 0
    while not f.is_zero():
        q, r = f.divmod(lin)
        if not r.is_zero():
            break
        f = q
        k += 1
    return k


def _split_linear(g: UniPoly, rng: random.Random) -> list[int]:
    """Roots of a monic squarefree g that splits into distinct linear factors."""
    F = g.field
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [F.neg(g.coeffs[0])]
    Q = F.order
    while True:
        a = rng.randrange(Q)
        if F.p == 2:
            # trace map t + t^2 + ... + t^(2^(k-1)) with t = a*x
            t = UniPoly(F, (0, a)) % g
            acc = t
            for _ in range(F.k - 1):
                t = (t * t) % g
                acc = acc + t
            h = acc
        else:
            h = UniPoly(F, (a, 1)).powmod((Q - 1) // 2, g) - UniPoly(F, (1,))
        d = uni_gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


def uni_roots_in(f: UniPoly, ext=None, cap: int = 4096, seed: int = 0,
                 allow_random: bool = True) -> list[tuple[int, int]]:
    """Roots of f lying in ``ext`` (default: f's own field) with multiplicities, sorted.

    Exhaustive evaluation when |ext| <= cap; otherwise gcd with x^|ext| - x
    followed by seeded equal-degree splitting.
    """
    if f.degree < 1:
        raise PolyError("root finding needs degree >= 1")
    ext = ext or f.field
    if not ext.has_subfield(f.field):
        raise PolyError(f"{ext} is not an extension of {f.field}")
    g = f.over(ext)
    if ext.order <= cap:
        roots = [e for e in ext.elements() if g(e) == 0]
    else:
        if not allow_random:
            raise PolyError(f"|ext| = {ext.order} exceeds the exhaustive cap {cap}")
        gm = g.monic()
        xq = UniPoly.x(ext).powmod(ext.order, gm)
        lin = uni_gcd(gm, xq - UniPoly.x(ext))
        roots = _split_linear(lin, random.Random(seed))
    return sorted((r, _multiplicity(g, r)) for r in roots)


# -- multivariate ------------------------------------------------------------

def _grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class MultiPoly:
    """Sparse polynomial in d variables: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise PolyError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, field, nvars: int) -> MultiPoly:
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars: int, c: int) -> MultiPoly:
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars: int, i: int) -> MultiPoly:
        if not 0 <= i < nvars:
            raise PolyError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, field, coeffs: Sequence[int], const: int = 0) -> MultiPoly:
        """const + sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, terms)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: MultiPoly):
        if not isinstance(other, MultiPoly):
            raise PolyError("expected a MultiPoly")
        if other.field != self.field:
            raise PolyError(f"field mismatch {self.field} vs {other.field}")
        if other.nvars != self.nvars:
            raise PolyError(f"arity mismatch {self.nvars} vs {other.nvars}")

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def coefficient(self, e: Sequence[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def variables(self) -> list[int]:
        return sorted({i for e in self.terms for i, a in enumerate(e) if a})

    # arithmetic
    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return MultiPoly(F, self.nvars, out)

    def __neg__(self) -> MultiPoly:
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return MultiPoly(F, self.nvars, out)

    def scale(self, c: int) -> MultiPoly:
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> MultiPoly:
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def over(self, ext) -> MultiPoly:
        if not ext.has_subfield(self.field):
            raise PolyError(f"{ext} is not an extension of {self.field}")
        return MultiPoly(ext, self.nvars, self.terms)

    def frobenius(self, i: int = 1) -> MultiPoly:
        """Apply the relative Frobenius of the coefficient field to every coefficient."""
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.frobenius(c, i) for e, c in self.terms.items()})

    # evaluation and substitution
    def __call__(self, point: Sequence[int], field=None) -> int:
        return self.eval(point, field)

    def eval(self, point: Sequence[int], field=None) -> int:
        F = field or self.field
        if len(point) != self.nvars:
            raise PolyError(f"point has {len(point)} entries, expected {self.nvars}")
        if field is not None and not field.has_subfield(self.field):
            raise PolyError(f"{field} is not an extension of {self.field}")
        for v in point:
            F.check(v)
        powers: list[dict[int, int]] = [dict() for _ in point]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for i, a in enumerate(e):
                if a:
                    pw = powers[i].get(a)
                    if pw is None:
                        pw = powers[i][a] = F.pow(point[i], a)
                    t = F.mul(t, pw)
                    if t == 0:
                        break
            acc = F.add(acc, t)
        return acc

    def substitute(self, forms: Sequence[MultiPoly]) -> MultiPoly:
        """Replace x_i by forms[i]; all forms share one variable count."""
        if len(forms) != self.nvars:
            raise PolyError(f"need {self.nvars} substitution forms, got {len(forms)}")
        if not forms:
            return self
        m = forms[0].nvars
        F = self.field
        for g in forms:
            if g.nvars != m or g.field != F:
                raise PolyError("substitution forms must share field and arity")
        cache: list[dict[int, MultiPoly]] = [dict() for _ in forms]

        def power(i, a):
            if a not in cache[i]:
                cache[i][a] = forms[i] ** a
            return cache[i][a]

        out = MultiPoly.zero(F, m)
        for e, c in self.terms.items():
            t = MultiPoly.constant(F, m, c)
            for i, a in enumerate(e):
                if a:
                    t = t * power(i, a)
            out = out + t
        return out

    def restrict_pair(self, i: int, j: int) -> MultiPoly:
        """Binary form in (x_i, x_j) obtained by setting all other variables to 0."""
        if i == j:
            raise PolyError("restrict_pair needs two distinct variables")
        for v in (i, j):
            if not 0 <= v < self.nvars:
                raise PolyError(f"variable index {v} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            if all(a == 0 for t, a in enumerate(e) if t not in (i, j)):
                out[(e[i], e[j])] = c
        return MultiPoly(self.field, 2, out)

    def to_uni(self, i: int) -> UniPoly:
        """View as a univariate polynomial in x_i (other variables must be absent)."""
        cs: dict[int, int] = {}
        for e, c in self.terms.items():
            if any(a for t, a in enumerate(e) if t != i):
                raise PolyError("polynomial involves other variables")
            cs[e[i]] = c
        top = max(cs, default=-1)
        return UniPoly(self.field, [cs.get(k, 0) for k in range(top + 1)])

    def dehomogenize(self, i: int) -> UniPoly:
        """For a binary form in (x_0, x_1): set x_i = 1 and return a polynomial in the other."""
        if self.nvars != 2:
            raise PolyError("dehomogenize expects a binary form")
        o = 1 - i
        F = self.field
        cs: dict[int, int] = {}
        for e, c in self.terms.items():
            cs[e[o]] = F.add(cs.get(e[o], 0), c)
        top = max(cs, default=-1)
        return UniPoly(F, [cs.get(k, 0) for k in range(top + 1)])

    def is_homogeneous(self):
        """Total degree if homogeneous, ``ZERO_DEGREE`` for the zero polynomial, else None."""
        if not self.terms:
            return ZERO_DEGREE
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def render(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.field}, {self.render()})"

    def to_dict(self) -> dict:
        return {"nvars": self.nvars,
                "terms": [[list(e), c] for e, c in self.sorted_terms()]}


def multi_sqrt(P: MultiPoly) -> MultiPoly | None:
    """g with g*g == P over P's field, or None.

    Characteristic 2: every exponent must be even; halve them and take square
    roots of coefficients.  Odd characteristic: peel terms of g off in
    graded-lex order from the leading term downward.  The returned root has
    a leading coefficient equal to the smaller encoding of the two choices.
    """
    F = P.field
    n = P.nvars
    if P.is_zero():
        return MultiPoly.zero(F, n)
    if F.p == 2:
        out = {}
        for e, c in P.terms.items():
            if any(a % 2 for a in e):
                return None
            out[tuple(a // 2 for a in e)] = F.sqrt(c)
        g = MultiPoly(F, n, out)
        return g if g * g == P else None
    e0, c0 = P.leading_term()
    if any(a % 2 for a in e0):
        return None
    r0 = F.sqrt(c0)
    if r0 is None:
        return None
    h0 = tuple(a // 2 for a in e0)
    g = MultiPoly(F, n, {h0: r0})
    two_lead_inv = F.inv(F.add(r0, r0))
    R = P - g * g
    while not R.is_zero():
        e, c = R.leading_term()
        t = tuple(a - b for a, b in zip(e, h0))
        if any(a < 0 for a in t) or _grlex_key(t) >= _grlex_key(h0):
            return None
        term = MultiPoly(F, n, {t: F.mul(c, two_lead_inv)})
        # (g + term)^2 = g^2 + 2*g*term + term^2
        R = R - (g * term).scale(F.scalar(2)) - term * term
        g = g + term
    return g


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, graded-lex descending."""
    out = [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) == degree]
    return sorted(out, reverse=True)


def multi_divide(P: MultiPoly, D: MultiPoly) -> MultiPoly | None:
    """Exact quotient P / D, or None when D does not divide P."""
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F, n = P.field, P.nvars
    ed, cd = D.leading_term()
    inv = F.inv(cd)
    Q = MultiPoly.zero(F, n)
    R = P
    while not R.is_zero():
        e, c = R.leading_term()
        t = tuple(a - b for a, b in zip(e, ed))
        if any(a < 0 for a in t):
            return None
        term = MultiPoly(F, n, {t: F.mul(c, inv)})
        Q = Q + term
        R = R - term * D
    return Q
