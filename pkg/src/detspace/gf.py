"""Finite fields F_{p^k} and towers F_{q^s} built over them.

Elements are plain Python ints.  In a field with base B and relative degree s,
the element sum(c_i * a^i) (a the class of x modulo the defining polynomial)
is encoded as sum(c_i * |B|**i), where each c_i is itself the encoding of a
base element.  Two consequences drive the rest of the package:

* a base element embeds into the extension as the *same* int, so polynomials
  over F_q can be evaluated in F_{q^s} without conversion;
* every field of a tower shares the p-adic digit layout, so addition is
  digit-wise mod p at every level (XOR in characteristic 2).

Prime fields use modular arithmetic directly.  Other fields up to
``TABLE_LIMIT`` elements get exp/log/Zech tables on first use; larger ones fall
back to polynomial arithmetic on coordinate vectors.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime

TABLE_LIMIT = 1 << 18
MAX_ORDER = 1 << 31


class FieldError(ValueError):
    """Invalid field construction or mixed-field arithmetic."""


class Field:
    """A finite field, either prime or a simple extension of ``base``.

    Use :func:`field_make` and :func:`extension_of` rather than calling this
    directly; they validate the modulus and pick deterministic defaults.
    """

    def __init__(self, p: int, base: Field | None = None,
                 modulus: Sequence[int] | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.s = 1
            self.k = 1
            self.order = p
            self.modulus: tuple[int, ...] = (0, 1)
            self.key: tuple = (p,)
        else:
            self.modulus = tuple(int(c) for c in modulus)
            self.s = len(self.modulus) - 1
            self.k = base.k * self.s
            self.order = base.order ** self.s
            self.key = base.key + (self.modulus,)
        if self.order > MAX_ORDER:
            raise FieldError(f"field order {self.order} exceeds 2^31")
        self._tables = None
        self._np_tables = None

    # -- identity -------------------------------------------------------
    @property
    def is_prime(self) -> bool:
        return self.base is None

    @property
    def char(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        if self.base.is_prime:
            return f"GF({self.p}^{self.s})"
        return f"GF({self.base.order}^{self.s})"

    def tower(self) -> list[Field]:
        """Fields from the prime field up to self, inclusive."""
        chain = []
        f = self
        while f is not None:
            chain.append(f)
            f = f.base
        return chain[::-1]

    def has_subfield(self, other: Field) -> bool:
        """True if ``other`` is a level of this field's tower."""
        return any(f == other for f in self.tower())

    def degree_over(self, sub: Field) -> int:
        if not self.has_subfield(sub):
            raise FieldError(f"{sub} is not in the tower of {self}")
        return self.k // sub.k

    # -- element helpers --------------------------------------------------
    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element encoding of {self}")
        return a

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value % self.order if value < 0 else self.check(value))

    def coords(self, a: int) -> list[int]:
        """Coordinates of ``a`` over the base (length s, lowest power first)."""
        if self.base is None:
            return [a]
        b = self.base.order
        out = []
        for _ in range(self.s):
            a, r = divmod(a, b)
            out.append(r)
        return out

    def from_coords(self, cs: Sequence[int]) -> int:
        if self.base is None:
            return cs[0] % self.p
        b = self.base.order
        v = 0
        for c in reversed(cs):
            v = v * b + c
        return v

    @property
    def generator(self) -> int:
        """The class of x, i.e. the power-basis element alpha (encoding |base|)."""
        if self.base is None:
            raise FieldError("a prime field has no power-basis generator")
        return self.base.order if self.s > 1 else 0

    # -- scalar arithmetic ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.base is None:
            s = a + b
            return s - self.p if s >= self.p else s
        if self.p == 2:
            return a ^ b
        t = self._tables
        if t is None and self.order <= TABLE_LIMIT:
            t = self._build_tables()
        if t is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            exp, log, zech, m = t
            la = log[a]
            z = zech[(log[b] - la) % m]
            return 0 if z < 0 else exp[la + z]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._map_digits(a, lambda c: (-c) % self.p)

    def sub(self, a: int, b: int) -> int:
        if self.base is None:
            s = a - b
            return s + self.p if s < 0 else s
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._tables
        if t is None and self.order <= TABLE_LIMIT:
            t = self._build_tables()
        if t is not None:
            exp, log = t[0], t[1]
            return exp[log[a] + log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.base is None:
            return pow(a, -1, self.p)
        t = self._tables
        if t is None and self.order <= TABLE_LIMIT:
            t = self._build_tables()
        if t is not None:
            exp, log, _, m = t
            return exp[(m - log[a]) % m]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.base is None:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        t = self._tables
        if t is None and self.order <= TABLE_LIMIT:
            t = self._build_tables()
        if t is not None:
            exp, log, _, m = t
            return exp[(log[a] * e) % m]
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def scalar(self, n: int) -> int:
        """The image of the integer n in the prime subfield."""
        return n % self.p

    def sum(self, values: Iterable[int]) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def prod(self, values: Iterable[int]) -> int:
        acc = 1
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    def squares(self) -> frozenset[int]:
        return frozenset(self.mul(a, a) for a in self.elements())

    def sqrt(self, a: int) -> int | None:
        """A square root of ``a`` (the smaller encoding of the pair), or None."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.order // 2)
        if not self.is_square(a):
            return None
        r = self._tonelli(a)
        return min(r, self.neg(r))

    def _tonelli(self, a: int) -> int:
        q = self.order - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = next(c for c in range(2, self.order) if not self.is_square(c))
        m, c, t, r = s, self.pow(z, q), self.pow(a, q), self.pow(a, (q + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (m - i - 1))
            m, c = i, self.mul(b, b)
            t, r = self.mul(t, c), self.mul(r, b)
        return r

    # -- relative Frobenius, norm, trace ----------------------------------
    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(|base|^i); the identity on a prime field."""
        if self.base is None:
            return a
        i %= self.s
        return self.pow(a, self.base.order ** i) if i else a

    def conjugates(self, a: int) -> list[int]:
        out = [a]
        for _ in range(self.s - 1):
            out.append(self.frobenius(out[-1]))
        return out

    def norm(self, a: int) -> int:
        return self.prod(self.conjugates(a))

    def trace(self, a: int) -> int:
        return self.sum(self.conjugates(a))

    def norm_trace(self, a: int) -> tuple[int, int]:
        conj = self.conjugates(a)
        n, t = self.prod(conj), self.sum(conj)
        if self.base is not None and (n >= self.base.order or t >= self.base.order):
            raise AssertionError("norm/trace left the base field")
        return n, t

    def trace_zero_basis(self) -> list[int]:
        """Deterministic base-basis of the trace-zero hyperplane (smallest encodings first)."""
        from .matrix import rank_of

        basis: list[int] = []
        rows: list[list[int]] = []
        for a in self.elements():
            if a == 0 or self.trace(a) != 0:
                continue
            cand = rows + [self.coords(a)]
            if rank_of(cand, self.base) == len(cand):
                rows = cand
                basis.append(a)
                if len(basis) == self.s - 1:
                    break
        return basis

    def mult_matrix(self, c: int) -> list[list[int]]:
        """Matrix over the base of z -> c*z on the power basis (columns = images)."""
        return self.linear_map_matrix(lambda z: self.mul(c, z))

    def linear_map_matrix(self, f) -> list[list[int]]:
        """Matrix over the base of a base-linear map f: self -> self on the power basis."""
        if self.base is None:
            return [[f(1)]]
        b = self.base.order
        cols = [self.coords(f(b ** j)) for j in range(self.s)]
        return [[cols[j][i] for j in range(self.s)] for i in range(self.s)]

    def primitive_element(self) -> int:
        if self.order == 2:
            return 1
        if self._tables is None and self.base is not None and self.order <= TABLE_LIMIT:
            self._build_tables()
        if self._tables is not None:
            return self._tables[0][1]
        return self._find_primitive(self.pow)

    def _find_primitive(self, pw) -> int:
        m = self.order - 1
        primes = list(factorint(m))
        for g in range(2, self.order):
            if all(pw(g, m // l) != 1 for l in primes):
                return g
        raise AssertionError("no primitive element found")

    # -- slow paths and tables -------------------------------------------
    def _map_digits(self, a: int, f) -> int:
        p, out, place = self.p, 0, 1
        while a:
            a, r = divmod(a, p)
            out += f(r) * place
            place *= p
        return out

    def _add_digits(self, a: int, b: int) -> int:
        p, out, place = self.p, 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * place
            place *= p
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        B = self.base
        ca, cb = self.coords(a), self.coords(b)
        s = self.s
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for j, y in enumerate(cb):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        mod = self.modulus
        for d in range(2 * s - 2, s - 1, -1):
            c = prod[d]
            if c:
                for i in range(s):
                    if mod[i]:
                        prod[d - s + i] = B.sub(prod[d - s + i], B.mul(c, mod[i]))
                prod[d] = 0
        return self.from_coords(prod[:s])

    def _build_tables(self):
        Q = self.order
        m = Q - 1

        def slow_pow(a, e):
            r = 1
            while e:
                if e & 1:
                    r = self._mul_slow(r, a)
                a = self._mul_slow(a, a)
                e >>= 1
            return r

        g = 1 if Q == 2 else self._find_primitive(slow_pow)
        exp = [0] * (2 * m)
        log = [0] * Q
        x = 1
        for i in range(m):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        exp[m:] = exp[:m]
        zech = [-1] * m
        for t in range(m):
            v = (exp[t] ^ 1) if self.p == 2 else self._add_digits(exp[t], 1)
            zech[t] = -1 if v == 0 else log[v]
        self._tables = (exp, log, zech, m)
        return self._tables

    # -- numpy vector arithmetic (elementwise, broadcasting) ---------------
    def _np(self):
        if self._np_tables is None:
            exp, log, zech, m = self._tables or self._build_tables()
            self._np_tables = (np.asarray(exp, dtype=np.int64), np.asarray(log, dtype=np.int64),
                               np.asarray(zech, dtype=np.int64), m)
        return self._np_tables

    def _vector_ok(self) -> bool:
        return self.base is None or self.order <= TABLE_LIMIT

    def vadd(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if not self._vector_ok():
            return np.vectorize(self.add, otypes=[np.int64])(a, b)
        exp, log, zech, m = self._np()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        la, lb = log[a], log[b]
        z = zech[(lb - la) % m]
        out = np.where(z < 0, 0, exp[la + np.maximum(z, 0)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a):
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a
        return np.vectorize(self.neg, otypes=[np.int64])(a)

    def vsub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        if not self._vector_ok():
            return np.vectorize(self.mul, otypes=[np.int64])(a, b)
        exp, log, _, _ = self._np()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        if self.base is None:
            if self.p > TABLE_LIMIT:
                return np.vectorize(lambda x: pow(int(x), -1, self.p) if x else 0,
                                    otypes=[np.int64])(a)
            if self._np_tables is None:
                self._np_tables = np.array([0] + [pow(x, -1, self.p) for x in range(1, self.p)],
                                           dtype=np.int64)
            return self._np_tables[a]
        if not self._vector_ok():
            return np.vectorize(self.inv, otypes=[np.int64])(a)
        exp, log, _, m = self._np()
        return exp[(m - log[a]) % m]


class FieldElement:
    """A field element with operator overloading, for interactive use."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    @property
    def coeffs(self) -> list[int]:
        """Coordinates over the prime field (length k)."""
        p, v, out = self.field.p, self.value, []
        for _ in range(self.field.k):
            v, r = divmod(v, p)
            out.append(r)
        return out

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field}({self.value})"


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> Field:
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    return Field(p)


def _monic_candidates(base: Field, degree: int):
    q = base.order
    for c in range(q ** degree):
        coeffs = []
        for _ in range(degree):
            c, r = divmod(c, q)
            coeffs.append(r)
        yield tuple(coeffs) + (1,)


def smallest_irreducible(base: Field, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of ``degree`` over ``base``."""
    from .polyring import UniPoly, uni_irreducible

    for coeffs in _monic_candidates(base, degree):
        if coeffs[0] == 0 and degree > 1:
            continue
        if uni_irreducible(UniPoly(base, coeffs)):
            return coeffs
    raise AssertionError(f"no irreducible polynomial of degree {degree} over {base}")


def _validated(base: Field, degree: int, modulus) -> tuple[int, ...]:
    from .polyring import UniPoly, uni_irreducible

    mod = tuple(int(c) for c in modulus)
    if len(mod) != degree + 1 or mod[-1] != 1:
        raise FieldError(f"modulus {list(mod)} is not monic of degree {degree}")
    for c in mod:
        base.check(c)
    if not uni_irreducible(UniPoly(base, mod)):
        raise FieldError(f"modulus {list(mod)} is reducible over {base}")
    return mod


@functools.lru_cache(maxsize=None)
def _extension(base: Field, s: int, modulus: tuple[int, ...] | None) -> Field:
    mod = smallest_irreducible(base, s) if modulus is None else _validated(base, s, modulus)
    return Field(base.p, base, mod)


def field_make(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """F_{p^k}; the modulus defaults to the smallest monic irreducible of degree k."""
    if k < 1:
        raise FieldError("degree must be at least 1")
    F = prime_field(p)
    if k == 1:
        if modulus is not None and tuple(modulus) not in ((0, 1),):
            _validated(F, 1, modulus)
        return F
    return _extension(F, k, None if modulus is None else tuple(int(c) for c in modulus))


def extension_of(base: Field, s: int, modulus: Sequence[int] | None = None) -> Field:
    """Degree-s extension of ``base``, represented as a tower over it."""
    if s < 1:
        raise FieldError("extension degree must be at least 1")
    if s == 1:
        return base
    return _extension(base, s, None if modulus is None else tuple(int(c) for c in modulus))


def field_from_order(q: int) -> Field:
    """F_q with the default modulus, for a prime power q."""
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, k), = f.items()
    return field_make(p, k)


def frobenius(x: int, ext: Field, i: int = 1) -> int:
    return ext.frobenius(x, i)


def norm_trace(x: int, ext: Field) -> tuple[int, int]:
    return ext.norm_trace(x)


def field_to_dict(F: Field) -> dict:
    """Serialisable description; towers carry their extension steps."""
    chain = F.tower()
    d = {"p": F.p, "k": chain[1].s if len(chain) > 1 else 1}
    if len(chain) > 1:
        d["modulus"] = list(chain[1].modulus)
    if len(chain) > 2:
        d["tower"] = [{"s": f.s, "modulus": list(f.modulus)} for f in chain[2:]]
    return d


def field_from_dict(d: dict) -> Field:
    F = field_make(int(d["p"]), int(d.get("k", 1)), d.get("modulus"))
    for step in d.get("tower", []):
        F = extension_of(F, int(step["s"]), step.get("modulus"))
    return F
