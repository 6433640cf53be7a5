"""Exact arithmetic in GF(p^n) and the rank-2 linear groups over it.

Field elements are integers ``sum(c_i * p**i)`` for the coefficient tuple
``(c_0, ..., c_{n-1})`` of a polynomial reduced modulo the field's defining
polynomial. Table-driven arithmetic (log/antilog) is available for
``q <= TABLE_LIMIT``; the scalar polynomial routines work for any q and serve
as the reference implementation the tables are checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .groups.backends import Backend
from .numtheory import factorize, is_prime, prime_power

TABLE_LIMIT = 4096

Poly = tuple[int, ...]


# -- polynomial helpers over GF(p), coefficient tuples low-to-high ----------


def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(num: Poly, den: Poly, p: int) -> tuple[Poly, Poly]:
    num_l = [c % p for c in num]
    den_l = _trim([c % p for c in den])
    if den_l == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    dn = len(den_l) - 1
    if len(_trim(list(num_l))) - 1 < dn:
        return (0,), tuple(_trim(num_l))
    inv_lead = pow(den_l[-1], p - 2, p)
    quot = [0] * (len(num_l) - dn)
    for shift in range(len(num_l) - 1 - dn, -1, -1):
        coef = num_l[shift + dn] * inv_lead % p
        quot[shift] = coef
        if coef:
            for i, d in enumerate(den_l):
                num_l[shift + i] = (num_l[shift + i] - coef * d) % p
    return tuple(_trim(quot)), tuple(_trim(num_l[:dn] or [0]))


def is_irreducible(poly: Poly, p: int) -> bool:
    """Irreducibility over GF(p) by trial division with monic factors of degree <= deg/2."""
    deg = len(_trim(list(poly))) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, rem = poly_divmod(poly, low + (1,), p)
            if rem == (0,):
                return False
    return True


# -- the field ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    n: int
    modulus: Poly  # monic, length n+1, low-to-high
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.n)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.n, self.modulus) == (
            other.p,
            other.n,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    # encoding
    def decode(self, x: int) -> Poly:
        out = []
        for _ in range(self.n):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        coeffs += [0] * (self.n - len(coeffs))
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs[: self.n]))

    @property
    def one(self) -> int:
        return 1

    # scalar reference arithmetic (no tables)
    def add(self, x: int, y: int) -> int:
        return self.encode(a + b for a, b in zip(self.decode(x), self.decode(y)))

    def neg(self, x: int) -> int:
        return self.encode(-a for a in self.decode(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        a, b = self.decode(x), self.decode(y)
        prod = [0] * (2 * self.n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        _, rem = poly_divmod(tuple(c % self.p for c in prod), self.modulus, self.p)
        return self.encode(rem)

    def pow(self, x: int, e: int) -> int:
        result, base = 1, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self.pow(x, self.q - 2)

    def lex_key(self, x: int) -> Poly:
        return self.decode(x)

    def basis(self) -> list[int]:
        """The F_p-basis 1, t, ..., t^(n-1) as encoded elements."""
        return [self.p**i for i in range(self.n)]

    # tables
    @cached_property
    def primitive_element(self) -> int:
        order = self.q - 1
        primes = list(factorize(order)) if order > 1 else []
        for g in range(1, self.q):
            if all(self.pow(g, order // r) != 1 for r in primes):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    @cached_property
    def _tables(self) -> dict[str, np.ndarray]:
        if self.q > TABLE_LIMIT:
            raise ValueError(f"GF({self.q}) exceeds the table limit {TABLE_LIMIT}")
        q, p = self.q, self.p
        g = self.primitive_element
        antilog = np.zeros(q - 1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            antilog[k] = x
            x = self.mul(x, g)
        log = np.full(q, -1, dtype=np.int64)
        log[antilog] = np.arange(q - 1)
        idx = np.arange(q)
        digits = np.stack([(idx // p**i) % p for i in range(self.n)], axis=1)
        weights = p ** np.arange(self.n)
        add = (((digits[:, None, :] + digits[None, :, :]) % p) * weights).sum(axis=2)
        neg = ((-digits) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        nz = idx[1:]
        mul[1:, 1:] = antilog[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = antilog[(-log[nz]) % (q - 1)]
        # rank of each element under lexicographic order of coefficient tuples
        order = sorted(range(q), key=self.decode)
        rank = np.empty(q, dtype=np.int64)
        rank[order] = np.arange(q)
        return {
            "add": add.astype(np.int64),
            "mul": mul,
            "neg": neg.astype(np.int64),
            "inv": inv,
            "log": log,
            "antilog": antilog,
            "rank": rank,
        }

    def table(self, name: str) -> np.ndarray:
        return self._tables[name]


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldCtx:
    """GF(p^n) defined by the smallest monic irreducible of degree n.

    "Smallest" compares coefficients from the top down, i.e. the polynomial
    read as a base-p numeral; over GF(2) this gives x^3 + x + 1 for n = 3.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    for high_first in itertools.product(range(p), repeat=n):
        poly = high_first[::-1] + (1,)
        if is_irreducible(poly, p):
            return FieldCtx(p, n, poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> FieldCtx:
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pp)


# -- 2x2 matrices ------------------------------------------------------------


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    det: int

    @classmethod
    def make(cls, F: FieldCtx, a: int, b: int, c: int, d: int) -> Mat2:
        return cls(a, b, c, d, F.sub(F.mul(a, d), F.mul(b, c)))

    @classmethod
    def identity(cls, F: FieldCtx) -> Mat2:
        return cls.make(F, 1, 0, 0, 1)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def mul(self, F: FieldCtx, o: Mat2) -> Mat2:
        m, a = F.mul, F.add
        return Mat2.make(
            F,
            a(m(self.a, o.a), m(self.b, o.c)),
            a(m(self.a, o.b), m(self.b, o.d)),
            a(m(self.c, o.a), m(self.d, o.c)),
            a(m(self.c, o.b), m(self.d, o.d)),
        )

    def neg(self, F: FieldCtx) -> Mat2:
        return Mat2(*(F.neg(x) for x in self.entries()), det=self.det)


@dataclass(frozen=True)
class PslElement:
    """A coset {M, -M}, stored as its lexicographically smaller member."""

    rep: Mat2

    @classmethod
    def of(cls, F: FieldCtx, m: Mat2) -> PslElement:
        return cls(psl_canonical(F, m))


def psl_canonical(F: FieldCtx, m: Mat2) -> Mat2:
    neg = m.neg(F)
    key = [F.lex_key(x) for x in m.entries()]
    nkey = [F.lex_key(x) for x in neg.entries()]
    return neg if nkey < key else m


def _mat_mul_arrays(F: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    add, mul = F.table("add"), F.table("mul")
    a1, b1, c1, d1 = A.T
    a2, b2, c2, d2 = B.T
    return np.stack(
        [
            add[mul[a1, a2], mul[b1, c2]],
            add[mul[a1, b2], mul[b1, d2]],
            add[mul[c1, a2], mul[d1, c2]],
            add[mul[c1, b2], mul[d1, d2]],
        ],
        axis=1,
    )


def canonicalize_pm(F: FieldCtx, A: np.ndarray) -> np.ndarray:
    """Replace each row M by the lexicographically smaller of M, -M."""
    neg, rank = F.table("neg"), F.table("rank")
    N = neg[A]
    r, rn = rank[A], rank[N]
    diff = r != rn
    first = diff.argmax(axis=1)
    rows = np.arange(A.shape[0])
    flip = diff.any(axis=1) & (rn[rows, first] < r[rows, first])
    out = A.copy()
    out[flip] = N[flip]
    return out


class MatrixBackend(Backend):
    """GL2, SL2 or PSL2 over a field; coordinates are the entries (a, b, c, d)."""

    def __init__(self, F: FieldCtx, kind: str):
        if kind not in ("GL2", "SL2", "PSL2"):
            raise ValueError(kind)
        self.F, self.kind = F, kind
        q = F.q
        self.width = 4
        self.radices = (q, q, q, q)
        self.identity = np.array([1, 0, 0, 1], dtype=np.int64)
        gens = []
        for t in F.basis():
            gens.append([1, t, 0, 1])
        for t in F.basis():
            gens.append([1, 0, t, 1])
        if kind == "GL2" and q > 2:
            gens.append([F.primitive_element, 0, 0, 1])
        G = np.array(gens, dtype=np.int64)
        if kind == "PSL2":
            G = canonicalize_pm(F, G)
        self.generators = G
        self.predicted_order = linear_group_order(kind, q)

    def mul(self, a, b):
        out = _mat_mul_arrays(self.F, a, b)
        if self.kind == "PSL2":
            out = canonicalize_pm(self.F, out)
        return out

    def describe(self, row):
        a, b, c, d = (self.F.decode(int(x)) if self.F.n > 1 else int(x) for x in row)
        return f"[[{a},{b}],[{c},{d}]]"

    def to_mat2(self, row) -> Mat2:
        return Mat2.make(self.F, *(int(x) for x in row))


def linear_group_order(kind: str, q: int) -> int:
    if kind == "GL2":
        return (q * q - 1) * (q * q - q)
    if kind == "SL2":
        return q**3 - q
    if kind == "PSL2":
        return (q**3 - q) // gcd(2, q - 1)
    raise ValueError(kind)


def _build(kind: str, q: int, cap: int | None):
    from .groups.spec import MatrixSpec
    from .groups.handle import build_group

    return build_group(MatrixSpec(kind, q), cap=cap)


def build_psl2(q: int, cap: int | None = None):
    return _build("PSL2", q, cap)


def build_sl2(q: int, cap: int | None = None):
    return _build("SL2", q, cap)


def build_gl2(q: int, cap: int | None = None):
    return _build("GL2", q, cap)


def psl2_exponent(q: int, cap: int | None = None) -> int:
    from .groups.invariants import order_profile

    return order_profile(build_psl2(q, cap)).exponent
