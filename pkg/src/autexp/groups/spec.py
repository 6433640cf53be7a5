"""Declarative descriptions of the finite groups the toolkit can build."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..numtheory import prime_power
from . import backends


class GroupSpecError(ValueError):
    """Raised for a spec whose parameters do not describe a group."""


class GroupSpec:
    """Base class. ``text()`` gives the canonical mini-language form."""

    @property
    def order(self) -> int:
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def make_backend(self) -> backends.Backend:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.text()


def _positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise GroupSpecError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class CyclicSpec(GroupSpec):
    n: int

    def __post_init__(self):
        _positive("cyclic order", self.n)

    @property
    def order(self):
        return self.n

    def text(self):
        return f"C{self.n}"

    def make_backend(self):
        return backends.AbelianBackend((self.n,))


@dataclass(frozen=True)
class AbelianSpec(GroupSpec):
    """Direct product of cyclic groups, factors kept in the order given."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if len(self.factors) < 1:
            raise GroupSpecError("abelian spec needs at least one factor")
        for f in self.factors:
            _positive("cyclic factor", f)
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def order(self):
        out = 1
        for f in self.factors:
            out *= f
        return out

    def text(self):
        return "x".join(f"C{f}" for f in self.factors)

    def make_backend(self):
        return backends.AbelianBackend(self.factors)


@dataclass(frozen=True)
class DihedralSpec(GroupSpec):
    """Dihedral group of order 2n (D3 is S3)."""

    n: int

    def __post_init__(self):
        _positive("dihedral parameter", self.n)

    @property
    def order(self):
        return 2 * self.n

    def text(self):
        return f"D{self.n}"

    def make_backend(self):
        return backends.DihedralBackend(self.n)


@dataclass(frozen=True)
class DicyclicSpec(GroupSpec):
    """Dicyclic group of the given order (a multiple of 4, at least 8); Q8 is quaternion."""

    size: int

    def __post_init__(self):
        _positive("dicyclic order", self.size)
        if self.size % 4 or self.size < 8:
            raise GroupSpecError(f"dicyclic order must be a multiple of 4 and >= 8, got {self.size}")

    @property
    def order(self):
        return self.size

    def text(self):
        return f"Q{self.size}"

    def make_backend(self):
        return backends.DicyclicBackend(self.size // 4)


@dataclass(frozen=True)
class SemidirectSpec(GroupSpec):
    """C_m ⋊ C_n, the generator of C_n acting on C_m by multiplication with k."""

    m: int
    n: int
    k: int

    def __post_init__(self):
        _positive("m", self.m)
        _positive("n", self.n)
        if gcd(self.k, self.m) != 1:
            raise GroupSpecError(f"action multiplier k={self.k} is not coprime to m={self.m}")
        if pow(self.k, self.n, self.m) != 1 % self.m:
            raise GroupSpecError(f"k={self.k} does not satisfy k^{self.n} = 1 mod {self.m}")

    @property
    def order(self):
        return self.m * self.n

    def text(self):
        return f"C{self.m}:C{self.n}({self.k})"

    def make_backend(self):
        return backends.SemidirectBackend(self.m, self.n, self.k)


@dataclass(frozen=True)
class MatrixSpec(GroupSpec):
    kind: str  # "GL2" | "SL2" | "PSL2"
    q: int

    def __post_init__(self):
        if self.kind not in ("GL2", "SL2", "PSL2"):
            raise GroupSpecError(f"unknown matrix group {self.kind!r}")
        if prime_power(self.q) is None:
            raise GroupSpecError(f"q={self.q} is not a prime power")

    @property
    def order(self):
        from ..fq import linear_group_order

        return linear_group_order(self.kind, self.q)

    def text(self):
        p, e = prime_power(self.q)
        q = f"{p}^{e}" if e > 1 else str(p)
        return f"{self.kind}({q})"

    def make_backend(self):
        from ..fq import MatrixBackend, field_of_order

        return MatrixBackend(field_of_order(self.q), self.kind)


@dataclass(frozen=True)
class ProductSpec(GroupSpec):
    """Direct product of at least two factors, not all of them cyclic."""

    parts: tuple[GroupSpec, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise GroupSpecError("a product needs at least two factors")
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def order(self):
        out = 1
        for p in self.parts:
            out *= p.order
        return out

    def text(self):
        return "x".join(p.text() for p in self.parts)

    def make_backend(self):
        return backends.DirectProductBackend([p.make_backend() for p in self.parts])


def direct_product(*specs: GroupSpec) -> GroupSpec:
    """Normal form of a product: all-cyclic products collapse to AbelianSpec."""
    atoms: list[GroupSpec] = []
    for s in specs:
        if isinstance(s, ProductSpec):
            atoms.extend(s.parts)
        elif isinstance(s, AbelianSpec):
            atoms.extend(CyclicSpec(f) for f in s.factors)
        else:
            atoms.append(s)
    if len(atoms) == 1:
        return atoms[0]
    if all(isinstance(a, CyclicSpec) for a in atoms):
        return AbelianSpec(tuple(a.n for a in atoms))
    return ProductSpec(tuple(atoms))


def abelian(*factors: int) -> GroupSpec:
    return CyclicSpec(factors[0]) if len(factors) == 1 else AbelianSpec(tuple(factors))
