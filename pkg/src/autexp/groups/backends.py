"""Vectorized element arithmetic for the concrete group families.

Every backend encodes an element as a fixed-width row of small non-negative
integers ("coordinates"). ``mul`` works row-wise on ``(N, width)`` arrays so
enumeration and power loops run in numpy rather than per element.
"""

from __future__ import annotations

import numpy as np

from ..numtheory import gcd, multiplicative_order


class Backend:
    """Base class; subclasses fill in the arithmetic."""

    width: int
    radices: tuple[int, ...]
    identity: np.ndarray
    generators: np.ndarray
    predicted_order: int

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def key(self, a: np.ndarray) -> np.ndarray:
        a = np.atleast_2d(a)
        k = np.zeros(a.shape[0], dtype=np.int64)
        for col, r in enumerate(self.radices):
            k = k * r + a[:, col]
        return k

    def describe(self, row: np.ndarray) -> str:
        return "(" + ",".join(str(int(v)) for v in row) + ")"


def _row(*values: int) -> np.ndarray:
    return np.array(values, dtype=np.int64)


class AbelianBackend(Backend):
    """Direct sum Z/n1 + ... + Z/nk; cyclic groups are the k=1 case."""

    def __init__(self, moduli: tuple[int, ...]):
        self.moduli = np.array(moduli, dtype=np.int64)
        self.width = len(moduli)
        self.radices = tuple(moduli)
        self.identity = np.zeros(self.width, dtype=np.int64)
        gens = [np.eye(self.width, dtype=np.int64)[i] for i, m in enumerate(moduli) if m > 1]
        self.generators = np.array(gens, dtype=np.int64).reshape(-1, self.width)
        self.predicted_order = int(np.prod(moduli, dtype=object))

    def mul(self, a, b):
        return (a + b) % self.moduli


class DihedralBackend(Backend):
    """Symmetries of the n-gon, coordinates (rotation r, flip s)."""

    def __init__(self, n: int):
        self.n = n
        self.width = 2
        self.radices = (n, 2)
        self.identity = _row(0, 0)
        gens = []
        if n > 1:
            gens.append(_row(1, 0))
        gens.append(_row(0, 1))
        self.generators = np.array(gens)
        self.predicted_order = 2 * n

    def mul(self, a, b):
        sign = 1 - 2 * a[:, 1]
        r = (a[:, 0] + sign * b[:, 0]) % self.n
        s = (a[:, 1] + b[:, 1]) % 2
        return np.stack([r, s], axis=1)


class DicyclicBackend(Backend):
    """Dicyclic group of order 4n: <a, x | a^(2n), x^2 = a^n, x a x^-1 = a^-1>.

    Coordinates (i, s) stand for a^i x^s. Order 8 is the quaternion group.
    """

    def __init__(self, n: int):
        self.n = n
        self.width = 2
        self.radices = (2 * n, 2)
        self.identity = _row(0, 0)
        self.generators = np.array([_row(1, 0), _row(0, 1)])
        self.predicted_order = 4 * n

    def mul(self, a, b):
        m = 2 * self.n
        i, s = a[:, 0], a[:, 1]
        j, t = b[:, 0], b[:, 1]
        # a^i x^s a^j x^t = a^(i + (-1)^s j) x^(s+t), and x^2 = a^n
        exp = i + (1 - 2 * s) * j + self.n * (s * t)
        return np.stack([exp % m, (s + t) % 2], axis=1)


class SemidirectBackend(Backend):
    """C_m ⋊ C_n where the generator of C_n acts on C_m as x -> k*x."""

    def __init__(self, m: int, n: int, k: int):
        if gcd(k, m) != 1:
            raise ValueError(f"action multiplier {k} is not a unit mod {m}")
        if pow(k, n, m) != 1 % m:
            raise ValueError(f"{k}^{n} is not 1 mod {m}; not an action of C_{n}")
        self.m, self.n, self.k = m, n, k
        self.width = 2
        self.radices = (m, n)
        self.identity = _row(0, 0)
        self.kpow = np.array([pow(k, e, m) for e in range(n)], dtype=np.int64)
        gens = []
        if m > 1:
            gens.append(_row(1, 0))
        if n > 1:
            gens.append(_row(0, 1))
        self.generators = np.array(gens, dtype=np.int64).reshape(-1, 2)
        self.predicted_order = m * n

    @property
    def action_order(self) -> int:
        return multiplicative_order(self.k, self.m) if self.m > 1 else 1

    def mul(self, a, b):
        x = (a[:, 0] + self.kpow[a[:, 1]] * b[:, 0]) % self.m
        y = (a[:, 1] + b[:, 1]) % self.n
        return np.stack([x, y], axis=1)


class DirectProductBackend(Backend):
    def __init__(self, parts: list[Backend]):
        self.parts = parts
        self.widths = [p.width for p in parts]
        self.offsets = np.cumsum([0] + self.widths)
        self.width = int(self.offsets[-1])
        self.radices = tuple(r for p in parts for r in p.radices)
        self.identity = np.concatenate([p.identity for p in parts])
        gens = []
        for i, part in enumerate(parts):
            for g in part.generators:
                row = self.identity.copy()
                row[self.offsets[i] : self.offsets[i + 1]] = g
                gens.append(row)
        self.generators = np.array(gens, dtype=np.int64).reshape(-1, self.width)
        self.predicted_order = 1
        for p in parts:
            self.predicted_order *= p.predicted_order

    def mul(self, a, b):
        out = np.empty_like(a)
        for i, part in enumerate(self.parts):
            lo, hi = self.offsets[i], self.offsets[i + 1]
            out[:, lo:hi] = part.mul(a[:, lo:hi], b[:, lo:hi])
        return out

    def describe(self, row):
        return " x ".join(
            part.describe(row[self.offsets[i] : self.offsets[i + 1]]) for i, part in enumerate(self.parts)
        )
