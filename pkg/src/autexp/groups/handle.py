"""Fully enumerated finite groups with index-level arithmetic.

Elements get canonical indices by breadth-first search from the identity,
right-multiplying by the generators in order. Index 0 is the identity.
"""

from __future__ import annotations

import logging
from functools import cached_property

import numpy as np

from ..numtheory import divisors
from .backends import Backend
from .spec import GroupSpec

log = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 2_000_000
# Full multiplication tables are int16 n x n; 4096 keeps one table at 32 MB.
TABLE_LIMIT = 4096
EAGER_TABLE_LIMIT = 1024


class GroupOrderCapExceeded(RuntimeError):
    pass


def _enumerate(backend: Backend, gens: np.ndarray, cap: int) -> np.ndarray:
    identity = backend.identity[None, :]
    layers = [identity]
    seen = backend.key(identity)
    frontier = identity
    total = 1
    k = len(gens)
    while len(frontier) and k:
        left = np.repeat(frontier, k, axis=0)
        right = np.tile(gens, (len(frontier), 1))
        cand = backend.mul(left, right)
        keys = backend.key(cand)
        uniq, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(uniq, seen, assume_unique=True)
        first = np.sort(first[fresh])
        if not len(first):
            break
        frontier = cand[first]
        layers.append(frontier)
        seen = np.union1d(seen, uniq[fresh])
        total += len(first)
        if total > cap:
            raise GroupOrderCapExceeded(f"enumeration passed the order cap {cap}")
    return np.concatenate(layers, axis=0)


class GroupHandle:
    """An enumerated group; immutable after construction."""

    def __init__(self, backend: Backend, coords: np.ndarray, gen_coords: np.ndarray, spec=None, label=None):
        self.backend = backend
        self.spec = spec
        self.label = label or (spec.text() if spec is not None else "subgroup")
        coords = np.ascontiguousarray(coords, dtype=np.int64)
        coords.setflags(write=False)
        self.coords = coords
        self.order = len(coords)
        keys = backend.key(coords)
        self._perm = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._perm]
        gens = self.lookup(gen_coords) if len(gen_coords) else np.zeros(0, dtype=np.int64)
        self.generators: tuple[int, ...] = tuple(int(g) for g in dict.fromkeys(gens.tolist()) if g != 0)
        self.parent_index: np.ndarray | None = None

    def __repr__(self):
        return f"GroupHandle({self.label}, order={self.order})"

    def __len__(self):
        return self.order

    # -- lookup and products ------------------------------------------------

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(rows)
        keys = self.backend.key(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise KeyError("element not in group")
        return self._perm[pos]

    @cached_property
    def table(self) -> np.ndarray | None:
        n = self.order
        if n > TABLE_LIMIT:
            return None
        out = np.empty((n, n), dtype=np.int16)
        chunk = max(1, (1 << 20) // n)
        idx = np.arange(n)
        for lo in range(0, n, chunk):
            rows = idx[lo : lo + chunk]
            a = np.repeat(rows, n)
            b = np.tile(idx, len(rows))
            out[lo : lo + len(rows)] = self._mul_coords(a, b).reshape(len(rows), n)
        out.setflags(write=False)
        return out

    def _mul_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.lookup(self.backend.mul(self.coords[a], self.coords[b]))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.intp)
        b = np.asarray(b, dtype=np.intp)
        a, b = np.broadcast_arrays(a, b)
        if self.order <= EAGER_TABLE_LIMIT or "table" in self.__dict__:
            t = self.table
        else:
            t = None
        if t is not None:
            return t[a, b].astype(np.intp)
        shape = a.shape
        if a.size == 0:
            return np.zeros(shape, dtype=np.intp)
        return self._mul_coords(a.ravel(), b.ravel()).reshape(shape).astype(np.intp)

    def mul(self, a: int, b: int) -> int:
        t = self.table
        if t is not None:
            return int(t[a, b])
        return int(self._mul_coords(np.array([a]), np.array([b]))[0])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, e: int) -> int:
        e %= int(self.element_orders[a])
        result, base = 0, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conjugate_arr(self, x, g) -> np.ndarray:
        """g^-1 x g, vectorized."""
        g = np.asarray(g, dtype=np.intp)
        return self.mul_arr(self.mul_arr(self.inverses[g], x), g)

    def describe(self, i: int) -> str:
        return self.backend.describe(self.coords[i])

    # -- element orders -----------------------------------------------------

    def _orders_and_inverses(self) -> tuple[np.ndarray, np.ndarray]:
        # x^k for k = 1, 2, ...; identity is only tested at divisors of |G|
        n = self.order
        divs = set(divisors(n))
        orders = np.zeros(n, dtype=np.int64)
        inverses = np.zeros(n, dtype=np.intp)
        active = np.arange(n)
        base = self.coords
        prev = np.broadcast_to(self.backend.identity, base.shape).copy()
        cur = base.copy()
        ident = self.backend.identity
        k = 1
        while len(active):
            if k > n:
                raise AssertionError("element order exceeds |G|")
            if k in divs:
                done = (cur == ident).all(axis=1)
                if done.any():
                    orders[active[done]] = k
                    inverses[active[done]] = self.lookup(prev[done])
                    keep = ~done
                    active, base, prev, cur = active[keep], base[keep], prev[keep], cur[keep]
                    if not len(active):
                        break
            prev = cur
            cur = self.backend.mul(cur, base)
            k += 1
        return orders, inverses

    @cached_property
    def _orders_inverses(self):
        o, i = self._orders_and_inverses()
        o.setflags(write=False)
        i.setflags(write=False)
        return o, i

    @property
    def element_orders(self) -> np.ndarray:
        return self._orders_inverses[0]

    @property
    def inverses(self) -> np.ndarray:
        return self._orders_inverses[1]

    # -- subgroups ----------------------------------------------------------

    def closure(self, gens, stop_at: int | None = None) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        gens = np.array(sorted(set(int(g) for g in gens) - {0}), dtype=np.intp)
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        count = 1
        frontier = np.array([0], dtype=np.intp)
        limit = stop_at or self.order
        while len(frontier) and len(gens):
            cand = self.mul_arr(frontier[:, None], gens[None, :]).ravel()
            cand = np.unique(cand[~member[cand]])
            if not len(cand):
                break
            member[cand] = True
            count += len(cand)
            if count >= limit:
                break
            frontier = cand
        return np.flatnonzero(member)

    def generates(self, gens) -> bool:
        return len(self.closure(gens, stop_at=self.order)) == self.order

    def conjugacy_class(self, x: int) -> np.ndarray:
        member = np.zeros(self.order, dtype=bool)
        member[x] = True
        frontier = np.array([x], dtype=np.intp)
        gens = np.array(self.generators, dtype=np.intp)
        while len(frontier) and len(gens):
            cand = self.conjugate_arr(frontier[:, None], gens[None, :]).ravel()
            cand = np.unique(cand[~member[cand]])
            member[cand] = True
            frontier = cand
        return np.flatnonzero(member)

    def class_representatives(self, elements) -> list[int]:
        """Least index of each conjugacy class meeting ``elements``, ascending."""
        remaining = set(int(e) for e in elements)
        reps = []
        for e in sorted(remaining):
            if e not in remaining:
                continue
            reps.append(e)
            remaining.difference_update(self.conjugacy_class(e).tolist())
        return sorted(reps)

    def subgroup(self, gens) -> GroupHandle:
        """The subgroup generated by parent indices ``gens`` as a handle of its own."""
        gens = [int(g) for g in gens]
        gen_coords = self.coords[gens] if gens else np.zeros((0, self.backend.width), dtype=np.int64)
        coords = _enumerate(self.backend, gen_coords, self.order)
        sub = GroupHandle(self.backend, coords, gen_coords, label=f"<{','.join(map(str, gens))}> in {self.label}")
        sub.parent_index = self.lookup(coords)
        return sub


def build_group(spec: GroupSpec, cap: int | None = None) -> GroupHandle:
    """Enumerate ``spec`` into a GroupHandle, refusing groups above ``cap`` elements."""
    cap = DEFAULT_ORDER_CAP if cap is None else cap
    predicted = spec.order
    if predicted > cap:
        raise GroupOrderCapExceeded(f"{spec.text()} has order {predicted} > cap {cap}")
    backend = spec.make_backend()
    coords = _enumerate(backend, backend.generators, cap)
    if len(coords) != predicted:
        raise AssertionError(f"{spec.text()}: enumerated {len(coords)} elements, expected {predicted}")
    log.debug("built %s with %d elements", spec.text(), len(coords))
    return GroupHandle(backend, coords, backend.generators, spec=spec)
