"""Signature arithmetic and surface-kernel generating vectors.

All measures and genera are exact ``Fraction``s. A signature ``(h; m_1..m_r)``
with measure ``mu = 2h - 2 + sum(1 - 1/m_i)`` gives ``2g - 2 = |G| * mu`` for an
action of G with that quotient orbifold.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator

import numpy as np

from .groups.handle import GroupHandle
from .groups.invariants import order_profile
from .numtheory import divisors

GENVEC_ORDER_LIMIT = 2000


@dataclass(frozen=True, order=True)
class Signature:
    h: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        if self.h < 0:
            raise ValueError(f"orbit genus must be >= 0, got {self.h}")
        if any(m < 2 for m in self.periods):
            raise ValueError(f"periods must be >= 2, got {self.periods}")
        object.__setattr__(self, "periods", tuple(sorted(self.periods)))

    @property
    def r(self) -> int:
        return len(self.periods)

    @property
    def measure(self) -> Fraction:
        return 2 * self.h - 2 + sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))

    def text(self) -> str:
        return f"({self.h};{','.join(map(str, self.periods))})"

    def __str__(self):
        return self.text()

    @classmethod
    def parse(cls, text: str) -> Signature:
        m = re.fullmatch(r"\s*\(\s*(\d+)\s*;\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\)\s*", text)
        if not m:
            raise ValueError(f"bad signature literal {text!r}; expected (h;m1,m2,...)")
        periods = tuple(int(x) for x in m.group(2).split(",") if x.strip())
        return cls(int(m.group(1)), periods)


def genus_from_action(order: int, sig: Signature) -> Fraction:
    """g = 1 + |G| mu / 2, exact; not necessarily an integer."""
    if order < 1:
        raise ValueError("group order must be >= 1")
    return 1 + Fraction(order) * sig.measure / 2


def hurwitz_sum(order: int, sig: Signature) -> Fraction:
    """Right-hand side of 2g-2 = |G|(2h-2) + sum (|G|/m)(m-1), term by term."""
    total = Fraction(order * (2 * sig.h - 2))
    for m in sig.periods:
        total += Fraction(order, m) * (m - 1)
    return total


# -- the multiplier ladder ------------------------------------------------------


def signatures_up_to_measure(mu_max: Fraction) -> Iterator[Signature]:
    """Every signature with 0 < mu <= mu_max.

    Raises ValueError if that set is infinite.
    """
    mu_max = Fraction(mu_max)
    h = 0
    while 2 * h - 2 <= mu_max:
        base = Fraction(2 * h - 2)
        r_max = int(2 * (mu_max - base))
        for r in range(0, r_max + 1):
            yield from _periods_dfs(h, base, r, (), Fraction(0), 2, mu_max)
        h += 1


def _periods_dfs(h, base, r, prefix, S, start, mu_max):
    k = r - len(prefix)
    if k == 0:
        mu = base + S
        if 0 < mu <= mu_max:
            yield Signature(h, prefix)
        return
    limit = base + S + k  # supremum of mu over all completions
    if limit <= 0:
        return
    if limit <= mu_max:
        raise ValueError(f"infinitely many signatures with measure <= {mu_max}")
    m = start
    while base + S + k * (1 - Fraction(1, m)) <= mu_max:
        yield from _periods_dfs(h, base, r, prefix + (m,), S + 1 - Fraction(1, m), m, mu_max)
        m += 1


@dataclass(frozen=True)
class Rung:
    multiplier: Fraction  # |G| / (g - 1) = 2 / mu
    signatures: tuple[Signature, ...]


def multiplier_ladder(threshold) -> list[Rung]:
    """All values 2/mu >= threshold, descending, with the signatures realizing each."""
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    by_value: dict[Fraction, list[Signature]] = {}
    for sig in signatures_up_to_measure(2 / threshold):
        by_value.setdefault(2 / sig.measure, []).append(sig)
    return [Rung(v, tuple(sorted(by_value[v]))) for v in sorted(by_value, reverse=True)]


# -- actions and divisibility ----------------------------------------------------


@dataclass(frozen=True)
class GeneratingVector:
    signature: Signature
    hyperbolic: tuple[int, ...]  # a_1, b_1, ..., a_h, b_h
    elliptic: tuple[int, ...]  # x_1, ..., x_r

    @property
    def elements(self) -> tuple[int, ...]:
        return self.hyperbolic + self.elliptic

    def check(self, G: GroupHandle) -> dict[str, bool]:
        """Independent re-validation with scalar arithmetic."""
        prod = 0
        for j in range(self.signature.h):
            prod = G.mul(prod, G.commutator(self.hyperbolic[2 * j], self.hyperbolic[2 * j + 1]))
        for x in self.elliptic:
            prod = G.mul(prod, x)
        orders_ok = True
        for x, m in zip(self.elliptic, self.signature.periods):
            if G.power(x, m) != 0 or any(G.power(x, m // p) == 0 for p in _primes(m)):
                orders_ok = False
        return {
            "relation": prod == 0,
            "orders": orders_ok and len(self.elliptic) == self.signature.r,
            "generates": G.generates(self.elements),
        }

    def is_valid(self, G: GroupHandle) -> bool:
        return all(self.check(G).values())

    def to_dict(self) -> dict:
        return {"signature": self.signature.text(), "hyperbolic": list(self.hyperbolic), "elliptic": list(self.elliptic)}

    @classmethod
    def from_dict(cls, d: dict) -> GeneratingVector:
        return cls(Signature.parse(d["signature"]), tuple(d["hyperbolic"]), tuple(d["elliptic"]))


def _primes(m: int) -> list[int]:
    from .numtheory import prime_divisors

    return prime_divisors(m)


@dataclass(frozen=True)
class ActionRecord:
    group: str
    signature: Signature
    genus: int
    order: int
    exponent: int
    witness: GeneratingVector | None = None
    max_element_order: int | None = None

    def __post_init__(self):
        g = genus_from_action(self.order, self.signature)
        if g.denominator != 1 or g != self.genus or self.genus < 2:
            raise ValueError(f"{self.group} with {self.signature} gives genus {g}, not an integer >= 2")


def make_action(G: GroupHandle, witness: GeneratingVector) -> ActionRecord:
    prof = order_profile(G)
    g = genus_from_action(G.order, witness.signature)
    return ActionRecord(
        group=G.label,
        signature=witness.signature,
        genus=int(g),
        order=G.order,
        exponent=prof.exponent,
        witness=witness,
        max_element_order=prof.max_element_order,
    )


def divisibility_check(record: ActionRecord) -> bool:
    """|G| / exp(G) divides 2(g - 1)."""
    if record.order % record.exponent:
        raise ValueError(f"exponent {record.exponent} does not divide |G| = {record.order}")
    return (2 * (record.genus - 1)) % (record.order // record.exponent) == 0


# -- the normalized equation for |G|/exp(G) = 2(g-1) -------------------------


@dataclass(frozen=True)
class EquationSolution:
    h: int
    periods: tuple[int, ...]
    flag: str | None = None


def _equation_raw(e: int) -> list[tuple[int, tuple[int, ...]]]:
    divs = [s for s in divisors(e) if s >= 2]
    terms = {s: e - e // s for s in divs}  # (e/s)(s-1)
    out = []
    # h >= 2 gives e(2h-2) >= 2e > 1 with non-negative terms
    for h in (0, 1):
        target = 1 - e * (2 * h - 2)

        def dfs(start, remaining, prefix):
            if remaining == 0:
                if prefix or h > 0:
                    out.append((h, tuple(prefix)))
                return
            for i in range(start, len(divs)):
                t = terms[divs[i]]
                if t <= remaining:
                    dfs(i, remaining - t, prefix + [divs[i]])

        if target >= 0:
            dfs(0, target, [])
    return sorted(out)


def normalized_equation_bruteforce(e: int, r_max: int = 8, h_max: int = 2) -> list[tuple[int, tuple[int, ...]]]:
    """Oracle: every multiset of divisors (r <= r_max) and h <= h_max, tested directly."""
    divs = [s for s in divisors(e) if s >= 2]
    out = []
    for h in range(h_max + 1):
        for r in range(r_max + 1):
            for combo in combinations_with_replacement(divs, r):
                if e * (2 * h - 2) + sum(Fraction(e, s) * (s - 1) for s in combo) == 1:
                    out.append((h, tuple(combo)))
    return sorted(out)


def exponent_two_groups(max_order: int):
    from .groups.spec import abelian

    k = 1
    while 2**k <= max_order:
        yield abelian(*([2] * k))
        k += 1


def normalized_equation_solutions(e: int, check_feasibility: bool = True, max_order: int = 64) -> list[EquationSolution]:
    """Solutions of 1 = e(2h-2) + sum (e/s)(s-1) over divisors s >= 2 of e.

    Solutions with h > 0 (only (1; 2) at e = 2) are kept and, when
    ``check_feasibility`` is set, flagged after a generating-vector search over
    every exponent-2 group of order <= ``max_order`` comes up empty.
    """
    if e < 2:
        raise ValueError("exponent must be >= 2")
    sols = []
    for h, periods in _equation_raw(e):
        flag = None
        if h > 0 and check_feasibility:
            flag = _feasibility_flag(e, Signature(h, periods), max_order)
        sols.append(EquationSolution(h, periods, flag))
    return sols


thm63_solutions = normalized_equation_solutions


def _feasibility_flag(e: int, sig: Signature, max_order: int) -> str | None:
    from .groups.handle import build_group

    if e != 2:
        return None
    for spec in exponent_two_groups(max_order):
        if genvec_search(build_group(spec), sig) is not None:
            return None
    return "infeasible by generating-vector test"


# -- generating-vector search ------------------------------------------------------


class _Search:
    def __init__(self, G: GroupHandle, sig: Signature):
        self.G = G
        self.sig = sig
        self.orders = G.element_orders
        self.everyone = np.arange(G.order, dtype=np.intp)
        gens = G.generators
        self.abelian = all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)
        self.exp = order_profile(G).exponent
        self._closure_cache: dict = {}
        self._subgroup_gens: dict[bytes, list[int]] = {}
        self.slots: list[tuple[str, int]] = []  # ("a"/"b", j) or ("x", i)
        for j in range(sig.h):
            self.slots += [("a", j), ("b", j)]
        for i in range(sig.r):
            self.slots.append(("x", i))
        self.solve_last = sig.r > 0
        self.free = self.slots[:-1] if self.solve_last else self.slots
        self.by_order = {m: np.flatnonzero(self.orders == m) for m in set(sig.periods)}

    def candidates(self, slot) -> np.ndarray:
        kind, i = slot
        if kind == "x":
            m = self.sig.periods[i]
            pool = self.by_order[m]
            if i == 0:
                return np.array(self.G.class_representatives(pool), dtype=np.intp)
            return pool
        return self.everyone

    def run(self) -> GeneratingVector | None:
        self._subgroup_gens = {np.array([0], dtype=np.intp).tobytes(): []}
        chosen: list[int] = []
        return self._dfs(chosen, 0, np.array([0], dtype=np.intp))

    def _prefix_product(self, chosen: list[int]) -> int:
        G = self.G
        prod = 0
        h = self.sig.h
        for j in range(h):
            if 2 * j + 1 < len(chosen):
                prod = G.mul(prod, G.commutator(chosen[2 * j], chosen[2 * j + 1]))
        for x in chosen[2 * h :]:
            prod = G.mul(prod, x)
        return prod

    def _dfs(self, chosen: list[int], depth: int, members: np.ndarray) -> GeneratingVector | None:
        G = self.G
        remaining_free = len(self.free) - depth
        if self.abelian and len(members) * self.exp**remaining_free < G.order:
            return None
        if remaining_free == 1:
            return self._last_level(chosen, members)
        if remaining_free == 0:
            # only reachable with r == 0 and h == 0, i.e. an empty signature
            return None
        slot = self.free[depth]
        for x in self.candidates(slot).tolist():
            sub = self._add(members, x)
            found = self._dfs(chosen + [x], depth + 1, sub)
            if found is not None:
                return found
        return None

    def _add(self, members: np.ndarray, x: int) -> np.ndarray:
        key = (members.tobytes(), x)
        hit = self._closure_cache.get(key)
        if hit is None:
            gens = self._subgroup_gens[members.tobytes()]
            if np.isin(x, members):
                hit = members
            else:
                new_gens = gens + [x]
                hit = self.G.closure(new_gens)
                self._subgroup_gens.setdefault(hit.tobytes(), new_gens)
            self._closure_cache[key] = hit
        return hit

    def _last_level(self, chosen: list[int], members: np.ndarray) -> GeneratingVector | None:
        G = self.G
        sig = self.sig
        slot = self.free[-1]
        cand = self.candidates(slot)
        if not len(cand):
            return None
        h, r = sig.h, sig.r
        if slot[0] == "b":
            # prefix = prod_{j<h-1}[a_j,b_j]; last commutator [a, b] over all b
            prefix = self._prefix_product(chosen[:-1])
            a = chosen[-1]
            ainv = G.inv(a)
            comm = G.mul_arr(G.mul_arr(ainv, G.inverses[cand]), G.mul_arr(a, cand))
            total = G.mul_arr(prefix, comm)
        else:
            prefix = self._prefix_product(chosen)
            total = G.mul_arr(prefix, cand)
        if self.solve_last:
            solved = G.inverses[total]
            ok = self.orders[solved] == sig.periods[-1]
        else:
            solved = None
            ok = total == 0
        for idx in np.flatnonzero(ok).tolist():
            y = int(cand[idx])
            sub = self._add(members, y)
            if len(sub) != G.order:
                continue
            elems = chosen + [y]
            if self.solve_last:
                elems.append(int(solved[idx]))
            hyper = tuple(elems[: 2 * h])
            ell = tuple(elems[2 * h :])
            return GeneratingVector(sig, hyper, ell)
        return None


def genvec_search(G: GroupHandle, sig: Signature, max_order: int = GENVEC_ORDER_LIMIT) -> GeneratingVector | None:
    """Depth-first search for a generating vector of type ``sig`` in G.

    The last elliptic image is solved from the product-one relation; the first
    one is restricted to conjugacy-class representatives. Returns the first
    witness in search order or None once the space is exhausted.
    """
    if G.order > max_order:
        raise ValueError(f"|G| = {G.order} exceeds the generating-vector limit {max_order}")
    prof = order_profile(G)
    for m in sig.periods:
        if prof.exponent % m or m not in prof.counts:
            return None
    if sig.h == 0 and sig.r == 0:
        return None
    if G.order == 1:
        # the trivial group has no elements of order >= 2; only (h;) qualifies
        return GeneratingVector(sig, (0,) * (2 * sig.h), ()) if sig.r == 0 else None
    return _Search(G, sig).run()


# -- minimum genus -------------------------------------------------------------------


def signatures_for_genus(order: int, genus: int, allowed_periods) -> list[Signature]:
    """Signatures with periods from ``allowed_periods`` giving exactly this genus for |G| = order."""
    target = Fraction(2 * genus - 2, order)
    allowed = sorted(set(m for m in allowed_periods if 2 <= m <= 4 * genus + 2))
    out: list[Signature] = []
    h = 0
    while 2 * h - 2 <= target:
        base = Fraction(2 * h - 2)

        def dfs(start, S, prefix):
            mu = base + S
            if mu == target and (prefix or h > 0):
                out.append(Signature(h, tuple(prefix)))
            for i in range(start, len(allowed)):
                t = 1 - Fraction(1, allowed[i])
                if mu + t > target:
                    break
                dfs(i, S + t, prefix + [allowed[i]])

        dfs(0, Fraction(0), [])
        h += 1
    return sorted(out, key=lambda s: (s.h, s.r, s.periods))


@dataclass
class GenusSearch:
    genus: int | None  # None: greater than g_max
    g_max: int
    signature: Signature | None = None
    witness: GeneratingVector | None = None
    tried: dict[int, list[str]] = field(default_factory=dict)


def acts_on_genus(G: GroupHandle, genus: int) -> tuple[Signature, GeneratingVector] | None:
    prof = order_profile(G)
    allowed = [m for m in prof.counts if m >= 2]
    for sig in signatures_for_genus(G.order, genus, allowed):
        w = genvec_search(G, sig)
        if w is not None:
            return sig, w
    return None


def min_genus(G: GroupHandle, g_max: int) -> GenusSearch:
    """Smallest g in [2, g_max] on which G acts, by exhaustive generating-vector search."""
    prof = order_profile(G)
    allowed = [m for m in prof.counts if m >= 2]
    result = GenusSearch(genus=None, g_max=g_max)
    for g in range(2, g_max + 1):
        sigs = signatures_for_genus(G.order, g, allowed)
        result.tried[g] = [s.text() for s in sigs]
        for sig in sigs:
            w = genvec_search(G, sig)
            if w is not None:
                result.genus, result.signature, result.witness = g, sig, w
                return result
    return result
