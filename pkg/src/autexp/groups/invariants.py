"""Order statistics and structural invariants of enumerated groups."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..numtheory import factorize, gcd, is_prime, lcm, valuation
from .handle import GroupHandle


@dataclass(frozen=True)
class SylowData:
    exponent: int  # biggest element order among p-elements
    order: int  # p^v_p(|G|)


@dataclass(frozen=True)
class OrderProfile:
    counts: dict[int, int]  # element order -> number of elements
    order: int
    exponent: int
    sylow: dict[int, SylowData] = field(default_factory=dict)

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> OrderProfile:
        counts = {int(k): int(v) for k, v in sorted(counts.items())}
        order = sum(counts.values())
        exponent = lcm(*counts)
        sylow = {}
        for p, v in sorted(factorize(order).items()):
            p_orders = [o for o in counts if o == p ** valuation(o, p)]
            sylow[p] = SylowData(exponent=max(p_orders), order=p**v)
        return cls(counts, order, exponent, sylow)

    @property
    def involutions(self) -> int:
        return self.counts.get(2, 0)

    @property
    def max_element_order(self) -> int:
        return max(self.counts)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "counts": {str(k): v for k, v in self.counts.items()},
            "sylow": {str(p): {"exponent": s.exponent, "order": s.order} for p, s in self.sylow.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> OrderProfile:
        prof = cls.from_counts({int(k): v for k, v in data["counts"].items()})
        if prof.order != data["order"] or prof.exponent != data["exponent"]:
            raise ValueError("inconsistent cached order profile")
        return prof


def order_profile(G: GroupHandle) -> OrderProfile:
    orders, counts = np.unique(G.element_orders, return_counts=True)
    return OrderProfile.from_counts(dict(zip(orders.tolist(), counts.tolist())))


def is_z_group(G: GroupHandle, profile: OrderProfile | None = None) -> bool:
    """All Sylow subgroups cyclic, read off the biggest p-element orders."""
    prof = profile or order_profile(G)
    structural = all(s.exponent == s.order for s in prof.sylow.values())
    if structural != (prof.exponent == prof.order):
        raise AssertionError(f"{G.label}: Sylow test and exp == |G| test disagree")
    return structural


@dataclass(frozen=True)
class ZassenhausForm:
    """G = <x> ⋊ <y> with |x| = m odd, |y| = n, gcd(m, n) = 1, y x y^-1 = x^k."""

    m: int
    n: int
    k: int
    normal_generator: int
    complement_generator: int


def _cyclic_members(G: GroupHandle, x: int) -> np.ndarray:
    out = [0]
    y = x
    while y != 0:
        out.append(y)
        y = G.mul(y, x)
    return np.array(out, dtype=np.intp)


def zassenhaus_decompose(G: GroupHandle, profile: OrderProfile | None = None) -> ZassenhausForm | None:
    """Exhaustive search for a normal cyclic subgroup of odd order with a cyclic complement.

    The largest admissible ``m`` is reported.
    """
    prof = profile or order_profile(G)
    if not is_z_group(G, prof):
        raise ValueError(f"{G.label} is not a Z-group")
    N = G.order
    orders = G.element_orders
    gens = np.array(G.generators, dtype=np.intp)
    candidates = [m for m in range(N, 0, -1) if N % m == 0 and m % 2 and gcd(m, N // m) == 1]
    for m in candidates:
        n = N // m
        ys = np.flatnonzero(orders == n)
        if not len(ys):
            continue
        tried = np.zeros(N, dtype=bool)
        for x in np.flatnonzero(orders == m).tolist():
            if tried[x]:
                continue
            members = _cyclic_members(G, x)
            tried[members[orders[members] == m]] = True
            inside = np.zeros(N, dtype=bool)
            inside[members] = True
            if len(gens) and not inside[G.conjugate_arr(x, gens)].all():
                continue
            y = int(ys[0])
            # y x y^-1 = x^k
            target = G.mul(G.mul(y, x), G.inv(y))
            k = int(np.flatnonzero(members == target)[0]) if m > 1 else 0
            return ZassenhausForm(m, n, k, int(x), y)
    return None


def sylow_subgroup(G: GroupHandle, p: int) -> GroupHandle:
    """Sylow p-subgroup grown by normalizer extension.

    Starts from the lowest-index p-element of maximal order and keeps adjoining
    the lowest-index p-element of N_G(H) outside H.
    """
    if not is_prime(p) or G.order % p:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    target = p ** valuation(G.order, p)
    orders = G.element_orders
    p_powers = [p**i for i in range(1, valuation(G.order, p) + 1)]
    is_p_elem = np.isin(orders, p_powers)
    p_orders = orders[is_p_elem]
    first = int(np.flatnonzero(is_p_elem & (orders == p_orders.max()))[0])
    gens = [first]
    members = G.closure(gens)
    everyone = np.arange(G.order)
    while len(members) < target:
        inside = np.zeros(G.order, dtype=bool)
        inside[members] = True
        normalizes = np.ones(G.order, dtype=bool)
        for h in gens:
            normalizes &= inside[G.conjugate_arr(h, everyone)]
        cand = np.flatnonzero(normalizes & is_p_elem & ~inside)
        if not len(cand):
            raise AssertionError("normalizer growth stalled below Sylow order")
        gens.append(int(cand[0]))
        members = G.closure(gens)
    if len(members) != target:
        raise AssertionError(f"p-subgroup of order {len(members)} overshoots {target}")
    return G.subgroup(gens)


def has_cyclic_index2_sylow2(G: GroupHandle) -> bool:
    """Does a Sylow 2-subgroup contain a cyclic subgroup of index 2?"""
    if G.order % 2:
        raise ValueError(f"|G| = {G.order} is odd")
    S = sylow_subgroup(G, 2)
    # cyclic subgroups are exactly the <s>; one of index 2 means an element of order |S|/2
    return bool((S.element_orders >= S.order // 2).any())


# -- series and structure -----------------------------------------------------


def normal_closure(G: GroupHandle, seeds, conj_by) -> tuple[np.ndarray, list[int]]:
    """Smallest subgroup containing ``seeds`` and closed under conjugation by ``conj_by``."""
    gens = sorted(set(int(s) for s in seeds) - {0})
    conj_by = np.array(sorted(set(int(c) for c in conj_by)), dtype=np.intp)
    while True:
        members = G.closure(gens)
        if not gens or not len(conj_by):
            return members, gens
        inside = np.zeros(G.order, dtype=bool)
        inside[members] = True
        conj = G.conjugate_arr(np.array(gens)[:, None], conj_by[None, :]).ravel()
        extra = sorted(set(conj[~inside[conj]].tolist()))
        if not extra:
            return members, gens
        gens.extend(extra)


def _commutators(G: GroupHandle, xs, ys) -> list[int]:
    out = set()
    for x in xs:
        for y in ys:
            out.add(G.commutator(x, y))
    out.discard(0)
    return sorted(out)


def derived_series(G: GroupHandle) -> list[int]:
    """Orders |G|, |G'|, |G''|, ... until trivial or stable."""
    sizes = [G.order]
    gens = list(G.generators)
    cap = max(1, math.ceil(math.log2(max(G.order, 2)))) + 1
    for _ in range(cap):
        members, gens = normal_closure(G, _commutators(G, gens, gens), gens)
        if len(members) == sizes[-1]:
            break
        sizes.append(len(members))
        if len(members) == 1:
            break
    return sizes


def lower_central_series(G: GroupHandle) -> list[int]:
    sizes = [G.order]
    gens = list(G.generators)
    cap = max(1, math.ceil(math.log2(max(G.order, 2)))) + 1
    for _ in range(cap):
        members, gens = normal_closure(G, _commutators(G, gens, G.generators), G.generators)
        if len(members) == sizes[-1]:
            break
        sizes.append(len(members))
        if len(members) == 1:
            break
    return sizes


def center(G: GroupHandle) -> np.ndarray:
    everyone = np.arange(G.order)
    ok = np.ones(G.order, dtype=bool)
    for g in G.generators:
        ok &= G.mul_arr(everyone, g) == G.mul_arr(g, everyone)
    return np.flatnonzero(ok)


@dataclass(frozen=True)
class Structure:
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_perfect: bool
    center_order: int
    commutator_order: int
    abelianization_order: int
    involution_count: int


def structure_predicates(G: GroupHandle) -> Structure:
    gens = G.generators
    abelian = all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)
    derived = derived_series(G)
    lower = lower_central_series(G)
    comm = derived[1] if len(derived) > 1 else G.order
    if abelian:
        comm = 1
    out = Structure(
        is_abelian=abelian,
        is_nilpotent=lower[-1] == 1,
        is_solvable=derived[-1] == 1,
        is_perfect=comm == G.order,
        center_order=len(center(G)),
        commutator_order=comm,
        abelianization_order=G.order // comm,
        involution_count=int((G.element_orders == 2).sum()),
    )
    if out.is_abelian and not out.is_nilpotent or out.is_nilpotent and not out.is_solvable:
        raise AssertionError(f"{G.label}: inconsistent structure flags {out}")
    return out
