"""(2,3,7)-generation: brute-force search, Macbeath's criterion for PSL2(q),
and the exact-arithmetic scans behind the non-existence of exponent 2*3*7^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fq import build_psl2, linear_group_order
from .groups.handle import DEFAULT_ORDER_CAP, GroupHandle
from .groups.invariants import order_profile, structure_predicates
from .numtheory import factorize, multiplicative_order, prime_power, valuation


@dataclass(frozen=True)
class HurwitzWitness:
    sigma: int
    tau: int
    sigma_order: int
    tau_order: int
    product_order: int
    generates: bool


def verify_witness(G: GroupHandle, sigma: int, tau: int) -> HurwitzWitness:
    """Re-check a candidate pair with scalar arithmetic, independent of the search."""

    def order(x):
        k, y = 1, x
        while y != 0:
            y = G.mul(y, x)
            k += 1
        return k

    st = G.mul(sigma, tau)
    return HurwitzWitness(sigma, tau, order(sigma), order(tau), order(st), G.generates([sigma, tau]))


def hurwitz_search(G: GroupHandle) -> HurwitzWitness | None:
    """Least (sigma, tau) with sigma^2 = tau^3 = (sigma tau)^7 = 1 generating G.

    sigma runs over one involution per conjugacy class, tau over all elements of
    order 3. Returns None when no such pair exists.
    """
    if G.order % 42:
        return None
    orders = G.element_orders
    involutions = np.flatnonzero(orders == 2)
    taus = np.flatnonzero(orders == 3)
    if not len(involutions) or not len(taus):
        return None
    for sigma in G.class_representatives(involutions):
        prods = G.mul_arr(sigma, taus)
        for tau in taus[orders[prods] == 7].tolist():
            if G.generates([sigma, tau]):
                w = HurwitzWitness(int(sigma), int(tau), 2, 3, 7, True)
                if G.order % 84:
                    raise AssertionError(f"Hurwitz group {G.label} of order {G.order} not divisible by 84")
                if not structure_predicates(G).is_perfect:
                    raise AssertionError(f"Hurwitz group {G.label} is not perfect")
                return w
    return None


@dataclass(frozen=True)
class MacbeathVerdict:
    hurwitz: bool
    case: str  # "i" | "ii" | "iii" | "none"
    surfaces: int  # 0 when not Hurwitz


def macbeath_predicate(q: int) -> MacbeathVerdict:
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    p, n = pp
    if q == 7:
        return MacbeathVerdict(True, "i", 1)
    if n == 1 and p % 7 in (1, 6):
        return MacbeathVerdict(True, "ii", 3)
    if n == 3 and p % 7 in (2, 3, 4, 5):
        return MacbeathVerdict(True, "iii", 1)
    return MacbeathVerdict(False, "none", 0)


def prime_powers_upto(limit: int, start: int = 2) -> list[int]:
    return [q for q in range(start, limit + 1) if prime_power(q) is not None]


@dataclass
class CrosscheckRow:
    q: int
    predicate: bool
    case: str
    search: bool
    witness: HurwitzWitness | None

    @property
    def agree(self) -> bool:
        return self.predicate == self.search


def macbeath_crosscheck(q_max: int, qs: list[int] | None = None, cap: int | None = None) -> list[CrosscheckRow]:
    """Brute-force search on PSL2(q) against the arithmetic criterion.

    ``q`` starts at 4 since PSL2(2) and PSL2(3) are solvable and not simple.
    """
    cap = DEFAULT_ORDER_CAP if cap is None else cap
    if qs is None:
        qs = [q for q in prime_powers_upto(q_max, 4) if linear_group_order("PSL2", q) <= cap]
    rows = []
    for q in qs:
        verdict = macbeath_predicate(q)
        w = hurwitz_search(build_psl2(q, cap))
        rows.append(CrosscheckRow(q, verdict.hurwitz, verdict.case, w is not None, w))
    return rows


def exponent_has_form_2_3_7n(e: int) -> bool:
    """True iff e = 2 * 3 * 7^n with n >= 0."""
    if e % 6:
        return False
    rest = e // 6
    while rest % 7 == 0:
        rest //= 7
    return rest == 1


@dataclass
class Exp42Row:
    q: int
    case: str
    exponent: int | None
    factorization: dict[int, int] | None
    has_form: bool | None  # None when the group was not built (over the cap)


def exponent42_candidates(q_max: int) -> list[int]:
    out = []
    for q in prime_powers_upto(q_max):
        p, _ = prime_power(q)
        if p in (2, 3, 5, 7) and macbeath_predicate(q).hurwitz:
            out.append(q)
    return out


def exponent42_scan(q_max: int, cap: int | None = None, skip: set[int] = frozenset()) -> list[Exp42Row]:
    """Hurwitz PSL2(p^n) with p in {2,3,5,7}: none has exponent 2*3*7^n.

    Candidates whose group exceeds ``cap`` or is listed in ``skip`` are
    reported with ``exponent=None``.
    """
    cap = DEFAULT_ORDER_CAP if cap is None else cap
    rows = []
    for q in exponent42_candidates(q_max):
        case = macbeath_predicate(q).case
        if q in skip or linear_group_order("PSL2", q) > cap:
            rows.append(Exp42Row(q, case, None, None, None))
            continue
        e = order_profile(build_psl2(q, cap)).exponent
        rows.append(Exp42Row(q, case, e, factorize(e), exponent_has_form_2_3_7n(e)))
    return rows


# -- the number-theoretic step -------------------------------------------------


@dataclass
class NtRow:
    n: int
    value: int  # (3^(2n+1))^2 - 1
    v7: int
    cofactor: int  # value / (8 * 7^v7)


@dataclass
class NtScanReport:
    n_max: int
    rows: list[NtRow]
    violations: list[str] = field(default_factory=list)
    ord7_mod9: int = 0
    cube_bound: int = 0
    cube_solutions: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def cube_difference_solutions(bound: int) -> list[tuple[int, int]]:
    """All (x, y) with 0 <= y < x <= bound and x^3 - y^3 = 1, by direct search."""
    x = np.arange(1, bound + 1, dtype=np.int64)
    target = x**3 - 1
    y = np.floor(np.cbrt(target.astype(np.float64))).astype(np.int64)
    hits = []
    for shift in (-1, 0, 1):
        yy = y + shift
        ok = (yy >= 0) & (yy < x) & (yy**3 == target)
        hits.extend(zip(x[ok].tolist(), yy[ok].tolist()))
    return sorted(set(hits))


def nt_scan(n_max: int, cube_bound: int = 10**6) -> NtScanReport:
    """Exact scan of (3^(2n+1))^2 - 1 for n <= n_max plus the two congruence lemmas."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    report = NtScanReport(n_max=n_max, rows=[])
    for n in range(1, n_max + 1):
        value = 3 ** (4 * n + 2) - 1
        if value % 16 != 8 or value % 3 != 2 or value % 5 != 3:
            report.violations.append(f"n={n}: residues mod 16/3/5 differ from 8/-1/3")
        v7 = valuation(value, 7)
        cofactor = value // (8 * 7**v7)
        if cofactor * 8 * 7**v7 != value or cofactor == 1:
            report.violations.append(f"n={n}: value is 8*7^{v7}")
        report.rows.append(NtRow(n, value, v7, cofactor))

    report.ord7_mod9 = multiplicative_order(7, 9)
    for m in range(1, n_max + 1):
        # 8*7^m + 1 must be divisible by 9 (it equals 3^(4n+2))
        if ((8 * 7**m + 1) % 9 == 0) != (m % 3 == 0):
            report.violations.append(f"m={m}: mod-9 lemma fails")
    for n in range(1, n_max + 1):
        # 3^(4n+2) = 8*7^m + 1 = 1 (mod 7) requires 6 | 4n+2
        if ((3 ** (4 * n + 2) - 1) % 7 == 0) != (n % 3 == 1):
            report.violations.append(f"n={n}: mod-7 lemma fails")

    report.cube_bound = cube_bound
    report.cube_solutions = cube_difference_solutions(cube_bound)
    if report.cube_solutions != [(1, 0)]:
        report.violations.append(f"x^3 - y^3 = 1 has solutions {report.cube_solutions}")
    return report


__all__ = [
    "HurwitzWitness",
    "MacbeathVerdict",
    "NtScanReport",
    "hurwitz_search",
    "verify_witness",
    "macbeath_predicate",
    "macbeath_crosscheck",
    "exponent42_scan",
    "exponent42_candidates",
    "exponent_has_form_2_3_7n",
    "nt_scan",
    "cube_difference_solutions",
]
