"""Verdict assembly: the 42(g-1) exponent bound, the attaining genera, the
auxiliary bounds on witnessed actions, the abelian classification for
|G|/exp(G) = 2(g-1), and deterministic report serialization.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .fuchsian import (
    ActionRecord,
    GeneratingVector,
    Signature,
    acts_on_genus,
    genvec_search,
    make_action,
    min_genus,
)
from .groups.handle import GroupHandle, build_group
from .groups.invariants import is_z_group, order_profile, structure_predicates
from .groups.spec import CyclicSpec, abelian
from .hurwitz import hurwitz_search, macbeath_predicate
from .numtheory import divisors, is_prime

SCHEMA_VERSION = 1
PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL")


def _plain(value):
    # normalize to what JSON gives back, so records compare equal after a round trip
    return json.loads(json.dumps(value, sort_keys=True))


def _natural(value):
    """Sort key putting numbers (and numeric strings) in numeric order before text."""
    if isinstance(value, bool) or value is None:
        return (2, str(value))
    if isinstance(value, (int, float)):
        return (0, Fraction(value), "")
    if isinstance(value, str):
        try:
            return (0, Fraction(value), "")
        except ValueError:
            parts = re.split(r"(\d+)", value)
            return (1, tuple((0, int(s)) if s.isdigit() else (1, s) for s in parts))
    return (3, json.dumps(value, sort_keys=True))


@dataclass
class AtlasRecord:
    claim: str
    inputs: dict
    outputs: dict
    provenance: str
    ops: list[str]
    passed: bool

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance tag {self.provenance!r}")
        self.inputs = _plain(self.inputs)
        self.outputs = _plain(self.outputs)
        self.ops = list(self.ops)
        self.passed = bool(self.passed)

    def sort_key(self):
        return (self.claim, tuple((k, _natural(v)) for k, v in sorted(self.inputs.items())))

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "provenance": self.provenance,
            "ops": self.ops,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> AtlasRecord:
        return cls(d["claim"], d["inputs"], d["outputs"], d["provenance"], d["ops"], d["passed"])


# -- attaining genera --------------------------------------------------------------


@dataclass(frozen=True)
class AttainingRow:
    p: int
    genus: int
    group: str
    surfaces: int


def attaining_genera(p_max: int) -> list[AttainingRow]:
    """Primes p = 7 or p = +-1 mod 7 up to p_max, with g = (p^3 - p)/168 + 1."""
    rows = []
    for p in range(7, p_max + 1):
        if not is_prime(p) or not (p == 7 or p % 7 in (1, 6)):
            continue
        num = p**3 - p
        if num % 168:
            raise AssertionError(f"168 does not divide {p}^3 - {p}")
        rows.append(AttainingRow(p, num // 168 + 1, f"PSL2({p})", macbeath_predicate(p).surfaces))
    return rows


def attaining_checks(rows: list[AttainingRow], cap: int = 50_000) -> list[AtlasRecord]:
    """Per row: exp(PSL2(p)) = 42(g-1) and a (2,3,7) pair exists, when |PSL2(p)| <= cap."""
    from .fq import build_psl2, linear_group_order

    out = []
    for row in rows:
        outputs = {"genus": row.genus, "surfaces": row.surfaces, "bound": 42 * (row.genus - 1)}
        ok = True
        if linear_group_order("PSL2", row.p) <= cap:
            G = build_psl2(row.p)
            exp = order_profile(G).exponent
            w = hurwitz_search(G)
            outputs.update(exponent=exp, hurwitz=w is not None, order=G.order)
            ok = exp == 42 * (row.genus - 1) and w is not None and G.order == 84 * (row.genus - 1)
        else:
            outputs.update(exponent=None, hurwitz=None, order=None)
        out.append(
            AtlasRecord(
                "attaining-genera",
                {"p": row.p, "group": row.group},
                outputs,
                "DERIVED",
                ["attaining_genera", "order_profile", "hurwitz_search"],
                ok,
            )
        )
    return out


# -- the main bound --------------------------------------------------------------------


@dataclass(frozen=True)
class BoundVerdict:
    group: str
    genus: int
    order: int
    exponent: int
    bound: int
    holds: bool
    attained: bool
    hurwitz: bool
    half_order: bool
    consistent: bool  # attained <=> (Hurwitz pair, exp = |G|/2, |G| = 84(g-1))

    @property
    def ok(self) -> bool:
        return self.holds and self.consistent


def _require_witnessed(G: GroupHandle, record: ActionRecord):
    if record.witness is None:
        raise ValueError(f"{record.group}: bound checks need a witnessed action")
    if not record.witness.is_valid(G):
        raise ValueError(f"{record.group}: witness does not re-validate")


def main_bound_check(record: ActionRecord, G: GroupHandle | None = None) -> BoundVerdict:
    """exp(G) <= 42(g-1), with the equality case cross-checked."""
    if G is None:
        from .grammar import parse_group_spec

        G = build_group(parse_group_spec(record.group))
    _require_witnessed(G, record)
    g, n, e = record.genus, record.order, record.exponent
    bound = 42 * (g - 1)
    hurwitz = n % 84 == 0 and hurwitz_search(G) is not None
    half = 2 * e == n
    attained = e == bound
    return BoundVerdict(
        record.group, g, n, e, bound,
        holds=e <= bound,
        attained=attained,
        hurwitz=hurwitz,
        half_order=half,
        consistent=attained == (hurwitz and half and n == 84 * (g - 1)),
    )


# -- auxiliary bounds ------------------------------------------------------------------


@dataclass
class AuxRow:
    group: str
    genus: int
    order: int
    exponent: int
    max_element_order: int
    solvable: bool
    nilpotent: bool
    z_group: bool
    checks: dict[str, bool | None] = field(default_factory=dict)  # None: hypothesis not met

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())


def aux_bound_checks(actions: list[tuple[GroupHandle, ActionRecord]]) -> list[AuxRow]:
    rows = []
    for G, rec in actions:
        _require_witnessed(G, rec)
        st = structure_predicates(G)
        prof = order_profile(G)
        z = is_z_group(G, prof)
        g, n, e = rec.genus, rec.order, rec.exponent
        row = AuxRow(rec.group, g, n, e, prof.max_element_order, st.is_solvable, st.is_nilpotent, z)
        row.checks["solvable: exp <= 16(g-1) for g >= 3"] = e <= 16 * (g - 1) if st.is_solvable and g >= 3 else None
        row.checks["z-group: |G| < 16(g-1)"] = n < 16 * (g - 1) if z else None
        row.checks["nilpotent: exp <= 4g+2"] = e <= 4 * g + 2 if st.is_nilpotent else None
        row.checks["element orders <= 4g+2"] = prof.max_element_order <= 4 * g + 2
        rows.append(row)
    return rows


def largest_z_actions(rows: list[AuxRow]) -> dict[int, tuple[str, int]]:
    """Per genus, the biggest Z-group among the witnessed actions (descriptive only)."""
    best: dict[int, tuple[str, int]] = {}
    for row in rows:
        if row.z_group and (row.genus not in best or row.order > best[row.genus][1]):
            best[row.genus] = (row.group, row.order)
    return dict(sorted(best.items()))


def wiman_action(g: int) -> tuple[GroupHandle, ActionRecord | None]:
    """C_{4g+2} on genus g with signature (0; 2, 2g+1, 4g+2)."""
    G = build_group(CyclicSpec(4 * g + 2))
    w = genvec_search(G, Signature(0, (2, 2 * g + 1, 4 * g + 2)))
    return G, (make_action(G, w) if w is not None else None)


def exp24_scan(specs) -> list[dict]:
    """Groups of exponent 24 with |G|/24 = 2(g-1) for some g > 2, and whether they act there.

    Descriptive only: no outcome is asserted.
    """
    out = []
    for spec in specs:
        G = build_group(spec)
        prof = order_profile(G)
        if prof.exponent != 24 or prof.order % 48:
            continue
        g = prof.order // 48 + 1
        if g <= 2:
            continue
        found = acts_on_genus(G, g)
        out.append({"group": spec.text(), "genus": g, "acts": found is not None})
    return out


# -- abelian groups with |G|/exp(G) = 2(g-1) ------------------------------------------------


def abelian_invariant_factors(order: int) -> list[tuple[int, ...]]:
    """Every abelian group of this order as d1 >= d2 >= ... > 1 with d_{i+1} | d_i."""
    if order == 1:
        return [()]
    out = []

    def rec(remaining, prev, prefix):
        if remaining == 1:
            out.append(tuple(prefix))
            return
        for d in sorted(divisors(remaining), reverse=True):
            if d > 1 and prev % d == 0:
                rec(remaining // d, d, prefix + [d])

    rec(order, order, [])
    return sorted(out)


@dataclass
class AbelianCandidate:
    factors: tuple[int, ...]
    genus: int
    order: int
    exponent: int
    accepted: bool
    signature: Signature | None = None
    witness: GeneratingVector | None = None
    min_genus: int | None = None  # None: above g_max

    @property
    def label(self) -> str:
        return abelian(*self.factors).text()


@dataclass
class AbelianClassification:
    g_max: int
    candidates: list[AbelianCandidate]

    @property
    def accepted(self) -> list[AbelianCandidate]:
        return [c for c in self.candidates if c.accepted]

    @property
    def rejected(self) -> list[AbelianCandidate]:
        return [c for c in self.candidates if not c.accepted]

    def exponents_at(self, g: int) -> set[int]:
        return {c.exponent for c in self.candidates if c.genus == g}


def abelian_ratio_candidates(g_max: int) -> list[tuple[int, tuple[int, ...]]]:
    """(g, factors) with |G| <= 4g+4 and |G|/exp = 2(g-1), for 2 <= g <= g_max."""
    out = []
    for g in range(2, g_max + 1):
        for n in range(1, 4 * g + 5):
            for factors in abelian_invariant_factors(n):
                exp = factors[0] if factors else 1
                if n == 2 * (g - 1) * exp:
                    out.append((g, factors))
    return out


def classify_abelian_ratio(g_max: int = 9) -> AbelianClassification:
    """Abelian candidates filtered by the generating-vector oracle.

    Rejected candidates also get their minimum genus up to ``g_max``.
    """
    if g_max < 2:
        raise ValueError("g_max must be >= 2")
    cands = []
    for g, factors in abelian_ratio_candidates(g_max):
        G = build_group(abelian(*factors))
        found = acts_on_genus(G, g)
        c = AbelianCandidate(factors, g, G.order, factors[0], found is not None)
        if found is not None:
            c.signature, c.witness = found
        else:
            c.min_genus = min_genus(G, g_max).genus
        cands.append(c)
    return AbelianClassification(g_max, cands)


thm64_verify = classify_abelian_ratio


# -- reports -------------------------------------------------------------------------------


def emit_report(records: list[AtlasRecord], fmt: str = "json") -> str:
    records = sorted(records, key=AtlasRecord.sort_key)
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "records": [r.to_dict() for r in records]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "md":
        return _markdown(records)
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> list[AtlasRecord]:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {doc.get('schema_version')!r}")
    return [AtlasRecord.from_dict(d) for d in doc["records"]]


def _cell(value) -> str:
    if isinstance(value, (dict, list)):
        value = json.dumps(value, sort_keys=True)
    return str(value).replace("|", "\\|")


def _markdown(records: list[AtlasRecord]) -> str:
    lines = [f"# Verification report (schema {SCHEMA_VERSION})", ""]
    if not records:
        lines.append("No records.")
        return "\n".join(lines) + "\n"
    claims = sorted({r.claim for r in records})
    for claim in claims:
        rows = [r for r in records if r.claim == claim]
        status = "pass" if all(r.passed for r in rows) else "FAIL"
        lines += [f"## {claim} ({status})", "", "| inputs | outputs | provenance | ops | passed |", "|---|---|---|---|---|"]
        for r in rows:
            lines.append(
                f"| {_cell(r.inputs)} | {_cell(r.outputs)} | {r.provenance} | {_cell(', '.join(r.ops))} | {r.passed} |"
            )
        lines.append("")
    return "\n".join(lines)


def write_report(path: str | Path, text: str) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"could not write report to {path}: {exc}") from exc
