"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .atlas import AtlasRecord, attaining_checks, attaining_genera, emit_report, write_report
from .cache import ProfileCache, profile_of
from .fuchsian import (
    GENVEC_ORDER_LIMIT,
    Signature,
    genus_from_action,
    genvec_search,
    multiplier_ladder,
    normalized_equation_solutions,
)
from .grammar import SpecSyntaxError, parse_group_spec
from .groups.handle import GroupOrderCapExceeded, build_group
from .groups.invariants import is_z_group, structure_predicates, zassenhaus_decompose
from .groups.spec import MatrixSpec
from .hurwitz import hurwitz_search, macbeath_crosscheck, macbeath_predicate, prime_powers_upto

STRUCTURE_ORDER_LIMIT = 20_000


class UsageError(Exception):
    pass


def _spec(text: str):
    try:
        return parse_group_spec(text)
    except SpecSyntaxError as exc:
        raise UsageError(str(exc)) from None


def _cache(args) -> ProfileCache | None:
    return ProfileCache(args.cache_dir) if args.cache_dir else None


# -- commands: each returns (records, ok) ----------------------------------------------


def cmd_group_info(args):
    spec = _spec(args.spec)
    prof = profile_of(spec, _cache(args))
    outputs = {
        "order": prof.order,
        "exponent": prof.exponent,
        "element_orders": {str(k): v for k, v in prof.counts.items()},
        "sylow": {str(p): {"order": s.order, "exponent": s.exponent} for p, s in prof.sylow.items()},
        "z_group": all(s.exponent == s.order for s in prof.sylow.values()),
    }
    ok = True
    if prof.order <= STRUCTURE_ORDER_LIMIT:
        G = build_group(spec)
        st = structure_predicates(G)
        outputs["structure"] = {k: getattr(st, k) for k in st.__dataclass_fields__}
        ok = is_z_group(G, prof) == outputs["z_group"]
        if outputs["z_group"]:
            form = zassenhaus_decompose(G, prof)
            outputs["zassenhaus"] = {"m": form.m, "n": form.n, "k": form.k}
    rec = AtlasRecord("group-info", {"group": spec.text()}, outputs, "DERIVED", ["build_group", "order_profile"], ok)
    return [rec], ok


def cmd_hurwitz_check(args):
    spec = _spec(args.spec)
    G = build_group(spec)
    w = hurwitz_search(G)
    outputs = {"hurwitz": w is not None, "order": G.order}
    if w is not None:
        outputs["sigma"] = G.describe(w.sigma)
        outputs["tau"] = G.describe(w.tau)
    ok = True
    if isinstance(spec, MatrixSpec) and spec.kind == "PSL2" and spec.q >= 4:
        verdict = macbeath_predicate(spec.q)
        outputs["predicate"] = verdict.hurwitz
        outputs["case"] = verdict.case
        ok = verdict.hurwitz == (w is not None)
    rec = AtlasRecord("hurwitz-check", {"group": spec.text()}, outputs, "DERIVED", ["hurwitz_search"], ok)
    return [rec], ok


def cmd_hurwitz_scan(args):
    qs = prime_powers_upto(args.qmax, 4)
    rows = macbeath_crosscheck(args.qmax, qs=qs, cap=args.cap)
    recs = [
        AtlasRecord(
            "hurwitz-criterion",
            {"q": r.q},
            {"predicate": r.predicate, "case": r.case, "search": r.search},
            "DERIVED",
            ["macbeath_predicate", "hurwitz_search"],
            r.agree,
        )
        for r in rows
    ]
    return recs, all(r.agree for r in rows)


def cmd_fuchsian_ladder(args):
    recs = [
        AtlasRecord(
            "multiplier-ladder",
            {"threshold": str(args.threshold), "multiplier": str(r.multiplier)},
            {"signatures": [s.text() for s in r.signatures]},
            "DERIVED",
            ["multiplier_ladder"],
            True,
        )
        for r in multiplier_ladder(args.threshold)
    ]
    return recs, True


def cmd_fuchsian_equation(args):
    if args.exp < 2:
        raise UsageError("--exp must be >= 2")
    recs = [
        AtlasRecord(
            "normalized-equation",
            {"exponent": args.exp, "h": s.h, "periods": list(s.periods)},
            {"flag": s.flag},
            "DERIVED",
            ["normalized_equation_solutions"],
            True,
        )
        for s in normalized_equation_solutions(args.exp)
    ]
    return recs, True


def cmd_genvec_search(args):
    spec = _spec(args.spec)
    try:
        sig = Signature.parse(args.signature)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if spec.order > GENVEC_ORDER_LIMIT:
        raise UsageError(f"|G| = {spec.order} exceeds the generating-vector limit {GENVEC_ORDER_LIMIT}")
    G = build_group(spec)
    w = genvec_search(G, sig)
    g = genus_from_action(G.order, sig)
    outputs = {"genus": str(g), "found": w is not None}
    ok = True
    if w is not None:
        outputs["hyperbolic"] = [G.describe(x) for x in w.hyperbolic]
        outputs["elliptic"] = [G.describe(x) for x in w.elliptic]
        outputs["indices"] = w.to_dict()
        ok = w.is_valid(G)
    rec = AtlasRecord(
        "genvec-search", {"group": spec.text(), "signature": sig.text()}, outputs, "DERIVED", ["genvec_search"], ok
    )
    return [rec], ok


def cmd_atlas_genera(args):
    rows = attaining_genera(args.pmax)
    if args.check:
        recs = attaining_checks(rows)
    else:
        recs = [
            AtlasRecord(
                "attaining-genera",
                {"p": r.p, "group": r.group},
                {"genus": r.genus, "surfaces": r.surfaces, "bound": 42 * (r.genus - 1)},
                "DERIVED",
                ["attaining_genera"],
                True,
            )
            for r in rows
        ]
    return recs, all(r.passed for r in recs)


def cmd_verify_all(args):
    from .verify import run_all

    echo = None if args.fmt != "text" else print
    results = run_all(deep=args.deep, cache=_cache(args), echo=echo)
    recs = [r for res in results for r in res.records]
    return recs, all(res.passed for res in results)


# -- parser and dispatch -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--md", dest="fmt", action="store_const", const="md", help="Markdown output")
    common.add_argument("--cache-dir", default=None, help="directory for cached order profiles")
    common.add_argument("--out", default=None, help="write the report to this file instead of stdout")
    common.set_defaults(fmt="text")

    parser = argparse.ArgumentParser(prog="autexp", description="Exponents of automorphism groups of Riemann surfaces.")
    parser.add_argument("-v", "--verbose", action="store_true")
    top = parser.add_subparsers(dest="area", required=True)

    group = top.add_parser("group", help="finite group data").add_subparsers(dest="command", required=True)
    p = group.add_parser("info", parents=[common], help="order, exponent, Sylow data, structure")
    p.add_argument("spec")
    p.set_defaults(func=cmd_group_info)

    hur = top.add_parser("hurwitz", help="(2,3,7) generation").add_subparsers(dest="command", required=True)
    p = hur.add_parser("check", parents=[common], help="search one group for a (2,3,7) pair")
    p.add_argument("spec")
    p.set_defaults(func=cmd_hurwitz_check)
    p = hur.add_parser("scan", parents=[common], help="compare search and criterion on PSL2(q)")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="skip groups above this order")
    p.set_defaults(func=cmd_hurwitz_scan)

    fu = top.add_parser("fuchsian", help="signature arithmetic").add_subparsers(dest="command", required=True)
    p = fu.add_parser("ladder", parents=[common], help="values |G|/(g-1) = 2/mu down to a threshold")
    p.add_argument("--threshold", type=_positive_fraction, required=True)
    p.set_defaults(func=cmd_fuchsian_ladder)
    p = fu.add_parser("thm63", parents=[common], help="solve 1 = e(2h-2) + sum (e/s)(s-1)")
    p.add_argument("--exp", type=int, required=True)
    p.set_defaults(func=cmd_fuchsian_equation)

    gv = top.add_parser("genvec", help="generating vectors").add_subparsers(dest="command", required=True)
    p = gv.add_parser("search", parents=[common], help="least generating vector for a signature")
    p.add_argument("spec")
    p.add_argument("signature", help="literal like (0;2,3,7)")
    p.set_defaults(func=cmd_genvec_search)

    at = top.add_parser("atlas", help="assembled verdicts").add_subparsers(dest="command", required=True)
    p = at.add_parser("genera", parents=[common], help="genera where exp = 42(g-1) is attained")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--check", action="store_true", help="also build PSL2(p) and confirm exponent and generators")
    p.set_defaults(func=cmd_atlas_genera)

    ve = top.add_parser("verify", help="acceptance checks").add_subparsers(dest="command", required=True)
    p = ve.add_parser("all", parents=[common], help="run every acceptance check")
    p.add_argument("--deep", action="store_true", help="include the large groups")
    p.set_defaults(func=cmd_verify_all)
    return parser


def _positive_fraction(text: str):
    from fractions import Fraction

    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _text(records: list[AtlasRecord]) -> str:
    lines = []
    for r in sorted(records, key=AtlasRecord.sort_key):
        head = ", ".join(f"{k}={v}" for k, v in sorted(r.inputs.items()))
        lines.append(f"{r.claim} [{head}] {'ok' if r.passed else 'FAILED'}")
        for k, v in sorted(r.outputs.items()):
            lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        records, ok = args.func(args)
    except (UsageError, GroupOrderCapExceeded) as exc:
        print(f"autexp: error: {exc}", file=sys.stderr)
        return 2
    text = _text(records) if args.fmt == "text" else emit_report(records, args.fmt)
    if args.out:
        write_report(args.out, text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run_command())
