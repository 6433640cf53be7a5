"""Built-in catalog of small groups (all of order <= 2000)."""

from __future__ import annotations

from .spec import GroupSpec

CATALOG_ORDER_LIMIT = 2000

_TEXT = [
    # cyclic
    *[f"C{n}" for n in range(1, 25)],
    "C30", "C42", "C60", "C105",
    # abelian, not cyclic
    "C2xC2", "C4xC2", "C2xC2xC2", "C3xC3", "C6xC2", "C4xC4", "C4xC2xC2",
    "C2xC2xC2xC2", "C6xC6", "C12xC2", "C5xC5", "C2xC2xC2xC2xC2", "C6xC2xC2",
    # dihedral and dicyclic
    *[f"D{n}" for n in range(3, 13)], "D15",
    "Q8", "Q12", "Q16", "Q20", "Q24",
    # metacyclic semidirect products
    "C7:C3(2)", "C5:C4(2)", "C5:C4(4)", "C7:C6(3)", "C11:C5(3)", "C11:C10(2)",
    "C13:C3(3)", "C13:C4(5)", "C19:C9(4)", "C31:C5(2)", "C41:C10(4)", "C9:C6(2)",
    # direct products
    "D3xC3", "D4xC3", "Q8xC3", "D3xC2", "C7:C3(2)xC2", "D5xC3", "Q8xC2", "GL2(3)xC2",
    # linear groups
    "PSL2(4)", "PSL2(5)", "PSL2(7)", "PSL2(8)", "PSL2(9)", "PSL2(11)", "PSL2(13)",
    "SL2(3)", "SL2(4)", "SL2(5)", "SL2(7)", "SL2(9)", "SL2(11)",
    "GL2(2)", "GL2(3)", "GL2(4)", "GL2(5)",
]


def catalog_specs() -> list[GroupSpec]:
    """Parsed catalog entries, in a fixed order."""
    from ..grammar import parse_group_spec

    specs = [parse_group_spec(t) for t in _TEXT]
    too_big = [s.text() for s in specs if s.order > CATALOG_ORDER_LIMIT]
    if too_big:
        raise AssertionError(f"catalog entries above {CATALOG_ORDER_LIMIT}: {too_big}")
    return specs


def catalog_texts() -> list[str]:
    return [s.text() for s in catalog_specs()]
