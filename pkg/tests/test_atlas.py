from __future__ import annotations

import json
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from autexp.atlas import (
    AtlasRecord,
    abelian_invariant_factors,
    abelian_ratio_candidates,
    attaining_checks,
    attaining_genera,
    aux_bound_checks,
    emit_report,
    largest_z_actions,
    main_bound_check,
    parse_report,
    classify_abelian_ratio,
    wiman_action,
    write_report,
)
from autexp.fq import build_gl2, build_psl2
from autexp.fuchsian import ActionRecord, Signature, genvec_search, make_action
from autexp.grammar import parse_group_spec
from autexp.groups import build_group
from autexp.numtheory import factorize


def _partitions(n):
    # number of integer partitions, by the usual table
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def test_attaining_genera():
    rows = attaining_genera(50)
    assert [(r.p, r.genus, r.surfaces) for r in rows] == [
        (7, 3, 1), (13, 14, 3), (29, 146, 3), (41, 411, 3), (43, 474, 3)
    ]
    assert all(r.group == f"PSL2({r.p})" for r in rows)


def test_attaining_rows_hold_together():
    recs = attaining_checks(attaining_genera(30))
    assert all(r.passed for r in recs)
    assert all(r.outputs["exponent"] == 42 * (r.outputs["genus"] - 1) for r in recs)


@pytest.mark.parametrize("n", [1, 4, 8, 12, 16, 32, 36, 72, 100])
def test_invariant_factor_count(n):
    forms = abelian_invariant_factors(n)
    want = 1
    for e in factorize(n).values():
        want *= _partitions(e)
    assert len(forms) == len(set(forms)) == want
    for f in forms:
        assert all(a % b == 0 for a, b in zip(f, f[1:]))


def test_candidate_case_split():
    by_genus = {}
    for g, factors in abelian_ratio_candidates(9):
        by_genus.setdefault(g, set()).add(factors[0])
    assert by_genus[2] == {2, 4, 6}
    assert by_genus[3] == {2, 4}
    assert all(by_genus[g] == {2} for g in by_genus if g > 3)
    labels = {(g, f) for g, f in abelian_ratio_candidates(2)}
    assert labels == {(2, (2, 2)), (2, (4, 2)), (2, (6, 2))}


def test_abelian_classification():
    res = classify_abelian_ratio(9)
    assert {(c.label, c.genus) for c in res.accepted} == {
        ("C2xC2", 2), ("C6xC2", 2), ("C2xC2xC2", 3), ("C4xC4", 3), ("C2xC2xC2xC2", 5)
    }
    rejected = {(c.label, c.genus): c.min_genus for c in res.rejected}
    assert rejected[("C4xC2", 2)] == 3
    assert rejected[("C4xC2xC2", 3)] > 3
    assert rejected[("C2xC2xC2xC2xC2", 9)] is None
    for c in res.accepted:
        assert c.witness.is_valid(build_group(parse_group_spec(c.label)))


def _action(G, sig):
    return make_action(G, genvec_search(G, Signature.parse(sig)))


def test_main_bound_examples():
    G = build_psl2(7)
    v = main_bound_check(_action(G, "(0;2,3,7)"), G)
    assert v.exponent == 84 == v.bound and v.attained and v.hurwitz and v.half_order and v.ok
    G = build_gl2(3)
    v = main_bound_check(_action(G, "(0;2,3,8)"), G)
    assert v.exponent == 24 and v.holds and not v.attained and v.ok
    G, rec = wiman_action(2)
    v = main_bound_check(rec, G)
    assert v.exponent == 10 <= 42 and v.ok


def test_klein_group_on_a_bigger_surface_is_not_attaining():
    G = build_psl2(7)
    rec = _action(G, "(0;3,3,4)")
    v = main_bound_check(rec, G)
    assert rec.genus > 3 and v.hurwitz and v.half_order and not v.attained and v.ok


def test_bound_checks_need_a_witness():
    G = build_psl2(7)
    bare = ActionRecord("PSL2(7)", Signature(0, (2, 3, 7)), 3, 168, 84)
    with pytest.raises(ValueError):
        main_bound_check(bare, G)
    with pytest.raises(ValueError):
        aux_bound_checks([(G, bare)])


def test_aux_bounds_examples():
    C = build_group(parse_group_spec("C11:C10(2)"))
    GL = build_gl2(3)
    W, wiman = wiman_action(2)
    rows = aux_bound_checks([(C, _action(C, "(0;2,5,10)")), (GL, _action(GL, "(0;2,3,8)")), (W, wiman)])
    c, gl, w = rows
    assert c.genus == 12 and c.z_group and c.checks["z-group: |G| < 16(g-1)"] is True
    assert gl.solvable and gl.checks["solvable: exp <= 16(g-1) for g >= 3"] is None
    assert w.nilpotent and w.checks["nilpotent: exp <= 4g+2"] is True
    assert all(r.ok for r in rows)
    assert largest_z_actions(rows) == {2: ("C10", 10), 12: ("C11:C10(2)", 110)}


@pytest.mark.parametrize("g", [2, 5, 11, 20])
def test_wiman_actions(g):
    G, rec = wiman_action(g)
    assert rec.genus == g and rec.exponent == 4 * g + 2 == rec.max_element_order


# -- reports ------------------------------------------------------------------------


def test_empty_report():
    text = emit_report([])
    assert json.loads(text) == {"records": [], "schema_version": 1}
    assert parse_report(text) == []
    assert "No records" in emit_report([], "md")


json_leaf = st.one_of(st.none(), st.booleans(), st.integers(-10**6, 10**6), st.text(max_size=8))
json_value = st.recursive(
    json_leaf,
    lambda inner: st.one_of(st.lists(inner, max_size=3), st.dictionaries(st.text(max_size=5), inner, max_size=3)),
    max_leaves=10,
)
records = st.builds(
    AtlasRecord,
    claim=st.sampled_from(["wiman", "bolza", "nt-scan"]),
    inputs=st.dictionaries(st.text(max_size=5), json_value, max_size=3),
    outputs=st.dictionaries(st.text(max_size=5), json_value, max_size=3),
    provenance=st.sampled_from(["PAPER", "DERIVED", "TRIVIAL"]),
    ops=st.lists(st.text(max_size=6), max_size=3),
    passed=st.booleans(),
)


@given(st.lists(records, max_size=6))
def test_report_round_trip(recs):
    text = emit_report(recs)
    back = parse_report(text)
    assert back == sorted(recs, key=AtlasRecord.sort_key)
    assert emit_report(back) == text
    assert emit_report(list(reversed(recs))) == text or Counter(map(AtlasRecord.sort_key, recs)).most_common(1)[0][1] > 1


def test_markdown_sections():
    recs = [
        AtlasRecord("wiman", {"genus": 2}, {"exponent": 10}, "DERIVED", ["genvec_search"], True),
        AtlasRecord("bolza", {"group": "GL2(3)"}, {"exponent": 24}, "PAPER", ["order_profile"], False),
    ]
    md = emit_report(recs, "md")
    assert "## bolza (FAIL)" in md and "## wiman (pass)" in md
    assert md.index("## bolza") < md.index("## wiman")


def test_bad_records_and_formats():
    with pytest.raises(ValueError):
        AtlasRecord("x", {}, {}, "GUESS", [], True)
    with pytest.raises(ValueError):
        emit_report([], "xml")
    with pytest.raises(ValueError):
        parse_report('{"schema_version": 99, "records": []}')


def test_write_report_errors_carry_the_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OSError, match="could not write report"):
        write_report(blocker / "sub" / "r.json", "{}")
    write_report(tmp_path / "ok" / "r.json", "{}")
    assert (tmp_path / "ok" / "r.json").read_text() == "{}"


def test_short_names_are_aliases():
    from autexp import atlas, fuchsian

    assert atlas.thm64_verify is atlas.classify_abelian_ratio
    assert fuchsian.thm63_solutions is fuchsian.normalized_equation_solutions
