from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autexp.fq import build_gl2, build_psl2
from autexp.fuchsian import (
    ActionRecord,
    GeneratingVector,
    Signature,
    acts_on_genus,
    divisibility_check,
    genus_from_action,
    genvec_search,
    hurwitz_sum,
    make_action,
    min_genus,
    multiplier_ladder,
    signatures_for_genus,
    signatures_up_to_measure,
    normalized_equation_bruteforce,
    normalized_equation_solutions,
)
from autexp.grammar import parse_group_spec
from autexp.groups import build_group, order_profile
from autexp.groups.spec import abelian


def group(text):
    return build_group(parse_group_spec(text))


def naive_genvec(G, sig):
    """Lexicographically least generating vector by plain enumeration (h = 0 only)."""
    assert sig.h == 0
    orders = G.element_orders
    pools = [np.flatnonzero(orders == m).tolist() for m in sig.periods]
    for combo in itertools.product(*pools):
        prod = 0
        for x in combo:
            prod = G.mul(prod, x)
        if prod == 0 and G.generates(combo):
            return combo
    return None


# -- signatures -------------------------------------------------------------------


def test_signature_parse_and_text():
    s = Signature.parse(" ( 0 ; 7, 2 ,3 ) ")
    assert s == Signature(0, (2, 3, 7)) and s.text() == "(0;2,3,7)"
    assert Signature.parse("(2;)") == Signature(2, ())
    with pytest.raises(ValueError):
        Signature.parse("(0;1,2)")
    with pytest.raises(ValueError):
        Signature.parse("0;2,3")


@pytest.mark.parametrize(
    "order,sig,g", [(168, "(0;2,3,7)", 3), (48, "(0;2,3,8)", 2), (4, "(0;2,2,2,2,2)", 2), (10, "(0;2,5,10)", 2)]
)
def test_genus_from_action(order, sig, g):
    assert genus_from_action(order, Signature.parse(sig)) == g


def test_non_integer_genus_is_an_answer():
    assert genus_from_action(5, Signature(0, (2, 3, 7))) == Fraction(89, 84)


@given(
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=0, max_value=3),
    st.lists(st.integers(min_value=2, max_value=30), max_size=6),
)
def test_genus_matches_long_form(order, h, periods):
    sig = Signature(h, tuple(periods))
    assert 2 * genus_from_action(order, sig) - 2 == hurwitz_sum(order, sig)
    assert sig.measure == 2 * h - 2 + sum(1 - Fraction(1, m) for m in periods)


# -- the multiplier ladder ------------------------------------------------------------


def test_ladder_top():
    ladder = multiplier_ladder(24)
    values = [r.multiplier for r in ladder]
    assert values[:4] == [84, 48, 40, 36]
    assert ladder[0].signatures == (Signature(0, (2, 3, 7)),)
    assert ladder[1].signatures == (Signature(0, (2, 3, 8)),)
    assert all(Fraction(x) not in values for x in (44, 32, 28))
    assert values == sorted(values, reverse=True)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=14, max_value=60), st.integers(min_value=1, max_value=20))
def test_ladder_monotone_in_threshold(high, drop):
    # at 12 and below the (0;2,3,m) family makes the set infinite
    low = max(13, high - drop)
    a = {r.multiplier for r in multiplier_ladder(high)}
    b = {r.multiplier for r in multiplier_ladder(low)}
    assert a <= b


def test_signature_enumeration_against_brute_force():
    mu_max = Fraction(1, 10)
    got = set(signatures_up_to_measure(mu_max))
    naive = set()
    # r = 4 already has measure >= 1/6 and h >= 1 has measure >= 1/2
    for r in range(0, 5):
        for periods in itertools.combinations_with_replacement(range(2, 50), r):
            s = Signature(0, periods)
            if 0 < s.measure <= mu_max:
                naive.add(s)
    assert got == naive


def test_infinite_family_is_refused():
    with pytest.raises(ValueError):
        list(signatures_up_to_measure(Fraction(1)))
    with pytest.raises(ValueError):
        multiplier_ladder(12)


# -- actions and divisibility -----------------------------------------------------------


def test_divisibility_examples():
    G = build_gl2(3)
    w = genvec_search(G, Signature(0, (2, 3, 8)))
    rec = make_action(G, w)
    assert (rec.order, rec.exponent, rec.genus) == (48, 24, 2) and divisibility_check(rec)
    G = build_psl2(7)
    rec = make_action(G, genvec_search(G, Signature(0, (2, 3, 7))))
    assert (rec.order, rec.exponent, rec.genus) == (168, 84, 3) and divisibility_check(rec)
    G = group("C2xC2")
    rec = make_action(G, genvec_search(G, Signature(0, (2,) * 5)))
    assert rec.genus == 2 and divisibility_check(rec)


def test_action_record_rejects_fractional_genus():
    with pytest.raises(ValueError):
        ActionRecord("C5", Signature(0, (2, 3, 7)), 2, 5, 5)


def test_corrupted_profile_is_reported():
    rec = ActionRecord("x", Signature(0, (2, 2, 2, 2, 2)), 2, 4, 3)
    with pytest.raises(ValueError):
        divisibility_check(rec)


# -- the normalized equation ----------------------------------------------------------------


@pytest.mark.parametrize("e", [24, 20, 18, 12, 10, 8, 6, 4, 2])
def test_normalized_equation_complete(e):
    sols = normalized_equation_solutions(e, check_feasibility=False)
    assert sorted((s.h, s.periods) for s in sols) == normalized_equation_bruteforce(e)
    for s in sols:
        if (e, s.h, s.periods) != (2, 1, (2,)):
            assert s.h == 0 and len(s.periods) <= 5


def test_normalized_equation_examples():
    pairs = lambda e: {(s.h, s.periods) for s in normalized_equation_solutions(e, check_feasibility=False)}
    assert pairs(2) == {(0, (2, 2, 2, 2, 2)), (1, (2,))}
    assert pairs(4) == {(0, (2, 2, 2, 4)), (0, (4, 4, 4))}
    assert pairs(24) == {(0, (2, 3, 8))}


def test_exceptional_solution_flagged():
    sols = normalized_equation_solutions(2)
    flagged = [s for s in sols if s.flag]
    assert [(s.h, s.periods) for s in flagged] == [(1, (2,))]
    assert flagged[0].flag == "infeasible by generating-vector test"
    for k in range(1, 7):
        assert genvec_search(build_group(abelian(*[2] * k)), Signature(1, (2,))) is None


# -- generating vectors ---------------------------------------------------------------------


def test_known_witnesses():
    w = genvec_search(group("C10"), Signature(0, (2, 5, 10)))
    assert w.elliptic == (5, 2, 3)
    G = group("C2xC2")
    w = genvec_search(G, Signature(0, (2,) * 5))
    assert w.is_valid(G)
    a, b = w.elliptic[0], w.elliptic[3]
    ab = G.mul(a, b)
    other = GeneratingVector(w.signature, (), (a, b, ab, ab, ab))
    assert other.is_valid(G) and w.elliptic <= other.elliptic
    assert genvec_search(group("C2xC2xC2xC2xC2"), Signature(0, (2,) * 5)) is None


@pytest.mark.parametrize(
    "text,sig",
    [("C2xC2", "(0;2,2,2,2,2)"), ("C10", "(0;2,5,10)"), ("D4", "(0;2,2,2,2)"), ("C4xC2", "(0;2,4,4)"),
     ("C4xC2", "(0;2,2,4,4)"), ("D3", "(0;2,2,3)"), ("C7:C3(2)", "(0;3,3,7)"), ("Q8", "(0;4,4,4)"),
     ("C3xC3", "(0;3,3,3)"), ("D5", "(0;2,2,2,2)")],
)
def test_search_matches_naive_least(text, sig):
    G = group(text)
    s = Signature.parse(sig)
    w = genvec_search(G, s)
    naive = naive_genvec(G, s)
    assert (w.elliptic if w else None) == naive


def test_hyperbolic_witness():
    G = group("C2xC2")
    w = genvec_search(G, Signature(1, (2, 2)))
    assert w is not None and w.is_valid(G) and len(w.hyperbolic) == 2
    G = group("D3")
    w = genvec_search(G, Signature(2, ()))
    assert w is not None and w.is_valid(G)


def test_witness_round_trip():
    G = group("C10")
    w = genvec_search(G, Signature(0, (2, 5, 10)))
    assert GeneratingVector.from_dict(w.to_dict()) == w


def test_period_not_an_element_order():
    assert genvec_search(group("C10"), Signature(0, (3, 3, 3))) is None


SMALL = ["C2xC2", "C4xC2", "C6", "D3", "D4", "Q8", "C3xC3", "C7:C3(2)", "D5", "C2xC2xC2"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.integers(min_value=2, max_value=6))
def test_any_witness_revalidates_and_divides(text, g):
    G = group(text)
    prof = order_profile(G)
    for sig in signatures_for_genus(G.order, g, [m for m in prof.counts if m > 1]):
        w = genvec_search(G, sig)
        if w is not None:
            assert w.is_valid(G)
            rec = make_action(G, w)
            assert rec.genus == g and divisibility_check(rec)


# -- minimum genus ----------------------------------------------------------------------------


def test_minimum_genera():
    assert min_genus(group("C2xC2"), 9).genus == 2
    assert min_genus(group("C4xC2"), 9).genus == 3
    assert min_genus(group("C2xC2xC2xC2xC2"), 9).genus is None


def test_c4xc2_fails_at_genus_2_by_naive_search():
    G = group("C4xC2")
    sigs = signatures_for_genus(8, 2, [2, 4])
    assert sigs
    for sig in sigs:
        if sig.h == 0:
            assert naive_genvec(G, sig) is None
    assert acts_on_genus(G, 2) is None


def test_remark_example_action():
    G = group("C11:C10(2)")
    found = acts_on_genus(G, 12)
    assert found is not None
    rec = make_action(G, found[1])
    assert rec.genus == 12 and rec.order < 16 * 11
