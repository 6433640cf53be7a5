from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from autexp.grammar import SpecSyntaxError, canonical, parse_group_spec
from autexp.groups.spec import (
    AbelianSpec,
    CyclicSpec,
    DicyclicSpec,
    DihedralSpec,
    MatrixSpec,
    ProductSpec,
    SemidirectSpec,
    direct_product,
)
from autexp.numtheory import multiplicative_order


def test_examples():
    s = parse_group_spec("PSL2(13)")
    assert s == MatrixSpec("PSL2", 13) and s.order == 1092
    assert parse_group_spec("C6xC2") == AbelianSpec((6, 2))
    s = parse_group_spec("C11:C10(2)")
    assert s == SemidirectSpec(11, 10, 2) and s.order == 110
    assert parse_group_spec("GL2(3)").order == 48
    assert parse_group_spec("C15") == CyclicSpec(15)


def test_prime_power_argument():
    s = parse_group_spec("PSL2(5^3)")
    assert s.q == 125 and s.text() == "PSL2(5^3)"
    assert parse_group_spec("PSL2(125)") == s
    assert canonical("SL2(8)") == "SL2(2^3)"


def test_whitespace_is_ignored():
    assert parse_group_spec("  C 7 : C 3 ( 2 ) x C2 ") == parse_group_spec("C7:C3(2)xC2")
    assert parse_group_spec("PSL2( 7 )") == MatrixSpec("PSL2", 7)


def test_products():
    s = parse_group_spec("D3xC3")
    assert isinstance(s, ProductSpec) and s.order == 18 and s.text() == "D3xC3"
    assert parse_group_spec("Q8xC3").order == 24


@pytest.mark.parametrize(
    "text,pos",
    [("", 0), ("C", 1), ("X5", 0), ("C5x", 3), ("C5 y", 3), ("PSL2(7", 6), ("C7:D3(2)", 3), ("C7:C3(2", 7)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(SpecSyntaxError) as info:
        parse_group_spec(text)
    assert info.value.pos == pos


@pytest.mark.parametrize("text", ["C7:C3(3)", "C9:C2(3)", "PSL2(12)", "SL2(1)", "Q6", "C0", "PSL2(6^2)"])
def test_semantic_errors(text):
    with pytest.raises(SpecSyntaxError):
        parse_group_spec(text)


def _semidirects():
    out = []
    for m in range(3, 40):
        for n in range(2, 12):
            for k in range(2, m):
                if gcd(k, m) == 1 and pow(k, n, m) == 1:
                    out.append(SemidirectSpec(m, n, k))
    return out


atoms = st.one_of(
    st.integers(1, 60).map(CyclicSpec),
    st.integers(1, 30).map(DihedralSpec),
    st.integers(2, 20).map(lambda k: DicyclicSpec(4 * k)),
    st.sampled_from(_semidirects()),
    st.tuples(st.sampled_from(["PSL2", "SL2", "GL2"]), st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 121, 125]))
    .map(lambda t: MatrixSpec(*t)),
)


@given(st.lists(atoms, min_size=1, max_size=4))
def test_round_trip(parts):
    spec = direct_product(*parts)
    text = spec.text()
    again = parse_group_spec(text)
    assert again == spec and again.text() == text
    assert again.order == spec.order


@given(st.lists(st.integers(1, 30), min_size=2, max_size=4))
def test_cyclic_products_become_abelian(factors):
    spec = parse_group_spec("x".join(f"C{f}" for f in factors))
    assert spec == AbelianSpec(tuple(factors))


def test_semidirect_order_check_agrees_with_multiplicative_order():
    for spec in _semidirects()[:200]:
        assert spec.n % multiplicative_order(spec.k, spec.m) == 0
