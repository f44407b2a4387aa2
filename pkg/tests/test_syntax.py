from itertools import islice

import hypothesis.strategies as st
import pytest
from hypothesis import given

from revcat.generate import generate_programs
from revcat.syntax import (
    UNIT_ENUM, App, Const, InjL, InjR, Iso, IsoType, Pair, ParseError, Prod, Sum, Val, Var,
    EnumRef, free_vars, parse_program, parse_term, parse_type, parse_value, print_program,
    print_term, print_type, print_value,
)

TT = Const("unit", 0, "tt")
UNIT = EnumRef("unit")


def test_smallest_program():
    p = parse_program("enum unit = { tt }  main = tt")
    assert p.enums == (UNIT_ENUM,)
    assert p.main == Val(TT)


def test_swap_definition():
    p = parse_program("iso sw : unit + unit <-> unit + unit { | inl x <-> inr x | inr x <-> inl x }")
    (d,) = p.defs
    assert d.name == "sw"
    assert d.type == IsoType(Sum(UNIT, UNIT), Sum(UNIT, UNIT))
    assert d.iso.clauses == ((InjL(Var("x")), InjR(Var("x"))), (InjR(Var("x")), InjL(Var("x"))))


def test_unclosed_pair_is_a_syntax_error():
    with pytest.raises(ParseError) as e:
        parse_program("main = (tt, ")
    assert "end of input" in str(e.value)


def test_print_examples():
    assert print_term(Val(Pair(TT, TT))) == "(tt, tt)"
    assert print_value(InjL(Var("x"))) == "inl x"


def test_star_binds_tighter_than_plus():
    assert parse_type("unit + unit * unit") == Sum(UNIT, Prod(UNIT, UNIT))
    assert parse_type("(unit + unit) * unit") == Prod(Sum(UNIT, UNIT), UNIT)


def test_free_vars():
    assert free_vars(Pair(Var("x"), InjL(Var("y")))) == ["x", "y"]
    assert free_vars(TT) == []
    assert free_vars(Pair(Var("x"), Var("x"))) == ["x", "x"]


def test_identifiers_resolve_to_constants_first():
    assert parse_value("tt") == TT
    assert parse_value("tx") == Var("tx")


def test_literal_iso_term():
    t = parse_term("{ | inl x <-> x } inr tt")
    assert t == App(Iso(((InjL(Var("x")), Var("x")),)), Val(InjR(TT)))


def test_generated_programs_round_trip():
    for p in islice(generate_programs(7), 1000):
        assert parse_program(print_program(p)) == p


names = st.sampled_from(["x", "y", "z", "w"])
values = st.recursive(
    st.just(TT) | names.map(Var),
    lambda inner: st.one_of(inner.map(InjL), inner.map(InjR), st.builds(Pair, inner, inner)),
    max_leaves=12,
)
types = st.recursive(st.just(UNIT), lambda inner: st.one_of(
    st.builds(Sum, inner, inner), st.builds(Prod, inner, inner)), max_leaves=8)


@given(values)
def test_value_round_trip(v):
    assert parse_value(print_value(v)) == v


@given(types)
def test_type_round_trip(a):
    assert parse_type(print_type(a)) == a
