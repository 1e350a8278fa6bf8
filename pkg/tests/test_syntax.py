from fractions import Fraction

import pytest
from hypothesis import given

from belfl.mel import Box, diamond
from belfl.pformula import (
    B,
    LEquiv,
    LImplies,
    LNot,
    Minus,
    PAtom,
    StrongAnd,
    StrongOr,
    TruthConst,
    WeakAnd,
    WeakOr,
)
from belfl.propcore import And, Iff, Implies, Not, Or, Var, Vocabulary
from belfl.syntax import (
    ConstantRangeError,
    ParseError,
    UnknownVariable,
    parse_mel,
    parse_p,
    parse_prop,
    variables_in,
)
from conftest import PQ, prop_formulas

p, q, r = Var("p"), Var("q"), Var("r")


def test_prop_examples():
    assert parse_prop("p | q") == Or(p, q)
    assert parse_prop("!(p & q) -> r", Vocabulary(["p", "q", "r"])) == Implies(Not(And(p, q)), r)
    with pytest.raises(UnknownVariable):
        parse_prop("p <-> s", PQ)


def test_precedence_and_associativity():
    assert parse_prop("!p & q | r") == Or(And(Not(p), q), r)
    assert parse_prop("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse_prop("p <-> q -> r") == Iff(p, Implies(q, r))
    assert parse_prop("p & q & r") == And(And(p, q), r)


def test_unicode_spellings():
    assert parse_prop("¬p ∧ q → r ∨ p") == parse_prop("!p & q -> r | p")
    assert parse_mel("□p → ◇p") == Implies(Box(p), diamond(p))
    assert parse_p("0.5 ⊕ B(p) ⊙ B(q)") == StrongOr(TruthConst(Fraction(1, 2)), StrongAnd(B(p), B(q)))
    assert parse_p("B(p) ∧ B(q) ∨ B(p)") == WeakOr(WeakAnd(B(p), B(q)), B(p))
    assert parse_p("B(p) ≡ B(q)") == LEquiv(B(p), B(q))


@given(prop_formulas(("p", "q", "r")))
def test_print_parse_round_trip(f):
    assert parse_prop(str(f)) == f


def test_mel_layer():
    assert parse_mel("[](p) -> <>(p)") == Implies(Box(p), Not(Box(Not(p))))
    assert str(parse_mel("<>(p) & [](q)")) == "<>(p) & [](q)"
    with pytest.raises(ParseError):
        parse_mel("p -> [](q)")
    with pytest.raises(ParseError):
        parse_mel("[]([](p))")


def test_graded_examples():
    assert parse_p("0.8 -> B(p)") == LImplies(TruthConst(Fraction(4, 5)), PAtom(Box(p)))
    assert parse_p("P([](p) | [](q))") == PAtom(Or(Box(p), Box(q)))
    with pytest.raises(ConstantRangeError):
        parse_p("1.2 -> B(p)")


def test_graded_connectives():
    assert parse_p("B(p) (-) B(q)") == Minus(B(p), B(q))
    assert parse_p("!B(p) /\\ 2/3") == WeakAnd(LNot(B(p)), TruthConst(Fraction(2, 3)))
    assert parse_p("B(p) -> B(q) -> 0") == LImplies(B(p), LImplies(B(q), TruthConst(0)))


def test_graded_print_parse_round_trip():
    for text in ["(0.8 -> B(p)) && P(<>(p) & <>(!p))", "!(B(p) (+) B(q)) <-> (B(p) \\/ 1/3)"]:
        f = parse_p(text)
        assert parse_p(str(f)) == f


def test_nested_grading_is_rejected():
    with pytest.raises(ParseError):
        parse_p("P([](p) | B(q))")
    with pytest.raises(ParseError):
        parse_p("B(B(p))")


def test_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_prop("p & & q")
    assert info.value.pos == 4
    with pytest.raises(ParseError):
        parse_prop("p q")
    with pytest.raises(ParseError):
        parse_prop("p $ q")


def test_variables_in_order_of_appearance():
    assert variables_in("B(q) -> B(p & q)") == ["q", "p"]
    assert variables_in("[](r) | <>(p)", "mel") == ["r", "p"]
