import pytest
from hypothesis import given, settings

from sologic.grammar import ParseError, parse, parse_abstraction, parse_term, parse_var, show
from sologic.syntax import BOT, Atom1, Atom2, Forall2, Impl, Var1, Var2
from strategies import formulas1, formulas2


def test_round_trip_text():
    assert show(parse("(X^1_0(x0) -> X^1_0(x1))")) == "(X^1_0(x0) -> X^1_0(x1))"


def test_ap_atom():
    assert parse("Ap1(x2, x0)") == Atom1(1, Var1(2), (Var1(0),))


def test_coding_example_input():
    X = Var2(1, 0)
    want = Forall2(X, Impl(Atom2(X, (Var1(0),)), Atom2(X, (Var1(1),))))
    assert parse("forall X^1_0. (X^1_0(x0) -> X^1_0(x1))") == want


def test_precedence_and_associativity():
    assert parse("X^0_0 /\\ X^0_1 \\/ X^0_2 -> X^0_3 -> bot") == parse(
        "(((X^0_0 /\\ X^0_1) \\/ X^0_2) -> (X^0_3 -> bot))"
    )
    assert parse("X^0_0 \\/ X^0_1 \\/ X^0_2") == parse("(X^0_0 \\/ X^0_1) \\/ X^0_2")


def test_sugar():
    assert parse("~X^0_0") == Impl(parse("X^0_0"), BOT)
    assert parse("X^0_0 <-> X^0_1") == parse("(X^0_0 -> X^0_1) /\\ (X^0_1 -> X^0_0)")


def test_quantifier_scope_extends_right():
    assert parse("forall x0. Ap0(x0) -> bot") == parse("forall x0. (Ap0(x0) -> bot)")


def test_terms_and_vars():
    assert str(parse_term("f(a, g(x1))")) == "f(a, g(x1))"
    assert parse_var("X^2_3") == Var2(2, 3)
    assert parse_var("x4") == Var1(4)
    assert parse_abstraction(r"\x0 x1. Ap1(x0, x1)").arity == 2


@pytest.mark.parametrize(
    "text",
    ["forall x0 Ap0(x0)", "X^1_0(x0", "Ap1(x0)", "X^1_0(x0, x1)", "x0 -> bot", "bot bot", "@"],
)
def test_errors_carry_positions(text):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos >= 0


@settings(max_examples=2000)
@given(formulas2)
def test_parse_show_second_order(f):
    assert parse(show(f)) == f


@settings(max_examples=2000)
@given(formulas1)
def test_parse_show_first_order(f):
    assert parse(show(f)) == f
