import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sologic.grammar import parse, parse_abstraction, parse_term
from sologic.syntax import (
    BOT,
    Abstraction,
    Atom2,
    Var1,
    Var2,
    alpha_eq,
    free_vars,
    normalize_vacuous,
    subst_formula2,
    subst_term,
    subst_var2,
    substitute,
    term_vars,
)
from strategies import formulas2, terms, var1

x, y, z = Var1(0), Var1(1), Var1(2)
X1, Y1, Z1 = Var2(1, 0), Var2(1, 1), Var2(1, 2)


def test_free_vars_of_bottom_is_empty():
    assert free_vars(BOT) == (frozenset(), frozenset())


def test_free_vars_of_atom():
    assert free_vars(parse("X^1_0(x0)")) == ({x}, {X1})


def test_free_vars_ignore_bound_predicate():
    assert free_vars(parse("forall X^1_0. (X^1_0(x0) -> X^1_0(x1))")) == ({x, y}, set())


def test_variables_reject_negative_indices():
    with pytest.raises(ValueError):
        Var1(-1)
    with pytest.raises(ValueError):
        Var2(-1, 0)


def test_atom_arity_is_checked():
    with pytest.raises(ValueError):
        Atom2(X1, ())


def test_abstraction_params_distinct():
    with pytest.raises(ValueError):
        Abstraction((x, x), BOT)


class TestSubstTerm:
    def test_direct(self):
        assert subst_term(parse("Ap1(x0, x1)"), x, z) == parse("Ap1(x2, x1)")

    def test_non_variable_term(self):
        f = parse("Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0)")
        got = subst_term(f, x, parse_term("f(a)"))
        assert got == parse("Ap1(f(a), x1) -> Ap2(f(a), x1, x1) \\/ Ap1(x1, f(a))")

    def test_vacuous_renames_binder(self):
        f = parse("forall x1. X^1_0(x1)")
        got = subst_term(f, x, y)
        assert alpha_eq(got, f)

    def test_capture_avoided(self):
        got = subst_term(parse("forall x1. Ap1(x0, x1)"), x, y)
        assert got.var != y
        assert free_vars(got)[0] == {y}

    def test_fresh_index_is_least_unused(self):
        got = subst_term(parse("forall x1. Ap1(x0, x1)"), x, y)
        assert got == parse("forall x2. Ap1(x1, x2)")


class TestSubstVar2:
    def test_rename(self):
        assert subst_var2(parse("X^1_0(x0)"), X1, Z1) == parse("X^1_2(x0)")

    def test_shadowed(self):
        f = parse("forall X^1_0. X^1_0(x0)")
        assert subst_var2(f, X1, Z1) == f

    def test_two_renamings(self):
        f = parse("X^1_0(x1) -> X^2_0(x1, x1) \\/ X^1_1(x0)")
        got = subst_var2(subst_var2(f, X1, Z1), Var2(2, 0), Var2(2, 2))
        assert got == parse("X^1_2(x1) -> X^2_2(x1, x1) \\/ X^1_1(x0)")

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            subst_var2(parse("X^1_0(x0)"), X1, Var2(2, 0))


class TestSubstFormula2:
    def test_empty_predicate(self):
        assert subst_formula2(parse("X^1_0(x1)"), X1, parse_abstraction(r"\x1. bot")) == BOT

    def test_eta_instance(self):
        got = subst_formula2(parse("X^1_0(f(x2))"), X1, parse_abstraction(r"\x1. X^1_1(x1)"))
        assert got == parse("X^1_1(f(x2))")

    def test_arity_zero(self):
        g = parse("forall x0. Ap0(x0)")
        got = subst_formula2(parse("X^0_0 -> X^0_0"), Var2(0, 0), Abstraction((), g))
        assert got == parse("(forall x0. Ap0(x0)) -> forall x0. Ap0(x0)")

    def test_capture_in_body(self):
        # the abstraction body mentions x1 free; the binder x1 in F must move
        f = parse("forall x1. X^1_0(x1)")
        got = subst_formula2(f, X1, parse_abstraction(r"\x0. Ap1(x0, x1)"))
        assert free_vars(got)[0] == {y}
        assert got.var != y

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            subst_formula2(parse("X^1_0(x0)"), X1, parse_abstraction(r"\. bot"))


class TestAlpha:
    def test_renamed_binder(self):
        assert alpha_eq(parse("forall x0. Ap1(x0, x1)"), parse("forall x2. Ap1(x2, x1)"))

    def test_different_structure(self):
        assert not alpha_eq(parse("forall x0. Ap1(x0, x1)"), parse("forall x0. Ap1(x0, x0)"))

    def test_coding_output_shape(self):
        assert alpha_eq(
            parse("forall x5. (Ap1(x5, x0) -> Ap1(x5, x1))"), parse("forall x7. (Ap1(x7, x0) -> Ap1(x7, x1))")
        )

    def test_free_variable_not_renamed(self):
        assert not alpha_eq(parse("Ap0(x0)"), parse("Ap0(x1)"))


class TestVacuous:
    def test_drop_first_order(self):
        assert normalize_vacuous(parse("forall x0. X^0_1")) == parse("X^0_1")

    def test_keep_used(self):
        f = parse("forall x0. Ap0(x0)")
        assert normalize_vacuous(f) == f

    def test_nested(self):
        assert normalize_vacuous(parse("forall X^0_0. forall x1. X^0_1")) == parse("X^0_1")

    def test_inner_only(self):
        # the outer binder still binds an occurrence
        got = normalize_vacuous(parse("forall X^0_0. forall x1. X^0_0"))
        assert got == parse("forall X^0_0. X^0_0")


@given(formulas2, var1, terms)
def test_subst_term_free_vars(f, v, t):
    fo, so = free_vars(f)
    got = free_vars(subst_term(f, v, t))
    if v in fo:
        assert got == ((fo - {v}) | term_vars(t), so)
    else:
        assert got == (fo, so)


@given(formulas2, var1, terms)
def test_subst_respects_alpha(f, v, t):
    g = substitute(f, {})  # identity copy
    renamed = subst_term(f, Var1(9), Var1(9))
    assert alpha_eq(f, g) and alpha_eq(f, renamed)
    assert alpha_eq(subst_term(f, v, t), subst_term(renamed, v, t))


@given(formulas2)
def test_normalize_vacuous_idempotent_and_keeps_free_vars(f):
    g = normalize_vacuous(f)
    assert normalize_vacuous(g) == g
    assert free_vars(g) == free_vars(f)


@settings(max_examples=50)
@given(formulas2, st.integers(4, 6))
def test_alpha_variant_by_binder_renaming(f, i):
    # renaming every binder to fresh indices gives an alpha-equal formula
    from sologic.syntax import Exists1, Exists2, Forall1, Forall2

    counter = [i * 10]

    def go(g):
        match g:
            case Forall1(v, b) | Exists1(v, b):
                counter[0] += 1
                w = Var1(counter[0])
                return type(g)(w, go(subst_term(b, v, w)))
            case Forall2(v, b) | Exists2(v, b):
                counter[0] += 1
                w = Var2(v.arity, counter[0])
                return type(g)(w, go(subst_var2(b, v, w)))
        if hasattr(g, "left"):
            return type(g)(go(g.left), go(g.right))
        return g

    assert alpha_eq(go(f), f)
