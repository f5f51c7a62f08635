import pytest
from hypothesis import given, settings

from sologic.coding import (
    PurityError,
    SchemaInstance,
    enumerate_instances,
    phi,
    phi_inv,
    rev,
    sc1_instance,
    sc2_instance,
    star,
)
from sologic.grammar import parse, parse_term, show
from sologic.syntax import (
    BOT,
    Abstraction,
    Atom1,
    Forall1,
    Forall2,
    Var1,
    Var2,
    alpha_eq,
    free_vars,
    is_closed,
    is_l1_pure,
    normalize_vacuous,
    subst_formula2,
    subst_term,
    subst_var2,
)
from strategies import formulas1, formulas2


def atoms1(f):
    out = []

    def go(g):
        if isinstance(g, Atom1):
            out.append(g)
        for k in ("left", "right", "body"):
            if hasattr(g, k):
                go(getattr(g, k))

    go(f)
    return out


class TestPhi:
    def test_index_preserving(self):
        assert phi(1, Var2(1, 3)) == Var1(3)
        assert phi_inv(2, Var1(3)) == Var2(2, 3)

    def test_arities_stay_distinct(self):
        assert phi_inv(1, Var1(0)) != phi_inv(2, Var1(0))

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            phi(2, Var2(1, 0))


class TestStar:
    def test_bottom(self):
        assert star(BOT) == BOT

    def test_renaming_example(self):
        got = star(parse("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))"))
        assert show(got) == "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))"

    def test_renaming_avoids_capture(self):
        # x0 is free, so the coded binder must not be x0
        got = star(parse("forall X^1_0. (X^1_0(x0) -> X^1_0(x1))"))
        assert alpha_eq(got, parse("forall x5. (Ap1(x5, x0) -> Ap1(x5, x1))"))
        assert got.var not in free_vars(got)[0]

    def test_comprehension_remark(self):
        s = SchemaInstance(parse("X^1_0(x0)"), (Var1(0),), (Var2(1, 0),))
        want = parse("forall x5. exists x6. forall x7. (Ap1(x5, x7) <-> Ap1(x6, x7))")
        assert alpha_eq(star(sc2_instance(s)), want)

    def test_rejects_first_order_input(self):
        with pytest.raises(PurityError):
            star(parse("Ap0(x0)"))


class TestRev:
    F = "(Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0))"
    BODY = "(X^1_0(x1) -> (X^2_0(x1, x1) \\/ X^1_1(x0)))"

    def test_non_variable_head(self):
        assert rev(parse("Ap1(f(a), a)")) == BOT

    def test_inserted_quantifiers(self):
        assert show(rev(parse("forall x0. " + self.F))) == "forall x0. forall X^1_0. forall X^2_0. " + self.BODY
        assert show(rev(parse("exists x0. " + self.F))) == "exists x0. exists X^1_0. exists X^2_0. " + self.BODY

    def test_variable_instance(self):
        f = parse(self.F)
        got = rev(subst_term(f, Var1(0), Var1(2)))
        assert show(got) == "(X^1_2(x1) -> (X^2_2(x1, x1) \\/ X^1_1(x2)))"
        via = subst_term(subst_var2(subst_var2(rev(f), Var2(1, 0), Var2(1, 2)), Var2(2, 0), Var2(2, 2)), Var1(0), Var1(2))
        assert got == via

    def test_term_instance(self):
        f = parse(self.F)
        t = parse_term("a")
        got = rev(subst_term(f, Var1(0), t))
        assert show(got) == "(bot -> (bot \\/ X^1_1(a)))"
        g = rev(f)
        g = subst_formula2(g, Var2(1, 0), Abstraction((Var1(5),), BOT))
        g = subst_formula2(g, Var2(2, 0), Abstraction((Var1(5), Var1(6)), BOT))
        assert got == subst_term(g, Var1(0), t)

    def test_idempotent_remark(self):
        a = parse("forall X^0_0. X^0_1")
        assert show(star(a)) == "forall x0. Ap0(x1)"
        assert show(rev(star(a))) == "forall x0. X^0_1"

    def test_rejects_second_order_input(self):
        with pytest.raises(PurityError):
            rev(parse("X^0_0"))


class TestSchema:
    def test_remark_instance(self):
        s = SchemaInstance(parse("X^1_0(x0)"), (Var1(0),), (Var2(1, 0),))
        assert show(sc2_instance(s)) == "forall X^1_0. exists X^1_1. forall x0. ((X^1_0(x0) -> X^1_1(x0)) /\\ (X^1_1(x0) -> X^1_0(x0)))"

    def test_smallest(self):
        s = SchemaInstance(BOT, ())
        assert sc2_instance(s) == parse("exists X^0_0. (bot <-> X^0_0)")
        assert alpha_eq(sc1_instance(s), parse("exists x0. (bot <-> Ap0(x0))"))

    def test_conjunction_witness_is_fresh(self):
        s = SchemaInstance(parse("X^1_0(x1) /\\ X^1_1(x1)"), (Var1(1),), (Var2(1, 0), Var2(1, 1)))
        f = sc2_instance(s)
        assert is_closed(f)
        assert s.witness == Var2(1, 2)

    def test_negated_body(self):
        s = SchemaInstance(parse("X^1_0(x0) -> bot"), (Var1(0),), (Var2(1, 0),))
        want = parse("forall x5. exists x6. forall x7. ((Ap1(x5, x7) -> bot) <-> Ap1(x6, x7))")
        assert alpha_eq(sc1_instance(s), want)

    def test_undeclared_variable(self):
        with pytest.raises(ValueError):
            SchemaInstance(parse("X^1_0(x0)"), (Var1(0),), ())

    def test_enumerated_instances_are_closed(self):
        insts = list(enumerate_instances(2, 1))
        assert len(insts) == 674
        for s in insts:
            assert is_closed(sc2_instance(s))
            assert sc1_instance(s) == star(sc2_instance(s))


@settings(max_examples=500)
@given(formulas2)
def test_variable_transfer(a):
    fo, so = free_vars(a)
    assert free_vars(star(a))[0] == fo | {phi(X.arity, X) for X in so}


@settings(max_examples=500)
@given(formulas2)
def test_star_image_has_variable_heads(a):
    s = star(a)
    assert is_l1_pure(s)
    assert all(isinstance(x.head, Var1) for x in atoms1(s))


@settings(max_examples=1000)
@given(formulas2)
def test_syntactic_round_trip(a):
    assert alpha_eq(normalize_vacuous(rev(star(a))), normalize_vacuous(a))


@settings(max_examples=500)
@given(formulas1)
def test_substitution_exchange_variable(f):
    for x in sorted(free_vars(f)[0]):
        z = Var1(7)
        got = rev(subst_term(f, x, z))
        g = rev(Forall1(x, f))
        # peel the binder for x and the inserted predicate binders
        inserted = []
        g = g.body
        while isinstance(g, Forall2) and g.var.index == x.index:
            inserted.append(g.var)
            g = g.body
        for X in inserted:
            g = subst_var2(g, X, Var2(X.arity, z.index))
        assert alpha_eq(got, subst_term(g, x, z))


@settings(max_examples=500)
@given(formulas1)
def test_substitution_exchange_term(f):
    t = parse_term("f(c)")
    for x in sorted(free_vars(f)[0]):
        got = rev(subst_term(f, x, t))
        g = rev(Forall1(x, f)).body
        inserted = []
        while isinstance(g, Forall2) and g.var.index == x.index:
            inserted.append(g.var)
            g = g.body
        for X in inserted:
            params = tuple(Var1(20 + i) for i in range(X.arity))
            g = subst_formula2(g, X, Abstraction(params, BOT))
        assert alpha_eq(got, subst_term(g, x, t))
