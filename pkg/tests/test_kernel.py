import pytest

from sologic.deduction.kernel import CLASSICAL, Builder, Proof, Rejected, Sequent, assert_checked, check
from sologic.deduction.library import first_order_proofs, second_order_proofs
from sologic.grammar import parse, parse_term
from sologic.syntax import BOT, Abstraction, Var1, Var2

I2 = Builder()
C2 = Builder(CLASSICAL)
I1 = Builder(order=1)
x0, x1 = Var1(0), Var1(1)
X0, X1 = Var2(0, 0), Var2(1, 0)
A = parse("X^0_0")


def test_axiom():
    assert check(I2.ax(A))


def test_axiom_needs_hypothesis():
    p = Proof("Ax", Sequent((), A))
    v = check(p)
    assert not v and v.rule == "Ax" and v.path == ()


def test_identity_second_order():
    p = I2.forall2_i(I2.impl_i(I2.ax(A), A), X0, parse("forall X^0_0. (X^0_0 -> X^0_0)"))
    assert check(p)
    assert p.hyps == ()


def test_identity_unary():
    a = parse("X^1_0(x1)")
    p = I2.forall2_i(I2.impl_i(I2.ax(a), a), X1, parse("forall X^1_0. (X^1_0(x1) -> X^1_0(x1))"))
    assert check(p)


def test_forall2_elim_with_bottom_abstraction():
    h = parse("forall X^1_0. X^1_0(x1)")
    p = I2.forall2_e(I2.ax(h), Abstraction((Var1(3),), BOT))
    assert check(p) and p.concl == BOT


def test_forall2_elim_arity_mismatch():
    h = parse("forall X^1_0. X^1_0(x1)")
    good = I2.forall2_e(I2.ax(h), Abstraction((Var1(3),), BOT))
    bad = Proof("Forall2E", good.seq, good.premises, abs=Abstraction((), BOT))
    v = check(bad)
    assert not v and "arity" in v.reason


def test_eigenvariable_violation_names_variable():
    p = I2.forall2_i(I2.ax(A), X0, parse("forall X^0_0. X^0_0"))
    v = check(p)
    assert not v
    assert v.rule == "Forall2I"
    assert "eigenvariable condition" in v.reason and "X^0_0" in v.reason


def test_first_order_eigenvariable_violation():
    a = parse("Ap0(x0)")
    p = I1.forall1_i(I1.ax(a), x0, parse("forall x0. Ap0(x0)"))
    assert not check(p)


def test_raa_only_classical():
    nn = parse("~~X^0_0")
    body = I2.impl_e(I2.ax(nn), I2.ax(parse("~X^0_0")))
    v = check(I2.raa(body, A))
    assert not v and "classical" in v.reason
    cbody = C2.impl_e(C2.ax(nn), C2.ax(parse("~X^0_0")))
    assert check(C2.raa(cbody, A))


def test_second_order_rule_in_first_order_proof():
    p = I2.forall2_i(I2.impl_i(I2.ax(A), A), X0, parse("forall X^0_0. (X^0_0 -> X^0_0)"))
    q = Proof(p.rule, Sequent(p.hyps, p.concl, order=1), p.premises, p.eigen)
    assert not check(q)


def test_mixed_flags():
    p = I2.impl_i(I2.ax(A), A)
    inner = Proof("Ax", Sequent((A,), A, CLASSICAL))
    q = Proof(p.rule, p.seq, (inner,))
    v = check(q)
    assert not v and "flags" in v.reason


def test_rejection_path_points_at_node():
    bad = Proof("Ax", Sequent((A,), parse("X^0_1")))
    q = Proof("ImplI", Sequent((), parse("X^0_0 -> X^0_1")), (bad,))
    v = check(q)
    assert not v and v.path == (0,) and v.rule == "Ax"
    assert "rejected at 0 (Ax)" in str(v)


def test_unavailable_hypothesis():
    p = Proof("AndI", Sequent((), parse("X^0_0 /\\ X^0_0")), (I2.ax(A), I2.ax(A)))
    v = check(p)
    assert not v and "not available" in v.reason


def test_alpha_equivalent_conclusion_accepted():
    f = parse("forall X^0_0. (X^0_0 -> X^0_0)")
    g = parse("forall X^0_3. (X^0_3 -> X^0_3)")
    p = I2.impl_i(I2.ax(f), g)
    assert check(p)


def test_term_instance():
    h = parse("forall x0. Ap0(x0)")
    p = I1.forall1_e(I1.ax(h), parse_term("f(x1)"))
    assert check(p) and str(p.concl) == "Ap0(f(x1))"


def test_missing_term_payload():
    h = parse("forall x0. Ap0(x0)")
    good = I1.forall1_e(I1.ax(h), x1)
    bad = Proof("Forall1E", good.seq, good.premises)
    assert not check(bad)


def test_unknown_rule():
    assert "unknown rule" in check(Proof("Cut", Sequent((A,), A))).reason


def test_impure_formula():
    v = check(Proof("Ax", Sequent((parse("Ap0(x0)"),), parse("Ap0(x0)"))))
    assert not v and "order-2" in v.reason


def test_assert_checked_raises():
    with pytest.raises(Rejected) as e:
        assert_checked(Proof("Ax", Sequent((), A)))
    assert e.value.rule == "Ax"


def test_exists2_elim():
    major = I2.ax(parse("exists X^0_0. X^0_0"))
    y = Var2(0, 5)
    rule = I2.forall2_e(I2.ax(parse("forall X^0_0. (X^0_0 -> X^0_1)")), y)
    minor = I2.impl_e(rule, I2.ax(parse("X^0_5")))
    p = I2.exists2_e(major, minor, y)
    assert check(p)
    assert parse("X^0_5") not in p.hyps


def test_exists2_elim_eigen_in_side_hypothesis():
    major = I2.ax(parse("exists X^0_0. X^0_0"))
    minor = I2.impl_e(I2.ax(parse("X^0_5 -> X^0_1")), I2.ax(parse("X^0_5")))
    v = check(I2.exists2_e(major, minor, Var2(0, 5)))
    assert not v and "X^0_5 is free" in v.reason


@pytest.mark.parametrize("name", sorted(second_order_proofs()))
def test_library_second_order(name):
    assert check(second_order_proofs()[name])


@pytest.mark.parametrize("name", sorted(first_order_proofs()))
def test_library_first_order(name):
    p = first_order_proofs()[name]
    assert check(p) and p.seq.order == 1
