"""A small library of named example proofs.

The second-order proofs exercise every rule, impredicative instantiation
included.  The first-order ones are native ``Ap_n`` proofs.
"""

from __future__ import annotations

from ..grammar import parse, parse_abstraction, parse_term
from ..syntax import BOT, Forall1, Forall2, Impl, Var1, Var2
from .kernel import CLASSICAL, INTUITIONISTIC, Builder, Proof

I2 = Builder(INTUITIONISTIC, 2)
C2 = Builder(CLASSICAL, 2)
I1 = Builder(INTUITIONISTIC, 1)
C1 = Builder(CLASSICAL, 1)

X0, Y0 = Var2(0, 0), Var2(0, 1)
P1 = Var2(1, 0)
x0, x1, x2 = Var1(0), Var1(1), Var1(2)


def f(text: str):
    return parse(text)


def _identity(B: Builder, a):
    return B.impl_i(B.ax(a), a)


def _gen(B: Builder, p: Proof, *vs) -> Proof:
    """Universally close ``p`` over ``vs`` (innermost last)."""
    for v in reversed(vs):
        Q = Forall1 if isinstance(v, Var1) else Forall2
        p = B.forall_i(p, v, Q(v, p.concl))
    return p


def identity0() -> Proof:
    return _gen(I2, _identity(I2, f("X^0_0")), X0)


def identity1() -> Proof:
    return _gen(I2, _identity(I2, f("X^1_0(x1)")), P1)


def forall_bot_instance() -> Proof:
    """``forall X. X(x0)`` refutes itself through the empty predicate."""
    h = f("forall X^1_0. X^1_0(x0)")
    return I2.impl_i(I2.forall2_e(I2.ax(h), parse_abstraction(r"\x1. bot")), h)


def second_order_ex_falso() -> Proof:
    h = f("forall X^0_0. X^0_0")
    return I2.impl_i(I2.forall2_e(I2.ax(h), parse_abstraction(r"\. X^0_1 /\ X^1_0(x0)")), h)


def weakening_k() -> Proof:
    a, b = f("X^0_0"), f("X^0_1")
    p = I2.impl_i(I2.impl_i(I2.ax(a), b), a)
    return _gen(I2, p, X0, Y0)


def and_comm() -> Proof:
    h = f("X^0_0 /\\ X^1_0(x0)")
    p = I2.and_i(I2.and_e2(I2.ax(h)), I2.and_e1(I2.ax(h)))
    return _gen(I2, I2.impl_i(p, h), X0)


def or_comm() -> Proof:
    h = f("X^0_0 \\/ X^0_1")
    a, b = h.left, h.right
    p = I2.or_e(I2.ax(h), I2.or_i2(I2.ax(a), b), I2.or_i1(I2.ax(b), a))
    return _gen(I2, I2.impl_i(p, h), X0, Y0)


def forall_instance_term() -> Proof:
    h = f("forall x1. X^1_0(x1)")
    return _gen(I2, I2.impl_i(I2.forall1_e(I2.ax(h), parse_term("f(x0)")), h), P1)


def exists_not_forall_not() -> Proof:
    h = f("exists x1. X^1_0(x1)")
    n = f("forall x1. ~X^1_0(x1)")
    inner = I2.impl_e(I2.forall1_e(I2.ax(n), x2), I2.ax(f("X^1_0(x2)")))
    p = I2.exists1_e(I2.ax(h), inner, x2)
    return I2.impl_i(I2.impl_i(p, n), h)


def comprehension_var() -> Proof:
    """``forall X. exists Y. forall x. X(x) -> Y(x)`` with ``Y := X``."""
    body = f("forall x1. X^1_0(x1) -> X^1_0(x1)")
    p = _gen(I2, _identity(I2, f("X^1_0(x1)")), x1)
    target = f("exists X^1_1. forall x1. X^1_0(x1) -> X^1_1(x1)")
    assert p.concl == body
    return _gen(I2, I2.exists2_i(p, P1, target), P1)


def exists_prop() -> Proof:
    """``exists X. X`` witnessed by ``bot -> bot``."""
    return I2.exists2_i(_identity(I2, BOT), parse_abstraction(r"\. bot -> bot"), f("exists X^0_0. X^0_0"))


def exists_elim() -> Proof:
    h = f("exists X^1_0. X^1_0(x0) /\\ X^0_1")
    minor = I2.and_e2(I2.ax(f("X^1_2(x0) /\\ X^0_1")))
    return I2.impl_i(I2.exists2_e(I2.ax(h), minor, Var2(1, 2)), h)


def leibniz_symmetry() -> Proof:
    """Leibniz equality is symmetric: instantiate with ``\\z. Z(z) -> Z(x0)``."""
    h = f("forall X^1_0. X^1_0(x0) -> X^1_0(x1)")
    Z = Var2(1, 3)
    inst = I2.forall2_e(I2.ax(h), parse_abstraction(r"\x2. X^1_3(x2) -> X^1_3(x0)"))
    p = I2.impl_e(inst, _identity(I2, f("X^1_3(x0)")))
    p = I2.forall2_i(p, Z, f("forall X^1_3. X^1_3(x1) -> X^1_3(x0)"))
    return I2.impl_i(p, h)


def and_encode() -> Proof:
    h = f("X^0_1 /\\ X^0_2")
    k = f("X^0_1 -> X^0_2 -> X^0_0")
    body = I2.impl_e(I2.impl_e(I2.ax(k), I2.and_e1(I2.ax(h))), I2.and_e2(I2.ax(h)))
    p = I2.forall2_i(I2.impl_i(body, k), X0, f("forall X^0_0. (X^0_1 -> X^0_2 -> X^0_0) -> X^0_0"))
    return I2.impl_i(p, h)


def and_decode() -> Proof:
    h = f("forall X^0_0. (X^0_1 -> X^0_2 -> X^0_0) -> X^0_0")
    a, b = f("X^0_1"), f("X^0_2")
    pair = I2.impl_i(I2.impl_i(I2.and_i(I2.ax(a), I2.ax(b)), b), a)
    inst = I2.forall2_e(I2.ax(h), parse_abstraction(r"\. X^0_1 /\ X^0_2"))
    return I2.impl_i(I2.impl_e(inst, pair), h)


def or_encode() -> Proof:
    h = f("X^0_1 \\/ X^0_2")
    k1, k2 = f("X^0_1 -> X^0_0"), f("X^0_2 -> X^0_0")
    a, b = h.left, h.right
    body = I2.or_e(I2.ax(h), I2.impl_e(I2.ax(k1), I2.ax(a)), I2.impl_e(I2.ax(k2), I2.ax(b)))
    body = I2.impl_i(I2.impl_i(body, k2), k1)
    p = I2.forall2_i(body, X0, f("forall X^0_0. (X^0_1 -> X^0_0) -> (X^0_2 -> X^0_0) -> X^0_0"))
    return I2.impl_i(p, h)


def or_decode() -> Proof:
    h = f("forall X^0_0. (X^0_1 -> X^0_0) -> (X^0_2 -> X^0_0) -> X^0_0")
    a, b = f("X^0_1"), f("X^0_2")
    o = f("X^0_1 \\/ X^0_2")
    inst = I2.forall2_e(I2.ax(h), parse_abstraction(r"\. X^0_1 \/ X^0_2"))
    p = I2.impl_e(I2.impl_e(inst, I2.impl_i(I2.or_i1(I2.ax(a), b), a)), I2.impl_i(I2.or_i2(I2.ax(b), a), b))
    assert p.concl == o
    return I2.impl_i(p, h)


def exists_encode() -> Proof:
    h = f("exists x1. X^1_0(x1)")
    k = f("forall x1. X^1_0(x1) -> X^0_0")
    minor = I2.impl_e(I2.forall1_e(I2.ax(k), x2), I2.ax(f("X^1_0(x2)")))
    body = I2.impl_i(I2.exists1_e(I2.ax(h), minor, x2), k)
    p = I2.forall2_i(body, X0, f("forall X^0_0. (forall x1. X^1_0(x1) -> X^0_0) -> X^0_0"))
    return I2.impl_i(p, h)


def exists_decode() -> Proof:
    h = f("forall X^0_0. (forall x1. X^1_0(x1) -> X^0_0) -> X^0_0")
    e = f("exists x1. X^1_0(x1)")
    inst = I2.forall2_e(I2.ax(h), parse_abstraction(r"\. exists x1. X^1_0(x1)"))
    intro = I2.exists1_i(I2.ax(f("X^1_0(x2)")), x2, e)
    k = I2.forall1_i(I2.impl_i(intro, f("X^1_0(x2)")), x2, f("forall x1. X^1_0(x1) -> exists x1. X^1_0(x1)"))
    return I2.impl_i(I2.impl_e(inst, k), h)


def excluded_middle() -> Proof:
    a = f("X^0_0")
    lem = f("X^0_0 \\/ ~X^0_0")
    n = Impl(lem, BOT)
    na = C2.impl_i(C2.impl_e(C2.ax(n), C2.or_i1(C2.ax(a), Impl(a, BOT))), a)
    p = C2.impl_e(C2.ax(n), C2.or_i2(na, a))
    return _gen(C2, C2.raa(p, lem), X0)


def peirce() -> Proof:
    a, b = f("X^0_0"), f("X^0_1")
    h = f("(X^0_0 -> X^0_1) -> X^0_0")
    na = Impl(a, BOT)
    ab = C2.impl_i(C2.bot_e(C2.impl_e(C2.ax(na), C2.ax(a)), b), a)
    p = C2.impl_e(C2.ax(na), C2.impl_e(C2.ax(h), ab))
    return _gen(C2, C2.impl_i(C2.raa(p, a), h), X0, Y0)


def double_negation() -> Proof:
    a = f("X^0_0")
    nn = f("~~X^0_0")
    p = C2.raa(C2.impl_e(C2.ax(nn), C2.ax(Impl(a, BOT))), a)
    return _gen(C2, C2.impl_i(p, nn), X0)


def classical_drinker_free() -> Proof:
    """``~forall x. P(x) -> exists x. ~P(x)`` needs the classical rule."""
    h = f("~forall x1. X^1_0(x1)")
    e = f("exists x1. ~X^1_0(x1)")
    px = f("X^1_0(x2)")
    inner = C2.raa(C2.impl_e(C2.ax(Impl(e, BOT)), C2.exists1_i(C2.ax(Impl(px, BOT)), x2, e)), px)
    allp = C2.forall1_i(inner, x2, f("forall x1. X^1_0(x1)"))
    p = C2.raa(C2.impl_e(C2.ax(h), allp), e)
    return C2.impl_i(p, h)


SECOND_ORDER = {
    "identity0": identity0,
    "identity1": identity1,
    "forall-bot-instance": forall_bot_instance,
    "second-order-ex-falso": second_order_ex_falso,
    "weakening-k": weakening_k,
    "and-comm": and_comm,
    "or-comm": or_comm,
    "forall-instance-term": forall_instance_term,
    "exists-not-forall-not": exists_not_forall_not,
    "comprehension-var": comprehension_var,
    "exists-prop": exists_prop,
    "exists-elim": exists_elim,
    "leibniz-symmetry": leibniz_symmetry,
    "and-encode": and_encode,
    "and-decode": and_decode,
    "or-encode": or_encode,
    "or-decode": or_decode,
    "exists-encode": exists_encode,
    "exists-decode": exists_decode,
    "excluded-middle": excluded_middle,
    "peirce": peirce,
    "double-negation": double_negation,
    "classical-not-forall": classical_drinker_free,
}


# ---------------------------------------------------------------------------
# native first-order proofs


def fo_identity() -> Proof:
    a = f("Ap0(x0)")
    return I1.forall1_i(_identity(I1, a), x0, f("forall x0. Ap0(x0) -> Ap0(x0)"))


def fo_ap_instance() -> Proof:
    h = f("forall x1. Ap1(x0, x1)")
    return I1.impl_i(I1.forall1_e(I1.ax(h), parse_term("f(x2)")), h)


def fo_exists_intro() -> Proof:
    a = f("Ap1(x0, x1)")
    return I1.impl_i(I1.exists1_i(I1.ax(a), x1, f("exists x2. Ap1(x0, x2)")), a)


def fo_exists_swap() -> Proof:
    h = f("exists x1. forall x2. Ap1(x1, x2)")
    g = f("forall x2. exists x1. Ap1(x1, x2)")
    inner = I1.exists1_i(I1.forall1_e(I1.ax(f("forall x2. Ap1(x3, x2)")), x2), Var1(3), f("exists x1. Ap1(x1, x2)"))
    p = I1.exists1_e(I1.ax(h), inner, Var1(3))
    return I1.impl_i(I1.forall1_i(p, x2, g), h)


def fo_and_or() -> Proof:
    h = f("Ap0(x0) /\\ Ap0(x1)")
    return I1.impl_i(I1.or_i1(I1.and_e1(I1.ax(h)), f("Ap0(x1)")), h)


def fo_lem() -> Proof:
    a = f("Ap0(x0)")
    lem = f("Ap0(x0) \\/ ~Ap0(x0)")
    n = Impl(lem, BOT)
    na = C1.impl_i(C1.impl_e(C1.ax(n), C1.or_i1(C1.ax(a), Impl(a, BOT))), a)
    return C1.raa(C1.impl_e(C1.ax(n), C1.or_i2(na, a)), lem)


def fo_ex_falso() -> Proof:
    return I1.impl_i(I1.bot_e(I1.ax(BOT), f("Ap2(x0, x1, x2)")), BOT)


FIRST_ORDER = {
    "fo-identity": fo_identity,
    "fo-ap-instance": fo_ap_instance,
    "fo-exists-intro": fo_exists_intro,
    "fo-exists-swap": fo_exists_swap,
    "fo-and-or": fo_and_or,
    "fo-lem": fo_lem,
    "fo-ex-falso": fo_ex_falso,
}


def second_order_proofs() -> dict[str, Proof]:
    return {name: make() for name, make in SECOND_ORDER.items()}


def first_order_proofs() -> dict[str, Proof]:
    return {name: make() for name, make in FIRST_ORDER.items()}
