import pytest

from sologic.coding import enumerate_instances, rev, sc1_instance, star
from sologic.deduction.kernel import Builder, Proof, Rejected, Sequent, check
from sologic.deduction.library import first_order_proofs, second_order_proofs
from sologic.deduction.proofs import prove_sc2
from sologic.deduction.translate import (
    derive_transprooftrois,
    freshen_eigenvariables,
    prove_rev_sc1,
    recover_instance,
    sc1_hypotheses,
    translate_down,
    translate_up,
)
from sologic.grammar import parse
from sologic.syntax import alpha_eq

SECOND = second_order_proofs()
FIRST = first_order_proofs()
SC2 = [prove_sc2(s) for s in list(enumerate_instances(2, 1))[::97]]


def round_trip(p):
    d = translate_down(p)
    assert check(d), check(d)
    back = derive_transprooftrois(d, p.hyps, p.concl)
    assert check(back), check(back)
    assert alpha_eq(back.concl, p.concl)
    return d, back


@pytest.mark.parametrize("name", sorted(SECOND))
def test_library_round_trip(name):
    round_trip(SECOND[name])


@pytest.mark.parametrize("i", range(len(SC2)))
def test_comprehension_round_trip(i):
    round_trip(SC2[i])


def test_down_codes_conclusion_and_context():
    p = SECOND["weakening-k"]
    d = translate_down(p)
    assert alpha_eq(d.concl, star(p.concl))
    assert d.seq.order == 1 and d.seq.logic == p.seq.logic


def test_extra_hypotheses_are_comprehension():
    p = SECOND["forall-bot-instance"]
    d = translate_down(p)
    extra = sc1_hypotheses(d, p.hyps)
    assert extra
    for h in extra:
        s, _ = recover_instance(rev(h))
        assert check(prove_rev_sc1(h))


def test_variable_instances_need_no_comprehension():
    p = SECOND["identity0"]
    assert sc1_hypotheses(translate_down(p), p.hyps) == []


def test_classical_flag_survives():
    p = SECOND["peirce"]
    d, back = round_trip(p)
    assert d.seq.logic == "c" and back.seq.logic == "c"


@pytest.mark.parametrize("name", sorted(FIRST))
def test_up(name):
    p = FIRST[name]
    u = translate_up(p)
    assert check(u)
    assert alpha_eq(u.concl, rev(p.concl))
    assert u.seq.order == 2


@pytest.mark.parametrize("name", sorted(SECOND)[:10])
def test_up_of_down(name):
    u = translate_up(translate_down(SECOND[name]))
    assert check(u)


def test_down_rejects_first_order():
    with pytest.raises(Rejected):
        translate_down(FIRST["fo-identity"])


def test_up_rejects_unchecked():
    B = Builder(order=1)
    ax = B.ax(parse("Ap0(x0)"))
    bad = Proof("ImplI", Sequent((), parse("Ap0(x1) -> Ap0(x1)"), order=1), (ax,))
    with pytest.raises(Rejected):
        translate_up(bad)


def test_recover_rejects_other_formulas():
    with pytest.raises(Rejected):
        recover_instance(parse("forall X^0_0. X^0_0"))


def test_sc1_instance_recovered():
    for s in list(enumerate_instances(1, 1))[:20]:
        h = sc1_instance(s)
        assert check(prove_rev_sc1(h))


def test_wrong_conclusion():
    p = SECOND["identity0"]
    with pytest.raises(Rejected):
        derive_transprooftrois(translate_down(p), (), parse("X^0_0"))


def test_freshen_keeps_conclusion():
    for p in SECOND.values():
        q = freshen_eigenvariables(p)
        assert check(q) and q.seq == p.seq
