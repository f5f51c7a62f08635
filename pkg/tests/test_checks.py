from sologic import checks, stock
from sologic.deduction.library import first_order_proofs, second_order_proofs
from sologic.grammar import parse
from sologic.kripke import Poset, full_kmodel
from sologic.syntax import Var1, Var2


def test_tally():
    t = checks.Tally("demo")
    t.record(True)
    t.record(False, "w1")
    assert not t.ok and t.cases == 2 and t.failures == ["w1"]
    assert str(t) == "demo: 2 cases, 1 failures, first: w1"


def test_tally_keeps_few_witnesses():
    t = checks.Tally("demo")
    for i in range(20):
        t.record(False, i)
    assert t.failed == 20 and len(t.failures) == checks.MAX_WITNESSES


def test_encodings_detect_a_wrong_pair():
    A, B = parse("X^0_1"), parse("X^0_2")
    wrong = [(parse("X^0_1 \\/ X^0_2"), checks.encode_connective("and", A, B))]
    t = checks.encodings([full_kmodel(Poset.chain(1), [frozenset("a")], 0)], wrong)
    assert not t.ok


def test_encodings_small():
    mono = checks.Tally("monotone")
    assert checks.encodings(stock.full_kripke_models(2, 1, 1), mono=mono).ok
    assert mono.ok and mono.cases > 0


def test_idempotent_small():
    fs = [parse("forall X^0_0. X^0_1"), parse("exists X^1_0. X^1_0(x1) -> X^0_0")]
    assert checks.idempotent_proofs(fs).ok
    assert checks.idempotent_semantics(fs, stock.full_classical_models(2, 1), stock.full_kripke_models(2, 1, 1)).ok


def test_csemone_small():
    fs = [parse("forall X^1_0. X^1_0(x1)"), parse("X^1_0(x1) \\/ exists X^0_2. X^0_2")]
    models = list(stock.classical1_models(2, (0, 1)))
    assert checks.csemone(fs, models).ok


def test_isemone_small():
    fs = [parse("forall X^1_0. (X^1_0(x1) \\/ ~X^1_0(x1))")]
    P = Poset.chain(2)
    models = [K for d in stock.domain_assignments(P, 1) for K in stock.kripke1_models(P, d, (0, 1))]
    mono = checks.Tally("monotone")
    assert checks.isemone(fs, models, mono).ok and mono.ok


def test_comprehension_transfer_small():
    assert checks.csemtwo(stock.classical1_models(1, (0, 1)), 1, 1).ok


def test_kernel_soundness_small():
    proofs = [*second_order_proofs().values(), *first_order_proofs().values()]
    t = checks.kernel_soundness(
        proofs,
        stock.full_classical_models(1, 1),
        stock.full_kripke_models(2, 1, 1),
        stock.classical1_sample(1, sizes=(1, 2), per_size=5),
        stock.kripke1_sample(2, 1, per_frame=5),
    )
    assert t.ok and t.cases > 0


def test_fo_assignments():
    f = parse("Ap0(x0) -> Ap0(x2)")
    envs = list(checks.fo_assignments({"a", "b"}, f))
    assert len(envs) == 4 and envs[0] == {Var1(0): "a", Var1(2): "a"}


def test_sequent_formula():
    p = second_order_proofs()["identity0"]
    assert checks.sequent_formula(p) == p.concl
    assert Var2(0, 0) not in p.hyps
