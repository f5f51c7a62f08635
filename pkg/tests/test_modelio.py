import pytest

from sologic.classical import FALSE, TRUE, ClassicalModel1, ModelError, full_model
from sologic.kripke import KripkeModel1, Poset, full_kmodel, peirce_countermodel
from sologic.modelio import ModelFormatError, dump_interp, dump_kmodel, dump_model, load_interp, load_kmodel, load_model
from sologic.stock import classical1_sample, full_kripke_models
from sologic.syntax import Var1, Var2

PEIRCE_TEXT = """
(kmodel2 (poset (points 0 p) (leq (0 p)))
  (domain 0 (elems a)) (domain p (elems a))
  (family 0 0 pi1 ((0 (tuples)) (p (tuples ()))))
  (family 0 0 pi2 ((0 (tuples)) (p (tuples))))
  (family 0 p ((p (tuples ()))))
  (family 0 p ((p (tuples)))))
"""


class TestClassical:
    def test_model1(self):
        M = load_model("(model1 (domain a b) (fn (c () -> a)) (ap 1 ((a a) (a b))))")
        assert isinstance(M, ClassicalModel1)
        assert M.relations[1] == {("a", "a"), ("a", "b")}
        assert M.fn_tables["c"] == {(): "a"}

    def test_model2_truth_values(self):
        M = load_model("(model2 (domain a) (range 0 (() (()))))")
        assert M.ranges[0] == {FALSE, TRUE}

    def test_round_trip(self):
        for M in [full_model(("a", "b"), 1), *classical1_sample(3, per_size=5)]:
            text = dump_model(M)
            N = load_model(text)
            assert dump_model(N) == text

    def test_partial_function(self):
        with pytest.raises(ModelError) as e:
            load_model("(model1 (domain a b) (fn (f (a) -> a)))")
        assert e.value.invariant == "function tables"

    @pytest.mark.parametrize(
        "text",
        ["(model3 (domain a))", "(model1 (ap 0 ((a))))", "(model1 (domain a) (range 0 ()))", "(model1 (domain a)"],
    )
    def test_malformed(self, text):
        with pytest.raises(ModelFormatError):
            load_model(text)


class TestKripke:
    def test_peirce_file(self):
        K = load_kmodel(PEIRCE_TEXT)
        P, sigma = peirce_countermodel()
        assert K.families == P.families
        assert K.names["pi1"] == sigma[Var2(0, 0)]

    def test_round_trip(self):
        models = [peirce_countermodel()[0], full_kmodel(Poset.chain(2), [frozenset("a")] * 2, 1)]
        models += list(full_kripke_models(3, 1, 0))
        for K in models:
            text = dump_kmodel(K)
            assert dump_kmodel(load_kmodel(text)) == text

    def test_kmodel1_round_trip(self):
        K = KripkeModel1(Poset.chain(2), (frozenset("a"), frozenset("ab")), {1: (frozenset(), frozenset({("a", "b")}))})
        text = dump_kmodel(K)
        assert load_kmodel(text).relations == K.relations
        assert dump_kmodel(load_kmodel(text)) == text

    def test_restriction_closure_named(self):
        text = PEIRCE_TEXT.replace("(family 0 p ((p (tuples)))))", ")")
        with pytest.raises(ModelError) as e:
            load_kmodel(text)
        assert "restriction-closure" in str(e.value)

    def test_value_outside_cone(self):
        text = PEIRCE_TEXT.replace("(family 0 p ((p (tuples ()))))", "(family 0 p ((0 (tuples)) (p (tuples ()))))")
        with pytest.raises(ModelFormatError):
            load_kmodel(text)

    def test_missing_domain(self):
        with pytest.raises(ModelFormatError):
            load_kmodel("(kmodel1 (poset (points 0 p) (leq (0 p))) (domain 0 (elems a)))")

    def test_shrinking_domain(self):
        with pytest.raises(ModelError) as e:
            load_kmodel("(kmodel1 (poset (points 0 p) (leq (0 p))) (domain 0 (elems a b)) (domain p (elems a)))")
        assert e.value.invariant == "increasing domains"


class TestInterp:
    K = load_kmodel(PEIRCE_TEXT)

    def test_named_family(self):
        s = load_interp("((X^0_0 pi1) (X^0_1 pi2))", self.K)
        assert s[Var2(0, 0)] == (FALSE, TRUE)

    def test_bar(self):
        s = load_interp("((X^0_0 (bar p)) (X^0_1 (bar)))", self.K)
        assert s == {Var2(0, 0): (FALSE, TRUE), Var2(0, 1): (FALSE, FALSE)}

    def test_bar_at_upper_point(self):
        s = load_interp("((X^0_0 (bar p)))", self.K, 1)
        assert s[Var2(0, 0)] == (None, TRUE)

    def test_truth_values(self):
        s = load_interp("((X^0_0 true) (x0 a))", self.K)
        assert s == {Var2(0, 0): (TRUE, TRUE), Var1(0): "a"}

    def test_classical_predicate(self):
        s = load_interp("((X^1_0 ((a) (b))))")
        assert s[Var2(1, 0)] == {("a",), ("b",)}

    def test_wrong_tuple_length(self):
        with pytest.raises(ModelFormatError):
            load_interp("((X^1_0 ((a b))))")

    def test_unknown_name(self):
        with pytest.raises(ModelFormatError):
            load_interp("((X^0_0 pi9))", self.K)

    def test_round_trip(self):
        s = {Var2(0, 0): (FALSE, TRUE), Var1(1): "a"}
        assert load_interp(dump_interp(s, self.K), self.K) == s
