import json

import pytest

from sologic.cli import FAILURE, INVARIANT, OK, PARSE, PRECONDITION, REJECTED, main
from sologic.deduction.library import first_order_proofs, second_order_proofs
from sologic.deduction.serialize import dump_proof, load_proof
from sologic.kripke import peirce_countermodel
from sologic.modelio import dump_kmodel, dump_model
from sologic.classical import full_model


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


class TestCoding:
    def test_encode(self, capsys):
        code, out, _ = run(capsys, "encode", "forall X^1_0. (X^1_0(x1) -> X^1_0(x2))")
        assert code == OK and out.strip() == "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))"

    def test_decode(self, capsys):
        code, out, _ = run(capsys, "decode", "Ap1(f(a), a)")
        assert code == OK and out.strip() == "bot"

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "encode", "forall X^1_0. (")
        assert code == PARSE and "parse error" in err

    def test_purity(self, capsys):
        assert run(capsys, "encode", "Ap0(x0)")[0] == PRECONDITION


class TestProofs:
    def test_check(self, capsys, files):
        path = files("id.proof", dump_proof(second_order_proofs()["identity0"]))
        code, out, _ = run(capsys, "check-proof", path)
        assert code == OK and out.startswith("accepted")

    def test_rejected(self, capsys, files):
        text = dump_proof(second_order_proofs()["identity0"]).replace('(hyps "X^0_0")', '(hyps "X^0_1")', 1)
        code, _, err = run(capsys, "check-proof", files("bad.proof", text))
        assert code == REJECTED and "rejected at" in err

    def test_missing_file(self, capsys):
        assert run(capsys, "check-proof", "/nonexistent/p.proof")[0] == PRECONDITION

    def test_malformed(self, capsys, files):
        assert run(capsys, "check-proof", files("m.proof", "(Ax"))[0] == PARSE

    def test_down_and_up(self, capsys, files, tmp_path):
        src = files("lem.proof", dump_proof(second_order_proofs()["forall-bot-instance"]))
        out = str(tmp_path / "down.proof")
        assert run(capsys, "translate-proof", src, "--direction", "down", "-o", out)[0] == OK
        assert load_proof(open(out).read()).seq.order == 1
        code, text, _ = run(capsys, "translate-proof", out, "--direction", "up")
        assert code == OK and load_proof(text).seq.order == 2

    def test_roundtrip(self, capsys, files):
        src = files("p.proof", dump_proof(second_order_proofs()["peirce"]))
        assert run(capsys, "translate-proof", src, "--direction", "roundtrip")[0] == OK

    def test_wrong_direction(self, capsys, files):
        src = files("fo.proof", dump_proof(first_order_proofs()["fo-identity"]))
        assert run(capsys, "translate-proof", src, "--direction", "down")[0] == PRECONDITION


class TestEval:
    def test_eval(self, capsys, files):
        path = files("m.model", dump_model(full_model(("a",), 1)))
        code, out, _ = run(capsys, "eval", path, "forall X^0_0. (X^0_0 \\/ ~X^0_0)")
        assert code == OK and out.strip() == "true"

    def test_eval_with_interp(self, capsys, files):
        path = files("m.model", dump_model(full_model(("a", "b"), 1)))
        code, out, _ = run(capsys, "eval", path, "X^1_0(x0)", "--interp", "((x0 b) (X^1_0 ((a))))")
        assert code == OK and out.strip() == "false"

    def test_missing_interp(self, capsys, files):
        path = files("m.model", dump_model(full_model(("a",), 1)))
        assert run(capsys, "eval", path, "X^0_0")[0] == PRECONDITION

    def test_value_outside_range(self, capsys, files):
        path = files("m.model", "(model2 (domain a b) (range 1 (())))")
        assert run(capsys, "eval", path, "X^1_0(x0)", "--interp", "((x0 a) (X^1_0 ((a))))")[0] == PRECONDITION

    def test_invariant(self, capsys, files):
        path = files("m.model", "(model1 (domain a b) (fn (f (a) -> a)))")
        code, _, err = run(capsys, "eval", path, "Ap0(f(x0))", "--interp", "((x0 a))")
        assert code == INVARIANT and "function tables" in err

    def test_force_peirce(self, capsys, files):
        path = files("k.model", dump_kmodel(peirce_countermodel()[0]))
        body = "((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0"
        code, out, _ = run(capsys, "force", path, "0", body, "--interp", "((X^0_0 pi1) (X^0_1 pi2))")
        assert code == OK and out.strip() == "false"
        code, out, _ = run(capsys, "force", path, "p", "X^0_0", "--interp", "((X^0_0 (bar p)))")
        assert out.strip() == "true"


class TestCountermodel:
    def test_peirce(self, capsys, files, tmp_path):
        prefix = str(tmp_path / "cm")
        f = "forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)"
        code, out, _ = run(capsys, "countermodel", f, "--bounds", "2,1,0,2", "--out", prefix)
        assert code == OK and "countermodel-found" in out
        code, out, _ = run(capsys, "force", prefix + ".model", "0", f)
        assert out.strip() == "false"

    def test_lines(self, capsys):
        code, out, _ = run(capsys, "countermodel", "forall X^0_0. (X^0_0 \\/ ~X^0_0)", "--format", "lines")
        rec = json.loads(out)
        assert rec["status"] == "countermodel-found" and rec["model"].startswith("(kmodel2")

    def test_exhausted(self, capsys):
        code, out, _ = run(capsys, "countermodel", "forall X^0_0. (X^0_0 -> X^0_0)", "--bounds", "3,2,0,3")
        assert code == OK and "exhausted" in out

    def test_classical_full_only(self, capsys):
        argv = ["countermodel", "forall X^0_0. (X^0_0 \\/ ~X^0_0)", "--semantics", "classical", "--full-only"]
        assert "exhausted" in run(capsys, *argv)[1]

    def test_bad_bounds(self, capsys):
        assert run(capsys, "countermodel", "X^0_0", "--bounds", "2,1")[0] == PRECONDITION


class TestPaperExamples:
    def test_subset(self, capsys):
        code, out, _ = run(capsys, "paper-examples", "--only", "coding-example,peirce-model-not-full")
        assert code == OK
        assert [line.split()[1] for line in out.splitlines()] == ["verified", "verified"]

    def test_empty_selection(self, capsys):
        code, out, _ = run(capsys, "paper-examples", "--only", "")
        assert code == OK and out == ""

    def test_unknown_item(self, capsys):
        assert run(capsys, "paper-examples", "--only", "nope")[0] == PRECONDITION

    def test_mutated_peirce_model(self, capsys, files):
        text = dump_kmodel(peirce_countermodel()[0])
        text = text[:-1] + "\n  (family 0 0 ((0 (tuples ())) (p (tuples ())))))"
        path = files("mut.model", text)
        code, out, err = run(capsys, "paper-examples", "--only", "peirce-model-not-full", "--peirce-model", path)
        assert code == FAILURE and "failed" in out and "peirce-model-not-full" in err

    def test_lines_format(self, capsys):
        code, out, _ = run(capsys, "paper-examples", "--only", "rev-term-instance", "--format", "lines")
        assert json.loads(out)["status"] == "verified"
