"""The worked-example report behind ``sologic paper-examples``.

Every item runs a fixed check and records a status and a one-line piece of
evidence.  Lemma items use small built-in stocks so the whole report stays
fast; the test suite runs the same checks over larger stocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from . import checks, stock
from .classical import valid
from .coding import SchemaInstance, rev, sc2_instance, star
from .deduction.kernel import check
from .deduction.library import second_order_proofs
from .deduction.proofs import prove_idempotent, prove_sc2, subst_proof
from .grammar import parse, parse_term, show
from .kripke import Poset, compile_forcing, is_full_k, kvalid, peirce_countermodel
from .search import EXHAUSTED, FOUND, VERIFIED, SearchBounds, search
from .syntax import BOT, Abstraction, Var1, Var2, alpha_eq, substitute

FAILED = "failed"


@dataclass(frozen=True)
class Item:
    name: str
    status: str
    evidence: str

    @property
    def ok(self) -> bool:
        return self.status in (VERIFIED, EXHAUSTED, FOUND)


@dataclass(frozen=True)
class Context:
    seed: int = stock.DEFAULT_SEED
    peirce_model: object = None


@dataclass(frozen=True)
class Report:
    items: tuple[Item, ...]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def failures(self) -> list[Item]:
        return [i for i in self.items if not i.ok]

    def render(self, fmt: str = "text") -> str:
        if fmt == "lines":
            return "\n".join(json.dumps({"name": i.name, "status": i.status, "evidence": i.evidence}) for i in self.items)
        width = max((len(i.name) for i in self.items), default=0)
        return "\n".join(f"{i.name.ljust(width)}  {i.status}  {i.evidence}" for i in self.items)


def _expect(actual: str, expected: str) -> tuple[bool, str]:
    return actual == expected, actual if actual == expected else f"got {actual}, expected {expected}"


# ---------------------------------------------------------------------------
# worked examples

SAMPLE_F = "(Ap1(x0, x1) -> Ap2(x0, x1, x1) \\/ Ap1(x1, x0))"
SAMPLE_BODY = "(X^1_0(x1) -> (X^2_0(x1, x1) \\/ X^1_1(x0)))"


def coding_example(ctx):
    return _expect(show(star(parse("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))"))), "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))")


def decode_nonvariable_head(ctx):
    return _expect(show(rev(parse("Ap1(f(a), a)"))), "bot")


def comprehension_remark(ctx):
    s = SchemaInstance(parse("X^1_0(x0)"), (Var1(0),), (Var2(1, 0),))
    coded = star(sc2_instance(s))
    shape = parse("forall x5. exists x6. forall x7. (Ap1(x5, x7) <-> Ap1(x6, x7))")
    proved = bool(check(prove_sc2(s)))
    return alpha_eq(coded, shape) and proved, f"{show(coded)}; instance proof accepted: {proved}"


def idempotent_remark(ctx):
    a = parse("forall X^0_0. X^0_1")
    ok, ev = _expect(show(rev(star(a))), "forall x0. X^0_1")
    proved = bool(check(prove_idempotent(a)))
    return ok and proved, f"{ev}; equivalence proof accepted: {proved}"


def rev_example_forall(ctx):
    return _expect(show(rev(parse("forall x0. " + SAMPLE_F))), "forall x0. forall X^1_0. forall X^2_0. " + SAMPLE_BODY)


def rev_example_exists(ctx):
    return _expect(show(rev(parse("exists x0. " + SAMPLE_F))), "exists x0. exists X^1_0. exists X^2_0. " + SAMPLE_BODY)


def rev_example_variable(ctx):
    got = rev(parse(SAMPLE_F.replace("x0", "x2")))
    via = substitute(substitute(rev(parse(SAMPLE_F)), {Var2(1, 0): Var2(1, 2), Var2(2, 0): Var2(2, 2)}), {Var1(0): Var1(2)})
    ok, ev = _expect(show(got), "(X^1_2(x1) -> (X^2_2(x1, x1) \\/ X^1_1(x2)))")
    return ok and got == via, ev


def rev_example_term(ctx):
    got = rev(parse(SAMPLE_F.replace("x0", "a")))
    via = substitute(
        substitute(rev(parse(SAMPLE_F)), {Var2(1, 0): Abstraction((Var1(3),), BOT), Var2(2, 0): Abstraction((Var1(3), Var1(4)), BOT)}),
        {Var1(0): parse_term("a")},
    )
    ok, ev = _expect(show(got), "(bot -> (bot \\/ X^1_1(a)))")
    return ok and got == via, ev


PEIRCE = "forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)"
PEIRCE_BODY = "((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0"


def peirce_at_root(ctx):
    K0, sigma = peirce_countermodel()
    K = ctx.peirce_model or K0
    forced = compile_forcing(K, parse(PEIRCE_BODY))(dict(sigma), 0)
    return not forced, f"0 forces the Peirce body under pi1, pi2: {forced}"


def peirce_not_valid(ctx):
    K = ctx.peirce_model or peirce_countermodel()[0]
    v = kvalid(K, parse(PEIRCE))
    return not v, f"P forced at the root: {v}"


def peirce_not_full(ctx):
    K = ctx.peirce_model or peirce_countermodel()[0]
    full = is_full_k(K)
    return not full, f"is_full_k: {full}"


def peirce_classical(ctx):
    models = stock.full_classical_models(3, 0)
    ok = all(valid(M, parse(PEIRCE)) for M in models)
    return ok, f"true in {len(models)} full classical models"


def peirce_search(ctx):
    r = search(parse(PEIRCE), SearchBounds(2, 1, 0, 2, 30))
    pts = len(r.model.poset) if r.model is not None else None
    return r.status == FOUND and pts is not None and pts <= 2, f"{r.status} after {r.tried} candidates ({pts} points)"


# ---------------------------------------------------------------------------
# bounded lemma checks over small stocks


def _tally(t: checks.Tally):
    return t.ok, str(t)


def _quick_formulas(seed, count=40, depth=3):
    pool = stock.Pool((Var1(0), Var1(1)), (Var2(0, 0), Var2(1, 0), Var2(1, 1)))
    return stock.semantic_formulas(seed, count, depth, pool, cap=200)


def idempotent_check(ctx):
    fs = _quick_formulas(ctx.seed)
    t = checks.idempotent_proofs(fs)
    s = checks.idempotent_semantics(fs, stock.full_classical_models(2, 1), stock.full_kripke_models(2, 2, 1))
    return t.ok and s.ok, f"{t}; {s}"


def csemone_check(ctx):
    fs = _quick_formulas(ctx.seed, 20)
    models = [M for k in (1, 2) for M in stock.classical1_models(k, (0, 1))]
    return _tally(checks.csemone(fs, models))


def isemone_check(ctx):
    fs = _quick_formulas(ctx.seed, 10)
    P = Poset.chain(2)
    models = [K for d in stock.domain_assignments(P, 2) for K in stock.kripke1_models(P, d, (0, 1))][::7]
    return _tally(checks.isemone(fs, models))


def csemtwo_check(ctx):
    return _tally(checks.csemtwo([M for k in (1, 2) for M in stock.classical1_models(k, (0, 1))]))


def isemtwo_check(ctx):
    P = Poset.chain(2)
    models = [K for d in stock.domain_assignments(P, 1) for K in stock.kripke1_models(P, d, (0, 1))]
    return _tally(checks.isemtwo(models))


def encodings_check(ctx):
    return _tally(checks.encodings(stock.full_kripke_models(3, 2, 1)))


def substitution_check(ctx):
    t = checks.Tally("substitution exchange")
    sigmas = [{Var1(0): parse_term("f(x1)")}, {Var1(1): Var1(0)}, {Var2(1, 0): Var2(1, 5)}, {Var2(0, 1): Var2(0, 0)}]
    for p in second_order_proofs().values():
        for sigma in sigmas:
            q = subst_proof(p, sigma)
            t.record(bool(check(q)) and q.concl == substitute(p.concl, sigma), show(p.concl))
    return _tally(t)


ITEMS: dict[str, Callable] = {
    "coding-example": coding_example,
    "decode-nonvariable-head": decode_nonvariable_head,
    "comprehension-remark": comprehension_remark,
    "idempotent-remark": idempotent_remark,
    "rev-forall-example": rev_example_forall,
    "rev-exists-example": rev_example_exists,
    "rev-variable-instance": rev_example_variable,
    "rev-term-instance": rev_example_term,
    "peirce-refuted-at-root": peirce_at_root,
    "peirce-not-forced": peirce_not_valid,
    "peirce-model-not-full": peirce_not_full,
    "peirce-classically-valid": peirce_classical,
    "peirce-countermodel-search": peirce_search,
    "encodings-proposition": encodings_check,
    "idempotent-bounded": idempotent_check,
    "classical-coding-lemma": csemone_check,
    "kripke-coding-lemma": isemone_check,
    "classical-comprehension-transfer": csemtwo_check,
    "kripke-comprehension-transfer": isemtwo_check,
    "substitution-exchange": substitution_check,
}

def paper_examples(only=None, peirce_model=None, seed: int = stock.DEFAULT_SEED) -> Report:
    """Run the named items (all by default).  ``peirce_model`` replaces the built-in two-point model."""
    names = list(ITEMS) if only is None else [n for n in only if n]
    unknown = [n for n in names if n not in ITEMS]
    if unknown:
        raise KeyError(f"unknown report items: {', '.join(unknown)}")
    ctx = Context(seed, peirce_model)
    items = []
    for name in names:
        ok, evidence = ITEMS[name](ctx)
        items.append(Item(name, VERIFIED if ok else FAILED, evidence))
    return Report(tuple(items))
