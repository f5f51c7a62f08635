"""Bounded, exhaustive checks of the semantic and proof-theoretic transfer properties.

Each check returns a :class:`Tally`: the number of cases examined and the
first few counterexamples.  The acceptance tests and the report runner share
these functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .classical import (
    ClassicalModel1,
    ClassicalModel2,
    check_sc,
    check_sc1,
    compile_classical,
    interpretations,
    rev_interp,
    rev_model,
)
from .coding import rev, star
from .deduction.kernel import CLASSICAL, Proof, check
from .deduction.proofs import prove_idempotent
from .kripke import (
    KripkeModel1,
    KripkeModel2,
    check_sc1_k,
    check_sc_k,
    compile_forcing,
    encode_connective,
    interpretations_at,
    rev_kinterp,
    rev_kmodel,
)
from .syntax import (
    And,
    Atom2,
    Exists1,
    Exists2,
    Formula,
    Iff,
    Impl,
    Or,
    Var1,
    Var2,
    alpha_eq,
    free_vars,
    fn_symbols,
)

MAX_WITNESSES = 5


@dataclass
class Tally:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    failed: int = 0

    def record(self, ok: bool, witness=None):
        self.cases += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_WITNESSES:
                self.failures.append(witness)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def __str__(self):
        status = "ok" if self.ok else f"{self.failed} failures, first: {self.failures[0]}"
        return f"{self.name}: {self.cases} cases, {status}"



def assert_monotone(K, run, env: dict, mono: Tally | None, what=None):
    """Forced at ``p`` implies forced at every ``q >= p`` (values in ``env`` live at the root)."""
    if mono is None:
        return
    up = K.poset.up
    vals = [run(env, p) for p in range(len(K.poset))]
    ok = all(vals[q] for p in range(len(vals)) if vals[p] for q in up[p])
    mono.record(ok, what)


# ---------------------------------------------------------------------------
# idempotence


def idempotent_proofs(formulas: Iterable[Formula], keep: list | None = None) -> Tally:
    t = Tally("idempotent proofs")
    for a in formulas:
        p = prove_idempotent(a)
        ok = bool(check(p)) and alpha_eq(p.concl, Iff(rev(star(a)), a)) and not p.hyps
        t.record(ok, str(a))
        if keep is not None and ok:
            keep.append(p)
    return t


def idempotent_semantics(formulas, cmodels, kmodels, mono: Tally | None = None) -> Tally:
    t = Tally("idempotent semantics")
    for a in formulas:
        b = rev(star(a))
        for M in cmodels:
            F, G = compile_classical(M, a), compile_classical(M, b)
            for s in interpretations(M, a):
                t.record(F(dict(s)) == G(dict(s)), (str(a), "classical"))
        for K in kmodels:
            F, G = compile_forcing(K, a), compile_forcing(K, b)
            for s in interpretations_at(K, a, 0):
                for p in range(len(K.poset)):
                    t.record(F(dict(s), p) == G(dict(s), p), (str(a), "kripke", p))
                assert_monotone(K, F, dict(s), mono, str(a))
                assert_monotone(K, G, dict(s), mono, str(b))
    return t


# ---------------------------------------------------------------------------
# semantic translation, classical and Kripke


def fo_assignments(domain, f: Formula):
    fo = sorted(free_vars(f)[0], key=lambda v: v.index)
    for vals in itertools.product(sorted(domain), repeat=len(fo)):
        yield dict(zip(fo, vals))


def csemone(formulas, models: Iterable[ClassicalModel1]) -> Tally:
    t = Tally("classical coding lemma")
    formulas = list(formulas)
    for M in models:
        R = rev_model(M)
        for a in formulas:
            csemone_case(M, R, a, t)
    return t


def csemone_case(M: ClassicalModel1, R: ClassicalModel2, a: Formula, t: Tally):
    s = star(a)
    F, G = compile_classical(M, s), compile_classical(R, a)
    so = list(free_vars(a)[1])
    for sigma in fo_assignments(M.domain, s):
        t.record(F(dict(sigma)) == G(rev_interp(M, sigma, so)), (str(a), sigma))


def isemone(formulas, models: Iterable[KripkeModel1], mono: Tally | None = None) -> Tally:
    t = Tally("Kripke coding lemma")
    formulas = list(formulas)
    for K in models:
        R = rev_kmodel(K)
        for a in formulas:
            s = star(a)
            F, G = compile_forcing(K, s), compile_forcing(R, a)
            so = list(free_vars(a)[1])
            for p in range(len(K.poset)):
                for sigma in fo_assignments(K.domains[p], s):
                    t.record(F(dict(sigma), p) == G(rev_kinterp(K, sigma, p, so), p), (str(a), p, sigma))
            for sigma in fo_assignments(K.domains[0], s):
                assert_monotone(K, F, dict(sigma), mono, str(s))
                assert_monotone(R, G, rev_kinterp(K, sigma, 0, so), mono, str(a))
    return t


def csemtwo(models: Iterable[ClassicalModel1], depth: int = 2, arity: int = 1) -> Tally:
    t = Tally("classical comprehension transfer")
    for M in models:
        t.record(check_sc1(M, depth, arity) == check_sc(rev_model(M), depth, arity), M.relations)
    return t


def isemtwo(models: Iterable[KripkeModel1], depth: int = 2, arity: int = 1) -> Tally:
    t = Tally("Kripke comprehension transfer")
    for K in models:
        t.record(check_sc1_k(K, depth, arity) == check_sc_k(rev_kmodel(K), depth, arity), K.relations)
    return t


# ---------------------------------------------------------------------------
# impredicative encodings


def encoding_cases() -> list[tuple[Formula, Formula]]:
    """Pairs (native, encoded) over schematic atoms, arity at most one."""
    A, B = Atom2(Var2(0, 1)), Atom2(Var2(0, 2))
    P, Q = Atom2(Var2(1, 1), (Var1(0),)), Atom2(Var2(1, 2), (Var1(1),))
    chi = Atom2(Var2(1, 1), (Var1(0),))
    Y0 = Var2(0, 3)
    Y1 = Var2(1, 3)
    out = []
    for a, b in [(A, B), (A, P), (P, Q), (Impl(A, B), Or(P, A))]:
        out.append((And(a, b), encode_connective("and", a, b)))
        out.append((Or(a, b), encode_connective("or", a, b)))
    for x, body in [(Var1(0), chi), (Var1(0), And(chi, B)), (Var1(0), Impl(P, Q))]:
        out.append((Exists1(x, body), encode_connective("exists", x, body)))
    for Y, body in [
        (Y0, Atom2(Y0)),
        (Y0, Impl(Atom2(Y0), A)),
        (Y1, Atom2(Y1, (Var1(0),))),
        (Y1, And(Atom2(Y1, (Var1(0),)), Impl(Atom2(Y1, (Var1(1),)), A))),
    ]:
        out.append((Exists2(Y, body), encode_connective("exists", Y, body)))
    return out


def encodings(kmodels: Iterable[KripkeModel2], cases=None, mono: Tally | None = None) -> Tally:
    t = Tally("connective encodings")
    cases = cases or encoding_cases()
    for K in kmodels:
        for native, enc in cases:
            F, G = compile_forcing(K, native), compile_forcing(K, enc)
            for s in interpretations_at(K, native, 0):
                for p in range(len(K.poset)):
                    t.record(F(dict(s), p) == G(dict(s), p), (str(native), p))
                assert_monotone(K, F, dict(s), mono, str(native))
                assert_monotone(K, G, dict(s), mono, str(enc))
    return t


# ---------------------------------------------------------------------------
# kernel soundness


def default_tables(domain, symbols: dict) -> dict:
    """Deterministic tables: constants name the least element, functions return their first argument."""
    least = min(domain)
    tabs = {}
    for name, ar in symbols.items():
        tabs[name] = {args: (args[0] if ar else least) for args in itertools.product(sorted(domain), repeat=ar)}
    return tabs


def sequent_formula(p: Proof) -> Formula:
    goal = p.concl
    for h in reversed(p.hyps):
        goal = Impl(h, goal)
    return goal


def kernel_soundness(proofs: Iterable[Proof], cmodels2, kmodels2, cmodels1=(), kmodels1=()) -> Tally:
    """Accepted proofs have conclusions valid in every stock model of the matching semantics.

    Intuitionistic proofs are checked in Kripke and classical models,
    classical ones in classical models.  Models gain default tables for any
    function symbol the proof mentions.
    """
    t = Tally("kernel soundness")
    for p in proofs:
        if not check(p):
            continue
        goal = sequent_formula(p)
        syms = fn_symbols(goal)
        second = p.seq.order == 2
        for M in cmodels2 if second else cmodels1:
            if syms:
                M = _with_tables(M, syms)
            run = compile_classical(M, goal)
            for s in interpretations(M, goal):
                t.record(run(dict(s)), (str(goal), "classical"))
        if p.seq.logic == CLASSICAL:
            continue
        for K in kmodels2 if second else kmodels1:
            if syms:
                K = _with_ktables(K, syms)
            run = compile_forcing(K, goal)
            for s in interpretations_at(K, goal, 0):
                t.record(run(dict(s), 0), (str(goal), "kripke"))
    return t


def _with_tables(M, syms):
    tabs = default_tables(M.domain, syms)
    if isinstance(M, ClassicalModel2):
        return ClassicalModel2(M.domain, M.ranges, tabs)
    return ClassicalModel1(M.domain, M.relations, tabs)


def _with_ktables(K, syms):
    least = min(K.domains[0])
    tabs = []
    for d in K.domains:
        per = {}
        for name, ar in syms.items():
            per[name] = {args: (args[0] if ar else least) for args in itertools.product(sorted(d), repeat=ar)}
        tabs.append(per)
    if isinstance(K, KripkeModel2):
        return KripkeModel2(K.poset, K.domains, K.families, tuple(tabs), K.names)
    return KripkeModel1(K.poset, K.domains, K.relations, tuple(tabs))
