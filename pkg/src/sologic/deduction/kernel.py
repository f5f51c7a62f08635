"""Natural-deduction proof trees and the checker.

A proof node records its rule, its premises, the sequent it concludes and the
rule payload (eigenvariable, witness term or abstraction).  Premise contexts
may be any sub-multiset of the conclusion context plus the discharged
hypothesis, so weakening is implicit.  Formulas are compared up to
alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..syntax import (
    BOT,
    Abstraction,
    And,
    Bot,
    Exists1,
    Exists2,
    Forall1,
    Forall2,
    Formula,
    Impl,
    Or,
    Term,
    Var1,
    Var2,
    alpha_eq,
    alpha_key,
    free_vars,
    is_l1_pure,
    is_l2_pure,
    subst_formula2,
    subst_term,
    subst_var2,
    term_vars,
)

INTUITIONISTIC = "i"
CLASSICAL = "c"

RULES = (
    "Ax",
    "BotE",
    "RAA",
    "ImplI",
    "ImplE",
    "AndI",
    "AndE1",
    "AndE2",
    "OrI1",
    "OrI2",
    "OrE",
    "Forall1I",
    "Forall1E",
    "Exists1I",
    "Exists1E",
    "Forall2I",
    "Forall2E",
    "Exists2I",
    "Exists2E",
)
SECOND_ORDER_RULES = {"Forall2I", "Forall2E", "Exists2I", "Exists2E"}
EIGEN_RULES = {"Forall1I", "Exists1E", "Forall2I", "Exists2E"}


@dataclass(frozen=True)
class Sequent:
    hyps: tuple[Formula, ...]
    concl: Formula
    logic: str = INTUITIONISTIC
    order: int = 2

    def __str__(self):
        hyps = ", ".join(map(str, self.hyps))
        return f"{hyps} |-{self.logic}{self.order} {self.concl}"


@dataclass(frozen=True)
class Proof:
    rule: str
    seq: Sequent
    premises: tuple[Proof, ...] = ()
    eigen: Var1 | Var2 | None = None
    term: Term | None = None
    abs: Abstraction | None = None

    @property
    def concl(self) -> Formula:
        return self.seq.concl

    @property
    def hyps(self) -> tuple[Formula, ...]:
        return self.seq.hyps

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""
    path: tuple[int, ...] = ()
    rule: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "accepted"
        where = "/".join(map(str, self.path)) or "root"
        return f"rejected at {where} ({self.rule}): {self.reason}"


class Rejected(Exception):
    def __init__(self, reason: str, path=(), rule=""):
        self.reason = reason
        self.path = tuple(path)
        self.rule = rule
        super().__init__(reason)


def _keys(fs: Iterable[Formula]) -> set:
    return {alpha_key(f) for f in fs}


def _fv(fs: Iterable[Formula]) -> set:
    out = set()
    for f in fs:
        a, b = free_vars(f)
        out |= a | b
    return out


def check(p: Proof) -> Verdict:
    """Check every node; the verdict names the first failing node."""
    try:
        _check(p, ())
    except Rejected as r:
        return Verdict(False, r.reason, r.path, r.rule)
    return Verdict(True)


def assert_checked(p: Proof) -> Proof:
    v = check(p)
    if not v:
        raise Rejected(v.reason, v.path, v.rule)
    return p


def _check(p: Proof, path: tuple):
    def fail(msg):
        raise Rejected(msg, path, p.rule)

    if p.rule not in RULES:
        fail(f"unknown rule {p.rule!r}")
    s = p.seq
    if s.logic not in (INTUITIONISTIC, CLASSICAL) or s.order not in (1, 2):
        fail("bad logic/order flags")
    pure = is_l2_pure if s.order == 2 else is_l1_pure
    for f in s.hyps + (s.concl,):
        if not pure(f):
            fail(f"formula {f} does not belong to the order-{s.order} language")
    if s.order == 1 and p.rule in SECOND_ORDER_RULES:
        fail("second-order rule in a first-order proof")
    if p.rule == "RAA" and s.logic != CLASSICAL:
        fail("RAA is only available in classical logic")
    for i, q in enumerate(p.premises):
        if q.seq.logic != s.logic or q.seq.order != s.order:
            fail(f"premise {i} has different logic/order flags")
    if (p.eigen is None) == (p.rule in EIGEN_RULES):
        fail("eigenvariable payload missing or unexpected")
    if (p.term is None) == (p.rule in {"Forall1E", "Exists1I"}):
        fail("term payload missing or unexpected")
    if (p.abs is None) == (p.rule in {"Forall2E", "Exists2I"}):
        fail("abstraction payload missing or unexpected")

    ctx = _keys(s.hyps)
    arity = {
        "Ax": 0, "BotE": 1, "RAA": 1, "ImplI": 1, "ImplE": 2, "AndI": 2, "AndE1": 1, "AndE2": 1,
        "OrI1": 1, "OrI2": 1, "OrE": 3, "Forall1I": 1, "Forall1E": 1, "Exists1I": 1, "Exists1E": 2,
        "Forall2I": 1, "Forall2E": 1, "Exists2I": 1, "Exists2E": 2,
    }[p.rule]  # fmt: skip
    if len(p.premises) != arity:
        fail(f"expected {arity} premises, found {len(p.premises)}")
    prem = p.premises
    C = s.concl
    discharged: list = [None] * arity

    def need(cond, msg):
        if not cond:
            fail(msg)

    def shape(f, cls, what):
        if not isinstance(f, cls):
            fail(f"{what} must be a {cls.__name__} formula, found {f}")
        return f

    def eigen_ok(v, *fs):
        bad = [str(f) for f in list(s.hyps) + list(fs) if v in _fv([f])]
        if bad:
            fail(f"eigenvariable condition: {v} is free in {bad[0]}")

    match p.rule:
        case "Ax":
            need(alpha_key(C) in ctx, "axiom conclusion is not a hypothesis")
        case "BotE":
            shape(prem[0].concl, Bot, "premise")
        case "RAA":
            shape(prem[0].concl, Bot, "premise")
            discharged[0] = Impl(C, BOT)
        case "ImplI":
            shape(C, Impl, "conclusion")
            need(alpha_eq(prem[0].concl, C.right), "premise does not prove the consequent")
            discharged[0] = C.left
        case "ImplE":
            f = shape(prem[0].concl, Impl, "major premise")
            need(alpha_eq(f.right, C), "consequent does not match the conclusion")
            need(alpha_eq(f.left, prem[1].concl), "minor premise does not prove the antecedent")
        case "AndI":
            shape(C, And, "conclusion")
            need(alpha_eq(prem[0].concl, C.left), "left premise does not match")
            need(alpha_eq(prem[1].concl, C.right), "right premise does not match")
        case "AndE1" | "AndE2":
            f = shape(prem[0].concl, And, "premise")
            need(alpha_eq(f.left if p.rule == "AndE1" else f.right, C), "conjunct does not match")
        case "OrI1" | "OrI2":
            shape(C, Or, "conclusion")
            need(alpha_eq(prem[0].concl, C.left if p.rule == "OrI1" else C.right), "disjunct does not match")
        case "OrE":
            f = shape(prem[0].concl, Or, "major premise")
            need(alpha_eq(prem[1].concl, C) and alpha_eq(prem[2].concl, C), "case premises must prove the conclusion")
            discharged[1], discharged[2] = f.left, f.right
        case "Forall1I":
            f = shape(C, Forall1, "conclusion")
            y = p.eigen
            need(isinstance(y, Var1), "eigenvariable must be first-order")
            need(alpha_eq(prem[0].concl, subst_term(f.body, f.var, y)), "premise is not the instance at the eigenvariable")
            eigen_ok(y, C)
        case "Forall1E":
            f = shape(prem[0].concl, Forall1, "premise")
            need(alpha_eq(C, subst_term(f.body, f.var, p.term)), "conclusion is not the instance at the term")
        case "Exists1I":
            f = shape(C, Exists1, "conclusion")
            need(alpha_eq(prem[0].concl, subst_term(f.body, f.var, p.term)), "premise is not the instance at the term")
        case "Exists1E":
            f = shape(prem[0].concl, Exists1, "major premise")
            y = p.eigen
            need(isinstance(y, Var1), "eigenvariable must be first-order")
            need(alpha_eq(prem[1].concl, C), "minor premise must prove the conclusion")
            discharged[1] = subst_term(f.body, f.var, y)
            eigen_ok(y, f, C)
        case "Forall2I":
            f = shape(C, Forall2, "conclusion")
            Y = p.eigen
            need(isinstance(Y, Var2) and Y.arity == f.var.arity, "eigenvariable must be second-order of matching arity")
            need(alpha_eq(prem[0].concl, subst_var2(f.body, f.var, Y)), "premise is not the instance at the eigenvariable")
            eigen_ok(Y, C)
        case "Forall2E":
            f = shape(prem[0].concl, Forall2, "premise")
            need(p.abs.arity == f.var.arity, "abstraction arity mismatch")
            need(alpha_eq(C, subst_formula2(f.body, f.var, p.abs)), "conclusion is not the instance at the abstraction")
        case "Exists2I":
            f = shape(C, Exists2, "conclusion")
            need(p.abs.arity == f.var.arity, "abstraction arity mismatch")
            need(
                alpha_eq(prem[0].concl, subst_formula2(f.body, f.var, p.abs)),
                "premise is not the instance at the abstraction",
            )
        case "Exists2E":
            f = shape(prem[0].concl, Exists2, "major premise")
            Y = p.eigen
            need(isinstance(Y, Var2) and Y.arity == f.var.arity, "eigenvariable must be second-order of matching arity")
            need(alpha_eq(prem[1].concl, C), "minor premise must prove the conclusion")
            discharged[1] = subst_var2(f.body, f.var, Y)
            eigen_ok(Y, f, C)

    for i, q in enumerate(prem):
        allowed = ctx if discharged[i] is None else ctx | {alpha_key(discharged[i])}
        for h in q.hyps:
            if alpha_key(h) not in allowed:
                raise Rejected(f"premise {i} uses hypothesis {h} not available here", path, p.rule)
    for i, q in enumerate(prem):
        _check(q, path + (i,))


# ---------------------------------------------------------------------------
# construction helpers: conclusions and minimal contexts are computed


def _merge(*ctxs: Iterable[Formula], drop: Formula | None = None) -> tuple[Formula, ...]:
    seen = set()
    out = []
    dk = alpha_key(drop) if drop is not None else None
    for ctx in ctxs:
        for h in ctx:
            k = alpha_key(h)
            if k in seen or k == dk:
                continue
            seen.add(k)
            out.append(h)
    return tuple(out)


@dataclass(frozen=True)
class Builder:
    """Builds proofs bottom-up with minimal contexts for a fixed logic and order."""

    logic: str = INTUITIONISTIC
    order: int = 2

    def _node(self, rule, ctx, concl, premises=(), **payload) -> Proof:
        return Proof(rule, Sequent(tuple(ctx), concl, self.logic, self.order), tuple(premises), **payload)

    def ax(self, a: Formula) -> Proof:
        return self._node("Ax", (a,), a)

    def bot_e(self, p: Proof, a: Formula) -> Proof:
        return self._node("BotE", p.hyps, a, [p])

    def raa(self, p: Proof, a: Formula) -> Proof:
        return self._node("RAA", _merge(p.hyps, drop=Impl(a, BOT)), a, [p])

    def impl_i(self, p: Proof, a: Formula) -> Proof:
        return self._node("ImplI", _merge(p.hyps, drop=a), Impl(a, p.concl), [p])

    def impl_e(self, major: Proof, minor: Proof) -> Proof:
        f = major.concl
        if not isinstance(f, Impl):
            raise Rejected(f"not an implication: {f}", rule="ImplE")
        return self._node("ImplE", _merge(major.hyps, minor.hyps), f.right, [major, minor])

    def and_i(self, l: Proof, r: Proof) -> Proof:
        return self._node("AndI", _merge(l.hyps, r.hyps), And(l.concl, r.concl), [l, r])

    def and_e1(self, p: Proof) -> Proof:
        return self._node("AndE1", p.hyps, p.concl.left, [p])

    def and_e2(self, p: Proof) -> Proof:
        return self._node("AndE2", p.hyps, p.concl.right, [p])

    def or_i1(self, p: Proof, right: Formula) -> Proof:
        return self._node("OrI1", p.hyps, Or(p.concl, right), [p])

    def or_i2(self, p: Proof, left: Formula) -> Proof:
        return self._node("OrI2", p.hyps, Or(left, p.concl), [p])

    def or_e(self, major: Proof, left: Proof, right: Proof) -> Proof:
        f = major.concl
        ctx = _merge(major.hyps, _merge(left.hyps, drop=f.left), _merge(right.hyps, drop=f.right))
        return self._node("OrE", ctx, left.concl, [major, left, right])

    def forall1_i(self, p: Proof, y: Var1, target: Forall1) -> Proof:
        return self._node("Forall1I", p.hyps, target, [p], eigen=y)

    def forall1_e(self, p: Proof, t: Term) -> Proof:
        f = p.concl
        return self._node("Forall1E", p.hyps, subst_term(f.body, f.var, t), [p], term=t)

    def exists1_i(self, p: Proof, t: Term, target: Exists1) -> Proof:
        return self._node("Exists1I", p.hyps, target, [p], term=t)

    def exists1_e(self, major: Proof, minor: Proof, y: Var1) -> Proof:
        f = major.concl
        ctx = _merge(major.hyps, _merge(minor.hyps, drop=subst_term(f.body, f.var, y)))
        return self._node("Exists1E", ctx, minor.concl, [major, minor], eigen=y)

    def forall2_i(self, p: Proof, Y: Var2, target: Forall2) -> Proof:
        return self._node("Forall2I", p.hyps, target, [p], eigen=Y)

    def forall2_e(self, p: Proof, a: Abstraction | Var2) -> Proof:
        if isinstance(a, Var2):
            a = Abstraction.of_var(a)
        f = p.concl
        return self._node("Forall2E", p.hyps, subst_formula2(f.body, f.var, a), [p], abs=a)

    def exists2_i(self, p: Proof, a: Abstraction | Var2, target: Exists2) -> Proof:
        if isinstance(a, Var2):
            a = Abstraction.of_var(a)
        return self._node("Exists2I", p.hyps, target, [p], abs=a)

    def exists2_e(self, major: Proof, minor: Proof, Y: Var2) -> Proof:
        f = major.concl
        ctx = _merge(major.hyps, _merge(minor.hyps, drop=subst_var2(f.body, f.var, Y)))
        return self._node("Exists2E", ctx, minor.concl, [major, minor], eigen=Y)

    # derived combinators ---------------------------------------------------

    def forall_i(self, p: Proof, v, target) -> Proof:
        return self.forall1_i(p, v, target) if isinstance(v, Var1) else self.forall2_i(p, v, target)

    def forall_e(self, p: Proof, t) -> Proof:
        return self.forall1_e(p, t) if isinstance(p.concl, Forall1) else self.forall2_e(p, t)

    def exists_i(self, p: Proof, t, target) -> Proof:
        return self.exists1_i(p, t, target) if isinstance(target, Exists1) else self.exists2_i(p, t, target)

    def exists_e(self, major: Proof, minor: Proof, v) -> Proof:
        return self.exists1_e(major, minor, v) if isinstance(v, Var1) else self.exists2_e(major, minor, v)

    def cut(self, p: Proof, lemma: Proof) -> Proof:
        """Discharge ``lemma.concl`` from the hypotheses of ``p`` (via ImplI then ImplE)."""
        return self.impl_e(self.impl_i(p, lemma.concl), lemma)

    def weaken(self, p: Proof, hyps: Iterable[Formula]) -> Proof:
        """Same proof with a larger root context (the root payload must stay valid)."""
        hyps = _merge(p.hyps, hyps)
        return Proof(p.rule, Sequent(hyps, p.concl, self.logic, self.order), p.premises, p.eigen, p.term, p.abs)


def eigen_clash(p: Proof, hyps: Iterable[Formula]) -> bool:
    if p.eigen is None:
        return False
    return p.eigen in _fv(hyps)


def term_fv(t: Term) -> frozenset:
    return term_vars(t)
