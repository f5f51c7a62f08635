"""Proof translators between the second-order system and the first-order ``Ap_n`` system."""

from __future__ import annotations

from typing import Iterable

from ..coding import PurityError, SchemaInstance, inserted_vars, rev, sc1_instance, star
from ..syntax import (
    BOT,
    Abstraction,
    And,
    Atom2,
    Exists1,
    Exists2,
    Forall1,
    Forall2,
    Formula,
    Impl,
    Var1,
    Var2,
    alpha_eq,
    alpha_key,
    free_vars_all,
    substitute,
)
from .kernel import Builder, Proof, Rejected, check
from .proofs import (
    all_indices,
    congruence_ap,
    iff_mp,
    prove_equiv,
    prove_idempotent,
    prove_sc2,
    relabel,
    subst_proof,
)


def _require(p: Proof, order: int):
    v = check(p)
    if not v:
        raise Rejected(f"input proof is not accepted: {v}", v.path, v.rule)
    if p.seq.order != order:
        raise Rejected(f"expected an order-{order} proof")


def freshen_eigenvariables(p: Proof) -> Proof:
    """Rename every eigenvariable to an index used nowhere else in the proof, any sort."""
    counter = [max(all_indices(p), default=-1) + 1]

    def go(q: Proof) -> Proof:
        if q.eigen is None:
            return Proof(q.rule, q.seq, tuple(go(r) for r in q.premises), q.eigen, q.term, q.abs)
        e = q.eigen
        i = counter[0]
        counter[0] += 1
        new = Var1(i) if isinstance(e, Var1) else Var2(e.arity, i)
        j = 0 if q.rule in ("Forall1I", "Forall2I") else 1
        prem = list(q.premises)
        prem[j] = subst_proof(prem[j], {e: new})
        return Proof(q.rule, q.seq, tuple(go(r) for r in prem), new, q.term, q.abs)

    return go(p)


# ---------------------------------------------------------------------------
# second order -> first order


class _Down:
    def __init__(self, p: Proof):
        self.B = Builder(p.seq.logic, 1)
        self.next = max(all_indices(p), default=-1) + 1
        self.used: dict = {}

    def fresh(self) -> Var1:
        v = Var1(self.next)
        self.next += 1
        return v

    def sc1(self, a: Abstraction) -> Proof:
        """Instantiate the outer parameters of the SC1 instance for ``a`` by their own codes."""
        s = SchemaInstance.for_body(a.body, a.params)
        h = sc1_instance(s)
        self.used.setdefault(alpha_key(h), h)
        p = self.B.ax(h)
        for v in s.so_params:
            p = self.B.forall1_e(p, Var1(v.index))
        return p

    def go(self, p: Proof) -> Proof:
        B = self.B
        prem = [self.go(q) for q in p.premises]
        C = star(p.concl)
        match p.rule:
            case "Ax":
                return B.ax(C)
            case "BotE":
                return B.bot_e(prem[0], C)
            case "RAA":
                return B.raa(prem[0], C)
            case "ImplI":
                return B.impl_i(prem[0], star(p.concl.left))
            case "ImplE":
                return B.impl_e(*prem)
            case "AndI":
                return B.and_i(*prem)
            case "AndE1":
                return B.and_e1(prem[0])
            case "AndE2":
                return B.and_e2(prem[0])
            case "OrI1":
                return B.or_i1(prem[0], C.right)
            case "OrI2":
                return B.or_i2(prem[0], C.left)
            case "OrE":
                return B.or_e(*prem)
            case "Forall1I" | "Forall2I":
                return B.forall1_i(prem[0], Var1(p.eigen.index), C)
            case "Forall1E":
                return B.forall1_e(prem[0], p.term)
            case "Exists1I":
                return B.exists1_i(prem[0], p.term, C)
            case "Exists1E" | "Exists2E":
                return B.exists1_e(prem[0], prem[1], Var1(p.eigen.index))
            case "Forall2E":
                Y = p.abs.as_var()
                if Y is not None:
                    return B.forall1_e(prem[0], Var1(Y.index))
                major = self.sc1(p.abs)
                w = self.fresh()
                eqv = B.ax(substitute(major.concl.body, {major.concl.var: w}))
                inst = B.forall1_e(prem[0], w)
                c = congruence_ap(B, inst.concl, p.abs.arity, w, eqv)
                return B.exists1_e(major, iff_mp(B, c, inst, backward=True), w)
            case "Exists2I":
                Y = p.abs.as_var()
                if Y is not None:
                    return B.exists1_i(prem[0], Var1(Y.index), C)
                major = self.sc1(p.abs)
                w = self.fresh()
                eqv = B.ax(substitute(major.concl.body, {major.concl.var: w}))
                inst_f = substitute(C.body, {C.var: w})
                c = congruence_ap(B, inst_f, p.abs.arity, w, eqv)
                return B.exists1_e(major, B.exists1_i(iff_mp(B, c, prem[0]), w, C), w)
        raise Rejected(f"unknown rule {p.rule}")


def translate_down(p: Proof) -> Proof:
    """``G |-2 A`` becomes ``star(G), S |-1 star(A)`` where ``S`` lists the comprehension instances used."""
    _require(p, 2)
    q = freshen_eigenvariables(p)
    d = _Down(q)
    out = d.go(q)
    hyps = [star(h) for h in p.hyps] + list(d.used.values())
    return d.B.weaken(out, hyps)


def sc1_hypotheses(p: Proof, gamma: Iterable[Formula]) -> list[Formula]:
    """Hypotheses of a translated proof that are not codings of ``gamma``."""
    coded = {alpha_key(star(g)) for g in gamma}
    return [h for h in p.hyps if alpha_key(h) not in coded]


# ---------------------------------------------------------------------------
# first order -> second order


def _instantiate(f: Formula, v) -> Formula:
    return substitute(f.body, {f.var: v})


def _bot_abs(n: int) -> Abstraction:
    return Abstraction(tuple(Var1(i) for i in range(n)), BOT)


def _witnesses(t, Xs: list[Var2]) -> list:
    """Instances for ``x`` and for each inserted ``X^k``."""
    if isinstance(t, Var1):
        return [t] + [Abstraction.of_var(Var2(X.arity, t.index)) for X in Xs]
    return [t] + [_bot_abs(X.arity) for X in Xs]


def _eigens(e: Var1, Xs: list[Var2]) -> list:
    return [e] + [Var2(X.arity, e.index) for X in Xs]


def _chain(f: Formula, vals: list) -> list[Formula]:
    """``[f, f instantiated once, ...]`` following the quantifier prefix."""
    out = [f]
    for v in vals:
        if isinstance(v, Abstraction):
            v = v.as_var() if v.as_var() is not None else v
        out.append(_instantiate(out[-1], v))
    return out


class _Up:
    def __init__(self, p: Proof):
        self.B = Builder(p.seq.logic, 2)

    def go(self, p: Proof) -> Proof:
        B = self.B
        prem = [self.go(q) for q in p.premises]
        C = rev(p.concl)
        match p.rule:
            case "Ax":
                return B.ax(C)
            case "BotE":
                return B.bot_e(prem[0], C)
            case "RAA":
                return B.raa(prem[0], C)
            case "ImplI":
                return B.impl_i(prem[0], rev(p.concl.left))
            case "ImplE":
                return B.impl_e(*prem)
            case "AndI":
                return B.and_i(*prem)
            case "AndE1":
                return B.and_e1(prem[0])
            case "AndE2":
                return B.and_e2(prem[0])
            case "OrI1":
                return B.or_i1(prem[0], C.right)
            case "OrI2":
                return B.or_i2(prem[0], C.left)
            case "OrE":
                return B.or_e(*prem)
            case "Forall1I":
                f = p.concl
                es = _eigens(p.eigen, inserted_vars(f.var, f.body))
                chain = _chain(C, es)
                q = prem[0]
                for g, e in zip(reversed(chain[:-1]), reversed(es)):
                    q = B.forall_i(q, e, g)
                return q
            case "Forall1E":
                f = p.premises[0].concl
                q = prem[0]
                for w in _witnesses(p.term, inserted_vars(f.var, f.body)):
                    q = B.forall_e(q, w)
                return q
            case "Exists1I":
                ws = _witnesses(p.term, inserted_vars(p.concl.var, p.concl.body))
                chain = _chain(C, ws)
                q = prem[0]
                for g, w in zip(reversed(chain[:-1]), reversed(ws)):
                    q = B.exists_i(q, w, g)
                return q
            case "Exists1E":
                f = p.premises[0].concl
                es = _eigens(p.eigen, inserted_vars(f.var, f.body))
                chain = _chain(prem[0].concl, es)
                q = prem[1]
                for k in range(len(es) - 1, 0, -1):
                    q = B.exists_e(B.ax(chain[k]), q, es[k])
                return B.exists_e(prem[0], q, es[0])
        raise Rejected(f"rule {p.rule} cannot occur in a first-order proof")


def translate_up(p: Proof) -> Proof:
    """``G |-1 A`` becomes ``rev(G) |-2 rev(A)``."""
    _require(p, 1)
    u = _Up(p)
    out = u.go(p)
    return u.B.weaken(out, [rev(h) for h in p.hyps])


# ---------------------------------------------------------------------------
# back to the original sequent


def recover_instance(f: Formula) -> tuple[SchemaInstance, Formula]:
    """For the decoding ``f`` of an SC1 instance, an SC2 instance equal to it up to vacuous quantifiers."""
    params = []
    g = f
    while isinstance(g, (Forall1, Forall2)):
        if g.var in free_vars_all(g.body):
            params.append(g.var)
        g = g.body
    if isinstance(g, Exists1) and g.var not in free_vars_all(g.body):
        g = g.body
    if not isinstance(g, Exists2):
        raise Rejected(f"not the decoding of a comprehension instance: {f}")
    W, core = g.var, g.body
    xs = []
    while isinstance(core, Forall1):
        xs.append(core.var)
        core = core.body
    ok = isinstance(core, And) and isinstance(core.left, Impl)
    if ok:
        lhs, rhs = core.left.left, core.left.right
        ok = (
            isinstance(rhs, Atom2)
            and rhs.var == W
            and list(rhs.args) == xs
            and len(set(xs)) == len(xs)
            and alpha_eq(core.right, Impl(rhs, lhs))
            and W not in free_vars_all(lhs)
        )
    if not ok:
        raise Rejected(f"not the decoding of a comprehension instance: {f}")
    try:
        s = SchemaInstance(core.left.left, tuple(xs), tuple(params))
    except (ValueError, PurityError) as e:
        raise Rejected(f"not the decoding of a comprehension instance: {e}") from None
    return s, f


def prove_rev_sc1(h: Formula) -> Proof:
    """``|-2 rev(h)`` for a first-order comprehension instance ``h``."""
    s, f = recover_instance(rev(h))
    B = Builder("i", 2)
    base = prove_sc2(s)
    return iff_mp(B, prove_equiv(base.concl, f), base)


def derive_transprooftrois(p: Proof, gamma: Iterable[Formula], concl: Formula) -> Proof:
    """From ``star(gamma), S |-1 star(concl)`` with ``S`` comprehension instances, build ``gamma |-2 concl``."""
    _require(p, 1)
    gamma = list(gamma)
    if not alpha_eq(p.concl, star(concl)):
        raise Rejected(f"conclusion {p.concl} is not the coding of {concl}")
    logic = p.seq.logic
    B = Builder(logic, 2)

    def lemma(q: Proof) -> Proof:
        return relabel(q, logic)

    q = translate_up(p)
    for h in sc1_hypotheses(p, gamma):
        try:
            lem = lemma(prove_rev_sc1(h))
        except Rejected as e:
            raise Rejected(f"hypothesis {h} is neither coded context nor comprehension: {e.reason}") from None
        q = B.cut(q, lem)
    for g in gamma:
        rg = rev(star(g))
        if alpha_key(rg) not in {alpha_key(h) for h in q.hyps}:
            continue
        idem = lemma(prove_idempotent(g))
        q = B.impl_e(B.impl_i(q, rg), iff_mp(B, idem, B.ax(g), backward=True))
    q = iff_mp(B, lemma(prove_idempotent(concl)), q)
    return B.weaken(q, gamma)
