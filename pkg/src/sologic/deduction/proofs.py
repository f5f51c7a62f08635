"""Proof generators: substitution, equivalence lemmas, comprehension and idempotence."""

from __future__ import annotations

from typing import Mapping

from ..coding import SchemaInstance, rev, sc2_instance, star
from ..syntax import (
    Abstraction,
    And,
    Atom1,
    Atom2,
    Bot,
    Exists1,
    Exists2,
    Forall1,
    Forall2,
    Formula,
    Iff,
    Impl,
    Or,
    Var1,
    Var2,
    alpha_eq,
    free_vars_all,
    is_l2_pure,
    quantify,
    substitute,
    subst_formula2,
    subst_in_term,
    term_vars,
    used_indices,
    least_index,
)
from .kernel import INTUITIONISTIC, Builder, Proof, Rejected, Sequent

Quant = (Forall1, Exists1, Forall2, Exists2)


def all_indices(p: Proof) -> set[int]:
    """Indices of every variable occurring anywhere in ``p``."""
    out: set[int] = set()
    for q in p.nodes():
        out |= used_indices(q.hyps, q.concl, q.eigen, q.term, q.abs)
    return out


def fresh_like(v, avoid: set[int]):
    i = least_index(avoid)
    avoid.add(i)
    return Var1(i) if isinstance(v, Var1) else Var2(v.arity, i)


def retarget(p: Proof, concl: Formula) -> Proof:
    """Replace the conclusion by an alpha-equivalent formula."""
    if not alpha_eq(p.concl, concl):
        raise Rejected(f"{concl} is not an alpha-variant of {p.concl}", rule=p.rule)
    return Proof(p.rule, Sequent(p.hyps, concl, p.seq.logic, p.seq.order), p.premises, p.eigen, p.term, p.abs)


def relabel(p: Proof, logic: str) -> Proof:
    """The same tree with every node flagged for ``logic`` (intuitionistic proofs stay valid classically)."""
    if p.seq.logic == logic:
        return p
    if logic == INTUITIONISTIC and any(q.rule == "RAA" for q in p.nodes()):
        raise Rejected("cannot relabel a proof using RAA as intuitionistic", rule="RAA")
    s = p.seq
    return Proof(
        p.rule,
        Sequent(s.hyps, s.concl, logic, s.order),
        tuple(relabel(q, logic) for q in p.premises),
        p.eigen,
        p.term,
        p.abs,
    )


# ---------------------------------------------------------------------------
# substitution


def subst_abstraction(a: Abstraction, m: Mapping) -> Abstraction:
    wrapped = substitute(quantify("forall", a.params, a.body), dict(m))
    params = []
    for _ in a.params:
        params.append(wrapped.var)
        wrapped = wrapped.body
    return Abstraction(tuple(params), wrapped)


def _check_sigma(sigma: Mapping):
    for k, v in sigma.items():
        if isinstance(k, Var2):
            if not isinstance(v, Var2):
                raise ValueError(f"{k} must be mapped to a second-order variable")
            if v.arity != k.arity:
                raise ValueError(f"arity mismatch substituting {v} for {k}")
        elif not isinstance(k, Var1):
            raise TypeError(f"cannot substitute for {k!r}")


def subst_proof(p: Proof, sigma: Mapping) -> Proof:
    """Apply ``sigma`` to every sequent; eigenvariables are renamed when ``sigma`` would capture them."""
    _check_sigma(sigma)
    sigma = {k: v for k, v in sigma.items() if k != v}
    if not sigma:
        return p
    return _subst_proof(p, sigma)


def _range_vars(sigma: Mapping) -> set:
    out = set()
    for v in sigma.values():
        out |= {v} if isinstance(v, Var2) else set(term_vars(v))
    return out


def _subst_proof(p: Proof, sigma: dict) -> Proof:
    s = p.seq
    seq = Sequent(tuple(substitute(h, sigma) for h in s.hyps), substitute(s.concl, sigma), s.logic, s.order)
    eigen = p.eigen
    prem_sigmas = [sigma] * len(p.premises)
    if eigen is not None:
        inner = {k: v for k, v in sigma.items() if k != eigen}
        if eigen in _range_vars(inner):
            avoid = all_indices(p) | used_indices(list(sigma.keys()), list(sigma.values()))
            new = fresh_like(eigen, avoid)
            inner[eigen] = new
            eigen = new
        j = 0 if p.rule in ("Forall1I", "Forall2I") else 1
        prem_sigmas[j] = inner
    premises = tuple(_subst_proof(q, m) if m else q for q, m in zip(p.premises, prem_sigmas))
    term = subst_in_term(p.term, sigma) if p.term is not None else None
    abs_ = subst_abstraction(p.abs, sigma) if p.abs is not None else None
    return Proof(p.rule, seq, premises, eigen, term, abs_)


# ---------------------------------------------------------------------------
# equivalence lemmas


def iff_refl(B: Builder, a: Formula) -> Proof:
    i = B.impl_i(B.ax(a), a)
    return B.and_i(i, i)


def iff_sym(B: Builder, p: Proof) -> Proof:
    return B.and_i(B.and_e2(p), B.and_e1(p))


def iff_trans(B: Builder, p: Proof, q: Proof) -> Proof:
    """From ``A <-> B`` and ``B <-> C`` derive ``A <-> C``."""
    a = p.concl.left.left
    c = q.concl.left.right
    fwd = B.impl_i(B.impl_e(B.and_e1(q), B.impl_e(B.and_e1(p), B.ax(a))), a)
    bwd = B.impl_i(B.impl_e(B.and_e2(p), B.impl_e(B.and_e2(q), B.ax(c))), c)
    return B.and_i(fwd, bwd)


def iff_mp(B: Builder, eqv: Proof, p: Proof, backward: bool = False) -> Proof:
    """Transport ``p`` along ``eqv`` (left to right unless ``backward``)."""
    return B.impl_e(B.and_e2(eqv) if backward else B.and_e1(eqv), p)


def _sides(eqv: Proof) -> tuple[Formula, Formula]:
    f = eqv.concl
    return f.left.left, f.left.right


def cong_binary(B: Builder, kind, p: Proof, q: Proof) -> Proof:
    """From ``A <-> A'`` and ``C <-> C'`` derive ``A op C <-> A' op C'``."""
    a, a2 = _sides(p)
    c, c2 = _sides(q)
    lhs, rhs = kind(a, c), kind(a2, c2)
    if kind is Impl:
        fwd = B.impl_e(B.ax(lhs), iff_mp(B, p, B.ax(a2), backward=True))
        fwd = B.impl_i(B.impl_i(iff_mp(B, q, fwd), a2), lhs)
        bwd = B.impl_e(B.ax(rhs), iff_mp(B, p, B.ax(a)))
        bwd = B.impl_i(B.impl_i(iff_mp(B, q, bwd, backward=True), a), rhs)
    elif kind is And:
        fwd = B.impl_i(B.and_i(iff_mp(B, p, B.and_e1(B.ax(lhs))), iff_mp(B, q, B.and_e2(B.ax(lhs)))), lhs)
        bwd = B.impl_i(
            B.and_i(iff_mp(B, p, B.and_e1(B.ax(rhs)), True), iff_mp(B, q, B.and_e2(B.ax(rhs)), True)), rhs
        )
    else:
        fwd = B.or_e(B.ax(lhs), B.or_i1(iff_mp(B, p, B.ax(a)), c2), B.or_i2(iff_mp(B, q, B.ax(c)), a2))
        fwd = B.impl_i(fwd, lhs)
        bwd = B.or_e(
            B.ax(rhs), B.or_i1(iff_mp(B, p, B.ax(a2), True), c), B.or_i2(iff_mp(B, q, B.ax(c2), True), a)
        )
        bwd = B.impl_i(bwd, rhs)
    return B.and_i(fwd, bwd)


def _witness(z):
    return Abstraction.of_var(z) if isinstance(z, Var2) else z


def cong_quant(B: Builder, f: Formula, g: Formula, z, body: Proof) -> Proof:
    """``f <-> g`` for same-kind quantifications, from a proof of the instances at the eigenvariable ``z``."""
    a, c = _sides(body)
    w = _witness(z)
    if isinstance(f, (Forall1, Forall2)):
        fwd = B.impl_i(B.forall_i(iff_mp(B, body, B.forall_e(B.ax(f), w)), z, g), f)
        bwd = B.impl_i(B.forall_i(iff_mp(B, body, B.forall_e(B.ax(g), w), True), z, f), g)
    else:
        fwd = B.impl_i(B.exists_e(B.ax(f), B.exists_i(iff_mp(B, body, B.ax(a)), w, g), z), f)
        bwd = B.impl_i(B.exists_e(B.ax(g), B.exists_i(iff_mp(B, body, B.ax(c), True), w, f), z), g)
    return B.and_i(fwd, bwd)


def vacuous(B: Builder, f: Formula) -> Proof:
    """``Q v C <-> C`` when ``v`` is not free in ``C``."""
    v, c = f.var, f.body
    w = _witness(v)
    if isinstance(f, (Forall1, Forall2)):
        fwd = B.impl_i(B.forall_e(B.ax(f), w), f)
        bwd = B.impl_i(B.forall_i(B.ax(c), v, f), c)
    else:
        fwd = B.impl_i(B.exists_e(B.ax(f), B.ax(c), v), f)
        bwd = B.impl_i(B.exists_i(B.ax(c), w, f), c)
    return B.and_i(fwd, bwd)


def _same_binder(f: Formula, g: Formula) -> bool:
    if type(f) is not type(g):
        return False
    return isinstance(f.var, Var1) or f.var.arity == g.var.arity


def prove_equiv(f: Formula, g: Formula, builder: Builder | None = None) -> Proof:
    """``|- f <-> g`` when the two formulas agree up to bound renaming and vacuous quantifiers."""
    B = builder or Builder(INTUITIONISTIC, 2)
    avoid = used_indices(f, g)
    return _equiv(B, f, g, avoid)


def _is_vacuous(f: Formula) -> bool:
    return isinstance(f, Quant) and f.var not in free_vars_all(f.body)


def _equiv(B: Builder, f: Formula, g: Formula, avoid: set[int]) -> Proof:
    if alpha_eq(f, g):
        return retarget(iff_refl(B, f), Iff(f, g))
    if _is_vacuous(f):
        return iff_trans(B, vacuous(B, f), _equiv(B, f.body, g, avoid))
    if _is_vacuous(g):
        return iff_trans(B, _equiv(B, f, g.body, avoid), iff_sym(B, vacuous(B, g)))
    match f:
        case Impl(l, r) | And(l, r) | Or(l, r) if type(g) is type(f):
            return cong_binary(B, type(f), _equiv(B, l, g.left, avoid), _equiv(B, r, g.right, avoid))
        case Forall1() | Exists1() | Forall2() | Exists2() if _same_binder(f, g):
            z = fresh_like(f.var, avoid)
            fb = substitute(f.body, {f.var: z})
            gb = substitute(g.body, {g.var: z})
            return cong_quant(B, f, g, z, _equiv(B, fb, gb, avoid))
    raise Rejected(f"formulas differ beyond vacuous quantifiers: {f} / {g}")


# ---------------------------------------------------------------------------
# comprehension and idempotence


def prove_forall_refl(B: Builder, f: Formula) -> Proof:
    """``|- forall xs. (L <-> R)`` when ``L`` and ``R`` are alpha-equivalent."""
    if isinstance(f, Forall1):
        return B.forall1_i(prove_forall_refl(B, f.body), f.var, f)
    return retarget(iff_refl(B, f.left.left), f)


def prove_sc2(s: SchemaInstance) -> Proof:
    """Proof of a comprehension instance, witnessing the predicate by ``lambda xs. G``."""
    B = Builder(INTUITIONISTIC, 2)
    target = sc2_instance(s)
    outer = []
    f = target
    while not isinstance(f, Exists2):
        outer.append(f)
        f = f.body
    a = Abstraction(s.fo_params, s.body)
    p = B.exists2_i(prove_forall_refl(B, subst_formula2(f.body, f.var, a)), a, f)
    for g in reversed(outer):
        p = B.forall_i(p, g.var, g)
    return p


def prove_idempotent(a: Formula) -> Proof:
    """``|- rev(star(a)) <-> a`` by structural induction, absorbing vacuous quantifiers."""
    if not is_l2_pure(a):
        raise ValueError("prove_idempotent expects a second-order formula")
    return prove_equiv(rev(star(a)), a)


# ---------------------------------------------------------------------------
# congruence


def prove_congruence(f: Formula, X: Var2, a: Abstraction, b: Abstraction, eqv: Proof) -> Proof:
    """``f[X:=a] <-> f[X:=b]`` from ``eqv : forall xs. (a xs <-> b xs)``."""
    if a.arity != X.arity or b.arity != X.arity:
        raise Rejected("abstraction arity mismatch")
    b_aligned = substitute(b.body, dict(zip(b.params, a.params)))
    expected = quantify("forall", a.params, Iff(a.body, b_aligned))
    if not alpha_eq(eqv.concl, expected):
        raise Rejected(f"equivalence proof concludes {eqv.concl}, expected {expected}")
    B = Builder(eqv.seq.logic, eqv.seq.order)
    avoid = used_indices(f, a, b, X, eqv.hyps, eqv.concl)
    return _congruence(B, f, X, a, b, eqv, avoid)


def _congruence(B, f, X, a, b, eqv, avoid):
    fa = subst_formula2(f, X, a)
    fb = subst_formula2(f, X, b)
    if X not in free_vars_all(f):
        return retarget(iff_refl(B, fa), Iff(fa, fb))
    match f:
        case Atom2(_, args):
            p = eqv
            for t in args:
                p = B.forall1_e(p, t)
            return retarget(p, Iff(fa, fb))
        case Impl(l, r) | And(l, r) | Or(l, r):
            pl = _congruence(B, l, X, a, b, eqv, avoid)
            pr = _congruence(B, r, X, a, b, eqv, avoid)
            return retarget(cong_binary(B, type(f), pl, pr), Iff(fa, fb))
        case Forall1(v, body) | Exists1(v, body) | Forall2(v, body) | Exists2(v, body):
            z = fresh_like(v, avoid)
            inner = _congruence(B, substitute(body, {v: z}), X, a, b, eqv, avoid)
            return cong_quant(B, fa, fb, z, inner)
    raise Rejected(f"cannot build a congruence for {f}")


def ap_holes(f: Formula, n: int, w: Var1, K: Var2) -> Formula:
    """Replace every ``Ap_n(w, ts)`` by ``K(ts)`` (a mixed formula used as a congruence pattern)."""
    match f:
        case Atom1(m, head, args) if m == n and head == w:
            return Atom2(K, args)
        case Bot() | Atom1() | Atom2():
            return f
        case Impl(l, r) | And(l, r) | Or(l, r):
            return type(f)(ap_holes(l, n, w, K), ap_holes(r, n, w, K))
        case Forall1(v, body) | Exists1(v, body) if v == w:
            return f
        case Forall1(v, body) | Exists1(v, body) | Forall2(v, body) | Exists2(v, body):
            return type(f)(v, ap_holes(body, n, w, K))
    raise TypeError(f"not a formula: {f!r}")


def congruence_ap(B: Builder, f: Formula, n: int, w: Var1, eqv: Proof) -> Proof:
    """First-order congruence: ``eqv : forall zs. (L <-> Ap_n(w, zs))`` yields ``f[Ap_n w := L] <-> f``."""
    params = []
    g = eqv.concl
    for _ in range(n):
        params.append(g.var)
        g = g.body
    lhs, rhs = g.left.left, g.left.right
    avoid = used_indices(f, eqv.hyps, eqv.concl, w)
    K = Var2(n, least_index(avoid))
    avoid.add(K.index)
    pattern = ap_holes(f, n, w, K)
    a = Abstraction(tuple(params), lhs)
    b = Abstraction(tuple(params), rhs)
    return _congruence(B, pattern, K, a, b, eqv, avoid)
