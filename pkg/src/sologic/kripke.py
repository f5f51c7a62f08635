"""Finite Kripke models for both languages, forcing, and the semantic translation.

Points are stored as integers ``0 .. k-1`` (0 is the bottom); ``Poset.names``
keeps the labels used in files.  A predicate family is a tuple with one
entry per point: the tuple-set at that point, or ``None`` outside the cone
of the family's level.  Arity-0 values are ``frozenset()`` (0) and
``frozenset({()})`` (1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .classical import FALSE, TRUE, EvalError, ModelError, powerset
from .coding import enumerate_instances, sc1_instance, sc2_instance
from .syntax import (
    And,
    Atom1,
    Atom2,
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
    fresh_var2,
    free_vars,
)

Family = tuple


@dataclass(frozen=True, eq=False)
class Poset:
    names: tuple
    leq: frozenset  # pairs (i, j) with i <= j, reflexive and transitive

    def __post_init__(self):
        k = len(self.names)
        if k == 0:
            raise ModelError("partial order", "no points")
        if len(set(self.names)) != k:
            raise ModelError("partial order", "duplicate point names")
        leq = set(self.leq)
        for i in range(k):
            if (i, i) not in leq:
                raise ModelError("partial order", f"{self.names[i]} is not reflexive")
        for i, j in leq:
            if i != j and (j, i) in leq:
                raise ModelError("partial order", f"{self.names[i]} and {self.names[j]} break antisymmetry")
            for j2, l in leq:
                if j2 == j and (i, l) not in leq:
                    raise ModelError("partial order", "relation is not transitive")
        for i in range(k):
            if (0, i) not in leq:
                raise ModelError("bottom", f"{self.names[0]} is not below {self.names[i]}")
        object.__setattr__(self, "leq", frozenset(leq))
        up = tuple(tuple(j for j in range(k) if (i, j) in leq) for i in range(k))
        object.__setattr__(self, "up", up)

    @classmethod
    def from_pairs(cls, names: Sequence, pairs: Iterable[tuple]) -> Poset:
        """Reflexive-transitive closure of the given (name, name) pairs; ``names[0]`` is the bottom."""
        index = {n: i for i, n in enumerate(names)}
        try:
            rel = {(index[a], index[b]) for a, b in pairs}
        except KeyError as e:
            raise ModelError("partial order", f"unknown point {e.args[0]}") from None
        rel |= {(i, i) for i in range(len(names))}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return cls(tuple(names), frozenset(rel))

    @classmethod
    def chain(cls, k: int) -> Poset:
        return cls(tuple(str(i) for i in range(k)), frozenset((i, j) for i in range(k) for j in range(i, k)))

    def __len__(self):
        return len(self.names)

    def le(self, i: int, j: int) -> bool:
        return (i, j) in self.leq

    def point(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ModelError("points", f"unknown point {name!r}") from None

    def cone(self, p: int) -> tuple[int, ...]:
        return self.up[p]

    def topo(self, points: Iterable[int]) -> list[int]:
        pts = list(points)
        return sorted(pts, key=lambda q: sum(1 for r in pts if self.le(r, q)))


def _check_frame(poset: Poset, domains, fn_tables):
    if len(domains) != len(poset) or len(fn_tables) != len(poset):
        raise ModelError("domains", "one domain and one table set per point")
    for p in range(len(poset)):
        if not domains[p]:
            raise ModelError("nonempty domain", f"at {poset.names[p]}")
        for q in poset.up[p]:
            if not set(domains[p]) <= set(domains[q]):
                raise ModelError("increasing domains", f"{poset.names[p]} <= {poset.names[q]}")
    for p in range(len(poset)):
        dom = set(domains[p])
        for name, table in fn_tables[p].items():
            arities = {len(k) for k in table}
            n = arities.pop() if arities else 0
            for args in itertools.product(sorted(dom), repeat=n):
                if args not in table:
                    raise ModelError("function tables", f"{name} undefined on {args} at {poset.names[p]}")
                if table[args] not in dom:
                    raise ModelError("function tables", f"{name}{args} leaves the domain at {poset.names[p]}")
            for q in poset.up[p]:
                other = fn_tables[q].get(name)
                if other is None or any(other.get(k) != v for k, v in table.items()):
                    raise ModelError(
                        "function compatibility", f"{name} differs between {poset.names[p]} and {poset.names[q]}"
                    )


@dataclass(frozen=True, eq=False)
class KripkeModel1:
    poset: Poset
    domains: tuple  # frozenset of elements per point
    relations: Mapping[int, tuple]  # n -> tuple over points of frozensets of (n+1)-tuples
    fn_tables: tuple = None

    def __post_init__(self):
        k = len(self.poset)
        if self.fn_tables is None:
            object.__setattr__(self, "fn_tables", tuple({} for _ in range(k)))
        object.__setattr__(self, "domains", tuple(frozenset(d) for d in self.domains))
        _check_frame(self.poset, self.domains, self.fn_tables)
        rels = {n: tuple(frozenset(r) for r in rs) for n, rs in self.relations.items()}
        for n, rs in rels.items():
            if len(rs) != k:
                raise ModelError("relations", f"Ap{n} needs one relation per point")
            for p in range(k):
                for t in rs[p]:
                    if len(t) != n + 1 or not set(t) <= self.domains[p]:
                        raise ModelError("relation arity", f"Ap{n} at {self.poset.names[p]} contains {t}")
                for q in self.poset.up[p]:
                    if not rs[p] <= rs[q]:
                        raise ModelError(
                            "increasing relations", f"Ap{n} shrinks from {self.poset.names[p]} to {self.poset.names[q]}"
                        )
        object.__setattr__(self, "relations", rels)


@dataclass(frozen=True, eq=False)
class KripkeModel2:
    poset: Poset
    domains: tuple
    families: Mapping[int, tuple]  # n -> tuple over points of frozensets of families
    fn_tables: tuple = None
    names: Mapping[str, Family] = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.poset)
        if self.fn_tables is None:
            object.__setattr__(self, "fn_tables", tuple({} for _ in range(k)))
        object.__setattr__(self, "domains", tuple(frozenset(d) for d in self.domains))
        _check_frame(self.poset, self.domains, self.fn_tables)
        fams = {n: tuple(frozenset(fs) for fs in per) for n, per in self.families.items()}
        object.__setattr__(self, "families", fams)
        for n, per in fams.items():
            if len(per) != k:
                raise ModelError("families", f"arity {n} needs one family set per point")
            for p in range(k):
                if not per[p]:
                    raise ModelError("nonempty families", f"arity {n} at {self.poset.names[p]}")
                for pi in per[p]:
                    check_family(self.poset, self.domains, n, p, pi)
                    for q in self.poset.up[p]:
                        if restrict(self.poset, pi, q) not in per[q]:
                            raise ModelError(
                                "restriction-closure",
                                f"arity {n}: a family at {self.poset.names[p]} restricted to "
                                f"{self.poset.names[q]} is missing",
                            )


def check_family(poset: Poset, domains, n: int, p: int, pi: Family):
    if len(pi) != len(poset):
        raise ModelError("family shape", "one entry per point")
    cone = set(poset.up[p])
    for q in range(len(poset)):
        if (pi[q] is None) == (q in cone):
            raise ModelError("family shape", f"family at level {poset.names[p]} must be defined exactly on its cone")
    for q in cone:
        for t in pi[q]:
            if len(t) != n or not set(t) <= domains[q]:
                raise ModelError("family arity", f"value at {poset.names[q]} contains {t}")
        for r in poset.up[q]:
            if not pi[q] <= pi[r]:
                raise ModelError("monotone", f"family shrinks from {poset.names[q]} to {poset.names[r]}")


def restrict(poset: Poset, pi: Family, q: int) -> Family:
    cone = poset.up[q]
    return tuple(v if i in cone else None for i, v in enumerate(pi))


def family_level(poset: Poset, pi: Family) -> int:
    """The least point of the cone a family is defined on."""
    defined = [i for i, v in enumerate(pi) if v is not None]
    for p in defined:
        if all(poset.le(p, q) for q in defined):
            return p
    raise ModelError("family shape", "family is not defined on a cone")


# ---------------------------------------------------------------------------
# bars


@dataclass(frozen=True)
class Bar:
    level: int
    elements: frozenset

    def validate(self, poset: Poset):
        for q in self.elements:
            if not poset.le(self.level, q):
                raise ModelError("bar", f"{poset.names[q]} is not above {poset.names[self.level]}")
        for q, r in itertools.combinations(self.elements, 2):
            if poset.le(q, r) or poset.le(r, q):
                raise ModelError("bar", f"{poset.names[q]} and {poset.names[r]} are comparable")


def bar_to_family(b: Bar, poset: Poset) -> Family:
    b.validate(poset)
    cone = poset.up[b.level]
    return tuple(
        (TRUE if any(poset.le(r, q) for r in b.elements) else FALSE) if q in cone else None
        for q in range(len(poset))
    )


def family_to_bar(pi: Family, poset: Poset) -> Bar:
    level = family_level(poset, pi)
    true = [q for q, v in enumerate(pi) if v]
    minimal = frozenset(q for q in true if not any(r != q and poset.le(r, q) for r in true))
    return Bar(level, minimal)


# ---------------------------------------------------------------------------
# forcing


def _kterm(K, t: Term) -> Callable:
    """Evaluate a term at a point; function tables agree upward, so the point's table suffices."""
    if isinstance(t, Var1):

        def get(env, p):
            try:
                return env[t]
            except KeyError:
                raise EvalError(f"unbound variable {t}") from None

        return get
    tables = [tabs.get(t.name) for tabs in K.fn_tables]
    args = [_kterm(K, a) for a in t.args]

    def app(env, p):
        table = tables[p]
        if table is None:
            raise EvalError(f"no table for function {t.name}")
        return table[tuple(a(env, p) for a in args)]

    return app


def _kargs(K, ts):
    fs = [_kterm(K, t) for t in ts]
    if len(fs) == 1:
        f0 = fs[0]
        return lambda env, p: (f0(env, p),)
    return lambda env, p: tuple(f(env, p) for f in fs)


_MISSING = object()


def compile_forcing(K, f: Formula) -> Callable[[dict, int], bool]:
    """Turn ``f`` into a predicate ``(interpretation, point) -> forced?``."""
    second = isinstance(K, KripkeModel2)
    up = K.poset.up
    doms = [sorted(d) for d in K.domains]

    def go(g):
        fn = build(g)
        if isinstance(g, (Bot, Atom1, Atom2, And, Or)):
            return fn
        return _memo(g, fn)

    def build(g):
        match g:
            case Bot():
                return lambda env, p: False
            case Atom2(X, args):
                if not second:
                    raise EvalError("second-order atom in a first-order model")
                a = _kargs(K, args)

                def atom2(env, p):
                    try:
                        val = env[X][p]
                    except KeyError:
                        raise EvalError(f"unbound variable {X}") from None
                    if val is None:
                        raise EvalError(f"{X} is not defined at point {K.poset.names[p]}")
                    return a(env, p) in val

                return atom2
            case Atom1(n, head, args):
                if second:
                    raise EvalError("Ap atom in a second-order model")
                try:
                    rel = K.relations[n]
                except KeyError:
                    raise EvalError(f"model has no relation for Ap{n}") from None
                a = _kargs(K, (head,) + args)
                return lambda env, p: a(env, p) in rel[p]
            case Impl(l, r):
                fl, fr = go(l), go(r)
                return lambda env, p: all((not fl(env, q)) or fr(env, q) for q in up[p])
            case And(l, r):
                fl, fr = go(l), go(r)
                return lambda env, p: fl(env, p) and fr(env, p)
            case Or(l, r):
                fl, fr = go(l), go(r)
                return lambda env, p: fl(env, p) or fr(env, p)
            case Forall1(v, b):
                return _forall(v, lambda q: doms[q], go(b), up)
            case Exists1(v, b):
                return _exists(v, lambda p: doms[p], go(b))
            case Forall2(v, b) | Exists2(v, b):
                if not second:
                    raise EvalError("second-order quantifier in a first-order model")
                try:
                    per = [sorted(fs, key=_fam_key) for fs in K.families[v.arity]]
                except KeyError:
                    raise EvalError(f"model has no families of arity {v.arity}") from None
                if isinstance(g, Forall2):
                    return _forall(v, lambda q: per[q], go(b), up)
                return _exists(v, lambda p: per[p], go(b))
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def _memo(g: Formula, fn):
    """Cache results by point and the values of the free variables of ``g``."""
    fo, so = free_vars(g)
    keys = tuple(sorted(fo, key=lambda v: v.index)) + tuple(sorted(so))
    cache: dict = {}

    def run(env, p):
        try:
            key = (p, *[env[v] for v in keys])
        except KeyError:
            return fn(env, p)
        r = cache.get(key)
        if r is None:
            r = cache[key] = fn(env, p)
        return r

    return run


def _fam_key(pi):
    return tuple(sorted(v) if v is not None else None for v in pi).__repr__()


def _forall(v, values, body, up):
    def run(env, p):
        old = env.get(v, _MISSING)
        try:
            for q in up[p]:
                for val in values(q):
                    env[v] = val
                    if not body(env, q):
                        return False
            return True
        finally:
            _restore(env, v, old)

    return run


def _exists(v, values, body):
    def run(env, p):
        old = env.get(v, _MISSING)
        try:
            for val in values(p):
                env[v] = val
                if body(env, p):
                    return True
            return False
        finally:
            _restore(env, v, old)

    return run


def _restore(env, v, old):
    if old is _MISSING:
        env.pop(v, None)
    else:
        env[v] = old


def force2(K: KripkeModel2, sigma: Mapping, p: int, f: Formula) -> bool:
    return compile_forcing(K, f)(dict(sigma), p)


def force1(K: KripkeModel1, sigma: Mapping, p: int, f: Formula) -> bool:
    return compile_forcing(K, f)(dict(sigma), p)


def interpretations_at(K, f: Formula, p: int = 0) -> list[dict]:
    """Every interpretation at level ``p`` of the free variables of ``f``."""
    fo, so = free_vars(f)
    keys = sorted(fo, key=lambda v: v.index) + sorted(so)
    pools = []
    for k in keys:
        if isinstance(k, Var1):
            pools.append(sorted(K.domains[p]))
        else:
            try:
                pools.append(sorted(K.families[k.arity][p], key=_fam_key))
            except KeyError:
                raise EvalError(f"model has no families of arity {k.arity}") from None
    return [dict(zip(keys, vals)) for vals in itertools.product(*pools)]


def kvalid(K, f: Formula) -> bool:
    """``K ||- f``: forced at the bottom under every interpretation at level 0."""
    run = compile_forcing(K, f)
    return all(run(s, 0) for s in interpretations_at(K, f, 0))


def kvalid_sequent(K, hyps: Iterable[Formula], concl: Formula) -> bool:
    goal = concl
    for h in reversed(list(hyps)):
        goal = Impl(h, goal)
    return kvalid(K, goal)


# ---------------------------------------------------------------------------
# semantic translation


def kextension(K: KripkeModel1, a, n: int, level: int) -> Family:
    """``|a|_n`` on the cone of ``level``."""
    rel = K.relations.get(n)
    cone = K.poset.up[level]
    out = []
    for q in range(len(K.poset)):
        if q not in cone:
            out.append(None)
        else:
            rq = rel[q] if rel is not None else frozenset()
            out.append(frozenset(t[1:] for t in rq if t[0] == a))
    return tuple(out)


def rev_kmodel(K: KripkeModel1) -> KripkeModel2:
    k = len(K.poset)
    fams = {
        n: tuple(frozenset(kextension(K, a, n, p) for a in K.domains[p]) for p in range(k)) for n in K.relations
    }
    return KripkeModel2(K.poset, K.domains, fams, K.fn_tables)


def rev_kinterp(K: KripkeModel1, sigma: Mapping, level: int = 0, so_vars: Iterable[Var2] = ()) -> dict:
    out = {}
    for v, val in sigma.items():
        if isinstance(v, Var1):
            out[v] = val
            for n in K.relations:
                out[Var2(n, v.index)] = kextension(K, val, n, level)
    for X in so_vars:
        out[X] = kextension(K, sigma[Var1(X.index)], X.arity, level)
    return out


def monotone_families(poset: Poset, domains, n: int, p: int, cap: int | None = None) -> list[Family]:
    """All monotone families of arity ``n`` on the cone of ``p``."""
    cone = poset.topo(poset.up[p])
    k = len(poset)
    out: list[Family] = []

    def rec(i, assign):
        if cap is not None and len(out) > cap:
            raise ModelError("size guard", f"more than {cap} monotone families")
        if i == len(cone):
            out.append(tuple(assign.get(q) for q in range(k)))
            return
        q = cone[i]
        below = frozenset().union(*(assign[r] for r in cone[:i] if poset.le(r, q)))
        rest = [t for t in itertools.product(sorted(domains[q]), repeat=n) if t not in below]
        for extra in powerset(rest):
            assign[q] = below | extra
            rec(i + 1, assign)
        del assign[q]

    rec(0, {})
    return out


def full_kmodel(poset: Poset, domains, max_arity: int, fn_tables=None, cap: int = 10**6) -> KripkeModel2:
    domains = tuple(frozenset(d) for d in domains)
    fams = {}
    total = 0
    for n in range(max_arity + 1):
        per = []
        for p in range(len(poset)):
            fs = monotone_families(poset, domains, n, p, cap)
            total += len(fs)
            if total > cap:
                raise ModelError("size guard", f"more than {cap} monotone families")
            per.append(frozenset(fs))
        fams[n] = tuple(per)
    return KripkeModel2(poset, domains, fams, fn_tables)


def is_full_k(K: KripkeModel2) -> bool:
    for n, per in K.families.items():
        for p in range(len(K.poset)):
            if per[p] != frozenset(monotone_families(K.poset, K.domains, n, p)):
                return False
    return True


def generated_families(poset: Poset, roots: Iterable[Family]) -> tuple:
    """Per point, the restrictions of the given level-0 families."""
    roots = list(roots)
    return tuple(frozenset(restrict(poset, pi, q) for pi in roots) for q in range(len(poset)))


def peirce_countermodel() -> tuple[KripkeModel2, dict]:
    """Two points ``0 <= p``; the arity-0 families are the empty bar and the bar ``{p}``."""
    poset = Poset.from_pairs(("0", "p"), [("0", "p")])
    pi1 = (FALSE, TRUE)
    pi2 = (FALSE, FALSE)
    K = KripkeModel2(
        poset,
        (frozenset({"a"}), frozenset({"a"})),
        {0: generated_families(poset, [pi1, pi2])},
        names={"pi1": pi1, "pi2": pi2},
    )
    return K, {Var2(0, 0): pi1, Var2(0, 1): pi2}


def check_sc_k(K: KripkeModel2, depth_bound: int, arity_bound: int) -> bool:
    return all(kvalid(K, sc2_instance(s)) for s in enumerate_instances(depth_bound, arity_bound))


def check_sc1_k(K: KripkeModel1, depth_bound: int, arity_bound: int) -> bool:
    return all(kvalid(K, sc1_instance(s)) for s in enumerate_instances(depth_bound, arity_bound))


# ---------------------------------------------------------------------------
# impredicative encodings


def encode_and(a: Formula, b: Formula) -> Formula:
    X = fresh_var2(0, a, b)
    return Forall2(X, Impl(Impl(a, Impl(b, Atom2(X))), Atom2(X)))


def encode_or(a: Formula, b: Formula) -> Formula:
    X = fresh_var2(0, a, b)
    return Forall2(X, Impl(Impl(a, Atom2(X)), Impl(Impl(b, Atom2(X)), Atom2(X))))


def encode_exists(chi, a: Formula) -> Formula:
    X = fresh_var2(0, a, avoid=[chi])
    inner = Impl(a, Atom2(X))
    q = Forall1(chi, inner) if isinstance(chi, Var1) else Forall2(chi, inner)
    return Forall2(X, Impl(q, Atom2(X)))


def encode_connective(kind: str, *args) -> Formula:
    """``kind`` is one of ``and``, ``or``, ``exists`` (the latter takes ``(var, body)``)."""
    return {"and": encode_and, "or": encode_or, "exists": encode_exists}[kind](*args)
