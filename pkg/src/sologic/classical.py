"""Finite classical models for both languages and the semantic translation between them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .coding import enumerate_instances, phi, sc1_instance, sc2_instance
from .syntax import (
    Atom1,
    Atom2,
    Bot,
    Exists1,
    Exists2,
    Forall1,
    Forall2,
    Formula,
    Impl,
    And,
    Or,
    Term,
    Var1,
    Var2,
    free_vars,
)

FALSE = frozenset()
TRUE = frozenset({()})
BOOLS = frozenset({FALSE, TRUE})


class ModelError(ValueError):
    """A model violates one of its structural invariants (named in ``invariant``)."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class EvalError(ValueError):
    pass


def tuples(domain: Iterable, n: int) -> list[tuple]:
    return list(itertools.product(sorted(domain), repeat=n))


def powerset(items: Iterable) -> list[frozenset]:
    items = list(items)
    return [frozenset(c) for r in range(len(items) + 1) for c in itertools.combinations(items, r)]


def _check_tables(domain, fn_tables):
    dom = set(domain)
    for name, table in fn_tables.items():
        arities = {len(k) for k in table}
        if len(arities) > 1:
            raise ModelError("function tables", f"{name} used with several arities")
        n = arities.pop() if arities else 0
        for args in itertools.product(domain, repeat=n):
            if args not in table:
                raise ModelError("function tables", f"{name} undefined on {args}")
        for args, r in table.items():
            if r not in dom or not set(args) <= dom:
                raise ModelError("function tables", f"{name}{args} leaves the domain")


@dataclass(frozen=True, eq=False)
class ClassicalModel1:
    domain: tuple
    relations: Mapping[int, frozenset]
    fn_tables: Mapping[str, Mapping[tuple, object]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise ModelError("nonempty domain")
        _check_tables(self.domain, self.fn_tables)
        dom = set(self.domain)
        for n, rel in self.relations.items():
            for t in rel:
                if len(t) != n + 1 or not set(t) <= dom:
                    raise ModelError("relation arity", f"Ap{n} contains {t}")


@dataclass(frozen=True, eq=False)
class ClassicalModel2:
    """``ranges[n]`` is the set of predicates the arity-``n`` quantifiers range over.

    Arity 0 defaults to both truth values.
    """

    domain: tuple
    ranges: Mapping[int, frozenset]
    fn_tables: Mapping[str, Mapping[tuple, object]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise ModelError("nonempty domain")
        _check_tables(self.domain, self.fn_tables)
        ranges = {n: frozenset(r) for n, r in self.ranges.items()}
        ranges.setdefault(0, BOOLS)
        dom = set(self.domain)
        for n, rng in ranges.items():
            if not rng:
                raise ModelError("nonempty range", f"P{n} is empty")
            for pred in rng:
                for t in pred:
                    if len(t) != n or not set(t) <= dom:
                        raise ModelError("range arity", f"P{n} member contains {t}")
        object.__setattr__(self, "ranges", ranges)


# ---------------------------------------------------------------------------
# evaluation


def _term(fn_tables, t: Term) -> Callable:
    if isinstance(t, Var1):

        def get(env, t=t):
            try:
                return env[t]
            except KeyError:
                raise EvalError(f"unbound variable {t}") from None

        return get
    try:
        table = fn_tables[t.name]
    except KeyError:
        raise EvalError(f"no table for function {t.name}") from None
    args = [_term(fn_tables, a) for a in t.args]
    if not args:
        val = table[()]
        return lambda env: val
    return lambda env: table[tuple(a(env) for a in args)]


def _args(fn_tables, ts):
    fs = [_term(fn_tables, t) for t in ts]
    if not fs:
        return lambda env: ()
    if len(fs) == 1:
        f0 = fs[0]
        return lambda env: (f0(env),)
    return lambda env: tuple(f(env) for f in fs)


def _binder(v, values, body, universal):
    def run(env):
        old = env.get(v, _MISSING)
        try:
            for val in values:
                env[v] = val
                if body(env) != universal:
                    return not universal
            return universal
        finally:
            if old is _MISSING:
                env.pop(v, None)
            else:
                env[v] = old

    return run


_MISSING = object()


def _memo(g: Formula, fn):
    """Cache results by the values of the free variables of ``g``."""
    fo, so = free_vars(g)
    keys = tuple(sorted(fo, key=lambda v: v.index)) + tuple(sorted(so))
    cache: dict = {}

    def run(env):
        try:
            key = tuple([env[v] for v in keys])
        except KeyError:
            return fn(env)
        r = cache.get(key)
        if r is None:
            r = cache[key] = fn(env)
        return r

    return run


def compile_classical(M, f: Formula) -> Callable[[dict], bool]:
    """Turn ``f`` into a predicate over interpretations (dicts keyed by variables)."""
    second = isinstance(M, ClassicalModel2)
    tables = M.fn_tables

    def go(g):
        fn = build(g)
        if isinstance(g, (Forall1, Exists1, Forall2, Exists2)):
            return _memo(g, fn)
        return fn

    def build(g):
        match g:
            case Bot():
                return lambda env: False
            case Atom2(X, args):
                if not second:
                    raise EvalError("second-order atom in a first-order model")
                a = _args(tables, args)

                def atom2(env):
                    try:
                        pred = env[X]
                    except KeyError:
                        raise EvalError(f"unbound variable {X}") from None
                    return a(env) in pred

                return atom2
            case Atom1(n, head, args):
                if second:
                    raise EvalError("Ap atom in a second-order model")
                try:
                    rel = M.relations[n]
                except KeyError:
                    raise EvalError(f"model has no relation for Ap{n}") from None
                a = _args(tables, (head,) + args)
                return lambda env: a(env) in rel
            case Impl(l, r):
                fl, fr = go(l), go(r)
                return lambda env: (not fl(env)) or fr(env)
            case And(l, r):
                fl, fr = go(l), go(r)
                return lambda env: fl(env) and fr(env)
            case Or(l, r):
                fl, fr = go(l), go(r)
                return lambda env: fl(env) or fr(env)
            case Forall1(v, b) | Exists1(v, b):
                return _binder(v, M.domain, go(b), isinstance(g, Forall1))
            case Forall2(v, b) | Exists2(v, b):
                if not second:
                    raise EvalError("second-order quantifier in a first-order model")
                try:
                    rng = M.ranges[v.arity]
                except KeyError:
                    raise EvalError(f"model has no range for arity {v.arity}") from None
                return _binder(v, sorted(rng, key=sorted), go(b), isinstance(g, Forall2))
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def eval_term(M, sigma: Mapping, t: Term):
    return _term(M.fn_tables, t)(dict(sigma))


def eval2(M: ClassicalModel2, sigma: Mapping, f: Formula) -> bool:
    return compile_classical(M, f)(dict(sigma))


def eval1(M: ClassicalModel1, sigma: Mapping, f: Formula) -> bool:
    return compile_classical(M, f)(dict(sigma))


def interpretations(M, f: Formula) -> list[dict]:
    """Every interpretation of the free variables of ``f`` (in a fixed order)."""
    fo, so = free_vars(f)
    keys = sorted(fo, key=lambda v: v.index) + sorted(so)
    pools = []
    for k in keys:
        if isinstance(k, Var1):
            pools.append(M.domain)
        else:
            try:
                pools.append(sorted(M.ranges[k.arity], key=sorted))
            except KeyError:
                raise EvalError(f"model has no range for arity {k.arity}") from None
    return [dict(zip(keys, vals)) for vals in itertools.product(*pools)]


def valid(M, f: Formula) -> bool:
    """``M |= f``: true under every interpretation of the free variables."""
    run = compile_classical(M, f)
    return all(run(s) for s in interpretations(M, f))


def satisfies_sequent(M, hyps: Iterable[Formula], concl: Formula) -> bool:
    """Every interpretation making all hypotheses true makes ``concl`` true."""
    goal = concl
    for h in reversed(list(hyps)):
        goal = Impl(h, goal)
    return valid(M, goal)


# ---------------------------------------------------------------------------
# semantic translation


def extension(M: ClassicalModel1, a, n: int) -> frozenset:
    """``|a|_n``: the arity-``n`` predicate coded by element ``a``."""
    rel = M.relations.get(n, frozenset())
    return frozenset(t[1:] for t in rel if t[0] == a)


def rev_model(M: ClassicalModel1) -> ClassicalModel2:
    """Predicates of arity ``n`` are the extensions ``|a|_n`` of the elements.

    Arity 0 is treated like every other arity, so ``P0`` holds exactly the
    truth values some element codes.
    """
    ranges = {n: frozenset(extension(M, a, n) for a in M.domain) for n in M.relations}
    return ClassicalModel2(M.domain, ranges, M.fn_tables)


def rev_interp(M: ClassicalModel1, sigma: Mapping, so_vars: Iterable[Var2] = ()) -> dict:
    """Keep the first-order values; give ``X^n_i`` the extension of ``sigma(x_i)``.

    Second-order variables are produced for every arity of ``M`` and every
    first-order variable of ``sigma``, plus any listed in ``so_vars``.
    """
    out = {}
    for v, val in sigma.items():
        if isinstance(v, Var1):
            out[v] = val
            for n in M.relations:
                out[Var2(n, v.index)] = extension(M, val, n)
    for X in so_vars:
        out[X] = extension(M, sigma[phi(X.arity, X)], X.arity)
    return out


def is_full(M: ClassicalModel2) -> bool:
    return all(rng == frozenset(powerset(tuples(M.domain, n))) for n, rng in M.ranges.items())


def full_model(domain, max_arity: int, fn_tables=None) -> ClassicalModel2:
    ranges = {n: frozenset(powerset(tuples(domain, n))) for n in range(max_arity + 1)}
    return ClassicalModel2(tuple(domain), ranges, fn_tables or {})


def check_sc(M: ClassicalModel2, depth_bound: int, arity_bound: int) -> bool:
    """Truth of every comprehension instance within the bounds (see ``enumerate_instances``)."""
    return first_failing_sc(M, depth_bound, arity_bound) is None


def first_failing_sc(M: ClassicalModel2, depth_bound: int, arity_bound: int):
    for s in enumerate_instances(depth_bound, arity_bound):
        if not eval2(M, {}, sc2_instance(s)):
            return s
    return None


def check_sc1(M: ClassicalModel1, depth_bound: int, arity_bound: int) -> bool:
    return all(eval1(M, {}, sc1_instance(s)) for s in enumerate_instances(depth_bound, arity_bound))
