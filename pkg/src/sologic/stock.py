"""Deterministic stocks of formulas, models and proofs for the bounded checks.

Everything random is driven by an explicit ``random.Random`` seeded by the
caller, so two runs with the same seed see identical stocks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .classical import ClassicalModel1, full_model, powerset, tuples
from .kripke import KripkeModel1, Poset, full_kmodel
from .syntax import (
    BOT,
    And,
    Atom2,
    Exists1,
    Exists2,
    Fn,
    Forall1,
    Forall2,
    Formula,
    Impl,
    Or,
    Var1,
    Var2,
)

DEFAULT_SEED = 20240601
ELEMENTS = ("a", "b", "c", "d")
BINARY = (Impl, And, Or)


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Pool:
    """Variables and terms the generators draw from."""

    fo: tuple[Var1, ...] = (Var1(0), Var1(1))
    so: tuple[Var2, ...] = (Var2(0, 0), Var2(0, 1), Var2(1, 0), Var2(1, 1), Var2(2, 0))
    functions: tuple[tuple[str, int], ...] = ()

    def restrict(self, max_arity: int) -> Pool:
        return Pool(self.fo, tuple(X for X in self.so if X.arity <= max_arity), self.functions)


TERM_POOL = Pool(functions=(("c", 0), ("f", 1)))


def atoms(pool: Pool) -> list[Formula]:
    out: list[Formula] = [BOT]
    for X in pool.so:
        for args in itertools.product(pool.fo, repeat=X.arity):
            out.append(Atom2(X, args))
    return out


def enumerate_formulas(depth: int, pool: Pool, binders: tuple = ()) -> Iterator[Formula]:
    """Every formula of depth at most ``depth`` over the pool's atoms, in size order.

    ``binders`` lists the quantifier constructors paired with their variables,
    e.g. ``((Forall2, Var2(0, 0)), (Exists1, Var1(0)))``.
    """
    layers: list[list[Formula]] = [atoms(pool)]
    seen = list(layers[0])
    for _ in range(depth):
        new = []
        prev = seen
        last = layers[-1]
        for q, v in binders:
            new.extend(q(v, f) for f in last)
        fresh = set(last)
        for op in BINARY:
            for l in prev:
                for r in prev:
                    if l in fresh or r in fresh:
                        new.append(op(l, r))
        layers.append(new)
        seen = seen + new
    for layer in layers:
        yield from layer


def _random_term(rng: random.Random, pool: Pool, fo: list[Var1], depth: int = 1):
    if pool.functions and depth > 0 and rng.random() < 0.25:
        name, ar = rng.choice(pool.functions)
        return Fn(name, tuple(_random_term(rng, pool, fo, depth - 1) for _ in range(ar)))
    return rng.choice(fo)


def random_formula(rng: random.Random, depth: int, pool: Pool = Pool(), quant_weight: float = 0.35) -> Formula:
    """A random second-order formula of depth at most ``depth``.

    Quantifiers bind variables from the pool, so bound and free occurrences
    of the same variable mix freely.
    """

    def go(d: int) -> Formula:
        r = rng.random()
        if d == 0 or r < 0.2:
            choices = [X for X in pool.so]
            if rng.random() < 0.08:
                return BOT
            X = rng.choice(choices)
            return Atom2(X, tuple(_random_term(rng, pool, list(pool.fo)) for _ in range(X.arity)))
        if r < 0.2 + quant_weight:
            if rng.random() < 0.5:
                return rng.choice((Forall1, Exists1))(rng.choice(pool.fo), go(d - 1))
            return rng.choice((Forall2, Exists2))(rng.choice(pool.so), go(d - 1))
        return rng.choice(BINARY)(go(d - 1), go(d - 1))

    return go(depth)


def random_formulas(seed: int, count: int, depth: int, pool: Pool = Pool()) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, depth, pool) for _ in range(count)]


# ---------------------------------------------------------------------------
# classical models


def classical1_models(domain_size: int, arities: tuple[int, ...] = (0, 1), fn_tables=None) -> Iterator[ClassicalModel1]:
    """Every first-order model on ``domain_size`` elements with the given ``Ap_n`` relations."""
    dom = ELEMENTS[:domain_size]
    spaces = [powerset(tuples(dom, n + 1)) for n in arities]
    for rels in itertools.product(*spaces):
        yield ClassicalModel1(dom, dict(zip(arities, rels)), fn_tables or {})


def random_fn_tables(rng: random.Random, dom, functions) -> dict:
    return {
        name: {args: rng.choice(dom) for args in itertools.product(dom, repeat=ar)} for name, ar in functions
    }


def random_classical1(rng: random.Random, domain_size: int, arities=(0, 1, 2), functions=()) -> ClassicalModel1:
    dom = ELEMENTS[:domain_size]
    rels = {n: frozenset(t for t in tuples(dom, n + 1) if rng.random() < 0.5) for n in arities}
    return ClassicalModel1(dom, rels, random_fn_tables(rng, dom, functions))


def full_classical_models(max_domain: int, max_arity: int) -> list:
    return [full_model(ELEMENTS[:k], max_arity) for k in range(1, max_domain + 1)]


# ---------------------------------------------------------------------------
# Kripke frames and models


def posets(max_points: int = 3) -> list[Poset]:
    """Rooted posets up to isomorphism: the point, the chains, and the V."""
    out = [Poset.chain(1)]
    if max_points >= 2:
        out.append(Poset.chain(2))
    if max_points >= 3:
        out.append(Poset.chain(3))
        out.append(Poset.from_pairs(("0", "l", "r"), [("0", "l"), ("0", "r")]))
    return out


def domain_assignments(poset: Poset, max_size: int) -> list[tuple]:
    """Increasing domain assignments up to renaming of elements.

    Each point adds fresh elements to the union of the domains below it, so
    incomparable points may or may not share their additions.
    """
    k = len(poset)
    order = poset.topo(range(k))
    results = set()

    def rec(i, doms, used):
        if i == k:
            results.add(tuple(frozenset(doms[q]) for q in range(k)))
            return
        q = order[i]
        below = frozenset().union(*(doms[r] for r in order[:i] if poset.le(r, q)))
        for extra in range(0, max_size - len(below) + 1):
            if not below and extra == 0:
                continue
            # fresh elements reuse ones already added at incomparable points, or new names
            avail = [e for e in used if e not in below]
            for reuse in range(0, min(extra, len(avail)) + 1):
                for chosen in itertools.combinations(avail, reuse):
                    new = list(chosen) + [ELEMENTS[len(used) + j] for j in range(extra - reuse)]
                    doms[q] = below | frozenset(new)
                    rec(i + 1, doms, used + [e for e in new if e not in used])
        doms.pop(q, None)

    rec(0, {}, [])
    return sorted(_canonical_domains(poset, results), key=lambda d: [sorted(x) for x in d])


def _canonical_domains(poset: Poset, assignments) -> list[tuple]:
    """Drop assignments that differ only by renaming elements or by a poset automorphism."""
    k = len(poset)
    autos = [
        perm
        for perm in itertools.permutations(range(k))
        if all(poset.le(perm[i], perm[j]) == poset.le(i, j) for i in range(k) for j in range(k))
    ]
    seen = set()
    out = []
    for doms in assignments:
        elems = sorted(frozenset().union(*doms))
        keys = []
        for perm in autos:
            moved = [doms[perm[i]] for i in range(k)]
            for rename in itertools.permutations(elems):
                m = dict(zip(elems, rename))
                keys.append(tuple(tuple(sorted(m[e] for e in d)) for d in moved))
        key = min(keys)
        if key not in seen:
            seen.add(key)
            out.append(doms)
    return out


def kripke_frames(max_points: int = 3, max_domain: int = 2) -> list[tuple[Poset, tuple]]:
    return [(P, d) for P in posets(max_points) for d in domain_assignments(P, max_domain)]


def full_kripke_models(max_points: int = 3, max_domain: int = 2, max_arity: int = 1) -> list:
    return [full_kmodel(P, d, max_arity) for P, d in kripke_frames(max_points, max_domain)]


def increasing_relations(poset: Poset, domains, n: int) -> Iterator[tuple]:
    """Every increasing ``Ap_n`` relation: each tuple holds on an up-set within its domain."""
    k = len(poset)
    all_t = sorted(set().union(*(set(tuples(d, n + 1)) for d in domains)))
    options = []
    for t in all_t:
        where = [q for q in range(k) if set(t) <= domains[q]]
        ups = []
        for r in range(len(where) + 1):
            for s in itertools.combinations(where, r):
                if all(poset.le(q, x) is False or x in s for q in s for x in where):
                    ups.append(frozenset(s))
        options.append(ups)
    for choice in itertools.product(*options):
        yield tuple(frozenset(t for t, s in zip(all_t, choice) if q in s) for q in range(k))


def kripke1_models(poset: Poset, domains, arities=(0, 1)) -> Iterator[KripkeModel1]:
    spaces = [list(increasing_relations(poset, domains, n)) for n in arities]
    for rels in itertools.product(*spaces):
        yield KripkeModel1(poset, domains, dict(zip(arities, rels)))


def interpretation_space(f: Formula, sizes: dict) -> int:
    """Number of interpretations of the free variables of ``f``.

    ``sizes`` maps ``"fo"`` to the element count and each arity to the number
    of available predicates.
    """
    from .syntax import free_vars

    fo, so = free_vars(f)
    n = sizes["fo"] ** len(fo)
    for X in so:
        n *= sizes[X.arity]
    return n


# largest full models in the default Kripke stock (three elements on the V)
KRIPKE_SIZES = {"fo": 3, 0: 5, 1: 33, 2: 657}


def semantic_formulas(seed: int, count: int, depth: int, pool: Pool = Pool(), cap: int = 5000, sizes=None):
    """Random formulas whose interpretation space stays within ``cap``."""
    sizes = sizes or KRIPKE_SIZES
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        f = random_formula(rng, depth, pool)
        if interpretation_space(f, sizes) <= cap:
            out.append(f)
    return out


def kripke1_sample(max_points: int, max_domain: int, arities=(0, 1, 2), per_frame: int = 40, stride: int = 200):
    """Every ``stride``-th first-order Kripke model per frame, at most ``per_frame`` of them."""
    out = []
    for P, d in kripke_frames(max_points, max_domain):
        out.extend(itertools.islice(kripke1_models(P, d, arities), 0, per_frame * stride, stride))
    return out


def classical1_sample(seed: int, sizes=(1, 2, 3), per_size: int = 30, arities=(0, 1, 2), functions=(("f", 1),)):
    rng = random.Random(seed)
    return [random_classical1(rng, k, arities, functions) for k in sizes for _ in range(per_size)]
