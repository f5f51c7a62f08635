"""Bounded countermodel search.

Candidates are enumerated in a fixed order: poset size, then poset, then
domain assignment, then predicate families.  Kripke candidates take, per
arity, a set of at most ``max_family_count`` families at the root together
with all their restrictions.  With ``full_only`` only full models are tried.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator

from .classical import BOOLS, ClassicalModel2, compile_classical, full_model, interpretations, powerset, tuples
from .kripke import KripkeModel2, Poset, compile_forcing, full_kmodel, generated_families, interpretations_at, monotone_families
from .stock import ELEMENTS, domain_assignments
from .syntax import Formula, fn_symbols, is_l2_pure, so_arities

VERIFIED = "verified"
FOUND = "countermodel-found"
EXHAUSTED = "exhausted"
TIMEOUT = "timeout"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    max_poset_points: int = 2
    max_domain_size: int = 1
    max_arity: int = 0
    max_family_count: int = 2
    time_budget_seconds: float = 60.0

    def __post_init__(self):
        for name in ("max_poset_points", "max_domain_size", "max_arity", "max_family_count", "time_budget_seconds"):
            if getattr(self, name) < 0:
                raise PreconditionError(f"bound {name} must be non-negative")

    @classmethod
    def parse(cls, text: str) -> SearchBounds:
        """``points,domain,arity,families[,seconds]``"""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not 4 <= len(parts) <= 5:
            raise PreconditionError("bounds are points,domain,arity,families[,seconds]")
        try:
            nums = [int(p) for p in parts[:4]]
            secs = float(parts[4]) if len(parts) == 5 else cls.time_budget_seconds
        except ValueError:
            raise PreconditionError(f"bad bounds {text!r}") from None
        return cls(*nums, secs)


@dataclass(frozen=True)
class SearchResult:
    status: str
    tried: int
    model: object = None
    interp: dict | None = None
    point: int = 0


def rooted_posets(max_points: int) -> list[Poset]:
    """Rooted posets up to isomorphism with at most four points.

    A root below one of the five three-element posets gives the four-point
    list: chain, V, inverted V, antichain, and a chain of two beside a point.
    """
    out = [Poset.chain(1)]
    if max_points >= 2:
        out.append(Poset.chain(2))
    if max_points >= 3:
        out.append(Poset.chain(3))
        out.append(Poset.from_pairs(("0", "l", "r"), [("0", "l"), ("0", "r")]))
    if max_points >= 4:
        names = ("0", "a", "b", "c")
        root = [("0", n) for n in names[1:]]
        for extra in (
            [("a", "b"), ("b", "c")],
            [("a", "b"), ("a", "c")],
            [("a", "c"), ("b", "c")],
            [],
            [("a", "b")],
        ):
            out.append(Poset.from_pairs(names, root + extra))
    if max_points > 4:
        raise PreconditionError("posets are precomputed up to four points")
    return out


def _arities(f: Formula, bounds: SearchBounds) -> list[int]:
    ars = so_arities(f)
    if ars and max(ars) > bounds.max_arity:
        raise PreconditionError(f"formula uses arity {max(ars)} beyond the bound {bounds.max_arity}")
    return sorted(ars) or [0]


def _tables(domain, syms: dict) -> Iterator[dict]:
    """Every assignment of tables to the function symbols."""
    dom = sorted(domain)
    spaces = []
    for name, ar in sorted(syms.items()):
        args = list(itertools.product(dom, repeat=ar))
        spaces.append([(name, dict(zip(args, vals))) for vals in itertools.product(dom, repeat=len(args))])
    for combo in itertools.product(*spaces):
        yield dict(combo)


def _kripke_tables(poset: Poset, domains, syms: dict) -> Iterator[tuple | None]:
    """Tables fixed along the order: each point's table extends those below it."""
    if not syms:
        yield None
        return
    k = len(poset)
    order = poset.topo(range(k))

    def rec(i, acc):
        if i == k:
            yield tuple(acc[q] for q in range(k))
            return
        q = order[i]
        below = [acc[r] for r in order[:i] if poset.le(r, q) and r != q]
        for t in _tables(domains[q], syms):
            if all(all(t[n].get(a) == v for n in t for a, v in b[n].items()) for b in below):
                acc[q] = t
                yield from rec(i + 1, acc)
        acc.pop(q, None)

    yield from rec(0, {})


def kripke_candidates(f: Formula, bounds: SearchBounds, full_only: bool = False) -> Iterator[KripkeModel2]:
    ars = _arities(f, bounds)
    syms = fn_symbols(f)
    for P in rooted_posets(bounds.max_poset_points):
        for doms in domain_assignments(P, max(bounds.max_domain_size, 1)):
            for tabs in _kripke_tables(P, doms, syms):
                if full_only:
                    yield full_kmodel(P, doms, max(ars), tabs)
                    continue
                choices = []
                for n in ars:
                    roots = monotone_families(P, doms, n, 0)
                    sets = [
                        c
                        for r in range(1, min(bounds.max_family_count, len(roots)) + 1)
                        for c in itertools.combinations(roots, r)
                    ]
                    choices.append(sets)
                for pick in itertools.product(*choices):
                    fams = {n: generated_families(P, roots) for n, roots in zip(ars, pick)}
                    yield KripkeModel2(P, doms, fams, tabs)


def classical_candidates(f: Formula, bounds: SearchBounds, full_only: bool = False) -> Iterator[ClassicalModel2]:
    ars = _arities(f, bounds)
    syms = fn_symbols(f)
    for k in range(1, max(bounds.max_domain_size, 1) + 1):
        dom = ELEMENTS[:k]
        for tabs in _tables(dom, syms):
            if full_only:
                yield full_model(dom, max(ars), tabs)
                continue
            choices = []
            for n in ars:
                if n == 0:
                    choices.append([BOOLS])
                    continue
                subs = powerset(tuples(dom, n))
                choices.append(
                    [
                        frozenset(c)
                        for r in range(1, min(bounds.max_family_count, len(subs)) + 1)
                        for c in itertools.combinations(subs, r)
                    ]
                )
            for pick in itertools.product(*choices):
                yield ClassicalModel2(dom, dict(zip(ars, pick)), tabs)


def search(f: Formula, bounds: SearchBounds, semantics: str = "kripke", full_only: bool = False) -> SearchResult:
    """Look for a model and root interpretation refuting ``f``."""
    if not is_l2_pure(f):
        raise PreconditionError("countermodel search expects a second-order formula")
    if semantics not in ("kripke", "classical"):
        raise PreconditionError(f"unknown semantics {semantics!r}")
    deadline = time.monotonic() + bounds.time_budget_seconds
    tried = 0
    if semantics == "kripke":
        for K in kripke_candidates(f, bounds, full_only):
            tried += 1
            run = compile_forcing(K, f)
            for s in interpretations_at(K, f, 0):
                if not run(dict(s), 0):
                    return SearchResult(FOUND, tried, K, dict(s), 0)
            if time.monotonic() > deadline:
                return SearchResult(TIMEOUT, tried)
    else:
        for M in classical_candidates(f, bounds, full_only):
            tried += 1
            run = compile_classical(M, f)
            for s in interpretations(M, f):
                if not run(dict(s)):
                    return SearchResult(FOUND, tried, M, dict(s))
            if time.monotonic() > deadline:
                return SearchResult(TIMEOUT, tried)
    return SearchResult(EXHAUSTED, tried)
