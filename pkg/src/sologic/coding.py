"""Translations between the second-order language and the first-order ``Ap_n`` language.

``star`` codes a second-order formula into first-order logic; ``rev`` decodes
any first-order formula back.  Both rest on the index-preserving bijections
``X^n_i <-> x_i`` (one per arity).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .syntax import (
    BOT,
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
    free_vars,
    is_l1_pure,
    is_l2_pure,
    least_index,
    quantify,
    subst_term,
    subst_var2,
)


class PurityError(ValueError):
    """Raised when a translation receives a formula from the wrong language."""


def phi(n: int, X: Var2) -> Var1:
    if X.arity != n:
        raise ValueError(f"{X} does not have arity {n}")
    return Var1(X.index)


def phi_inv(n: int, x: Var1) -> Var2:
    return Var2(n, x.index)


def _coded_free(f: Formula) -> set[int]:
    fo, so = free_vars(f)
    return {v.index for v in fo} | {v.index for v in so}


@lru_cache(maxsize=None)
def _star(f: Formula) -> Formula:
    match f:
        case Bot():
            return f
        case Atom2(X, args):
            return Atom1(X.arity, phi(X.arity, X), args)
        case Impl(l, r):
            return Impl(_star(l), _star(r))
        case And(l, r):
            return And(_star(l), _star(r))
        case Or(l, r):
            return Or(_star(l), _star(r))
        case Forall1(v, b) | Exists1(v, b):
            y = Var1(least_index(_coded_free(f)))
            Q = Forall1 if isinstance(f, Forall1) else Exists1
            return Q(y, _star(subst_term(b, v, y)))
        case Forall2(v, b) | Exists2(v, b):
            y = Var1(least_index(_coded_free(f)))
            Q = Forall1 if isinstance(f, Forall2) else Exists1
            return Q(y, _star(subst_var2(b, v, phi_inv(v.arity, y))))
    raise PurityError(f"star expects a second-order formula, got {f!r}")


def star(f: Formula) -> Formula:
    """Code a second-order formula as a first-order one.

    A bound variable is renamed to the least index not free in the coding of
    the quantified formula, so the result is deterministic.
    """
    if not is_l2_pure(f):
        raise PurityError("star expects a formula without Ap atoms")
    return _star(f)


@lru_cache(maxsize=None)
def _rev(f: Formula) -> Formula:
    match f:
        case Bot():
            return f
        case Atom1(n, head, args):
            if isinstance(head, Var1):
                return Atom2(phi_inv(n, head), args)
            return BOT
        case Impl(l, r):
            return Impl(_rev(l), _rev(r))
        case And(l, r):
            return And(_rev(l), _rev(r))
        case Or(l, r):
            return Or(_rev(l), _rev(r))
        case Forall1(v, b) | Exists1(v, b):
            body = _rev(b)
            extra = sorted((X for X in free_vars(body)[1] if X.index == v.index), key=lambda X: X.arity)
            kind = "forall" if isinstance(f, Forall1) else "exists"
            return quantify(kind, [v, *extra], body)
    raise PurityError(f"rev expects a first-order formula, got {f!r}")


def rev(f: Formula) -> Formula:
    """Decode a first-order formula; atoms with a non-variable head become bot."""
    if not is_l1_pure(f):
        raise PurityError("rev expects a formula without second-order variables")
    return _rev(f)


def inserted_vars(x: Var1, body: Formula) -> list[Var2]:
    """Second-order variables ``rev`` quantifies next to ``x`` over ``rev(body)``."""
    return sorted((X for X in free_vars(_rev(body))[1] if X.index == x.index), key=lambda X: X.arity)


# ---------------------------------------------------------------------------
# comprehension


@dataclass(frozen=True)
class SchemaInstance:
    """Data for one comprehension instance ``forall chis. exists X. forall xs. (G <-> X(xs))``."""

    body: Formula
    fo_params: tuple[Var1, ...]
    so_params: tuple = ()

    def __post_init__(self):
        if not is_l2_pure(self.body):
            raise PurityError("comprehension body must be second-order")
        if len(set(self.fo_params)) != len(self.fo_params):
            raise ValueError("comprehension parameters must be distinct")
        declared = set(self.fo_params) | set(self.so_params)
        fo, so = free_vars(self.body)
        stray = (fo | so) - declared
        if stray:
            names = ", ".join(sorted(map(str, stray)))
            raise ValueError(f"free variables of the body not declared as parameters: {names}")

    @property
    def witness_arity(self) -> int:
        return len(self.fo_params)

    @property
    def witness(self) -> Var2:
        n = self.witness_arity
        taken = {X.index for X in free_vars(self.body)[1] if X.arity == n}
        return Var2(n, least_index(taken))

    @classmethod
    def for_body(cls, body: Formula, fo_params) -> SchemaInstance:
        """Instance whose outer parameters are exactly the other free variables of ``body``."""
        fo, so = free_vars(body)
        fo_params = tuple(fo_params)
        rest = sorted(fo - set(fo_params), key=lambda v: v.index)
        return cls(body, fo_params, tuple(rest) + tuple(sorted(so)))


def sc2_instance(s: SchemaInstance) -> Formula:
    X = s.witness
    core = quantify("forall", s.fo_params, Iff(s.body, Atom2(X, s.fo_params)))
    return quantify("forall", s.so_params, Exists2(X, core))


def sc1_instance(s: SchemaInstance) -> Formula:
    return star(sc2_instance(s))


def match_sc2(f: Formula) -> SchemaInstance | None:
    """Recover the instance data when ``f`` is literally a comprehension instance."""
    params = []
    while isinstance(f, (Forall1, Forall2)):
        params.append(f.var)
        f = f.body
    if not isinstance(f, Exists2):
        return None
    W, core = f.var, f.body
    xs = []
    while isinstance(core, Forall1):
        xs.append(core.var)
        core = core.body
    if not (isinstance(core, And) and isinstance(core.left, Impl) and isinstance(core.right, Impl)):
        return None
    G, rhs = core.left.left, core.left.right
    if core.right.left != rhs or core.right.right != G:
        return None
    if not isinstance(rhs, Atom2) or rhs.var != W or list(rhs.args) != xs:
        return None
    try:
        s = SchemaInstance(G, tuple(xs), tuple(params))
    except ValueError:
        return None
    if s.witness != W or sc2_instance(s) != quantify("forall", params, f):
        return None
    return s


# ---------------------------------------------------------------------------
# bounded enumeration


def comprehension_bodies(n: int, depth: int, arity: int) -> Iterator[Formula]:
    """Bodies for arity-``n`` instances with at most ``depth`` binary connectives.

    Atoms are ``bot`` and ``X^k_0(args)`` for every ``k <= arity`` and every
    argument tuple drawn from the parameters ``x0 .. x(n-1)``.
    """
    xs = [Var1(i) for i in range(n)]
    atoms: list[Formula] = [BOT]
    for k in range(arity + 1):
        if k and not xs:
            continue
        for args in itertools.product(xs, repeat=k):
            atoms.append(Atom2(Var2(k, 0), tuple(args)))
    by_size: list[list[Formula]] = [atoms]
    for size in range(1, depth + 1):
        layer = []
        for ls in range(size):
            rs = size - 1 - ls
            for op in (Impl, And, Or):
                for l in by_size[ls]:
                    for r in by_size[rs]:
                        layer.append(op(l, r))
        by_size.append(layer)
    for layer in by_size:
        yield from layer


def enumerate_instances(depth: int, arity: int) -> Iterator[SchemaInstance]:
    """Every bounded comprehension instance, witness arities ``0 .. arity``."""
    for n in range(arity + 1):
        xs = tuple(Var1(i) for i in range(n))
        for body in comprehension_bodies(n, depth, arity):
            yield SchemaInstance.for_body(body, xs)
