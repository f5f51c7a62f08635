"""Terms and formulas shared by the second-order language and its first-order coding.

A single :class:`Formula` tree covers both languages.  Second-order formulas
use :class:`Atom2` and the second-order quantifiers; first-order formulas use
:class:`Atom1` (the relation symbol ``Ap_n``).  Bound variables are named, so
alpha-equivalence is an explicit operation (:func:`alpha_eq`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union


@dataclass(frozen=True, order=True)
class Var1:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"negative variable index {self.index}")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True, order=True)
class Var2:
    arity: int
    index: int

    def __post_init__(self):
        if self.arity < 0 or self.index < 0:
            raise ValueError(f"bad second-order variable {self.arity}/{self.index}")

    def __str__(self):
        return f"X^{self.arity}_{self.index}"


@dataclass(frozen=True)
class Fn:
    """Application of a function symbol; constants have no arguments."""

    name: str
    args: tuple[Term, ...] = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(str, self.args))})"


Term = Union[Var1, Fn]
Var = Union[Var1, Var2]


class Formula:
    __slots__ = ()

    def __str__(self):
        from .grammar import show

        return show(self)


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Atom2(Formula):
    var: Var2
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if len(self.args) != self.var.arity:
            raise ValueError(f"{self.var} expects {self.var.arity} arguments, got {len(self.args)}")


@dataclass(frozen=True)
class Atom1(Formula):
    """``Ap_n(head, args...)``."""

    n: int
    head: Term
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if len(self.args) != self.n:
            raise ValueError(f"Ap{self.n} expects {self.n + 1} arguments, got {len(self.args) + 1}")


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall1(Formula):
    var: Var1
    body: Formula


@dataclass(frozen=True)
class Exists1(Formula):
    var: Var1
    body: Formula


@dataclass(frozen=True)
class Forall2(Formula):
    var: Var2
    body: Formula


@dataclass(frozen=True)
class Exists2(Formula):
    var: Var2
    body: Formula


BOT = Bot()
Binary = (Impl, And, Or)
Quant1 = (Forall1, Exists1)
Quant2 = (Forall2, Exists2)
Quantifier = Quant1 + Quant2


@dataclass(frozen=True)
class Abstraction:
    """``lambda params. body`` used for comprehension instances."""

    params: tuple[Var1, ...]
    body: Formula

    def __post_init__(self):
        if len(set(self.params)) != len(self.params):
            raise ValueError("abstraction parameters must be pairwise distinct")

    @property
    def arity(self) -> int:
        return len(self.params)

    @classmethod
    def of_var(cls, var: Var2) -> Abstraction:
        """The abstraction ``lambda x0..x(n-1). var(x0..x(n-1))``."""
        params = tuple(Var1(i) for i in range(var.arity))
        return cls(params, Atom2(var, params))

    def as_var(self) -> Var2 | None:
        """Return ``Y`` when this abstraction is ``lambda xs. Y(xs)``."""
        b = self.body
        if isinstance(b, Atom2) and b.args == self.params and b.var.arity == self.arity:
            return b.var
        return None

    def __str__(self):
        from .grammar import show

        return "\\" + " ".join(map(str, self.params)) + ". " + show(self.body)


def Not(a: Formula) -> Formula:
    return Impl(a, BOT)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Impl(a, b), Impl(b, a))


# ---------------------------------------------------------------------------
# variables


def term_vars(t: Term) -> frozenset[Var1]:
    if isinstance(t, Var1):
        return frozenset((t,))
    out: frozenset[Var1] = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


@lru_cache(maxsize=None)
def free_vars(f: Formula) -> tuple[frozenset[Var1], frozenset[Var2]]:
    """Free first-order and second-order variables of ``f``."""
    match f:
        case Bot():
            return frozenset(), frozenset()
        case Atom2(var, args):
            fo = frozenset().union(*map(term_vars, args)) if args else frozenset()
            return fo, frozenset((var,))
        case Atom1(_, head, args):
            return term_vars(head).union(*map(term_vars, args)), frozenset()
        case Impl(l, r) | And(l, r) | Or(l, r):
            a1, a2 = free_vars(l)
            b1, b2 = free_vars(r)
            return a1 | b1, a2 | b2
        case Forall1(v, b) | Exists1(v, b):
            a1, a2 = free_vars(b)
            return a1 - {v}, a2
        case Forall2(v, b) | Exists2(v, b):
            a1, a2 = free_vars(b)
            return a1, a2 - {v}
    raise TypeError(f"not a formula: {f!r}")


def free_vars_all(f: Formula) -> frozenset:
    a, b = free_vars(f)
    return a | b


def abstraction_free_vars(a: Abstraction) -> tuple[frozenset[Var1], frozenset[Var2]]:
    fo, so = free_vars(a.body)
    return fo - set(a.params), so


def is_closed(f: Formula) -> bool:
    a, b = free_vars(f)
    return not a and not b


@lru_cache(maxsize=None)
def all_vars(f: Formula) -> frozenset:
    """Every variable occurring in ``f``, free or bound."""
    match f:
        case Bot():
            return frozenset()
        case Atom2(var, args):
            return frozenset((var,)).union(*map(term_vars, args))
        case Atom1(_, head, args):
            return term_vars(head).union(*map(term_vars, args))
        case Impl(l, r) | And(l, r) | Or(l, r):
            return all_vars(l) | all_vars(r)
        case Forall1(v, b) | Exists1(v, b) | Forall2(v, b) | Exists2(v, b):
            return all_vars(b) | {v}
    raise TypeError(f"not a formula: {f!r}")


def used_indices(*things) -> set[int]:
    """Indices of every variable (any sort) occurring in the given objects."""
    out: set[int] = set()
    for t in things:
        if isinstance(t, Formula):
            out.update(v.index for v in all_vars(t))
        elif isinstance(t, Abstraction):
            out.update(v.index for v in all_vars(t.body))
            out.update(v.index for v in t.params)
        elif isinstance(t, (Var1, Var2)):
            out.add(t.index)
        elif isinstance(t, Fn):
            out.update(v.index for v in term_vars(t))
        elif t is not None:
            out.update(used_indices(*t))
    return out


def least_index(avoid: Iterable[int]) -> int:
    avoid = set(avoid)
    i = 0
    while i in avoid:
        i += 1
    return i


def is_l1_pure(f: Formula) -> bool:
    return _purity(f)[0]


def is_l2_pure(f: Formula) -> bool:
    return _purity(f)[1]


@lru_cache(maxsize=None)
def _purity(f: Formula) -> tuple[bool, bool]:
    match f:
        case Bot():
            return True, True
        case Atom2():
            return False, True
        case Atom1():
            return True, False
        case Impl(l, r) | And(l, r) | Or(l, r):
            a, b = _purity(l), _purity(r)
            return a[0] and b[0], a[1] and b[1]
        case Forall1(_, b) | Exists1(_, b):
            return _purity(b)
        case Forall2(_, b) | Exists2(_, b):
            return False, _purity(b)[1]
    raise TypeError(f"not a formula: {f!r}")


def depth(f: Formula) -> int:
    match f:
        case Bot() | Atom1() | Atom2():
            return 0
        case Impl(l, r) | And(l, r) | Or(l, r):
            return 1 + max(depth(l), depth(r))
        case Forall1(_, b) | Exists1(_, b) | Forall2(_, b) | Exists2(_, b):
            return 1 + depth(b)
    raise TypeError(f"not a formula: {f!r}")


def fn_symbols(f: Formula) -> dict[str, int]:
    """Function symbols occurring in ``f`` with their arities."""
    out: dict[str, int] = {}

    def term(t):
        if isinstance(t, Fn):
            if out.setdefault(t.name, len(t.args)) != len(t.args):
                raise ValueError(f"function {t.name} used with two arities")
            for a in t.args:
                term(a)

    def walk(g):
        match g:
            case Atom2(_, args):
                for a in args:
                    term(a)
            case Atom1(_, head, args):
                term(head)
                for a in args:
                    term(a)
            case Impl(l, r) | And(l, r) | Or(l, r):
                walk(l)
                walk(r)
            case Forall1(_, b) | Exists1(_, b) | Forall2(_, b) | Exists2(_, b):
                walk(b)

    walk(f)
    return out


def so_arities(f: Formula) -> set[int]:
    """Arities of second-order variables (free or bound) and of ``Ap_n`` atoms."""
    out: set[int] = set()
    for v in all_vars(f):
        if isinstance(v, Var2):
            out.add(v.arity)

    def walk(g):
        match g:
            case Atom1(n, _, _):
                out.add(n)
            case Impl(l, r) | And(l, r) | Or(l, r):
                walk(l)
                walk(r)
            case Forall1(_, b) | Exists1(_, b) | Forall2(_, b) | Exists2(_, b):
                walk(b)

    walk(f)
    return out


# ---------------------------------------------------------------------------
# substitution


def subst_in_term(t: Term, m: dict) -> Term:
    if isinstance(t, Var1):
        return m.get(t, t)
    if not t.args:
        return t
    return Fn(t.name, tuple(subst_in_term(a, m) for a in t.args))


def _range_vars(value) -> frozenset:
    if isinstance(value, Var2):
        return frozenset((value,))
    if isinstance(value, Abstraction):
        a, b = abstraction_free_vars(value)
        return a | b
    return term_vars(value)


def substitute(f: Formula, m: dict) -> Formula:
    """Simultaneous capture-avoiding substitution.

    ``m`` maps :class:`Var1` to terms and :class:`Var2` to same-arity
    :class:`Var2` or :class:`Abstraction`.  Bound variables that would capture
    a variable of a replacement are renamed to the least index occurring
    nowhere in ``f`` or in the replacements.
    """
    for k, v in m.items():
        if isinstance(k, Var2):
            ar = v.arity
            if ar != k.arity:
                raise ValueError(f"arity mismatch substituting {v} for {k}")
        elif not isinstance(k, Var1):
            raise TypeError(f"cannot substitute for {k!r}")
    m = {k: v for k, v in m.items() if k != v}
    if not m:
        return f
    avoid = used_indices(f, list(m.keys()), list(m.values()))
    return _subst(f, m, avoid)


def _fresh_like(v: Var, avoid: set[int]) -> Var:
    i = least_index(avoid)
    avoid.add(i)
    return Var1(i) if isinstance(v, Var1) else Var2(v.arity, i)


def _subst(f: Formula, m: dict, avoid: set[int]) -> Formula:
    match f:
        case Bot():
            return f
        case Atom1(n, head, args):
            return Atom1(n, subst_in_term(head, m), tuple(subst_in_term(a, m) for a in args))
        case Atom2(var, args):
            args = tuple(subst_in_term(a, m) for a in args)
            r = m.get(var)
            if r is None:
                return Atom2(var, args)
            if isinstance(r, Var2):
                return Atom2(r, args)
            return substitute(r.body, dict(zip(r.params, args)))
        case Impl(l, r):
            return Impl(_subst(l, m, avoid), _subst(r, m, avoid))
        case And(l, r):
            return And(_subst(l, m, avoid), _subst(r, m, avoid))
        case Or(l, r):
            return Or(_subst(l, m, avoid), _subst(r, m, avoid))
        case Forall1(v, b) | Exists1(v, b) | Forall2(v, b) | Exists2(v, b):
            fb = free_vars_all(b)
            inner = {k: val for k, val in m.items() if k != v and k in fb}
            if not inner:
                return f
            captured = any(v in _range_vars(val) for val in inner.values())
            if captured:
                nv = _fresh_like(v, avoid)
                inner[v] = nv
                v = nv
            return type(f)(v, _subst(b, inner, avoid))
    raise TypeError(f"not a formula: {f!r}")


def subst_term(f: Formula, x: Var1, t: Term) -> Formula:
    return substitute(f, {x: t})


def subst_var2(f: Formula, x: Var2, y: Var2) -> Formula:
    if x.arity != y.arity:
        raise ValueError(f"arity mismatch: {x} and {y}")
    return substitute(f, {x: y})


def subst_formula2(f: Formula, x: Var2, a: Abstraction) -> Formula:
    if x.arity != a.arity:
        raise ValueError(f"arity mismatch: {x} and abstraction of arity {a.arity}")
    v = a.as_var()
    return substitute(f, {x: v if v is not None else a})


# ---------------------------------------------------------------------------
# alpha-equivalence


@lru_cache(maxsize=None)
def alpha_key(f: Formula):
    """A hashable key equal for exactly the alpha-equivalent formulas."""
    return _key(f, {}, 0)


def _tkey(t: Term, env: dict):
    if isinstance(t, Var1):
        d = env.get(t)
        return ("b", d) if d is not None else t
    return (t.name, tuple(_tkey(a, env) for a in t.args))


def _key(f: Formula, env: dict, level: int):
    match f:
        case Bot():
            return "bot"
        case Atom2(var, args):
            d = env.get(var)
            return ("A2", ("b", d) if d is not None else var, tuple(_tkey(a, env) for a in args))
        case Atom1(n, head, args):
            return ("A1", n, _tkey(head, env), tuple(_tkey(a, env) for a in args))
        case Impl(l, r) | And(l, r) | Or(l, r):
            return (type(f).__name__, _key(l, env, level), _key(r, env, level))
        case Forall1(v, b) | Exists1(v, b) | Forall2(v, b) | Exists2(v, b):
            inner = dict(env)
            inner[v] = level
            tag = v.arity if isinstance(v, Var2) else -1
            return (type(f).__name__, tag, _key(b, inner, level + 1))
    raise TypeError(f"not a formula: {f!r}")


def alpha_eq(f: Formula, g: Formula) -> bool:
    return f is g or alpha_key(f) == alpha_key(g)


# ---------------------------------------------------------------------------


def normalize_vacuous(f: Formula) -> Formula:
    """Drop every quantifier whose variable is not free in its (normalized) body."""
    match f:
        case Bot() | Atom1() | Atom2():
            return f
        case Impl(l, r) | And(l, r) | Or(l, r):
            return type(f)(normalize_vacuous(l), normalize_vacuous(r))
        case Forall1(v, b) | Exists1(v, b) | Forall2(v, b) | Exists2(v, b):
            nb = normalize_vacuous(b)
            if v in free_vars_all(nb):
                return type(f)(v, nb)
            return nb
    raise TypeError(f"not a formula: {f!r}")


def quantify(kind, vs: Iterable[Var], body: Formula) -> Formula:
    """Wrap ``body`` in quantifiers of ``kind`` ("forall"/"exists"), outermost first."""
    vs = list(vs)
    for v in reversed(vs):
        if kind == "forall":
            body = Forall1(v, body) if isinstance(v, Var1) else Forall2(v, body)
        else:
            body = Exists1(v, body) if isinstance(v, Var1) else Exists2(v, body)
    return body


def fresh_var2(arity: int, *fs, avoid: Iterable = ()) -> Var2:
    """Least-index arity-``arity`` variable free in none of ``fs`` and not in ``avoid``."""
    taken = {v.index for v in avoid if isinstance(v, Var2) and v.arity == arity}
    for f in fs:
        taken |= {X.index for X in free_vars(f)[1] if X.arity == arity}
    return Var2(arity, least_index(taken))
