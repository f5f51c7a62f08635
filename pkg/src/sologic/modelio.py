"""Model, Kripke model and interpretation files (s-expression text).

Classical models::

    (model1 (domain a b) (fn (f (a) -> b) (f (b) -> a) (c () -> a)) (ap 1 ((a a) (a b))))
    (model2 (domain a b) (fn ...) (range 1 (((a)) ())))

A ``range`` lists predicates, each a list of tuples.  ``P0`` defaults to both
truth values; ``()`` is false and ``(())`` is true.

Kripke models::

    (kmodel1 (poset (points 0 p) (leq (0 p))) (domain 0 (elems a)) (domain p (elems a b))
             (fn 0 (c () -> a)) (ap 1 p (tuples (a b))))
    (kmodel2 (poset ...) (domain ...) (family 0 0 pi1 ((0 (tuples)) (p (tuples ())))))

``leq`` pairs are closed reflexively and transitively and the first point is
the bottom.  A ``family`` form gives arity, level, an optional name, and the
tuple set at every point of the level's cone.  Families and relations are
taken exactly as listed, so every point needs its own entries (a family at
``0`` and its restriction to ``p`` are both written out).  Missing ``ap``
entries are empty.

Interpretations map variables to values::

    ((x0 a) (X^1_0 ((a) (b))) (X^0_0 true) (X^0_1 pi1) (X^0_2 (bar p)))

First-order variables take elements.  Second-order values are tuple lists
(classical), family names, inline families ``((q (tuples ...)) ...)``, or for
arity 0 ``true``, ``false`` and bars ``(bar q ...)`` above the forcing point.
"""

from __future__ import annotations

from .classical import FALSE, TRUE, ClassicalModel1, ClassicalModel2
from .grammar import parse_var
from .kripke import (
    Bar,
    KripkeModel1,
    KripkeModel2,
    Poset,
    bar_to_family,
    restrict,
)
from .sexpr import SexprError, dumps, head, read
from .syntax import Var1, Var2


class ModelFormatError(ValueError):
    pass


def _err(msg):
    raise ModelFormatError(msg)


def _sym(x, what):
    if not isinstance(x, str):
        _err(f"{what} must be an identifier, found {dumps(x)}")
    return str(x)


def _int(x, what):
    try:
        return int(_sym(x, what))
    except ValueError:
        _err(f"{what} must be a number, found {x}")


def _tuple(x, what="tuple") -> tuple:
    if not isinstance(x, list):
        _err(f"{what} must be a list, found {x}")
    return tuple(_sym(e, "element") for e in x)


def _fn_entry(tables: dict, form):
    if not (isinstance(form, list) and len(form) == 4 and form[2] == "->"):
        _err(f"function entry must be (f (args...) -> r), found {dumps(form)}")
    name = _sym(form[0], "function name")
    tables.setdefault(name, {})[_tuple(form[1], "arguments")] = _sym(form[3], "result")


def _domain(form):
    if head(form) != "domain":
        _err("expected (domain ...)")
    return tuple(_sym(e, "element") for e in form[1:])


# ---------------------------------------------------------------------------
# classical


def load_model(text: str):
    try:
        form = read(text)
    except SexprError as e:
        raise ModelFormatError(str(e)) from None
    kind = head(form)
    if kind not in ("model1", "model2"):
        _err("expected (model1 ...) or (model2 ...)")
    domain = None
    tables: dict = {}
    rels: dict = {}
    ranges: dict = {}
    for item in form[1:]:
        match head(item):
            case "domain":
                domain = _domain(item)
            case "fn":
                for e in item[1:]:
                    _fn_entry(tables, e)
            case "ap" if kind == "model1":
                if len(item) != 3 or not isinstance(item[2], list):
                    _err("expected (ap n (tuples...))")
                n = _int(item[1], "arity")
                rels[n] = frozenset(_tuple(t) for t in item[2])
            case "range" if kind == "model2":
                if len(item) != 3 or not isinstance(item[2], list):
                    _err("expected (range n (predicates...))")
                n = _int(item[1], "arity")
                ranges[n] = frozenset(frozenset(_tuple(t) for t in _list(pred)) for pred in item[2])
            case other:
                _err(f"unexpected form {other!r} in {kind}")
    if domain is None:
        _err("missing (domain ...)")
    if kind == "model1":
        return ClassicalModel1(domain, rels, tables)
    return ClassicalModel2(domain, ranges, tables)


def _list(x):
    if not isinstance(x, list):
        _err(f"expected a list, found {x}")
    return x


def _tuples_text(ts) -> list:
    return [list(t) for t in sorted(ts)]


def _fn_text(tables) -> list:
    out = ["fn"]
    for name in sorted(tables):
        for args, r in sorted(tables[name].items()):
            out.append([name, list(args), "->", r])
    return out


def dump_model(M) -> str:
    lines = []
    if isinstance(M, ClassicalModel1):
        lines.append("(model1")
        body = [["domain", *map(str, M.domain)], _fn_text(M.fn_tables)]
        body += [["ap", str(n), _tuples_text(M.relations[n])] for n in sorted(M.relations)]
    else:
        lines.append("(model2")
        body = [["domain", *map(str, M.domain)], _fn_text(M.fn_tables)]
        for n in sorted(M.ranges):
            preds = sorted((_tuples_text(p) for p in M.ranges[n]), key=lambda p: (len(p), p))
            body.append(["range", str(n), preds])
    lines += ["  " + dumps(b) for b in body]
    return "\n".join(lines) + ")"


# ---------------------------------------------------------------------------
# Kripke


def _poset(form) -> Poset:
    if head(form) != "poset" or len(form) != 3 or head(form[1]) != "points" or head(form[2]) != "leq":
        _err("expected (poset (points ...) (leq (p q) ...))")
    names = tuple(_sym(p, "point") for p in form[1][1:])
    pairs = []
    for pr in form[2][1:]:
        if not (isinstance(pr, list) and len(pr) == 2):
            _err("leq entries must be (p q)")
        pairs.append((_sym(pr[0], "point"), _sym(pr[1], "point")))
    return Poset.from_pairs(names, pairs)


def _tupleset(form) -> frozenset:
    if head(form) != "tuples":
        _err(f"expected (tuples ...), found {dumps(form)}")
    return frozenset(_tuple(t) for t in form[1:])


def _family(poset: Poset, p: int, form) -> tuple:
    vals: list = [None] * len(poset)
    for entry in _list(form):
        if not (isinstance(entry, list) and len(entry) == 2):
            _err("family entries must be (q (tuples ...))")
        q = poset.point(_sym(entry[0], "point"))
        vals[q] = _tupleset(entry[1])
    for q in poset.up[p]:
        if vals[q] is None:
            _err(f"family at level {poset.names[p]} lacks a value at {poset.names[q]}")
    for q, v in enumerate(vals):
        if v is not None and q not in poset.up[p]:
            _err(f"family at level {poset.names[p]} has a value outside its cone at {poset.names[q]}")
    return tuple(vals)


def load_kmodel(text: str):
    try:
        form = read(text)
    except SexprError as e:
        raise ModelFormatError(str(e)) from None
    kind = head(form)
    if kind not in ("kmodel1", "kmodel2"):
        _err("expected (kmodel1 ...) or (kmodel2 ...)")
    items = form[1:]
    if not items or head(items[0]) != "poset":
        _err("the first form must be (poset ...)")
    poset = _poset(items[0])
    k = len(poset)
    domains: list = [None] * k
    tables = [dict() for _ in range(k)]
    rels: dict = {}
    fams: dict = {}
    names: dict = {}
    for item in items[1:]:
        match head(item):
            case "domain":
                if len(item) != 3 or head(item[2]) != "elems":
                    _err("expected (domain p (elems ...))")
                domains[poset.point(_sym(item[1], "point"))] = frozenset(_sym(e, "element") for e in item[2][1:])
            case "fn":
                p = poset.point(_sym(item[1], "point"))
                for e in item[2:]:
                    _fn_entry(tables[p], e)
            case "ap" if kind == "kmodel1":
                if len(item) != 4:
                    _err("expected (ap n p (tuples ...))")
                n = _int(item[1], "arity")
                p = poset.point(_sym(item[2], "point"))
                rels.setdefault(n, [frozenset()] * k)[p] = _tupleset(item[3])
            case "family" if kind == "kmodel2":
                if len(item) not in (4, 5):
                    _err("expected (family n p [name] ((q (tuples ...)) ...))")
                n = _int(item[1], "arity")
                p = poset.point(_sym(item[2], "point"))
                pi = _family(poset, p, item[-1])
                if len(item) == 5:
                    names[_sym(item[3], "family name")] = pi
                fams.setdefault(n, [set() for _ in range(k)])[p].add(pi)
            case other:
                _err(f"unexpected form {other!r} in {kind}")
    for p in range(k):
        if domains[p] is None:
            _err(f"no domain for point {poset.names[p]}")
    if kind == "kmodel1":
        return KripkeModel1(poset, tuple(domains), rels, tuple(tables))
    return KripkeModel2(
        poset, tuple(domains), {n: tuple(per) for n, per in fams.items()}, tuple(tables), names
    )


def _family_text(poset: Poset, pi) -> list:
    return [[poset.names[q], ["tuples", *_tuples_text(v)]] for q, v in enumerate(pi) if v is not None]


def dump_kmodel(K) -> str:
    P = K.poset
    k = len(P)
    pairs = sorted((i, j) for i, j in P.leq if i != j)
    lines = ["(" + ("kmodel1" if isinstance(K, KripkeModel1) else "kmodel2")]
    body = [["poset", ["points", *P.names], ["leq", *([P.names[i], P.names[j]] for i, j in pairs)]]]
    for p in range(k):
        body.append(["domain", P.names[p], ["elems", *sorted(map(str, K.domains[p]))]])
    for p in range(k):
        if K.fn_tables[p]:
            body.append(["fn", P.names[p], *_fn_text(K.fn_tables[p])[1:]])
    if isinstance(K, KripkeModel1):
        for n in sorted(K.relations):
            for p in range(k):
                if K.relations[n][p]:
                    body.append(["ap", str(n), P.names[p], ["tuples", *_tuples_text(K.relations[n][p])]])
    else:
        named = {pi: name for name, pi in K.names.items()}
        for n in sorted(K.families):
            for p in range(k):
                for pi in sorted(K.families[n][p], key=_fam_sort):
                    entry = ["family", str(n), P.names[p]]
                    if pi in named:
                        entry.append(named[pi])
                    body.append(entry + [_family_text(P, pi)])
    lines += ["  " + dumps(b) for b in body]
    return "\n".join(lines) + ")"


def _fam_sort(pi):
    return [(-1,) if v is None else (len(v), sorted(v)) for v in pi]


# ---------------------------------------------------------------------------
# interpretations


def load_interp(text: str, model=None, point: int = 0) -> dict:
    """Parse an interpretation; family names, bars and truth values are resolved against ``model``."""
    try:
        form = read(text) if text.strip() else []
    except SexprError as e:
        raise ModelFormatError(str(e)) from None
    out = {}
    for entry in _list(form):
        if not (isinstance(entry, list) and len(entry) == 2):
            _err(f"interpretation entries must be (var value), found {dumps(entry)}")
        v = parse_var(_sym(entry[0], "variable"))
        out[v] = _value(v, entry[1], model, point)
    return out


def _value(v, x, model, point):
    if isinstance(v, Var1):
        return _sym(x, "element")
    kripke = isinstance(model, (KripkeModel1, KripkeModel2))
    if isinstance(x, str):
        if x in ("true", "false") and v.arity == 0:
            truth = TRUE if x == "true" else FALSE
            if not kripke:
                return truth
            P = model.poset
            return tuple(truth if q in P.up[point] else None for q in range(len(P)))
        if isinstance(model, KripkeModel2) and x in model.names:
            return restrict(model.poset, model.names[x], point)
        _err(f"unknown value {x!r} for {v}")
    if kripke:
        P = model.poset
        if head(x) == "bar":
            if v.arity != 0:
                _err("bars denote arity-0 families")
            return bar_to_family(Bar(point, frozenset(P.point(_sym(q, "point")) for q in x[1:])), P)
        return _family(P, point, x)
    pred = frozenset(_tuple(t) for t in x)
    if any(len(t) != v.arity for t in pred):
        _err(f"value for {v} has tuples of the wrong length")
    return pred


def dump_interp(sigma: dict, model=None) -> str:
    items = []
    names = {pi: n for n, pi in getattr(model, "names", {}).items()}
    poset = getattr(model, "poset", None)
    for v in sorted(sigma, key=lambda v: (isinstance(v, Var2), getattr(v, "arity", -1), v.index)):
        val = sigma[v]
        if isinstance(v, Var1):
            items.append([str(v), str(val)])
        elif poset is not None:
            items.append([str(v), names.get(val) or _family_text(poset, val)])
        else:
            items.append([str(v), _tuples_text(val)])
    return dumps(items)

