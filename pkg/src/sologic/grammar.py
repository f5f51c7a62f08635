"""Concrete text syntax for formulas.

    x3                first-order variable
    X^2_0             second-order variable of arity 2, index 0
    bot               falsity
    A -> B            right associative, weakest
    A \\/ B, A /\\ B   left associative, /\\ binds tighter than \\/
    ~A                A -> bot
    A <-> B           (A -> B) /\\ (B -> A)
    forall v. A       quantifier scope extends as far right as possible
    X^2_0(t, u)       second-order atom (arity 0: no parentheses)
    Ap1(t0, t1)       first-order application atom
    f(t, u), a        function application, constant

The printer writes every binary connective inside parentheses and is the
inverse of :func:`parse` on formulas.
"""

from __future__ import annotations

import re

from .syntax import (
    BOT,
    Abstraction,
    And,
    Atom1,
    Atom2,
    Bot,
    Exists1,
    Exists2,
    Fn,
    Forall1,
    Forall2,
    Formula,
    Iff,
    Impl,
    Or,
    Term,
    Var1,
    Var2,
)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<so>X\^(?P<ar>\d+)_(?P<ix>\d+))
  | (?P<op><->|->|/\\|\\/|[~(),.\\])
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)
_FO = re.compile(r"x(\d+)\Z")
_AP = re.compile(r"Ap(\d+)\Z")
RESERVED = {"bot", "forall", "exists"}


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if m.group("ws"):
            pass
        elif m.group("so"):
            out.append(("so", Var2(int(m.group("ar")), int(m.group("ix"))), pos))
        elif m.group("op"):
            out.append(("op", m.group("op"), pos))
        else:
            out.append(("id", m.group("id"), pos))
        del kind
        pos = m.end()
    out.append(("eof", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def accept(self, op):
        k, v, _ = self.peek()
        if k == "op" and v == op:
            self.i += 1
            return True
        return False

    def expect(self, op):
        if not self.accept(op):
            k, v, _ = self.peek()
            self.error(f"expected {op!r}, found {v if k != 'eof' else 'end of input'!r}")

    def formula(self) -> Formula:
        left = self.impl()
        if self.accept("<->"):
            right = self.impl()
            return Iff(left, right)
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.accept("->"):
            return Impl(left, self.impl())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.accept("\\/"):
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.accept("/\\"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        k, v, pos = self.peek()
        if k == "op" and v == "~":
            self.next()
            return Impl(self.unary(), BOT)
        if k == "op" and v == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if k == "id" and v in ("forall", "exists"):
            self.next()
            var = self.binder()
            self.expect(".")
            body = self.formula()
            if isinstance(var, Var1):
                return (Forall1 if v == "forall" else Exists1)(var, body)
            return (Forall2 if v == "forall" else Exists2)(var, body)
        if k == "id" and v == "bot":
            self.next()
            return BOT
        if k == "so":
            self.next()
            args = self.args() if v.arity else ()
            if len(args) != v.arity:
                raise ParseError(f"{v} expects {v.arity} arguments, got {len(args)}", pos, self.text)
            return Atom2(v, args)
        if k == "id" and _AP.match(v):
            self.next()
            n = int(_AP.match(v).group(1))
            args = self.args()
            if len(args) != n + 1:
                raise ParseError(f"{v} expects {n + 1} arguments, got {len(args)}", pos, self.text)
            return Atom1(n, args[0], args[1:])
        if k == "eof":
            self.error("unexpected end of input")
        self.error(f"expected a formula, found {v!r}")

    def binder(self):
        k, v, pos = self.next()
        if k == "so":
            return v
        if k == "id" and _FO.match(v):
            return Var1(int(_FO.match(v).group(1)))
        raise ParseError(f"expected a variable, found {v!r}", pos, self.text)

    def args(self) -> tuple[Term, ...]:
        self.expect("(")
        out = [self.term()]
        while self.accept(","):
            out.append(self.term())
        self.expect(")")
        return tuple(out)

    def term(self) -> Term:
        k, v, pos = self.next()
        if k != "id" or v in RESERVED or _AP.match(v):
            raise ParseError(f"expected a term, found {v!r}", pos, self.text)
        m = _FO.match(v)
        if m:
            return Var1(int(m.group(1)))
        k2, v2, _ = self.peek()
        if k2 == "op" and v2 == "(":
            return Fn(v, self.args())
        return Fn(v)

    def done(self):
        k, v, pos = self.peek()
        if k != "eof":
            raise ParseError(f"trailing input {v!r}", pos, self.text)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.done()
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_var(text: str):
    p = _Parser(text)
    v = p.binder()
    p.done()
    return v


def parse_abstraction(text: str) -> Abstraction:
    """``\\x0 x1. body``; ``\\. body`` for arity 0."""
    p = _Parser(text)
    p.expect("\\")
    params = []
    while not p.accept("."):
        v = p.binder()
        if not isinstance(v, Var1):
            p.error("abstraction parameters must be first-order variables")
        params.append(v)
    body = p.formula()
    p.done()
    return Abstraction(tuple(params), body)


_BIN = {Impl: "->", And: "/\\", Or: "\\/"}


def show(f: Formula) -> str:
    match f:
        case Bot():
            return "bot"
        case Atom2(var, args):
            return f"{var}({', '.join(map(str, args))})" if args else str(var)
        case Atom1(n, head, args):
            return f"Ap{n}({', '.join(map(str, (head,) + args))})"
        case Impl(l, r) | And(l, r) | Or(l, r):
            ls = show(l)
            if isinstance(l, (Forall1, Exists1, Forall2, Exists2)):
                ls = f"({ls})"
            return f"({ls} {_BIN[type(f)]} {show(r)})"
        case Forall1(v, b) | Forall2(v, b):
            return f"forall {v}. {show(b)}"
        case Exists1(v, b) | Exists2(v, b):
            return f"exists {v}. {show(b)}"
    raise TypeError(f"not a formula: {f!r}")
