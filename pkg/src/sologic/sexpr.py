"""A small s-expression reader and writer.

Atoms are bare symbols or double-quoted strings (``\\"`` and ``\\\\`` escapes).
Quoted strings come back as :class:`Quoted` so callers can tell them apart.
``;`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|[^\s()";]+')


class SexprError(ValueError):
    def __init__(self, msg: str, pos: int):
        self.pos = pos
        super().__init__(f"{msg} at offset {pos}")


class Quoted(str):
    """A string atom that was written in double quotes."""


def _unquote(tok: str) -> Quoted:
    return Quoted(re.sub(r"\\(.)", r"\1", tok[1:-1]))


def tokenize(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SexprError("unterminated string", pos)
        tok = m.group()
        if not (tok[0].isspace() or tok[0] == ";"):
            yield tok, pos
        pos = m.end()


def read_all(text: str) -> list:
    """Every top-level form in ``text``."""
    stack: list[list] = [[]]
    opens: list[int] = []
    for tok, pos in tokenize(text):
        if tok == "(":
            stack.append([])
            opens.append(pos)
        elif tok == ")":
            if len(stack) == 1:
                raise SexprError("unbalanced ')'", pos)
            done = stack.pop()
            opens.pop()
            stack[-1].append(done)
        elif tok.startswith('"'):
            stack[-1].append(_unquote(tok))
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise SexprError("missing ')'", opens[-1])
    return stack[0]


def read(text: str):
    forms = read_all(text)
    if len(forms) != 1:
        raise SexprError(f"expected one form, found {len(forms)}", 0)
    return forms[0]


def quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _atom(x) -> str:
    if isinstance(x, Quoted):
        return quote(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    s = str(x)
    if not s or re.search(r'[\s()";]', s):
        return quote(s)
    return s


def dumps(x) -> str:
    """Single-line rendering."""
    if isinstance(x, (list, tuple)):
        return "(" + " ".join(dumps(y) for y in x) + ")"
    return _atom(x)


def head(form) -> str | None:
    if isinstance(form, list) and form and isinstance(form[0], str):
        return form[0]
    return None
