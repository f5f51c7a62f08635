"""Proof files.

One node per form::

    (RULE (PAYLOAD...) (seq (hyps "F" ...) "F" LOGIC ORDER) PREMISE...)

Formulas are quoted in the surface grammar.  Payload entries are
``(eigen "v")``, ``(term "t")`` and ``(abs "\\x0 x1. F")``.  ``LOGIC`` is
``i`` or ``c`` and ``ORDER`` is ``1`` or ``2``.  Premises are indented two
spaces per level, so the text is stable byte for byte.
"""

from __future__ import annotations

from ..grammar import parse, parse_abstraction, parse_term, parse_var, show
from ..sexpr import Quoted, SexprError, dumps, read
from .kernel import RULES, Proof, Sequent


class ProofFormatError(ValueError):
    pass


def _q(x) -> Quoted:
    return Quoted(show(x) if not isinstance(x, str) else x)


def _sequent_form(s: Sequent) -> list:
    return ["seq", ["hyps", *(_q(h) for h in s.hyps)], _q(s.concl), s.logic, str(s.order)]


def _payload(p: Proof) -> list:
    out = []
    if p.eigen is not None:
        out.append(["eigen", Quoted(str(p.eigen))])
    if p.term is not None:
        out.append(["term", Quoted(str(p.term))])
    if p.abs is not None:
        out.append(["abs", Quoted(str(p.abs))])
    return out


def dump_proof(p: Proof, indent: int = 0) -> str:
    pad = "  " * indent
    line = f"{pad}({p.rule} {dumps(_payload(p))} {dumps(_sequent_form(p.seq))}"
    if not p.premises:
        return line + ")"
    inner = "\n".join(dump_proof(q, indent + 1) for q in p.premises)
    return f"{line}\n{inner})"


def _string(x, what: str) -> str:
    if not isinstance(x, Quoted):
        raise ProofFormatError(f"{what} must be a quoted string")
    return str(x)


def _sequent(form) -> Sequent:
    if not (isinstance(form, list) and len(form) == 5 and form[0] == "seq"):
        raise ProofFormatError("sequent must be (seq (hyps ...) F logic order)")
    _, hyps, concl, logic, order = form
    if not (isinstance(hyps, list) and hyps and hyps[0] == "hyps"):
        raise ProofFormatError("sequent hypotheses must be (hyps ...)")
    if logic not in ("i", "c") or order not in ("1", "2"):
        raise ProofFormatError(f"bad logic/order flags {logic} {order}")
    return Sequent(
        tuple(parse(_string(h, "hypothesis")) for h in hyps[1:]),
        parse(_string(concl, "conclusion")),
        str(logic),
        int(order),
    )


def _proof(form) -> Proof:
    if not (isinstance(form, list) and len(form) >= 3 and isinstance(form[0], str)):
        raise ProofFormatError("proof node must be (rule (payload...) sequent premise...)")
    rule, payload, seq, *prems = form
    if rule not in RULES:
        raise ProofFormatError(f"unknown rule {rule!r}")
    if not isinstance(payload, list):
        raise ProofFormatError("payload must be a list")
    kw = {}
    for item in payload:
        if not (isinstance(item, list) and len(item) == 2 and item[0] in ("eigen", "term", "abs")):
            raise ProofFormatError(f"bad payload entry {dumps(item)}")
        key, text = item[0], _string(item[1], item[0])
        if key in kw:
            raise ProofFormatError(f"duplicate payload {key}")
        kw[key] = {"eigen": parse_var, "term": parse_term, "abs": parse_abstraction}[key](text)
    return Proof(rule, _sequent(seq), tuple(_proof(q) for q in prems), **kw)


def load_proof(text: str) -> Proof:
    try:
        return _proof(read(text))
    except SexprError as e:
        raise ProofFormatError(str(e)) from None
