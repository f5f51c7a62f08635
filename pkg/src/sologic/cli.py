"""The ``sologic`` command line.

Exit codes: 0 success, 1 a reported check failed, 2 parse error,
3 precondition or purity violation, 4 proof rejected, 5 model invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classical import ClassicalModel1, ClassicalModel2, EvalError, ModelError, compile_classical
from .coding import PurityError, rev, star
from .deduction.kernel import Rejected, check
from .deduction.serialize import ProofFormatError, dump_proof, load_proof
from .deduction.translate import derive_transprooftrois, translate_down, translate_up
from .grammar import ParseError, parse, show
from .kripke import KripkeModel2, compile_forcing
from .modelio import ModelFormatError, dump_interp, dump_kmodel, dump_model, load_interp, load_kmodel, load_model
from .report import Item, Report, paper_examples
from .search import FOUND, PreconditionError, SearchBounds, search
from .sexpr import SexprError
from .stock import DEFAULT_SEED
from .syntax import alpha_eq, free_vars, is_l1_pure, is_l2_pure

OK, FAILURE, PARSE, PRECONDITION, REJECTED, INVARIANT = range(6)


class Exit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise Exit(PRECONDITION, f"cannot read {path}: {e.strerror}") from None


def _formula(text: str):
    return parse(text)


# ---------------------------------------------------------------------------
# commands


def cmd_encode(args) -> int:
    print(show(star(_formula(args.formula))))
    return OK


def cmd_decode(args) -> int:
    print(show(rev(_formula(args.formula))))
    return OK


def _load_proof(path: str):
    return load_proof(_read(path))


def _rejected(v) -> Exit:
    return Exit(REJECTED, str(v))


def cmd_check_proof(args) -> int:
    p = _load_proof(args.proof)
    v = check(p)
    if not v:
        raise _rejected(v)
    print(f"accepted: {p.seq}")
    return OK


def cmd_translate_proof(args) -> int:
    p = _load_proof(args.proof)
    v = check(p)
    if not v:
        raise _rejected(v)
    want = {"down": 2, "up": 1, "roundtrip": 2}[args.direction]
    if p.seq.order != want:
        raise Exit(PRECONDITION, f"{args.direction} expects an order-{want} proof, got order {p.seq.order}")
    if args.direction == "down":
        out = translate_down(p)
    elif args.direction == "up":
        out = translate_up(p)
    else:
        out = derive_transprooftrois(translate_down(p), p.hyps, p.concl)
        if not alpha_eq(out.concl, p.concl):
            raise Exit(FAILURE, f"round trip changed the conclusion to {show(out.concl)}")
    v = check(out)
    if not v:
        raise _rejected(v)
    text = dump_proof(out) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        print(f"accepted: {out.seq}")
    else:
        sys.stdout.write(text)
    return OK


def _interp(text: str | None, model, point: int, f) -> dict:
    sigma = load_interp(text or "", model, point)
    fo, so = free_vars(f)
    missing = sorted(str(v) for v in (fo | so) if v not in sigma)
    if missing:
        raise Exit(PRECONDITION, f"interpretation misses {', '.join(missing)}")
    return sigma


def _check_values(model, sigma: dict, point: int):
    """Second-order values must come from the model's ranges."""
    for v, val in sigma.items():
        if not hasattr(v, "arity"):
            continue
        if isinstance(model, ClassicalModel2):
            allowed = model.ranges.get(v.arity)
        elif isinstance(model, KripkeModel2):
            allowed = model.families.get(v.arity, (None,) * len(model.poset))[point]
        else:
            raise Exit(PRECONDITION, f"a first-order model cannot interpret {v}")
        if allowed is None or val not in allowed:
            raise Exit(PRECONDITION, f"value of {v} is not in the model's arity-{v.arity} range")


def _purity(model, f):
    first = isinstance(model, ClassicalModel1) or not isinstance(model, (ClassicalModel2, KripkeModel2))
    if first and not is_l1_pure(f):
        raise PurityError("a first-order model needs a first-order formula")
    if not first and not is_l2_pure(f):
        raise PurityError("a second-order model needs a second-order formula")


def cmd_eval(args) -> int:
    M = load_model(_read(args.model))
    f = _formula(args.formula)
    _purity(M, f)
    sigma = _interp(args.interp, M, 0, f)
    _check_values(M, sigma, 0)
    print("true" if compile_classical(M, f)(sigma) else "false")
    return OK


def cmd_force(args) -> int:
    K = load_kmodel(_read(args.model))
    p = K.poset.point(args.point)
    f = _formula(args.formula)
    _purity(K, f)
    sigma = _interp(args.interp, K, p, f)
    _check_values(K, sigma, p)
    print("true" if compile_forcing(K, f)(sigma, p) else "false")
    return OK


def cmd_countermodel(args) -> int:
    f = _formula(args.formula)
    bounds = SearchBounds.parse(args.bounds)
    r = search(f, bounds, args.semantics, args.full_only)
    model_text = interp_text = None
    if r.status == FOUND:
        kripke = args.semantics == "kripke"
        model_text = dump_kmodel(r.model) if kripke else dump_model(r.model)
        interp_text = dump_interp(r.interp, r.model)
        where = f" at point {r.model.poset.names[r.point]}" if kripke else ""
        evidence = f"{r.tried} candidates; refuted{where}"
        if args.out:
            Path(args.out + ".model").write_text(model_text + "\n")
            Path(args.out + ".interp").write_text(interp_text + "\n")
    else:
        evidence = f"{r.tried} candidates within bounds {args.bounds}"
    item = Item("countermodel", r.status, evidence)
    if args.format == "lines":
        rec = {"name": item.name, "status": item.status, "evidence": item.evidence}
        if model_text:
            rec.update(model=model_text, interp=interp_text)
        print(json.dumps(rec))
    else:
        print(Report((item,)).render("text"))
        if model_text:
            print(model_text)
            print(interp_text)
    return OK


def cmd_paper_examples(args) -> int:
    only = None if args.only is None else args.only.split(",")
    peirce = load_kmodel(_read(args.peirce_model)) if args.peirce_model else None
    try:
        report = paper_examples(only, peirce, args.seed)
    except KeyError as e:
        raise Exit(PRECONDITION, e.args[0]) from None
    if report.items:
        print(report.render(args.format))
    if not report.ok:
        names = ", ".join(i.name for i in report.failures())
        print(f"failed: {names}", file=sys.stderr)
        return FAILURE
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sologic", description="Second-order logic workbench.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="star coding of a second-order formula")
    p.add_argument("formula")
    p.set_defaults(run=cmd_encode)

    p = sub.add_parser("decode", help="reverse coding of a first-order formula")
    p.add_argument("formula")
    p.set_defaults(run=cmd_decode)

    p = sub.add_parser("check-proof", help="run the kernel on a proof file")
    p.add_argument("proof")
    p.set_defaults(run=cmd_check_proof)

    p = sub.add_parser("translate-proof", help="translate a proof between the two systems")
    p.add_argument("proof")
    p.add_argument("--direction", choices=("down", "up", "roundtrip"), required=True)
    p.add_argument("-o", "--output", help="write the proof here instead of stdout")
    p.set_defaults(run=cmd_translate_proof)

    p = sub.add_parser("eval", help="evaluate a formula in a classical model file")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--interp", help="interpretation as an s-expression")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("force", help="forcing at a point of a Kripke model file")
    p.add_argument("model")
    p.add_argument("point")
    p.add_argument("formula")
    p.add_argument("--interp", help="interpretation as an s-expression")
    p.set_defaults(run=cmd_force)

    p = sub.add_parser("countermodel", help="bounded countermodel search")
    p.add_argument("formula")
    p.add_argument("--bounds", default="2,1,0,2", help="points,domain,arity,families[,seconds]")
    p.add_argument("--semantics", choices=("kripke", "classical"), default="kripke")
    p.add_argument("--full-only", action="store_true", help="only try full models")
    p.add_argument("--out", help="write PREFIX.model and PREFIX.interp for a countermodel")
    p.add_argument("--format", choices=("text", "lines"), default="text")
    p.set_defaults(run=cmd_countermodel)

    p = sub.add_parser("paper-examples", help="run every worked example and bounded check")
    p.add_argument("--format", choices=("text", "lines"), default="text")
    p.add_argument("--only", help="comma-separated item names (empty for none)")
    p.add_argument("--peirce-model", help="Kripke model file replacing the built-in Peirce model")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the random formula stock")
    p.set_defaults(run=cmd_paper_examples)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except Exit as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ParseError, SexprError, ProofFormatError, ModelFormatError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return PARSE
    except Rejected as e:
        path = "/".join(map(str, e.path)) or "root"
        print(f"rejected at {path} ({e.rule}): {e.reason}", file=sys.stderr)
        return REJECTED
    except ModelError as e:
        print(f"model invariant violated: {e}", file=sys.stderr)
        return INVARIANT
    except (PurityError, PreconditionError, EvalError) as e:
        print(f"precondition: {e}", file=sys.stderr)
        return PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
