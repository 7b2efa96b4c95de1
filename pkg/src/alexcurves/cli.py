"""Command-line front end: ``alex <verb> ...``.

Exit codes: 0 success, 1 computation error, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from . import alexander, pencil, presentations, unions
from .laurent import content_stripped
from .presentations import PresentationError, WeightedPresentation
from .skew import FFM1_FACTS, FFM1_SCRIPT, FactError, FactSet, MoveError, auto_reduce, parse_facts, run_script
from .skew.engine import format_move, parse_script
from .words import WordError

BUILTIN_FACTS = {"ffm1": FFM1_FACTS}
BUILTIN_SCRIPTS = {"ffm1": FFM1_SCRIPT}


class InputError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def load_presentation_arg(arg: str) -> WeightedPresentation:
    path = Path(arg)
    try:
        if path.is_file():
            P = presentations.load_presentation(path)
        elif presentations.is_corpus_name(arg):
            P = presentations.corpus(arg)
        else:
            raise InputError(f"{arg!r} is neither a file nor a corpus name")
    except (PresentationError, WordError) as exc:
        raise InputError(f"{arg}: {exc}") from None
    problems = presentations.validate(P)
    if problems:
        raise InputError(f"{arg}: invalid presentation: " + "; ".join(problems))
    return P


def _text_arg(arg: str, builtins: dict[str, str]) -> str:
    path = Path(arg)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    if arg in builtins:
        return builtins[arg]
    raise InputError(f"{arg!r} is neither a file nor a built-in name")


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "y"):
        return True
    if t in ("0", "false", "no", "n"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _pencil_flag(text: str) -> unions.PencilType:
    t = text.strip().upper()
    t = {"Y": "YES", "N": "NO", "U": "UNKNOWN"}.get(t, t)
    try:
        return unions.PencilType(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YES, NO or UNKNOWN, got {text!r}") from None


def _finiteness(text: str) -> tuple[dict[int, unions.Finiteness], unions.Finiteness]:
    flags: dict[int, unions.Finiteness] = {}
    default = unions.Finiteness.UNKNOWN
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, val = part.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected n=FLAG, got {part!r}")
        try:
            flag = unions.Finiteness(val.strip().upper())
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown flag {val!r}") from None
        if key.strip() in ("*", "all"):
            default = flag
        else:
            flags[int(key)] = flag
    return flags, default


# verbs -----------------------------------------------------------------------

def cmd_multi(args) -> int:
    P = load_presentation_arg(args.presentation)
    if args.full:
        _emit(alexander.result_record(P))
    else:
        multi = alexander.multi_alexander(P)
        _emit({"multi": multi.format(), "multi_primitive": content_stripped(multi).format()})
    return 0


def cmd_uni(args) -> int:
    P = load_presentation_arg(args.presentation)
    try:
        uni = alexander.uni_alexander(P)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit({"uni": uni.format()})
    return 0


def cmd_delta0(args) -> int:
    P = load_presentation_arg(args.presentation)
    _emit({"delta0": alexander.format_delta(alexander.delta0(P))})
    return 0


def cmd_pencil(args) -> int:
    try:
        comps = pencil.load_components(args.polyfile)
    except OSError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(f"{args.polyfile}: {exc}") from None
    try:
        verdict = pencil.pencil_check(comps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(verdict.to_dict())
    return 0


def cmd_union(args) -> int:
    left = load_presentation_arg(args.left)
    right = load_presentation_arg(args.right)
    if args.left_irreducible is not None and args.left_irreducible != (left.s == 1):
        raise InputError(f"--left-irreducible {args.left_irreducible} contradicts s = {left.s}")
    ml = unions.meta_from_presentation(left)
    mr = unions.meta_from_presentation(right)
    try:
        if args.right_pencil is not None:
            mr = replace(mr, pencil_type=args.right_pencil)
        if args.finiteness is not None:
            # the flags describe whichever side is reducible
            flags, default = args.finiteness
            if mr.irreducible and not ml.irreducible:
                ml = replace(ml, higher=flags, higher_default=default)
            else:
                mr = replace(mr, higher=flags, higher_default=default)
        ml.check()
        mr.check()
        if args.verify:
            report = unions.crosscheck(left, right, ml, mr)
            _emit(report.to_dict())
            return 0 if report.ok else 1
        _emit(unions.predict_union(ml, mr).to_dict())
    except unions.MetaError as exc:
        raise InputError(str(exc)) from None
    return 0


def cmd_skew(args) -> int:
    P = load_presentation_arg(args.presentation)
    facts = FactSet()
    try:
        if args.facts:
            facts = parse_facts(_text_arg(args.facts, BUILTIN_FACTS), P.parse)
        level = args.level if args.level is not None else facts.declared_level
        if level is None:
            raise InputError("give --level or a facts file with a level line")
        if args.auto:
            result = auto_reduce(P, level, facts)
        else:
            script = parse_script(_text_arg(args.script, BUILTIN_SCRIPTS))
            result = run_script(P, facts, script, level)
    except (FactError, WordError) as exc:
        raise InputError(str(exc)) from None
    except MoveError as exc:
        # only script syntax errors escape run_script; failed moves are reported in the result
        raise InputError(str(exc)) from None
    out = {
        "level": level,
        "status": result.status,
        "delta": None if result.delta is None else alexander.format_delta(result.delta),
        "error": result.error,
        "readout": None if result.readout is None else result.readout.to_dict(),
    }
    if args.auto:
        out["script"] = [format_move(m) for m in result.state.ledger]
    if args.ledger:
        Path(args.ledger).write_text(result.ledger_json() + "\n", encoding="utf-8")
    _emit(out)
    return 1 if result.error else 0


def cmd_replay(args) -> int:
    from .skew import replay_ledger

    try:
        doc = json.loads(Path(args.ledger).read_text(encoding="utf-8"))
        ok, rebuilt = replay_ledger(doc)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    _emit({"identical": ok, "status": rebuilt["result"]["status"]})
    return 0 if ok else 1


def cmd_examples(args) -> int:
    if args.action == "list":
        _emit([{"name": n, "description": d} for n, d in presentations.CORPUS_DOC.items()])
        return 0
    if not args.name:
        raise InputError("examples show needs a NAME")
    P = load_presentation_arg(args.name)
    sys.stdout.write(P.to_text())
    return 0


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alex", description="Alexander-type invariants of plane curve complements.")
    sub = p.add_subparsers(dest="verb", required=True)

    for verb, helptext in (("multi", "multivariable Alexander polynomial"),
                           ("uni", "univariable Alexander polynomial"),
                           ("delta0", "degree of the multivariable polynomial (or infinite)")):
        sp = sub.add_parser(verb, help=helptext)
        sp.add_argument("presentation", help="presentation file or corpus name")
        if verb == "multi":
            sp.add_argument("--full", action="store_true", help="print the full result record")

    sp = sub.add_parser("pencil", help="affine pencil test on component polynomials")
    sp.add_argument("polyfile")

    sp = sub.add_parser("union", help="predictions for a transversal union")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--verify", action="store_true", help="cross-check against direct computation")
    sp.add_argument("--left-irreducible", type=_bool)
    sp.add_argument("--right-pencil", type=_pencil_flag)
    sp.add_argument("--finiteness", type=_finiteness, help="n=FLAG,... for delta_n of the reducible side")

    sp = sub.add_parser("skew", help="certified reduction at level n")
    sp.add_argument("presentation")
    sp.add_argument("--level", type=int)
    sp.add_argument("--facts", help="facts file (or built-in name)")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--script", help="script file (or built-in name)")
    group.add_argument("--auto", action="store_true")
    sp.add_argument("--ledger", help="write the JSON ledger here")

    sp = sub.add_parser("replay", help="replay a skew ledger and compare")
    sp.add_argument("ledger")

    sp = sub.add_parser("examples", help="built-in corpus")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    return p


COMMANDS = {
    "multi": cmd_multi, "uni": cmd_uni, "delta0": cmd_delta0, "pencil": cmd_pencil,
    "union": cmd_union, "skew": cmd_skew, "replay": cmd_replay, "examples": cmd_examples,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except InputError as exc:
        print(f"alex: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation failures
        print(f"alex: computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
