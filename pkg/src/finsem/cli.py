"""Command line interface over model files.

Exit codes: 0 success, 1 violated precondition (one-line diagnostic on
stderr), 2 unreadable or malformed input. All stdout is deterministic for a
given input file and arguments.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from typing import Optional, Sequence

from . import kripke, morphisms
from .denote import (
    ModeError,
    PresuppositionFailure,
    Term,
    TermTypeError,
    UnboundVariable,
    eval_ext,
    eval_int,
    has_modal,
    parse_term,
    render_term,
)
from .fragment import AmbiguousParse, NoParse, UnknownWord, eval_sentence
from .kripke import UnknownElement
from .modelfile import ModelFile, ModelFileError, dump_model_file, load_model_file
from .morphisms import AlreadyTrivial, NotFullyTrivial, TrivializeFrame
from .relalg import (
    PROPERTY_NAMES,
    EndpointMismatch,
    NotEndorelation,
    NotJointlyMonic,
    check_property,
)
from .semmodel import (
    Assignment,
    DomainTooLarge,
    Index,
    Model,
    UngroundedType,
    UnknownEntity,
    UnknownFrame,
    UnknownIndex,
    Value,
    render_value,
    the_index,
)

PRECONDITION_ERRORS = (
    EndpointMismatch,
    NotEndorelation,
    NotJointlyMonic,
    UnknownElement,
    UnknownEntity,
    UnknownFrame,
    UnknownIndex,
    DomainTooLarge,
    UngroundedType,
    TermTypeError,
    UnboundVariable,
    PresuppositionFailure,
    ModeError,
    AlreadyTrivial,
    NotFullyTrivial,
    UnknownWord,
    NoParse,
    AmbiguousParse,
)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _parse_index(m: Model, text: str) -> Index:
    parts = text.split(",") if text else []
    labels = [f.label for f in m.frames]
    if len(parts) != len(labels):
        raise UnknownIndex(
            f"index needs {len(labels)} components ({','.join(labels)}), got {len(parts)}"
        )
    return Index(tuple(zip(labels, parts)))


def _parse_assignment(pairs: Optional[Sequence[str]]) -> Assignment:
    bindings = []
    for p in pairs or []:
        if "=" not in p:
            raise UnknownEntity(f"assignment {p!r} must look like x=entity")
        var, _, ent = p.partition("=")
        bindings.append((var, ent))
    return Assignment(tuple(bindings))


def _evaluate(m: Model, term: Term, g: Assignment, s: Optional[Index]) -> Value:
    if s is not None:
        return eval_int(term, m, g, s)
    if not m.frames:
        return eval_ext(term, m, g)
    if m.is_extensional:
        return eval_int(term, m, g, the_index(m))
    raise UnknownIndex("model has a nontrivial frame; pass --index")


# ---------------------------------------------------------------------------
# subcommands


def cmd_check_rel(mf: ModelFile, args: argparse.Namespace) -> int:
    props = [args.prop] if args.prop else list(PROPERTY_NAMES)
    for frame in mf.model.frames:
        for prop in props:
            held = check_property(frame.rel, prop)
            print(f"frame {frame.label} {prop} {_bool(held)}")
    return 0


def cmd_check_map(mf: ModelFile, args: argparse.Namespace) -> int:
    for frame in mf.model.frames:
        if frame.trivial:
            print(f"frame {frame.label} already trivial")
            continue
        designated = mf.model.designated_for(frame.label)
        collapse = kripke.trivialize(frame, designated)
        fm = collapse.map
        print(
            f"frame {frame.label} designated {designated} "
            f"monotone {_bool(kripke.is_monotone(fm))} "
            f"forth {_bool(kripke.forth_holds(fm))} "
            f"back {_bool(kripke.back_holds(fm))} "
            f"bounded {_bool(kripke.is_bounded(fm))} "
            f"surjective {_bool(kripke.is_surjective(fm))}"
        )
    return 0


def cmd_eval(mf: ModelFile, args: argparse.Namespace) -> int:
    names = frozenset(c.name for c in mf.model.constants)
    try:
        term = parse_term(args.term, names)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    g = _parse_assignment(args.assign)
    s = _parse_index(mf.model, args.index) if args.index is not None else None
    value = _evaluate(mf.model, term, g, s)
    print(render_value(value, mf.model))
    return 0


def cmd_sentence(mf: ModelFile, args: argparse.Namespace) -> int:
    s = _parse_index(mf.model, args.index) if args.index is not None else None
    result = eval_sentence(args.text, mf.model, mf.lexicon, Assignment(), s)
    print(f"tree: {result.tree.render()}")
    print(f"term: {render_term(result.term)}")
    for line in result.trace:
        print(line)
    print(f"value: {render_value(result.value, mf.model)}")
    return 0


def cmd_trivialize(mf: ModelFile, args: argparse.Namespace) -> int:
    transformed = morphisms.apply(
        mf.model, TrivializeFrame(args.frame, args.designate)
    )
    text = dump_model_file(ModelFile(transformed, mf.lexicon, mf.terms))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify_theorem(mf: ModelFile, args: argparse.Namespace) -> int:
    collapsed = morphisms.trivialize_all(mf.model)
    terms, assignments = morphisms.default_checks(collapsed)
    for name in sorted(mf.terms):
        if has_modal(mf.terms[name]):
            print(f"skipped (modal): {name}")
        else:
            terms.append(mf.terms[name])
    report = morphisms.verify_equivalence(collapsed, terms, assignments)
    for line in report.summary_lines():
        print(line)
    return 0 if not report.mismatches else 1


def cmd_square(mf: ModelFile, args: argparse.Namespace) -> int:
    labels = args.frames.split(",")
    if len(labels) < 2:
        raise UnknownFrame("need at least two frame labels")
    results = []
    for perm in itertools.permutations(labels):
        path = tuple(TrivializeFrame(label) for label in perm)
        results.append(morphisms.compose_path(mf.model, path))
    commutes = all(r == results[0] for r in results)
    print(f"commutes: {_bool(commutes)}")
    return 0


def cmd_diagram(mf: ModelFile, args: argparse.Namespace) -> int:
    sys.stdout.write(morphisms.diagram_export(mf.model))
    return 0


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finsem", description="finite-model semantics toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-rel", help="frame relation property report")
    p.add_argument("model")
    p.add_argument("--prop", choices=PROPERTY_NAMES)
    p.set_defaults(handler=cmd_check_rel)

    p = sub.add_parser("check-map", help="collapse-map monotone/bounded report")
    p.add_argument("model")
    p.set_defaults(handler=cmd_check_map)

    p = sub.add_parser("eval", help="evaluate a term")
    p.add_argument("model")
    p.add_argument("--term", required=True)
    p.add_argument("--index")
    p.add_argument("--assign", action="append", metavar="VAR=ENTITY")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("sentence", help="parse and evaluate a sentence")
    p.add_argument("model")
    p.add_argument("--text", required=True)
    p.add_argument("--index")
    p.set_defaults(handler=cmd_sentence)

    p = sub.add_parser("trivialize", help="collapse one frame and write the model")
    p.add_argument("model")
    p.add_argument("--frame", required=True)
    p.add_argument("--designate")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_trivialize)

    p = sub.add_parser(
        "verify-theorem",
        help="collapse all frames and check both evaluators agree on every term",
    )
    p.add_argument("model")
    p.set_defaults(handler=cmd_verify_theorem)

    p = sub.add_parser("square", help="check collapse order does not matter")
    p.add_argument("model")
    p.add_argument("--frames", required=True, metavar="L1,L2[,...]")
    p.set_defaults(handler=cmd_square)

    p = sub.add_parser("diagram", help="emit the collapse hypercube as node/edge lines")
    p.add_argument("model")
    p.set_defaults(handler=cmd_diagram)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        mf = load_model_file(args.model)
    except ModelFileError as err:
        for problem in err.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        return args.handler(mf, args)
    except PRECONDITION_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
