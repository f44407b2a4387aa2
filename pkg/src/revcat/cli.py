"""Command line entry point: ``revcat <subcommand> ...``.

Exit codes: 0 success (verdicts included), 1 parse or type errors, 2 a stuck
``run``, 3 a failing law suite, 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .category import CategoryError, NotEnumerable
from .denotation import DenotationError, default_env, denote_iso, denote_term
from .evaluate import Final, invert_iso, reduction_sequence
from .instances import make_model
from .laws import SUITES, LawReport, run_all
from .nondecomp import FLAVORS, Classifier, check_consistency, verify_theorem_bridge
from .syntax import (
    IsoDef, ParseError, Program, expand_refs, parse_program, print_isodef, print_term, print_value,
)
from .typecheck import TypeCheckError, check_program, check_term, infer_term_type

EXIT_OK, EXIT_ERROR, EXIT_STUCK, EXIT_LAWS, EXIT_USAGE = 0, 1, 2, 3, 64
RIG_MODELS = ("finpinj", "pids-oplus", "subpid")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(data, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _seed(args) -> int:
    env = os.environ.get("REVCAT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"REVCAT_SEED must be an integer, not {env!r}") from None
    return args.seed


def _load(path: str) -> Program:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_program(text)


def _model(name: str):
    try:
        return make_model(name)
    except CategoryError as e:
        raise UsageError(str(e)) from None


def _main_term(p: Program):
    if p.main is None:
        raise UsageError("the program has no main term")
    t = expand_refs(p.main, p.iso_table())
    return check_term(t, infer_term_type(t), p.enum_table(), "main")


def _select_defs(p: Program, name: str | None) -> list[IsoDef]:
    if name is None:
        return list(p.defs)
    return [p.get(name)]


# ---------------------------------------------------------------------------
# subcommands


def cmd_typecheck(args) -> int:
    p = _load(args.file)
    verdicts = check_program(p)
    data = [{"name": v.name, "ok": v.ok, "kind": v.error.kind if v.error else None,
             "message": str(v.error) if v.error else None} for v in verdicts]
    lines = [f"{v.name}: ok" if v.ok else f"{v.name}: {v.error}" for v in verdicts]
    _emit(data, args.format, "\n".join(lines) or "(empty program)")
    return EXIT_OK if all(v.ok for v in verdicts) else EXIT_ERROR


def cmd_run(args) -> int:
    p = _load(args.file)
    _check_all(p)
    t = _main_term(p)
    enums = p.enum_table()
    seq, out = reduction_sequence(t)
    if args.trace:
        for s in seq:
            print(print_term(s, enums))
    if isinstance(out, Final):
        _emit({"value": print_value(out.value, enums), "steps": len(seq) - 1}, args.format,
              print_value(out.value, enums))
        return EXIT_OK
    _emit({"stuck": print_term(out.at, enums), "steps": len(seq) - 1}, args.format,
          f"stuck: {print_term(out.at, enums)}")
    return EXIT_STUCK


def _check_all(p: Program) -> None:
    for v in check_program(p):
        if not v.ok:
            raise v.error


def cmd_invert(args) -> int:
    p = _load(args.file)
    _check_all(p)
    enums = p.enum_table()
    out = []
    for d in _select_defs(p, args.iso):
        inv = invert_iso(d.iso)
        out.append(print_isodef(IsoDef(f"{d.name}_inv", d.type.flipped(), inv), enums))
    print("\n\n".join(out))
    return EXIT_OK


def cmd_denote(args) -> int:
    p = _load(args.file)
    _check_all(p)
    C = _model(args.model)
    if args.model not in RIG_MODELS:
        raise UsageError(f"denotations need one of {', '.join(RIG_MODELS)}")
    env = default_env(C, p.enum_table())
    if args.iso is not None:
        d = p.get(args.iso)
        m = denote_iso(env, p.iso_table()[d.name])
    else:
        t = _main_term(p)
        m = denote_term(env, t, infer_term_type(t))
    data = C.to_json(m)
    _emit(data, args.format, json.dumps(data, sort_keys=True))
    return EXIT_OK


def _print_reports(reports: list[LawReport], C, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([r.to_json(C) for r in reports], indent=2, sort_keys=True))
        return
    for r in reports:
        print(r.summary())
        for f in r.failures[:5]:
            shown = r.to_json(C)["failures"][r.failures.index(f)]
            print(f"    {f.equation}: inputs={shown['inputs']} lhs={shown['lhs']} "
                  f"rhs={shown['rhs']}")
        for note in r.notes:
            print(f"    note: {note}")


def cmd_check_laws(args) -> int:
    C = _model(args.model)
    suites = args.suite or None
    for s in suites or []:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    reports = run_all(C, seed=_seed(args), cases=args.cases, suites=suites)
    _print_reports(reports, C, args.format)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_LAWS


def _parse_object(C, text):
    try:
        return C.parse_object(text)
    except (CategoryError, ParseError, ValueError) as e:
        raise UsageError(f"bad object {text!r}: {e}") from None


def cmd_classify(args) -> int:
    C = _model(args.model)
    clf = Classifier(C, objects=[])
    if args.morphism is not None:
        try:
            morphisms = [C.from_json(json.loads(args.morphism))]
        except (ValueError, KeyError, TypeError, CategoryError) as e:
            raise UsageError(f"bad morphism JSON: {e}") from None
    else:
        if args.object is None:
            raise UsageError("give --object or --morphism")
        a = _parse_object(C, args.object)
        b = a if args.target is None else _parse_object(C, args.target)
        morphisms = clf.hom(a, b)
    rows = []
    for m in morphisms:
        k = clf.classify(m)
        rows.append({"morphism": C.to_json(m), "snd": k.snd, "lnd": k.lnd, "wnd": k.wnd})
    text = "\n".join(f"{C.show(m):<40} snd={r['snd']!s:<5} lnd={r['lnd']!s:<5} wnd={r['wnd']}"
                     for m, r in zip(morphisms, rows))
    _emit(rows, args.format, text)
    return EXIT_OK


def cmd_check_consistency(args) -> int:
    C = _model(args.model)
    clf = Classifier(C)
    flavors = FLAVORS if args.flavor == "all" else (args.flavor,)
    data, lines = [], []
    for flavor in flavors:
        rep = check_consistency(C, flavor, clf)
        cx = None
        if rep.counterexample is not None:
            cx = {k: C.to_json(v) for k, v in rep.counterexample.items()}
        data.append({"flavor": flavor, "verdict": rep.verdict, "counterexample": cx,
                     "checked": rep.checked})
        line = f"{flavor}: {str(rep.verdict).lower()}"
        if cx is not None:
            shown = ", ".join(f"{k} = {C.show(v)}" for k, v in rep.counterexample.items())
            line += f"  counterexample: {shown}"
        lines.append(line)
    if args.bridge:
        bridge = verify_theorem_bridge(C, clf)
        data.append(bridge.to_json(C))
        lines.append(bridge.summary())
    _emit(data, args.format, "\n".join(lines))
    return EXIT_OK


def cmd_check_metatheory(args) -> int:
    from .metatheory import check_generated
    rep = check_generated(_seed(args), args.cases, max_clauses=args.max_clauses,
                          max_pattern_depth=args.max_pattern_depth)
    _print_reports([rep], None, args.format)
    return EXIT_OK if rep.ok else EXIT_LAWS


def cmd_check_soundness(args) -> int:
    from .soundness import check_soundness, generated_samples
    C = _model(args.model)
    if args.model not in RIG_MODELS:
        raise UsageError(f"soundness needs one of {', '.join(RIG_MODELS)}")
    samples = generated_samples(_seed(args), args.cases)
    reports = list(check_soundness(C, samples))
    _print_reports(reports, C, args.format)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_LAWS


def cmd_check_adequacy(args) -> int:
    from .soundness import check_adequacy
    C = _model(args.model)
    if args.model not in RIG_MODELS:
        raise UsageError(f"adequacy needs one of {', '.join(RIG_MODELS)}")
    one = C.unit_obj()
    lnd = Classifier(C, objects=[]).classify(C.identity(one)).lnd
    res = check_adequacy(C, max_size=args.max_size, max_values=args.max_values)
    rep = res.report
    if not lnd:
        rep.notes.append("report only: id_1 is not linearly non-decomposable in this model")
    _print_reports([rep], C, args.format)
    return EXIT_OK if rep.ok or not lnd else EXIT_LAWS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="revcat", description="Reversible pattern matching and "
                     "join inverse categories at finite scale.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("typecheck", cmd_typecheck, "type check every definition and main")
    p.add_argument("file")
    p = add("run", cmd_run, "evaluate main")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print every reduction step")
    p = add("invert", cmd_invert, "print the syntactic inverses of isos")
    p.add_argument("file")
    p.add_argument("--iso")
    p = add("denote", cmd_denote, "print the denotation of an iso or of main as JSON")
    p.add_argument("file")
    p.add_argument("--model", default="finpinj")
    p.add_argument("--iso")
    p = add("check-laws", cmd_check_laws, "run the law suites on an instance")
    p.add_argument("--model", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--suite", action="append", help="restrict to a suite (repeatable)")
    p = add("classify", cmd_classify, "classify morphisms as snd/lnd/wnd")
    p.add_argument("--model", required=True)
    p.add_argument("--object")
    p.add_argument("--target")
    p.add_argument("--morphism", help="a morphism in the model's JSON form")
    p = add("check-consistency", cmd_check_consistency, "decide weak/linear/strong consistency")
    p.add_argument("--model", required=True)
    p.add_argument("--flavor", choices=FLAVORS + ("all",), default="all")
    p.add_argument("--bridge", action="store_true",
                   help="also check consistency against the pattern-matching property")
    p = add("check-metatheory", cmd_check_metatheory, "language metatheory on generated programs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=500)
    p.add_argument("--max-clauses", type=int, default=4)
    p.add_argument("--max-pattern-depth", type=int, default=3)
    p = add("check-soundness", cmd_check_soundness, "soundness on generated programs")
    p.add_argument("--model", default="finpinj")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=500)
    p = add("check-adequacy", cmd_check_adequacy, "adequacy on the minimal language")
    p.add_argument("--model", default="subpid")
    p.add_argument("--max-size", type=int, default=7)
    p.add_argument("--max-values", type=int, default=4)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as e:
        print(f"revcat: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except TypeCheckError as e:
        print(f"type error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except KeyError as e:
        print(f"revcat: unknown name {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NotEnumerable, DenotationError) as e:
        print(f"revcat: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
