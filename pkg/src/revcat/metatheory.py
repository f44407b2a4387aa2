"""Language metatheory as executable checks on generated programs."""

from __future__ import annotations

from itertools import islice
from typing import Iterable

from .evaluate import (
    Stuck, enumerate_closed_values, eval_term, invert_iso, matching_clauses, reduction_sequence,
)
from .generate import generate_programs
from .laws import LawReport
from .syntax import App, Program, Val, count_apps, expand_refs, print_term, print_value
from .typecheck import TypeCheckError, check_iso, check_term, infer_term_type


def check_metatheory(programs: Iterable[Program]) -> LawReport:
    """Subject reduction, the termination bound, determinism of matching and
    the inversion round trip, over every program given."""
    rep = LawReport("metatheory", "language")
    n = 0
    for p in programs:
        n += 1
        enums = p.enum_table()
        t = expand_refs(p.main, p.iso_table())
        a = infer_term_type(t)
        t = check_term(t, a, enums, "main")
        seq, _ = reduction_sequence(t)
        for s in seq[1:]:
            rep.cases += 1
            try:
                check_term(s, a, enums, "reduct")
                rep.holds("subject reduction", (print_term(s),), True)
            except TypeCheckError as e:
                rep.holds("subject reduction", (print_term(s), str(e)), False)
        rep.cases += 1
        rep.holds("steps <= applications", (print_term(t),), len(seq) - 1 <= count_apps(t))
        for name, iso in p.iso_table().items():
            inv = invert_iso(iso)
            try:
                check_iso(inv, iso.type.rhs, iso.type.lhs, enums, f"inverse of {name}")
                rep.holds("inverse is well typed at the flipped type", (name,), True)
            except TypeCheckError as e:
                rep.holds("inverse is well typed at the flipped type", (name, str(e)), False)
            rep.check("inversion is an involution", (name,), invert_iso(inv), iso)
            for v in enumerate_closed_values(iso.type.lhs, enums):
                rep.cases += 1
                rep.holds("at most one clause matches", (name, print_value(v, enums)),
                          len(matching_clauses(iso, v)) <= 1)
                w = eval_term(App(iso, Val(v)))
                if not isinstance(w, Stuck):
                    back = eval_term(App(inv, Val(w)))
                    rep.check("iso v ->* w => iso^-1 w ->* v", (name, print_value(v, enums)),
                              back, v)
            for w in enumerate_closed_values(iso.type.rhs, enums):
                rep.holds("at most one inverse clause matches", (name, print_value(w, enums)),
                          len(matching_clauses(inv, w)) <= 1)
    rep.notes.append(f"{n} programs")
    return rep


def check_generated(seed: int = 0, n: int = 500, **bounds) -> LawReport:
    return check_metatheory(islice(generate_programs(seed, **bounds), n))
