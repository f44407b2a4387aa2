"""Semantic harness: the denotation against the operational semantics.

* orthogonal patterns denote morphisms with disjoint images;
* reduction preserves denotations (every step, and start to finish);
* the substitution identity ``[[s(v')]] = [[v']] . [[v]]° . [[w]]`` at every
  firing, together with its consequence that an iso applied to a value
  denotes the firing clause alone;
* adequacy on the minimal language: two closed terms are operationally
  equivalent iff they have the same denotation;
* closed values of the minimal language are non-decomposable whenever
  ``id_1`` is.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable

from .category import range_disjoint
from .denotation import (
    DenotationEnv, clause_morphisms, default_env, denote_iso, denote_term, denote_value,
)
from .evaluate import Final, Stuck, enumerate_closed_values, fire, reduction_sequence, substitute
from .generate import all_patterns, enumerate_terms, generate_programs, minimal_types
from .laws import LawReport
from .models import LabelSetCategory
from .nondecomp import FLAVORS, Classifier
from .syntax import (
    BUILTIN_ENUMS, App, EnumRef, Iso, Program, Prod, Sum, Term, ValueType, expand_refs,
    print_term, print_value,
)
from .typecheck import check_orthogonal, check_term, infer_pattern_context, infer_term_type


@dataclass
class Sample:
    program: Program
    term: Term
    type: ValueType


def generated_samples(seed: int = 0, n: int = 500, **bounds) -> list[Sample]:
    """``n`` generated closed terms, expanded and elaborated."""
    out = []
    for p in islice(generate_programs(seed, **bounds), n):
        t = expand_refs(p.main, p.iso_table())
        a = infer_term_type(t)
        out.append(Sample(p, check_term(t, a, p.enum_table()), a))
    return out


def small_types(max_values: int = 8, enums=None) -> list[ValueType]:
    """Types over unit and the generator enums with at most ``max_values`` values."""
    enums = dict(BUILTIN_ENUMS) if enums is None else dict(enums)
    atoms = [EnumRef(n) for n in enums]
    seen: list[ValueType] = []
    layer = list(atoms)
    for _ in range(3):
        seen += [a for a in layer if a not in seen]
        layer = [c(l, r) for l in seen for r in seen for c in (Sum, Prod)]
        layer = [a for a in layer if len(enumerate_closed_values(a, enums)) <= max_values]
    return [a for a in seen if len(enumerate_closed_values(a, enums)) <= max_values]


def check_orthogonality_lemma(env: DenotationEnv, types: Iterable[ValueType]) -> LawReport:
    C = env.C
    rep = LawReport("orthogonality", C.name)
    overlapping = 0
    for a in types:
        pats = all_patterns(a, env.enums)
        dens = [denote_value(env, infer_pattern_context(p, a, env.enums), p, a) for p in pats]
        for (p, f), (q, g) in combinations(zip(pats, dens), 2):
            if check_orthogonal(p, q):
                rep.cases += 1
                rep.holds("orthogonal patterns have disjoint images",
                          (print_value(p), print_value(q)), range_disjoint(C, f, g))
        for p, f in zip(pats, dens):
            rep.holds("a pattern overlaps itself", (print_value(p),), not range_disjoint(C, f, f))
            overlapping += 1
    rep.notes.append(f"{overlapping} self-pairs confirmed overlapping (negative control)")
    return rep


def _redex(t: Term):
    """The innermost application ``iso v`` of a non-value term."""
    while isinstance(t.arg, App):
        t = t.arg
    return t.iso, t.arg.value


def check_soundness(C: LabelSetCategory, samples: list[Sample]) -> tuple[LawReport, LawReport]:
    """Soundness of every reduction step, plus the substitution identities at
    every clause firing; returns ``(soundness, substitution)`` reports."""
    sound = LawReport("soundness", C.name)
    subst = LawReport("substitution", C.name)
    for s in samples:
        env = default_env(C, s.program.enum_table())
        seq, out = reduction_sequence(s.term)
        dens = [denote_term(env, t, s.type) for t in seq]
        for t, u, dt, du in zip(seq, seq[1:], dens, dens[1:]):
            sound.cases += 1
            sound.check("t -> t' => [[t]] = [[t']]", (print_term(t), print_term(u)), dt, du)
        if len(seq) > 1:
            sound.check("t ->* t' => [[t]] = [[t']]", (print_term(seq[0]), print_term(seq[-1])),
                        dens[0], dens[-1])
        if isinstance(out, Stuck):
            one = C.unit_obj()
            sound.check("stuck terms denote 0", (print_term(out.at),), dens[-1],
                        C.zero(one, C.cod(dens[-1])))
        for t in seq[:-1]:
            _check_firing(env, subst, *_redex(t))
        if isinstance(out, Stuck):
            _check_firing(env, subst, *_redex(out.at))
    return sound, subst


def _check_firing(env: DenotationEnv, rep: LawReport, iso: Iso, w) -> None:
    C = env.C
    T = iso.type
    dw = denote_value(env, {}, w, T.lhs)
    lhs = C.compose(denote_iso(env, iso), dw)
    hit = fire(iso, w)
    if hit is None:
        rep.check("no clause matches => [[iso]] . [[w]] = 0", (print_value(w),), lhs,
                  C.zero(C.unit_obj(), C.cod(lhs)))
        return
    i, sigma, result = hit
    p, q = iso.clauses[i]
    composite = C.compose(clause_morphisms(env, iso)[i], dw)
    rep.cases += 1
    rep.check("[[s(v'_i)]] = [[v'_i]] . [[v_i]]° . [[w]]", (print_value(p), print_value(w)),
              denote_value(env, {}, substitute(sigma, q), T.rhs), composite)
    rep.check("[[iso]] . [[w]] = [[v'_i]] . [[v_i]]° . [[w]]", (print_value(w),), lhs, composite)


# ---------------------------------------------------------------------------
# adequacy


@dataclass
class AdequacyResult:
    report: LawReport
    terms: int
    strict_deviations: int
    stuck_pairs: int


def check_adequacy(C: LabelSetCategory, max_size: int = 7, max_values: int = 4,
                   max_type_size: int = 7) -> AdequacyResult:
    """Operational equivalence against equality of denotations, exhaustively.

    Two stuck terms count as equivalent (both denote 0); the pairs on which
    the strict notion (both reach the same value) differs are counted.
    """
    env = default_env(C)
    rep = LawReport("adequacy", C.name)
    types = minimal_types(max_type_size, max_values)
    terms_by_type = enumerate_terms(types, max_size)
    total = strict_dev = stuck_pairs = 0
    for a, terms in terms_by_type.items():
        op_of: dict = {}
        den_of: dict = {}
        for t in terms:
            _, out = reduction_sequence(t)
            op = ("value", out.value) if isinstance(out, Final) else ("stuck",)
            d = denote_term(env, t, a)
            op_of.setdefault(op, {}).setdefault(d, []).append(t)
            den_of.setdefault(d, {}).setdefault(op, []).append(t)
            total += 1
        rep.cases += len(terms) * (len(terms) - 1) // 2
        for op, by_den in op_of.items():
            if len(by_den) > 1:
                ds = list(by_den.values())
                rep.failures.append(_adequacy_failure(
                    "equivalent terms with different denotations", ds[0][0], ds[1][0]))
        for d, by_op in den_of.items():
            if len(by_op) > 1:
                ts = list(by_op.values())
                rep.failures.append(_adequacy_failure(
                    "equal denotations for inequivalent terms", ts[0][0], ts[1][0]))
        n_stuck = sum(len(ts) for ts in op_of.get(("stuck",), {}).values())
        stuck_pairs += n_stuck * (n_stuck - 1) // 2
        # strict equivalence only relates terms reaching a value, so it departs
        # from equality of denotations exactly on pairs of equal denotation
        # that are not both values
        for d, by_op in den_of.items():
            k = sum(len(ts) for op, ts in by_op.items() if op == ("stuck",))
            strict_dev += k * (k - 1) // 2
    rep.notes.append(f"{total} terms over {len(types)} types, size <= {max_size}")
    rep.notes.append(f"strict equivalence deviates on {strict_dev} pairs; "
                     f"{stuck_pairs} pairs are stuck/stuck")
    return AdequacyResult(rep, total, strict_dev, stuck_pairs)


def _adequacy_failure(what, t1, t2):
    from .laws import Failure
    return Failure(what, (print_term(t1), print_term(t2)), print_term(t1), print_term(t2))


# ---------------------------------------------------------------------------
# closed values


def check_value_nondecomposability(C: LabelSetCategory, types: Iterable[ValueType] | None = None,
                                   clf: Classifier | None = None) -> LawReport:
    env = default_env(C)
    clf = Classifier(C, objects=[]) if clf is None else clf
    rep = LawReport("value-nondecomposability", C.name)
    one = C.unit_obj()
    k = clf.classify(C.identity(one))
    flavors = [f for f in FLAVORS if k.flavor(f)]
    rep.notes.append(f"id_1: snd={k.snd} lnd={k.lnd} wnd={k.wnd}")
    if not flavors:
        rep.precondition_unmet = "id_1 is not weakly non-decomposable"
        rep.notes.append("precondition unmet: id_1 is not weakly non-decomposable")
        return rep
    types = minimal_types(7, 4) if types is None else list(types)
    for a in types:
        for v in enumerate_closed_values(a):
            rep.cases += 1
            kv = clf.classify(denote_value(env, {}, v, a))
            for flavor in flavors:
                rep.holds(f"closed values are {flavor}ly non-decomposable",
                          (print_value(v),), kv.flavor(flavor))
    return rep
