"""Executable axiom suites for join inverse (rig) categories.

Each ``check_*`` function draws its cases from a :class:`Sampler` and returns
a :class:`LawReport`; a law is violated exactly when the report has failures.
Samplers enumerate everything on hom-enumerable instances and otherwise draw
seeded random cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Iterator

from .category import (
    CategoryError, IncompatibleJoin, InverseCategory, RigStructure, disjoint, inverse_compatible,
    is_total, is_total_iso, leq, range_disjoint, restriction_compatible,
)

DEFAULT_CASES = 1000


@dataclass
class Failure:
    equation: str
    inputs: tuple
    lhs: Any
    rhs: Any


@dataclass
class LawReport:
    law: str
    instance: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    skipped: int = 0
    precondition_unmet: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return f"FAIL ({len(self.failures)})"
        return "PRECONDITION UNMET" if self.precondition_unmet else "PASS"

    def check(self, equation: str, inputs: tuple, lhs, rhs) -> bool:
        if lhs != rhs:
            self.failures.append(Failure(equation, inputs, lhs, rhs))
            return False
        return True

    def holds(self, equation: str, inputs: tuple, verdict: bool) -> bool:
        return self.check(equation, inputs, verdict, True)

    def to_json(self, C: InverseCategory | None = None) -> dict:
        show = (lambda m: m) if C is None else (lambda m: _render(C, m))
        return {
            "law": self.law,
            "instance": self.instance,
            "cases": self.cases,
            "pass": self.ok,
            "status": self.status,
            "failures": [{"equation": f.equation, "inputs": [show(x) for x in f.inputs],
                          "lhs": show(f.lhs), "rhs": show(f.rhs)} for f in self.failures],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        return f"{self.law:<28} {self.instance:<16} {self.cases:>7} cases  {self.status}"


def _render(C, m):
    if isinstance(m, (bool, int, str)) or m is None:
        return m
    try:
        return C.show(m)
    except Exception:
        return repr(m)


class Sampler:
    """Cases for law checks: exhaustive over ``C.objects()`` or seeded random."""

    def __init__(self, C: InverseCategory, seed: int = 0, cases: int = DEFAULT_CASES,
                 exhaustive: bool | None = None):
        self.C = C
        self.seed = seed
        self.cases = cases
        self.exhaustive = getattr(C, "exhaustive", False) if exhaustive is None else exhaustive
        if self.exhaustive:
            self.objs = C.objects()
            self.homs = {(a, b): C.hom(a, b) for a, b in product(self.objs, repeat=2)}

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def _obj(self, rng):
        return self.C.random_object(rng)

    def _mor(self, rng, a, b):
        return self.C.random_morphism(rng, a, b)

    # shapes

    def morphisms(self) -> Iterator:
        if self.exhaustive:
            for hom in self.homs.values():
                yield from hom
            return
        rng = self.rng("morphisms")
        for _ in range(self.cases):
            yield self._mor(rng, self._obj(rng), self._obj(rng))

    def paths(self, n: int, salt: str = "") -> Iterator[tuple]:
        """Composable ``(f1, ..., fn)`` with ``f_{i+1}`` after ``f_i``."""
        if self.exhaustive:
            for objs in product(self.objs, repeat=n + 1):
                homs = [self.homs[(objs[i], objs[i + 1])] for i in range(n)]
                yield from product(*homs)
            return
        rng = self.rng(f"paths{n}{salt}")
        for _ in range(self.cases):
            objs = [self._obj(rng) for _ in range(n + 1)]
            yield tuple(self._mor(rng, objs[i], objs[i + 1]) for i in range(n))

    def spans(self) -> Iterator[tuple]:
        """Pairs ``f: A -> B``, ``g: A -> C`` sharing a source."""
        if self.exhaustive:
            for a, b, c in product(self.objs, repeat=3):
                yield from product(self.homs[(a, b)], self.homs[(a, c)])
            return
        rng = self.rng("spans")
        for _ in range(self.cases):
            a, b = self._obj(rng), self._obj(rng)
            c = b if rng.random() < 0.5 else self._obj(rng)
            yield self._mor(rng, a, b), self._mor(rng, a, c)

    def parallel(self) -> Iterator[tuple]:
        if self.exhaustive:
            for hom in self.homs.values():
                yield from product(hom, repeat=2)
            return
        rng = self.rng("parallel")
        for _ in range(self.cases):
            a, b = self._obj(rng), self._obj(rng)
            f = self._mor(rng, a, b)
            if rng.random() < 0.5:
                yield f, self._mor(rng, a, b)
            else:
                yield f, self._below(rng, f)

    def _below(self, rng, f):
        a = self.C.dom(f)
        return self.C.compose(f, self.C.restriction(self._mor(rng, a, a)))

    def compatible_families(self) -> Iterator[tuple]:
        """``(family, a, b, bounds)``: pairwise compatible parallel families and
        candidate upper bounds to test leastness against."""
        C = self.C
        if self.exhaustive:
            for (a, b), hom in self.homs.items():
                yield [], a, b, hom
                for f in hom:
                    yield [f], a, b, hom
                for f, g in combinations(hom, 2):
                    if inverse_compatible(C, f, g):
                        yield [f, g], a, b, hom
            return
        rng = self.rng("families")
        for _ in range(self.cases):
            a, b = self._obj(rng), self._obj(rng)
            m = self._mor(rng, a, b)
            family = [self._below(rng, m) for _ in range(rng.randint(0, 3))]
            bounds = [m] + [self._mor(rng, a, b) for _ in range(3)]
            yield family, a, b, bounds

    def out_of(self, b, rng) -> list:
        if self.exhaustive:
            return [g for c in self.objs for g in self.homs[(b, c)]]
        return [self._mor(rng, b, self._obj(rng)) for _ in range(2)]

    def into(self, a, rng) -> list:
        if self.exhaustive:
            return [h for d in self.objs for h in self.homs[(d, a)]]
        return [self._mor(rng, self._obj(rng), a) for _ in range(2)]

    def disjoint_pairs(self, n: int | None = None) -> Iterator[tuple]:
        """Seeded pairs ``f1: A -> B1``, ``f2: A -> B2`` with disjoint domains."""
        C = self.C
        rng = self.rng("disjoint")
        for _ in range(self.cases if n is None else n):
            a = self._obj(rng)
            b1 = self._obj(rng)
            b2 = b1 if rng.random() < 0.5 else self._obj(rng)
            if hasattr(C, "random_disjoint_pair"):
                yield C.random_disjoint_pair(rng, a, b1, b2)
                continue
            for _ in range(50):
                f1, f2 = self._mor(rng, a, b1), self._mor(rng, a, b2)
                if disjoint(C, f1, f2):
                    break
            else:
                f1, f2 = self._mor(rng, a, b1), C.zero(a, b2)
            yield f1, f2


# ---------------------------------------------------------------------------
# suites


def check_restriction_axioms(C: InverseCategory, S: Sampler) -> LawReport:
    r, o = C.restriction, C.compose
    rep = LawReport("restriction", C.name)
    for f in S.morphisms():
        rep.cases += 1
        rep.check("f.rf = f", (f,), o(f, r(f)), f)
    for f, g in S.spans():
        rep.cases += 1
        rep.check("rf.rg = rg.rf", (f, g), o(r(f), r(g)), o(r(g), r(f)))
        rep.check("r(f.rg) = rf.rg", (f, g), r(o(f, r(g))), o(r(f), r(g)))
    literal_checked = literal_failed = 0
    for f, h in S.paths(2, "eq5"):
        rep.cases += 1
        hf = o(r(h), f)
        rep.check("rh.f = f.r(rh.f)", (f, h), hf, o(f, r(hf)))
        if C.dom(f) == C.cod(f):
            literal_checked += 1
            literal_failed += r(hf) != o(f, r(hf))
    rep.notes.append(
        "alternative reading r(rh.f) = f.r(rh.f), typeable only for endomorphisms: "
        f"{literal_checked - literal_failed}/{literal_checked} endomorphism cases hold")
    return rep


def check_inverse_axioms(C: InverseCategory, S: Sampler) -> LawReport:
    r, o, inv = C.restriction, C.compose, C.inverse
    rep = LawReport("inverse", C.name)
    for f in S.morphisms():
        rep.cases += 1
        fi = inv(f)
        rep.check("f°.f = rf", (f,), o(fi, f), r(f))
        rep.check("f.f° = r(f°)", (f,), o(f, fi), r(fi))
        rep.check("f°° = f", (f,), inv(fi), f)
        if S.exhaustive:
            others = [g for g in C.hom(C.cod(f), C.dom(f))
                      if g != fi and o(g, f) == r(f) and o(f, g) == r(g)]
            rep.check("uniqueness of f°", (f,), others, [])
    for a in (S.objs if S.exhaustive else [C.random_object(S.rng("id")) for _ in range(20)]):
        rep.cases += 1
        rep.check("id° = id", (a,), inv(C.identity(a)), C.identity(a))
    return rep


def check_join_axioms(C: InverseCategory, S: Sampler) -> LawReport:
    r, o = C.restriction, C.compose
    rep = LawReport("join", C.name)
    rng = S.rng("join-context")
    for family, a, b, bounds in S.compatible_families():
        rep.cases += 1
        j = C.join(family, a, b)
        ins = tuple(family)
        if not family:
            rep.check("empty join = 0", (a, b), j, C.zero(a, b))
        for s in family:
            rep.holds("s <= join S", ins + (s,), leq(C, s, j))
        for t in bounds:
            if all(leq(C, s, t) for s in family):
                rep.holds("join S <= t for every upper bound t", ins + (t,), leq(C, j, t))
        rep.check("r(join S) = join r(s)", ins, r(j), C.join([r(s) for s in family], a, a))
        for g in S.out_of(b, rng):
            rep.check("g.join S = join g.s", ins + (g,), o(g, j),
                      C.join([o(g, s) for s in family], a, C.cod(g)))
        for h in S.into(a, rng):
            rep.check("(join S).h = join s.h", ins + (h,), o(j, h),
                      C.join([o(s, h) for s in family], C.dom(h), b))
    rejected = tried = 0
    for f, g in S.parallel():
        if not inverse_compatible(C, f, g):
            tried += 1
            try:
                C.join([f, g])
            except IncompatibleJoin:
                rejected += 1
    rep.check("incompatible families are rejected", (), rejected, tried)
    rep.notes.append(f"{tried} incompatible pairs offered to join, {rejected} rejected")
    return rep


def check_zero_laws(C: InverseCategory, S: Sampler) -> LawReport:
    o = C.compose
    rep = LawReport("zero", C.name)
    for f, g in S.paths(2, "zero"):
        rep.cases += 1
        a, b, c = C.dom(f), C.cod(f), C.cod(g)
        rep.check("g.0 = 0", (g,), o(g, C.zero(a, b)), C.zero(a, c))
        rep.check("0.f = 0", (f,), o(C.zero(b, c), f), C.zero(a, c))
        rep.check("0° swaps indices", (a, b), C.inverse(C.zero(a, b)), C.zero(b, a))
        rep.check("r(0_AB) = 0_AA", (a, b), C.restriction(C.zero(a, b)), C.zero(a, a))
        rep.check("0.0 = 0", (a, b, c), o(C.zero(b, c), C.zero(a, b)), C.zero(a, c))
    return rep


def check_partial_order(C: InverseCategory, S: Sampler) -> LawReport:
    rep = LawReport("order", C.name)
    for f in S.morphisms():
        rep.cases += 1
        rep.holds("reflexive", (f,), leq(C, f, f))
    for f, g in S.parallel():
        rep.cases += 1
        if leq(C, f, g) and leq(C, g, f):
            rep.check("antisymmetric", (f, g), f, g)
    if S.exhaustive:
        for hom in S.homs.values():
            below = {(f, g) for f, g in product(hom, repeat=2) if leq(C, f, g)}
            for f, g, h in product(hom, repeat=3):
                if (f, g) in below and (g, h) in below:
                    rep.cases += 1
                    rep.holds("transitive", (f, g, h), (f, h) in below)
    else:
        rng = S.rng("transitive")
        for f, _ in zip(S.morphisms(), range(S.cases)):
            g = S._below(rng, f)
            h = S._below(rng, g)
            rep.cases += 1
            rep.holds("transitive", (h, g, f), leq(C, h, f))
    return rep


def check_order_composition(C: InverseCategory, S: Sampler) -> LawReport:
    rep = LawReport("order-composition", C.name)
    rng = S.rng("order-composition")
    for f, g in S.parallel():
        if not leq(C, f, g):
            continue
        rep.cases += 1
        for h in S.out_of(C.cod(f), rng):
            rep.holds("f <= g => hf <= hg", (f, g, h), leq(C, C.compose(h, f), C.compose(h, g)))
        for h in S.into(C.dom(f), rng):
            rep.holds("f <= g => fh <= gh", (f, g, h), leq(C, C.compose(f, h), C.compose(g, h)))
    return rep


def check_rig_structure(C: InverseCategory, S: Sampler, cases: int | None = None) -> LawReport:
    rep = LawReport("rig", C.name)
    if not isinstance(C, RigStructure):
        rep.notes.append("instance has no tensor structure; nothing to check")
        return rep
    n = S.cases if cases is None else cases
    rng = S.rng("rig")
    obj = (lambda: rng.choice(S.objs)) if S.exhaustive else (lambda: C.random_object(rng))
    mor = C.random_morphism
    o, r = C.compose, C.restriction
    for _ in range(n):
        rep.cases += 1
        a, b, c, d = obj(), obj(), obj(), obj()
        il, ir = C.inj_left(a, b), C.inj_right(a, b)
        rep.holds("injections are total", (a, b), is_total(C, il) and is_total(C, ir))
        rep.holds("injections have disjoint images", (a, b), range_disjoint(C, il, ir))
        for label, iso in C.structural_isos(a, b, c):
            rep.holds(f"{label} is a total iso", (a, b, c), is_total_iso(C, iso))
        f, g = mor(rng, a, b), mor(rng, c, d)
        for name, op in (("tensor", C.tensor), ("sum", C.sum)):
            rep.check(f"{name} preserves restriction", (f, g), r(op(f, g)), op(r(f), r(g)))
            rep.check(f"{name} preserves inverse", (f, g), C.inverse(op(f, g)),
                      op(C.inverse(f), C.inverse(g)))
            rep.check(f"{name} preserves identities", (a, c), op(C.identity(a), C.identity(c)),
                      C.identity(C.tensor_obj(a, c) if name == "tensor" else C.sum_obj(a, c)))
            b2, d2 = obj(), obj()
            f2, g2 = mor(rng, b, b2), mor(rng, d, d2)
            rep.check(f"{name} preserves composition", (f, g, f2, g2),
                      o(op(f2, g2), op(f, g)), op(o(f2, f), o(g2, g)))
            f1 = S._below(rng, f)
            rep.check(f"{name} preserves joins", (f, f1, g),
                      op(C.join([f, f1]), g), C.join([op(f, g), op(f1, g)]))
        b3 = obj()
        h = mor(rng, b, b3)
        e1 = mor(rng, a, a)
        lhs = o(C.distributor(a, d, b3), C.tensor(e1, C.sum(g, h)))
        rhs = o(C.sum(C.tensor(e1, g), C.tensor(e1, h)), C.distributor(a, c, b))
        rep.check("distributor is natural", (e1, g, h), lhs, rhs)
    rep.notes.append("images of the injections compared through the restrictions of their inverses")
    return rep


def check_disjointness_lemmas(C: InverseCategory, S: Sampler) -> LawReport:
    rep = LawReport("disjointness", C.name)
    rng = S.rng("disjointness-context")
    o = C.compose
    for f1, f2 in S.disjoint_pairs():
        rep.cases += 1
        a = C.dom(f1)
        rep.holds("sampled pair is disjoint", (f1, f2), disjoint(C, f1, f2))
        g1 = C.random_morphism(rng, C.cod(f1), C.random_object(rng) if not S.exhaustive
                               else rng.choice(S.objs))
        g2 = C.random_morphism(rng, C.cod(f2), C.random_object(rng) if not S.exhaustive
                               else rng.choice(S.objs))
        rep.holds("left composition keeps disjointness", (f1, f2, g1, g2),
                  disjoint(C, o(g1, f1), o(g2, f2)))
        d = C.random_object(rng) if not S.exhaustive else rng.choice(S.objs)
        h = C.random_morphism(rng, d, a)
        rep.holds("right composition keeps disjointness", (f1, f2, h),
                  disjoint(C, o(f1, h), o(f2, h)))
        if C.cod(f1) == C.cod(f2):
            rep.holds("disjoint implies compatible", (f1, f2), restriction_compatible(C, f1, f2))
        z = C.zero(a, C.cod(f1))
        rep.holds("zero is disjoint from anything", (f1,),
                  disjoint(C, z, f1) and restriction_compatible(C, z, f1))
    return rep


SUITES = {
    "restriction": check_restriction_axioms,
    "inverse": check_inverse_axioms,
    "join": check_join_axioms,
    "zero": check_zero_laws,
    "order": check_partial_order,
    "order-composition": check_order_composition,
    "rig": check_rig_structure,
    "disjointness": check_disjointness_lemmas,
}


def run_all(C: InverseCategory, seed: int = 0, cases: int = DEFAULT_CASES,
            exhaustive: bool | None = None, suites=None) -> list[LawReport]:
    S = Sampler(C, seed=seed, cases=cases, exhaustive=exhaustive)
    reports = []
    for name in suites or SUITES:
        try:
            reports.append(SUITES[name](C, S))
        except CategoryError as e:
            rep = LawReport(name, C.name)
            rep.failures.append(Failure("suite raised", (), type(e).__name__, str(e)))
            reports.append(rep)
    return reports
