"""Concrete join inverse categories on finite sets.

* :class:`FinPInj` -- finite sets and partial injections.
* :class:`PIdS` -- one object, subsets of a carrier ``S`` composed by intersection.
* :class:`PIdSOplus` -- partial injections whose defined points carry a subset
  of ``S``; composition intersects the annotations along the way.
* :class:`SubPIdSOplus` -- the subcategory of :class:`PIdSOplus` whose
  annotations are drawn from a fixed family closed under ``&`` and ``|``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from math import comb, perm
from typing import Iterable, Mapping, Sequence

from .category import (
    HOM_CAP, CategoryError, InverseCategory, NotEnumerable, RigStructure, TypeMismatch,
)
from .labels import UNIT, label_key, left, pair, parse_label, render, right, sort_labels

ATOMS = ("a", "b", "c", "d", "e")


def fset(xs: Iterable = ()) -> frozenset:
    return frozenset(xs)


@dataclass(frozen=True)
class PartialInjection:
    dom: frozenset
    cod: frozenset
    graph: frozenset  # of (src, dst)

    def __post_init__(self):
        srcs = [s for s, _ in self.graph]
        dsts = [d for _, d in self.graph]
        if len(set(srcs)) != len(srcs):
            raise CategoryError("graph is not functional")
        if len(set(dsts)) != len(dsts):
            raise CategoryError("graph is not injective")
        if not set(srcs) <= self.dom or not set(dsts) <= self.cod:
            raise CategoryError("graph leaves its dom/cod")

    @cached_property
    def mapping(self) -> dict:
        return dict(self.graph)

    @property
    def domain(self) -> frozenset:
        return fset(s for s, _ in self.graph)

    @property
    def image(self) -> frozenset:
        return fset(d for _, d in self.graph)

    def __call__(self, x):
        return self.mapping[x]

    def __repr__(self):
        pts = ", ".join(f"{render(s)}->{render(d)}" for s, d in
                        sorted(self.graph, key=lambda e: label_key(e[0])))
        return f"PInj{{{pts}}}"


def pinj(mapping: Mapping, dom: Iterable | None = None,
         cod: Iterable | None = None) -> PartialInjection:
    """Convenience constructor; dom/cod default to the defined points."""
    dom = fset(mapping) if dom is None else fset(dom)
    cod = fset(mapping.values()) if cod is None else fset(cod)
    return PartialInjection(dom, cod, fset(mapping.items()))


@dataclass(frozen=True)
class PIdSMorphism:
    carrier: frozenset
    subset: frozenset

    def __post_init__(self):
        if not self.subset <= self.carrier:
            raise CategoryError("subset not contained in the carrier")

    def __repr__(self):
        return "{" + ",".join(sorted(map(str, self.subset))) + "}"


@dataclass(frozen=True)
class AnnotatedPartialInjection:
    dom: frozenset
    cod: frozenset
    graph: frozenset  # of (src, dst, annotation frozenset)

    def __post_init__(self):
        srcs = [s for s, _, _ in self.graph]
        dsts = [d for _, d, _ in self.graph]
        if len(set(srcs)) != len(srcs) or len(set(dsts)) != len(dsts):
            raise CategoryError("underlying map is not a partial injection")
        if not set(srcs) <= self.dom or not set(dsts) <= self.cod:
            raise CategoryError("graph leaves its dom/cod")

    @cached_property
    def table(self) -> dict:
        return {s: (d, x) for s, d, x in self.graph}

    @property
    def sigma(self) -> PartialInjection:
        return PartialInjection(self.dom, self.cod, fset((s, d) for s, d, _ in self.graph))

    @property
    def annotations(self) -> dict:
        return {s: x for s, _, x in self.graph}

    def __repr__(self):
        pts = ", ".join(
            f"{render(s)}->{render(d)}@{{{','.join(sorted(map(str, x)))}}}"
            for s, d, x in sorted(self.graph, key=lambda e: label_key(e[0])))
        return f"APInj{{{pts}}}"


# ---------------------------------------------------------------------------


class LabelSetCategory(InverseCategory, RigStructure):
    """Shared object structure: finite sets of structural labels."""

    exhaustive = False

    def __init__(self, universe: Sequence[frozenset] | None = None):
        one = fset([UNIT])
        self.universe = list(universe) if universe is not None else [
            fset(), one, fset([left(UNIT), right(UNIT)])]

    def objects(self):
        return list(self.universe)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def random_object(self, rng: random.Random):
        if rng.random() < 0.5:
            return rng.choice(self.universe)
        return fset(rng.sample(ATOMS, rng.randint(0, 4)))

    # structure on objects

    def unit_obj(self):
        return fset([UNIT])

    def zero_obj(self):
        return fset()

    def tensor_obj(self, a, b):
        return fset(pair(x, y) for x in a for y in b)

    def sum_obj(self, a, b):
        return fset([left(x) for x in a] + [right(y) for y in b])

    def total_map(self, a, b, mapping: Mapping):
        """A total morphism ``a -> b`` acting on labels as ``mapping``."""
        raise NotImplementedError

    def inj_left(self, a, b):
        return self.total_map(a, self.sum_obj(a, b), {x: left(x) for x in a})

    def inj_right(self, a, b):
        return self.total_map(b, self.sum_obj(a, b), {y: right(y) for y in b})

    def associator(self, a, b, c):
        src = self.tensor_obj(self.tensor_obj(a, b), c)
        dst = self.tensor_obj(a, self.tensor_obj(b, c))
        return self.total_map(src, dst, {
            pair(pair(x, y), z): pair(x, pair(y, z)) for x in a for y in b for z in c})

    def symmetry(self, a, b):
        return self.total_map(self.tensor_obj(a, b), self.tensor_obj(b, a),
                              {pair(x, y): pair(y, x) for x in a for y in b})

    def left_unitor(self, a):
        return self.total_map(self.tensor_obj(self.unit_obj(), a), a,
                              {pair(UNIT, x): x for x in a})

    def right_unitor(self, a):
        return self.total_map(self.tensor_obj(a, self.unit_obj()), a,
                              {pair(x, UNIT): x for x in a})

    def sum_associator(self, a, b, c):
        src = self.sum_obj(self.sum_obj(a, b), c)
        dst = self.sum_obj(a, self.sum_obj(b, c))
        m = {left(left(x)): left(x) for x in a}
        m.update({left(right(y)): right(left(y)) for y in b})
        m.update({right(z): right(right(z)) for z in c})
        return self.total_map(src, dst, m)

    def sum_symmetry(self, a, b):
        m = {left(x): right(x) for x in a}
        m.update({right(y): left(y) for y in b})
        return self.total_map(self.sum_obj(a, b), self.sum_obj(b, a), m)

    def sum_left_unitor(self, a):
        return self.total_map(self.sum_obj(self.zero_obj(), a), a, {right(x): x for x in a})

    def distributor(self, a, b, c):
        src = self.tensor_obj(a, self.sum_obj(b, c))
        dst = self.sum_obj(self.tensor_obj(a, b), self.tensor_obj(a, c))
        m = {pair(x, left(y)): left(pair(x, y)) for x in a for y in b}
        m.update({pair(x, right(z)): right(pair(x, z)) for x in a for z in c})
        return self.total_map(src, dst, m)

    # hom-set enumeration helpers

    def _annotation_choices(self) -> list:
        return [None]

    def hom_size(self, a, b) -> int:
        m = len(self._annotation_choices())
        return sum(comb(len(a), k) * perm(len(b), k) * m ** k
                   for k in range(min(len(a), len(b)) + 1))

    def _sigmas(self, a, b):
        xs, ys = sort_labels(a), sort_labels(b)
        for k in range(min(len(xs), len(ys)) + 1):
            for srcs in combinations(xs, k):
                for dsts in permutations(ys, k):
                    yield list(zip(srcs, dsts))

    def _check_cap(self, a, b):
        n = self.hom_size(a, b)
        if n > HOM_CAP:
            raise NotEnumerable(f"hom-set of {n} morphisms exceeds the cap of {HOM_CAP}")

    def _random_sigma(self, rng, a, b):
        xs, ys = sort_labels(a), sort_labels(b)
        k = rng.randint(0, min(len(xs), len(ys)))
        return list(zip(rng.sample(xs, k), rng.sample(ys, k)))

    def random_disjoint_pair(self, rng, a, b1, b2):
        """Two morphisms out of ``a`` with disjoint domains of definition."""
        xs = sort_labels(a)
        rng.shuffle(xs)
        cut = rng.randint(0, len(xs))
        part1, part2 = fset(xs[:cut]), fset(xs[cut:])
        f1 = self.random_morphism(rng, a, b1)
        f2 = self.random_morphism(rng, a, b2)
        return self.restrict_to(f1, part1), self.restrict_to(f2, part2)

    def restrict_to(self, f, points: frozenset):
        raise NotImplementedError

    def show(self, f) -> str:
        return repr(f)

    def parse_object(self, text: str):
        text = text.strip()
        if text in ("1", "I"):
            return self.unit_obj()
        if text.startswith("[") or text.startswith("{"):
            inner = text[1:-1].strip()
            if not inner:
                return fset()
            return fset(parse_label(x) for x in _split_top(inner))
        from .syntax import parse_type
        from .denotation import object_of_type
        return object_of_type(parse_type(text))


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ";" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [x.strip() for x in out if x.strip()]


class FinPInj(LabelSetCategory):
    """Finite sets and partial injective functions."""

    name = "finpinj"

    def __init__(self, universe=None):
        if universe is None:
            universe = [fset(), fset([UNIT]), fset("ab"), fset("abc")]
        super().__init__(universe)

    def identity(self, a):
        return PartialInjection(a, a, fset((x, x) for x in a))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise TypeMismatch("cannot compose: codomain and domain differ")
        m = g.mapping
        return PartialInjection(f.dom, g.cod, fset((x, m[y]) for x, y in f.graph if y in m))

    def restriction(self, f):
        return PartialInjection(f.dom, f.dom, fset((x, x) for x, _ in f.graph))

    def inverse(self, f):
        return PartialInjection(f.cod, f.dom, fset((y, x) for x, y in f.graph))

    def zero(self, a, b):
        return PartialInjection(a, b, fset())

    def _join(self, family, a, b):
        return PartialInjection(a, b, fset().union(*(f.graph for f in family)))

    def hom(self, a, b):
        self._check_cap(a, b)
        return [PartialInjection(a, b, fset(s)) for s in self._sigmas(a, b)]

    def random_morphism(self, rng, a, b):
        return PartialInjection(a, b, fset(self._random_sigma(rng, a, b)))

    def restrict_to(self, f, points):
        return PartialInjection(f.dom, f.cod, fset(e for e in f.graph if e[0] in points))

    def total_map(self, a, b, mapping):
        if set(mapping) != set(a):
            raise CategoryError("total_map needs a value for every element")
        return PartialInjection(a, b, fset(mapping.items()))

    def tensor(self, f, g):
        return PartialInjection(
            self.tensor_obj(f.dom, g.dom), self.tensor_obj(f.cod, g.cod),
            fset((pair(x, z), pair(y, w)) for x, y in f.graph for z, w in g.graph))

    def sum(self, f, g):
        return PartialInjection(
            self.sum_obj(f.dom, g.dom), self.sum_obj(f.cod, g.cod),
            fset([(left(x), left(y)) for x, y in f.graph]
                 + [(right(x), right(y)) for x, y in g.graph]))

    def to_json(self, f):
        return {
            "model": self.name,
            "dom": [render(x) for x in sort_labels(f.dom)],
            "cod": [render(x) for x in sort_labels(f.cod)],
            "graph": [[render(s), render(d)] for s, d in
                      sorted(f.graph, key=lambda e: label_key(e[0]))],
        }

    def from_json(self, data):
        return PartialInjection(
            fset(parse_label(x) for x in data["dom"]),
            fset(parse_label(x) for x in data["cod"]),
            fset((parse_label(s), parse_label(d)) for s, d in data["graph"]))


class PIdS(InverseCategory):
    """One object; morphisms are the subsets of ``S``, composed by intersection."""

    name = "pids"
    exhaustive = True
    OBJECT = "*"

    def __init__(self, carrier: Iterable = "abc"):
        self.carrier = fset(carrier)
        if not self.carrier:
            raise CategoryError("the carrier must be nonempty")

    def morphism(self, subset: Iterable) -> PIdSMorphism:
        return PIdSMorphism(self.carrier, fset(subset))

    def objects(self):
        return [self.OBJECT]

    def dom(self, f):
        return self.OBJECT

    def cod(self, f):
        return self.OBJECT

    def identity(self, a):
        return self.morphism(self.carrier)

    def compose(self, g, f):
        return self.morphism(g.subset & f.subset)

    def restriction(self, f):
        return f

    def inverse(self, f):
        return f

    def zero(self, a, b):
        return self.morphism(())

    def _join(self, family, a, b):
        return self.morphism(fset().union(*(f.subset for f in family)))

    def tensor(self, f, g):
        return self.compose(f, g)

    def hom(self, a, b):
        xs = sorted(self.carrier, key=str)
        return [self.morphism(s) for k in range(len(xs) + 1) for s in combinations(xs, k)]

    def random_morphism(self, rng, a, b):
        return self.morphism(x for x in sorted(self.carrier, key=str) if rng.random() < 0.5)

    def to_json(self, f):
        return {"model": self.name, "subset": sorted(map(str, f.subset))}

    def from_json(self, data):
        return self.morphism(data["subset"])

    def parse_object(self, text: str):
        if text.strip() != self.OBJECT:
            raise CategoryError(f"the only object is {self.OBJECT}")
        return self.OBJECT


class PIdSOplus(LabelSetCategory):
    """Partial injections annotated pointwise by subsets of ``S``."""

    name = "pids-oplus"

    def __init__(self, carrier: Iterable = "ab", universe=None):
        super().__init__(universe)
        self.carrier = fset(carrier)
        if not self.carrier:
            raise CategoryError("the carrier must be nonempty")
        xs = sorted(self.carrier, key=str)
        self.allowed = [fset(s) for k in range(len(xs) + 1) for s in combinations(xs, k)]

    def _annotation_choices(self):
        return self.allowed

    def _make(self, a, b, triples):
        return AnnotatedPartialInjection(a, b, fset(triples))

    def identity(self, a):
        return self._make(a, a, ((x, x, self.carrier) for x in a))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise TypeMismatch("cannot compose: codomain and domain differ")
        t = g.table
        out = []
        for x, y, ann in f.graph:
            hit = t.get(y)
            if hit is not None:
                out.append((x, hit[0], ann & hit[1]))
        return self._make(f.dom, g.cod, out)

    def restriction(self, f):
        return self._make(f.dom, f.dom, ((x, x, ann) for x, _, ann in f.graph))

    def inverse(self, f):
        return self._make(f.cod, f.dom, ((y, x, ann) for x, y, ann in f.graph))

    def zero(self, a, b):
        return self._make(a, b, ())

    def _join(self, family, a, b):
        merged: dict = {}
        for f in family:
            for x, y, ann in f.graph:
                if x in merged:
                    merged[x] = (y, merged[x][1] | ann)
                else:
                    merged[x] = (y, ann)
        return self._make(a, b, ((x, y, ann) for x, (y, ann) in merged.items()))

    def hom(self, a, b):
        self._check_cap(a, b)
        out = []
        for sigma in self._sigmas(a, b):
            for anns in product(self.allowed, repeat=len(sigma)):
                out.append(self._make(a, b, ((x, y, ann) for (x, y), ann in zip(sigma, anns))))
        return out

    def random_morphism(self, rng, a, b):
        sigma = self._random_sigma(rng, a, b)
        return self._make(a, b, ((x, y, rng.choice(self.allowed)) for x, y in sigma))

    def restrict_to(self, f, points):
        return self._make(f.dom, f.cod, (e for e in f.graph if e[0] in points))

    def total_map(self, a, b, mapping):
        if set(mapping) != set(a):
            raise CategoryError("total_map needs a value for every element")
        return self._make(a, b, ((x, y, self.carrier) for x, y in mapping.items()))

    def tensor(self, f, g):
        return self._make(
            self.tensor_obj(f.dom, g.dom), self.tensor_obj(f.cod, g.cod),
            ((pair(x, z), pair(y, w), ann1 & ann2)
             for x, y, ann1 in f.graph for z, w, ann2 in g.graph))

    def sum(self, f, g):
        return self._make(
            self.sum_obj(f.dom, g.dom), self.sum_obj(f.cod, g.cod),
            [(left(x), left(y), ann) for x, y, ann in f.graph]
            + [(right(x), right(y), ann) for x, y, ann in g.graph])

    def morphism(self, a, b, entries: Mapping) -> AnnotatedPartialInjection:
        """Build from ``{src: (dst, annotation)}``."""
        return self._make(fset(a), fset(b),
                          ((x, y, fset(ann)) for x, (y, ann) in entries.items()))

    def to_json(self, f):
        ordered = sorted(f.graph, key=lambda e: label_key(e[0]))
        return {
            "model": self.name,
            "dom": [render(x) for x in sort_labels(f.dom)],
            "cod": [render(x) for x in sort_labels(f.cod)],
            "graph": [[render(s), render(d)] for s, d, _ in ordered],
            "ann": {render(s): sorted(map(str, ann)) for s, _, ann in ordered},
        }

    def from_json(self, data):
        ann = data.get("ann", {})
        return self._make(
            fset(parse_label(x) for x in data["dom"]),
            fset(parse_label(x) for x in data["cod"]),
            ((parse_label(s), parse_label(d), fset(ann.get(s, self.carrier)))
             for s, d in data["graph"]))


class SubPIdSOplus(PIdSOplus):
    """The subcategory of :class:`PIdSOplus` with annotations in ``allowed``."""

    name = "subpid"
    exhaustive = True

    def __init__(self, carrier: Iterable = "abc",
                 allowed: Iterable[Iterable] = ("a", "ab", "abc"), universe=None,
                 validate: bool = True):
        super().__init__(carrier, universe)
        allowed = sorted({fset(x) for x in allowed}, key=lambda s: (len(s), sorted(s)))
        self.allowed = allowed
        if validate:
            self.validate()

    def contains(self, f) -> bool:
        return all(ann in self.allowed for _, _, ann in f.graph)

    def validate(self):
        family = set(self.allowed)
        if self.carrier not in family:
            raise CategoryError("the carrier must be an allowed annotation (identities)")
        for x, y in combinations(self.allowed, 2):
            if x & y not in family or x | y not in family:
                raise CategoryError(f"annotations not closed under meet/join: {set(x)}, {set(y)}")
        objs = self.objects()
        for a, b in product(objs, repeat=2):
            homs = self.hom(a, b)
            for f in homs:
                for g in (self.restriction(f), self.inverse(f)):
                    if not self.contains(g):
                        raise CategoryError(f"not closed: {g!r}")
                for c in objs:
                    for g in self.hom(b, c):
                        if not self.contains(self.compose(g, f)):
                            raise CategoryError(f"composite leaves the subcategory: {g!r} . {f!r}")
            for f, g in combinations(homs, 2):
                from .category import try_join
                j = try_join(self, [f, g])
                if j is not None and not self.contains(j):
                    raise CategoryError(f"join leaves the subcategory: {j!r}")
