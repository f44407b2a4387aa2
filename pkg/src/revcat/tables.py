"""Inverse categories given by explicit finite tables.

Morphisms are names (strings).  Joins are not tabulated: the join of a
compatible family is the least upper bound under the natural order, which is
computed from the composition and restriction tables.
"""

from __future__ import annotations

import json
from itertools import combinations, product
from typing import Mapping

from .category import (
    CategoryError, IncompatibleJoin, InverseCategory, TypeMismatch, inverse_compatible, leq,
)


class FiniteTableCategory(InverseCategory):
    exhaustive = True

    def __init__(self, name: str, objects: list, morphisms: Mapping, identities: Mapping,
                 compose_table: Mapping, restriction_table: Mapping, inverse_table: Mapping,
                 validate: bool = True):
        self.name = name
        self.objects_ = list(objects)
        self.morphisms = dict(morphisms)  # name -> (dom, cod)
        self.identities = dict(identities)  # object -> name
        self.compose_table = dict(compose_table)  # (g, f) -> name
        self.restriction_table = dict(restriction_table)
        self.inverse_table = dict(inverse_table)
        self.validate = validate
        self._homs: dict = {}
        for m, (a, b) in self.morphisms.items():
            self._homs.setdefault((a, b), []).append(m)
        if self.validate:
            self.check_closed()
        self._zeros = {}
        for a, b in product(self.objects_, repeat=2):
            z = self._least(self.hom(a, b), a, b)
            if z is not None:
                self._zeros[(a, b)] = z
        if self.validate:
            self.check_joins()

    # interface

    def objects(self):
        return list(self.objects_)

    def hom(self, a, b):
        return list(self._homs.get((a, b), []))

    def dom(self, f):
        return self.morphisms[f][0]

    def cod(self, f):
        return self.morphisms[f][1]

    def identity(self, a):
        return self.identities[a]

    def compose(self, g, f):
        if self.cod(f) != self.dom(g):
            raise TypeMismatch(f"cannot compose {g} after {f}")
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise CategoryError(f"composition table has no entry for {g} . {f}") from None

    def restriction(self, f):
        return self.restriction_table[f]

    def inverse(self, f):
        return self.inverse_table[f]

    def zero(self, a, b):
        try:
            return self._zeros[(a, b)]
        except KeyError:
            raise CategoryError(f"hom({a}, {b}) has no least element") from None

    def _upper_bounds(self, family, a, b):
        return [t for t in self.hom(a, b) if all(leq(self, s, t) for s in family)]

    def _least(self, candidates, a, b):
        for t in candidates:
            if all(leq(self, t, u) for u in candidates):
                return t
        return None

    def _join(self, family, a, b):
        j = self._least(self._upper_bounds(family, a, b), a, b)
        if j is None:
            raise IncompatibleJoin(f"no least upper bound for {sorted(family)}")
        return j

    def show(self, f):
        return str(f)

    def to_json(self, f):
        return {"model": self.name, "morphism": f}

    def from_json(self, data):
        name = data if isinstance(data, str) else data["morphism"]
        if name not in self.morphisms:
            raise CategoryError(f"no morphism named {name!r}")
        return name

    def parse_object(self, text: str):
        if text not in self.objects_:
            raise CategoryError(f"no object named {text!r}")
        return text

    # validation

    def check_closed(self):
        for a in self.objects_:
            i = self.identities.get(a)
            if i is None or self.morphisms.get(i) != (a, a):
                raise CategoryError(f"missing identity on {a}")
        for f, (a, b) in self.morphisms.items():
            r, v = self.restriction_table.get(f), self.inverse_table.get(f)
            if r not in self.morphisms or self.morphisms[r] != (a, a):
                raise CategoryError(f"restriction of {f} missing or mistyped")
            if v not in self.morphisms or self.morphisms[v] != (b, a):
                raise CategoryError(f"inverse of {f} missing or mistyped")
        for f, g in product(self.morphisms, repeat=2):
            if self.cod(f) != self.dom(g):
                continue
            c = self.compose_table.get((g, f))
            if c is None:
                raise CategoryError(f"composite {g} . {f} missing")
            if self.morphisms.get(c) != (self.dom(f), self.cod(g)):
                raise CategoryError(f"composite {g} . {f} = {c} is mistyped")
        for f, (a, b) in self.morphisms.items():
            if self.compose(f, self.identity(a)) != f or self.compose(self.identity(b), f) != f:
                raise CategoryError(f"identity law fails at {f}")

    def check_joins(self):
        for (a, b), homs in self._homs.items():
            if (a, b) not in self._zeros:
                raise CategoryError(f"hom({a}, {b}) has no zero")
            for f, g in combinations(homs, 2):
                if inverse_compatible(self, f, g):
                    self._join([f, g], a, b)

    # construction helpers

    def perturbed(self, g, f, result) -> "FiniteTableCategory":
        """A copy whose table sends ``g . f`` to ``result``; not validated."""
        table = dict(self.compose_table)
        table[(g, f)] = result
        return FiniteTableCategory(
            f"{self.name}-perturbed", list(self.objects_), dict(self.morphisms),
            dict(self.identities), table, dict(self.restriction_table),
            dict(self.inverse_table), validate=False)

    def dumps(self) -> str:
        return json.dumps({
            "name": self.name,
            "objects": self.objects_,
            "morphisms": {m: list(t) for m, t in self.morphisms.items()},
            "identities": self.identities,
            "compose": [[g, f, c] for (g, f), c in sorted(self.compose_table.items())],
            "restriction": self.restriction_table,
            "inverse": self.inverse_table,
        }, indent=2, sort_keys=True)


def load_table(data: str | Mapping) -> FiniteTableCategory:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return FiniteTableCategory(
            data.get("name", "table"),
            list(data["objects"]),
            {m: tuple(t) for m, t in data["morphisms"].items()},
            dict(data["identities"]),
            {(g, f): c for g, f, c in data["compose"]},
            dict(data["restriction"]),
            dict(data["inverse"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, CategoryError):
            raise
        raise CategoryError(f"malformed table description: {e}") from None


def from_morphisms(name: str, base: InverseCategory, objects: Mapping[str, object],
                   named: Mapping[str, object]) -> FiniteTableCategory:
    """Tabulate the full subcategory of ``base`` spanned by ``named``.

    ``objects`` names the base objects; the tables are computed in ``base`` and
    must land back in ``named`` (otherwise construction fails).
    """
    obj_name = {v: k for k, v in objects.items()}
    mor_name = {v: k for k, v in named.items()}

    def lookup(m, what):
        if m not in mor_name:
            raise CategoryError(f"{what} {base.show(m)} is not among the listed morphisms")
        return mor_name[m]

    morphisms = {k: (obj_name[base.dom(m)], obj_name[base.cod(m)]) for k, m in named.items()}
    identities = {k: lookup(base.identity(o), f"identity on {k}") for k, o in objects.items()}
    compose = {}
    for (gn, g), (fn, f) in product(named.items(), repeat=2):
        if base.cod(f) == base.dom(g):
            compose[(gn, fn)] = lookup(base.compose(g, f), f"composite {gn} . {fn}")
    restriction = {k: lookup(base.restriction(m), f"restriction of {k}") for k, m in named.items()}
    inverse = {k: lookup(base.inverse(m), f"inverse of {k}") for k, m in named.items()}
    return FiniteTableCategory(name, list(objects), morphisms, identities, compose,
                               restriction, inverse)


def _partial_ids(carrier: str, domains: Mapping[str, str]) -> tuple:
    from .models import FinPInj, fset, pinj
    base = FinPInj()
    obj = fset(carrier)
    named = {k: pinj({x: x for x in d}, obj, obj) for k, d in domains.items()}
    return base, obj, named


def example56() -> FiniteTableCategory:
    """One object {a,b,c}; id and partial identities on {a,b}, {a}, {b} and {}."""
    base, obj, named = _partial_ids("abc", {"id": "abc", "f": "ab", "g": "a", "h": "b", "0": ""})
    return from_morphisms("example56", base, {"abc": obj}, named)


def example513() -> FiniteTableCategory:
    """One object {a,b}; the chain 0 < f < id with f the partial identity on {a}."""
    base, obj, named = _partial_ids("ab", {"0": "", "f": "a", "id": "ab"})
    return from_morphisms("example513", base, {"ab": obj}, named)
