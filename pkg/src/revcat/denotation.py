"""Denotations of types, values, isos and terms in a label-set rig category.

Types denote finite label sets whose elements correspond to closed values
(:func:`revcat.labels.value_to_label`), so the denotation of an iso in
:class:`~revcat.models.FinPInj` can be compared directly with the partial
injection the evaluator induces (:func:`standard_model`).

A context ``x1: a1, ..., xn: an`` denotes the left-nested tensor of the
``ai`` in lexicographic variable order; the empty context denotes the unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Mapping, Sequence

from .category import CategoryError, inverse_compatible, is_total, range_disjoint
from .evaluate import enumerate_closed_values, eval_term
from .labels import UNIT, enum_label, pair, value_to_label
from .models import FinPInj, LabelSetCategory, PartialInjection, PIdSOplus, SubPIdSOplus, fset
from .syntax import (
    BUILTIN_ENUMS, App, Const, EnumDecl, EnumRef, InjL, InjR, Iso, IsoRef, Pair, Prod, Program,
    Sum, Term, Val, Value, ValueType, Var, free_vars,
)
from .typecheck import canonical, infer_pattern_context

MODELS = {
    "finpinj": FinPInj,
    "pids-oplus": PIdSOplus,
    "subpid": SubPIdSOplus,
}


class DenotationError(Exception):
    pass


def object_of_type(a: ValueType, enums: Mapping[str, EnumDecl] | None = None) -> frozenset:
    """The canonical label object of ``a``: one label per closed value."""
    enums = BUILTIN_ENUMS if enums is None else enums
    return fset(value_to_label(v) for v in enumerate_closed_values(a, enums))


@dataclass(frozen=True)
class EnumModelChoice:
    """The object of an enum and one point ``1 -> obj`` per constant."""

    enum: str
    obj: object
    points: tuple

    def validate(self, C: LabelSetCategory) -> None:
        one = C.unit_obj()
        for i, p in enumerate(self.points):
            if C.dom(p) != one or C.cod(p) != self.obj:
                raise DenotationError(f"point {i} of {self.enum} is not a morphism 1 -> obj")
            if not is_total(C, p):
                raise DenotationError(f"point {i} of {self.enum} is not total")
        for (i, p), (j, q) in combinations(enumerate(self.points), 2):
            if not range_disjoint(C, p, q):
                raise DenotationError(f"points {i} and {j} of {self.enum} overlap")


def canonical_choice(C: LabelSetCategory, decl: EnumDecl) -> EnumModelChoice:
    one = C.unit_obj()
    if decl.name == "unit":
        return EnumModelChoice("unit", one, (C.identity(one),))
    obj = fset(enum_label(decl.name, i) for i in range(decl.arity))
    points = tuple(C.total_map(one, obj, {UNIT: enum_label(decl.name, i)})
                   for i in range(decl.arity))
    return EnumModelChoice(decl.name, obj, points)


@dataclass
class DenotationEnv:
    C: LabelSetCategory
    enums: dict
    choices: dict
    _iso_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        missing = set(self.enums) - set(self.choices)
        if missing:
            raise DenotationError(f"no model choice for enums {sorted(missing)}")
        for choice in self.choices.values():
            choice.validate(self.C)
            if len(choice.points) != self.enums[choice.enum].arity:
                raise DenotationError(f"{choice.enum} needs one point per constant")


def default_env(C: LabelSetCategory,
                enums: Mapping[str, EnumDecl] | Sequence[EnumDecl] | None = None) -> DenotationEnv:
    table = dict(BUILTIN_ENUMS)
    if enums is not None:
        items = enums.values() if isinstance(enums, Mapping) else enums
        table.update({d.name: d for d in items})
    return DenotationEnv(C, table, {n: canonical_choice(C, d) for n, d in table.items()})


# ---------------------------------------------------------------------------
# types and contexts


def denote_type(env: DenotationEnv, a: ValueType):
    C = env.C
    if isinstance(a, EnumRef):
        try:
            return env.choices[a.name].obj
        except KeyError:
            raise DenotationError(f"undeclared enum {a.name}") from None
    if isinstance(a, Sum):
        return C.sum_obj(denote_type(env, a.left), denote_type(env, a.right))
    return C.tensor_obj(denote_type(env, a.left), denote_type(env, a.right))


def denote_context(env: DenotationEnv, ctx: Mapping[str, ValueType]):
    objs = [denote_type(env, a) for _, a in canonical(ctx)]
    if not objs:
        return env.C.unit_obj()
    return reduce(env.C.tensor_obj, objs)


# A context shape is either a context (mapping) or ("tensor", shape, shape).


def _shape_obj(env, shape):
    if isinstance(shape, tuple):
        return env.C.tensor_obj(_shape_obj(env, shape[1]), _shape_obj(env, shape[2]))
    return denote_context(env, shape)


def _shape_vars(shape) -> list:
    if isinstance(shape, tuple):
        return _shape_vars(shape[1]) + _shape_vars(shape[2])
    return [(x, a) for x, a in canonical(shape)]


def _decode(label, shape) -> dict:
    if isinstance(shape, tuple):
        d = _decode(label[1], shape[1])
        d.update(_decode(label[2], shape[2]))
        return d
    names = [x for x, _ in canonical(shape)]
    if not names:
        return {}
    out = {}
    for x in reversed(names[1:]):
        out[x] = label[2]
        label = label[1]
    out[names[0]] = label
    return out


def _encode(assign: dict, shape):
    if isinstance(shape, tuple):
        return pair(_encode(assign, shape[1]), _encode(assign, shape[2]))
    names = [x for x, _ in canonical(shape)]
    if not names:
        return UNIT
    return reduce(pair, [assign[x] for x in names])


def context_permutation(env: DenotationEnv, source, target):
    """The total iso ``[[source]] -> [[target]]`` that regroups variables.

    Both sides are context shapes over the same typed variables.
    """
    if sorted(_shape_vars(source), key=repr) != sorted(_shape_vars(target), key=repr):
        raise DenotationError("context permutation between different variables")
    src, dst = _shape_obj(env, source), _shape_obj(env, target)
    return env.C.total_map(src, dst, {x: _encode(_decode(x, source), target) for x in src})


# ---------------------------------------------------------------------------
# values, isos, terms


def denote_value(env: DenotationEnv, ctx: Mapping[str, ValueType], v: Value, a: ValueType):
    """``[[ctx |- v : a]]`` as a morphism ``[[ctx]] -> [[a]]``."""
    C = env.C
    if isinstance(v, Const):
        if ctx:
            raise DenotationError("constant typed in a nonempty context")
        if not isinstance(a, EnumRef) or a.name != v.enum:
            raise DenotationError(f"constant of {v.enum} at another type")
        return env.choices[v.enum].points[v.index]
    if isinstance(v, Var):
        if dict(ctx) != {v.name: a}:
            raise DenotationError(f"variable {v.name} needs exactly the context {{{v.name}}}")
        return C.identity(denote_type(env, a))
    if isinstance(v, (InjL, InjR)):
        if not isinstance(a, Sum):
            raise DenotationError("injection at a non-sum type")
        la, ra = denote_type(env, a.left), denote_type(env, a.right)
        if isinstance(v, InjL):
            return C.compose(C.inj_left(la, ra), denote_value(env, ctx, v.value, a.left))
        return C.compose(C.inj_right(la, ra), denote_value(env, ctx, v.value, a.right))
    if not isinstance(a, Prod):
        raise DenotationError("pair at a non-product type")
    ctx1 = {x: ctx[x] for x in free_vars(v.left)}
    ctx2 = {x: ctx[x] for x in free_vars(v.right)}
    if len(ctx1) + len(ctx2) != len(ctx):
        raise DenotationError("pair does not use its context linearly")
    f = denote_value(env, ctx1, v.left, a.left)
    g = denote_value(env, ctx2, v.right, a.right)
    p = context_permutation(env, dict(ctx), ("tensor", ctx1, ctx2))
    return C.compose(C.tensor(f, g), p)


def clause_morphisms(env: DenotationEnv, iso: Iso) -> list:
    """``[[v'_i]] . [[v_i]]°`` for every clause."""
    T = iso.type
    if T is None:
        raise DenotationError("iso has no type; typecheck the term first")
    out = []
    for p, q in iso.clauses:
        ctx = infer_pattern_context(p, T.lhs, env.enums)
        out.append(env.C.compose(denote_value(env, ctx, q, T.rhs),
                                 env.C.inverse(denote_value(env, ctx, p, T.lhs))))
    return out


def denote_iso(env: DenotationEnv, iso: Iso):
    """The join of the clause morphisms; they must be pairwise compatible."""
    key = iso
    if key in env._iso_cache:
        return env._iso_cache[key]
    C = env.C
    parts = clause_morphisms(env, iso)
    for (i, f), (j, g) in combinations(enumerate(parts), 2):
        if not inverse_compatible(C, f, g):
            raise AssertionError(f"clauses {i} and {j} denote incompatible morphisms")
    a, b = denote_type(env, iso.type.lhs), denote_type(env, iso.type.rhs)
    out = C.join(parts, a, b)
    env._iso_cache[key] = out
    return out


def denote_term(env: DenotationEnv, t: Term, a: ValueType):
    """``[[t]] : 1 -> [[a]]`` for a closed, elaborated term."""
    if isinstance(t, Val):
        return denote_value(env, {}, t.value, a)
    if isinstance(t.iso, IsoRef):
        raise DenotationError(f"unexpanded reference to {t.iso.name}")
    T = t.iso.type
    if T is None or T.rhs != a:
        raise DenotationError("iso type does not produce the requested type")
    return env.C.compose(denote_iso(env, t.iso), denote_term(env, t.arg, T.lhs))


# ---------------------------------------------------------------------------
# evaluator oracle


def iso_standard_model(iso: Iso, enums: Mapping[str, EnumDecl] | None = None):
    """The partial injection ``v |-> w`` whenever ``iso v`` evaluates to ``w``."""
    enums = BUILTIN_ENUMS if enums is None else enums
    T = iso.type
    graph = []
    for v in enumerate_closed_values(T.lhs, enums):
        w = eval_term(App(iso, Val(v)))
        if isinstance(w, (Const, InjL, InjR, Pair)):
            graph.append((value_to_label(v), value_to_label(w)))
    return PartialInjection(object_of_type(T.lhs, enums), object_of_type(T.rhs, enums),
                            fset(graph))


def standard_model(program: Program) -> dict:
    enums = program.enum_table()
    return {name: iso_standard_model(iso, enums)
            for name, iso in program.iso_table().items()}


def model_instance(name: str) -> LabelSetCategory:
    try:
        return MODELS[name]()
    except KeyError:
        raise CategoryError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
