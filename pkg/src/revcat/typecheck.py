"""Linear typing of values, isos and terms, and syntactic orthogonality."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .syntax import (
    BUILTIN_ENUMS, UNIT, App, Const, EnumDecl, EnumRef, InjL, InjR, Iso, IsoRef,
    IsoType, Pair, Prod, Sum, Term, Val, Value, ValueType, Var, free_vars,
    print_type,
)

UNBOUND_VAR = "UnboundVar"
DUPLICATE_VAR = "DuplicateVar"
CONTEXT_MISMATCH = "ContextMismatch"
SHAPE_MISMATCH = "ShapeMismatch"
OVERLAPPING_PATTERNS = "OverlappingPatterns"
NON_CLOSED_TERM = "NonClosedTerm"
UNKNOWN_CONSTANT = "UnknownConstant"


class TypeCheckError(Exception):
    """A typing failure.

    ``overlaps`` lists every ``(i, j, side)`` triple of non-orthogonal
    patterns when ``kind`` is ``OverlappingPatterns``; the first one is also
    exposed as ``i``, ``j`` and ``side``.
    """

    def __init__(self, kind: str, message: str, location: str = "",
                 overlaps: list[tuple[int, int, str]] | None = None):
        self.kind = kind
        self.location = location
        self.overlaps = overlaps or []
        where = f" in {location}" if location else ""
        super().__init__(f"{kind}{where}: {message}")

    @property
    def i(self):
        return self.overlaps[0][0] if self.overlaps else None

    @property
    def j(self):
        return self.overlaps[0][1] if self.overlaps else None

    @property
    def side(self):
        return self.overlaps[0][2] if self.overlaps else None


TypingContext = dict  # variable name -> ValueType


def canonical(ctx: Mapping[str, ValueType]) -> list[tuple[str, ValueType]]:
    """Context entries in the canonical (lexicographic) order."""
    return sorted(ctx.items())


def _enums(enums):
    return BUILTIN_ENUMS if enums is None else enums


def infer_pattern_context(v: Value, a: ValueType,
                          enums: Mapping[str, EnumDecl] | None = None,
                          location: str = "") -> TypingContext:
    """The unique context typing pattern ``v`` at ``a``."""
    enums = _enums(enums)
    ctx: TypingContext = {}

    def go(v, a):
        if isinstance(v, Var):
            if v.name in ctx:
                raise TypeCheckError(DUPLICATE_VAR, f"variable {v.name} occurs twice", location)
            ctx[v.name] = a
        elif isinstance(v, Const):
            if not isinstance(a, EnumRef):
                raise TypeCheckError(SHAPE_MISMATCH, f"constant at type {print_type(a)}", location)
            decl = enums.get(a.name)
            if decl is None or v.enum != a.name or not 0 <= v.index < decl.arity:
                raise TypeCheckError(UNKNOWN_CONSTANT,
                                     f"constant {v.enum}#{v.index} is not in enum {a.name}", location)
        elif isinstance(v, InjL):
            if not isinstance(a, Sum):
                raise TypeCheckError(SHAPE_MISMATCH, f"inl at type {print_type(a)}", location)
            go(v.value, a.left)
        elif isinstance(v, InjR):
            if not isinstance(a, Sum):
                raise TypeCheckError(SHAPE_MISMATCH, f"inr at type {print_type(a)}", location)
            go(v.value, a.right)
        else:
            if not isinstance(a, Prod):
                raise TypeCheckError(SHAPE_MISMATCH, f"pair at type {print_type(a)}", location)
            go(v.left, a.left)
            go(v.right, a.right)

    go(v, a)
    return ctx


def check_value(ctx: Mapping[str, ValueType], v: Value, a: ValueType,
                enums: Mapping[str, EnumDecl] | None = None, location: str = "") -> None:
    """Check ``ctx |- v : a`` with every variable of ``ctx`` used exactly once."""
    for x in free_vars(v):
        if x not in ctx:
            raise TypeCheckError(UNBOUND_VAR, f"variable {x} is not bound", location)
    used = infer_pattern_context(v, a, enums, location)
    for x, b in used.items():
        if ctx[x] != b:
            raise TypeCheckError(
                SHAPE_MISMATCH,
                f"variable {x} has type {print_type(ctx[x])}, used at {print_type(b)}", location)
    unused = sorted(set(ctx) - set(used))
    if unused:
        raise TypeCheckError(CONTEXT_MISMATCH, f"unused variables {', '.join(unused)}", location)


def check_orthogonal(v1: Value, v2: Value) -> bool:
    if isinstance(v1, Const) and isinstance(v2, Const):
        return v1.enum == v2.enum and v1.index != v2.index
    if isinstance(v1, InjL) and isinstance(v2, InjR):
        return True
    if isinstance(v1, InjR) and isinstance(v2, InjL):
        return True
    if isinstance(v1, InjL) and isinstance(v2, InjL):
        return check_orthogonal(v1.value, v2.value)
    if isinstance(v1, InjR) and isinstance(v2, InjR):
        return check_orthogonal(v1.value, v2.value)
    if isinstance(v1, Pair) and isinstance(v2, Pair):
        return check_orthogonal(v1.left, v2.left) or check_orthogonal(v1.right, v2.right)
    return False


def check_iso(iso: Iso, a: ValueType, b: ValueType,
              enums: Mapping[str, EnumDecl] | None = None, location: str = "iso") -> None:
    contexts = [
        infer_pattern_context(p, a, enums, f"{location}, clause {i} left")
        for i, (p, _) in enumerate(iso.clauses)
    ]
    overlaps = []
    for side, k in (("left", 0), ("right", 1)):
        for i, j in combinations(range(len(iso.clauses)), 2):
            if not check_orthogonal(iso.clauses[i][k], iso.clauses[j][k]):
                overlaps.append((i, j, side))
    if overlaps:
        desc = ", ".join(f"{i},{j} ({s})" for i, j, s in overlaps)
        raise TypeCheckError(OVERLAPPING_PATTERNS, f"patterns not orthogonal: {desc}",
                             location, overlaps)
    for i, ((_, q), ctx) in enumerate(zip(iso.clauses, contexts)):
        check_value(ctx, q, b, enums, f"{location}, clause {i} right")


def is_well_typed_iso(iso: Iso, a: ValueType, b: ValueType,
                      enums: Mapping[str, EnumDecl] | None = None) -> bool:
    try:
        check_iso(iso, a, b, enums)
    except TypeCheckError:
        return False
    return True


# ---------------------------------------------------------------------------
# terms: untyped iso literals get their types by unification


class _Hole:
    __slots__ = ("ref",)

    def __init__(self):
        self.ref = None


@dataclass
class _HSum:
    left: object
    right: object


@dataclass
class _HProd:
    left: object
    right: object


def _find(t):
    while isinstance(t, _Hole) and t.ref is not None:
        t = t.ref
    return t


def _lift(a: ValueType):
    if isinstance(a, EnumRef):
        return a
    if isinstance(a, Sum):
        return _HSum(_lift(a.left), _lift(a.right))
    return _HProd(_lift(a.left), _lift(a.right))


def _occurs(h, t) -> bool:
    t = _find(t)
    if t is h:
        return True
    if isinstance(t, (_HSum, _HProd)):
        return _occurs(h, t.left) or _occurs(h, t.right)
    return False


def _unify(s, t, location):
    s, t = _find(s), _find(t)
    if s is t:
        return
    if isinstance(s, _Hole) or isinstance(t, _Hole):
        h, other = (s, t) if isinstance(s, _Hole) else (t, s)
        if _occurs(h, other):
            raise TypeCheckError(SHAPE_MISMATCH, "cyclic type", location)
        h.ref = other
        return
    if isinstance(s, EnumRef) and isinstance(t, EnumRef) and s.name == t.name:
        return
    if type(s) is type(t) and isinstance(s, (_HSum, _HProd)):
        _unify(s.left, t.left, location)
        _unify(s.right, t.right, location)
        return
    raise TypeCheckError(SHAPE_MISMATCH, "types do not agree", location)


def _resolve(t) -> ValueType:
    t = _find(t)
    if isinstance(t, _Hole):
        return UNIT  # unconstrained: default to unit
    if isinstance(t, EnumRef):
        return t
    if isinstance(t, _HSum):
        return Sum(_resolve(t.left), _resolve(t.right))
    return Prod(_resolve(t.left), _resolve(t.right))


def _shape(v: Value, env: dict):
    if isinstance(v, Const):
        return EnumRef(v.enum)
    if isinstance(v, Var):
        if v.name not in env:
            env[v.name] = _Hole()
        return env[v.name]
    if isinstance(v, InjL):
        return _HSum(_shape(v.value, env), _Hole())
    if isinstance(v, InjR):
        return _HSum(_Hole(), _shape(v.value, env))
    return _HProd(_shape(v.left, env), _shape(v.right, env))


def _infer(t: Term, pending: list, location: str):
    if isinstance(t, Val):
        return _shape(t.value, {})
    iso = t.iso
    if isinstance(iso, IsoRef):
        raise TypeCheckError(SHAPE_MISMATCH, f"unexpanded reference to iso {iso.name}", location)
    if iso.type is not None:
        lhs, rhs = _lift(iso.type.lhs), _lift(iso.type.rhs)
    else:
        lhs, rhs = _Hole(), _Hole()
        for p, q in iso.clauses:
            env: dict = {}
            _unify(_shape(p, env), lhs, location)
            _unify(_shape(q, env), rhs, location)
        pending.append((iso, lhs, rhs))
    _unify(_infer(t.arg, pending, location), lhs, location)
    return rhs


def _annotate(t: Term, types) -> Term:
    # ``types`` yields inferred iso types in outer-to-inner order
    if isinstance(t, Val):
        return t
    iso = t.iso
    if iso.type is None:
        iso = Iso(iso.clauses, next(types))
    return App(iso, _annotate(t.arg, types))


def _check_typed(t: Term, a: ValueType, enums, location: str) -> None:
    if isinstance(t, Val):
        check_value({}, t.value, a, enums, location)
        return
    T = t.iso.type
    if T.rhs != a:
        raise TypeCheckError(
            SHAPE_MISMATCH,
            f"iso produces {print_type(T.rhs)}, expected {print_type(a)}", location)
    check_iso(t.iso, T.lhs, T.rhs, enums, location)
    _check_typed(t.arg, T.lhs, enums, location)


def check_term(t: Term, a: ValueType, enums: Mapping[str, EnumDecl] | None = None,
               location: str = "term") -> Term:
    """Check the closed term ``t`` at type ``a``.

    Returns the elaborated term, in which every iso literal carries its type.
    Named references must have been expanded beforehand.
    """
    for v in _term_values(t):
        if free_vars(v):
            raise TypeCheckError(NON_CLOSED_TERM,
                                 f"free variables {', '.join(free_vars(v))}", location)
    pending: list = []
    _unify(_infer(t, pending, location), _lift(a), location)
    types = iter([IsoType(_resolve(l), _resolve(r)) for _, l, r in pending])
    elaborated = _annotate(t, types)
    _check_typed(elaborated, a, enums, location)
    return elaborated


def infer_term_type(t: Term) -> ValueType:
    """Most general type of ``t`` with unconstrained parts defaulted to unit."""
    pending: list = []
    return _resolve(_infer(t, pending, "term"))


def _term_values(t: Term):
    while isinstance(t, App):
        t = t.arg
    return [t.value]


@dataclass
class Verdict:
    name: str
    ok: bool
    error: TypeCheckError | None = field(default=None)


def check_program(program) -> list[Verdict]:
    """Per-definition verdicts, plus one for ``main`` when present."""
    enums = program.enum_table()
    out = []
    for d in program.defs:
        try:
            check_iso(d.iso, d.type.lhs, d.type.rhs, enums, f"iso {d.name}")
            out.append(Verdict(d.name, True))
        except TypeCheckError as exc:
            out.append(Verdict(d.name, False, exc))
    if program.main is not None:
        from .syntax import expand_refs
        try:
            t = expand_refs(program.main, program.iso_table())
            check_term(t, infer_term_type(t), enums, "main")
            out.append(Verdict("main", True))
        except TypeCheckError as exc:
            out.append(Verdict("main", False, exc))
    return out
