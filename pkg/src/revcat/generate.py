"""Seeded generators and exhaustive enumerators for well-typed programs."""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator, Mapping

from .evaluate import enumerate_closed_values, matching_clauses
from .syntax import (
    BUILTIN_ENUMS, UNIT, App, Const, EnumDecl, EnumRef, InjL, InjR, Iso,
    IsoDef, IsoRef, IsoType, Pair, Prod, Program, Sum, Term, Val, Value,
    ValueType, Var, free_vars,
)
from .typecheck import (
    canonical, check_iso, check_orthogonal, check_program, infer_pattern_context,
)

GEN_ENUMS = (EnumDecl("bit", ("zero", "one")), EnumDecl("tri", ("p", "q", "r")))


def value_depth(v: Value) -> int:
    if isinstance(v, (Var, Const)):
        return 0
    if isinstance(v, (InjL, InjR)):
        return 1 + value_depth(v.value)
    return 1 + max(value_depth(v.left), value_depth(v.right))


def type_size(a: ValueType) -> int:
    if isinstance(a, EnumRef):
        return 1
    return 1 + type_size(a.left) + type_size(a.right)


def rename_canonically(v: Value, prefix: str = "x") -> Value:
    """Rename the variables of ``v`` to prefix0, prefix1, ... left to right."""
    names = {x: f"{prefix}{i}" for i, x in enumerate(dict.fromkeys(free_vars(v)))}

    def go(w):
        if isinstance(w, Var):
            return Var(names[w.name])
        if isinstance(w, InjL):
            return InjL(go(w.value))
        if isinstance(w, InjR):
            return InjR(go(w.value))
        if isinstance(w, Pair):
            return Pair(go(w.left), go(w.right))
        return w

    return go(v)


class _Fresh:
    def __init__(self):
        self.n = 0

    def __call__(self) -> Var:
        self.n += 1
        return Var(f"v{self.n}")


class ProgramGenerator:
    """Random well-typed programs; see :func:`generate_programs`."""

    def __init__(self, rng: random.Random, max_clauses: int, max_pattern_depth: int,
                 max_term_depth: int, minimal: bool = False):
        self.rng = rng
        self.max_clauses = max_clauses
        self.max_depth = max_pattern_depth
        self.max_term_depth = max_term_depth
        self.minimal = minimal
        self.enum_decls = () if minimal else GEN_ENUMS
        self.enums = dict(BUILTIN_ENUMS)
        self.enums.update((e.name, e) for e in self.enum_decls)
        self.atoms = [UNIT] + [EnumRef(e.name) for e in self.enum_decls]

    # types and patterns

    def random_type(self, depth: int) -> ValueType:
        rng = self.rng
        if depth == 0 or rng.random() < 0.35:
            return rng.choice(self.atoms)
        ctor = Sum if rng.random() < 0.55 else Prod
        return ctor(self.random_type(depth - 1), self.random_type(depth - 1))

    def random_pattern(self, a: ValueType, depth: int, fresh) -> Value:
        rng = self.rng
        if isinstance(a, EnumRef):
            if rng.random() < 0.6:
                return fresh()
            i = rng.randrange(self.enums[a.name].arity)
            return Const(a.name, i, self.enums[a.name].constants[i])
        if depth == 0 or rng.random() < 0.4:
            return fresh()
        if isinstance(a, Sum):
            if rng.random() < 0.5:
                return InjL(self.random_pattern(a.left, depth - 1, fresh))
            return InjR(self.random_pattern(a.right, depth - 1, fresh))
        return Pair(self.random_pattern(a.left, depth - 1, fresh),
                    self.random_pattern(a.right, depth - 1, fresh))

    def orthogonal_patterns(self, a: ValueType, k: int, depth: int, fresh) -> list[Value]:
        """Up to ``k`` pairwise orthogonal patterns of type ``a`` (at least one)."""
        rng = self.rng
        if k <= 1:
            return [self.random_pattern(a, depth, fresh)]
        if isinstance(a, EnumRef):
            decl = self.enums[a.name]
            idx = rng.sample(range(decl.arity), min(k, decl.arity))
            if len(idx) == 1:
                return [self.random_pattern(a, depth, fresh)]
            return [Const(a.name, i, decl.constants[i]) for i in idx]
        if depth == 0:
            return [fresh()]
        if isinstance(a, Sum):
            k1 = rng.randint(1, k - 1)
            return ([InjL(p) for p in self.orthogonal_patterns(a.left, k1, depth - 1, fresh)]
                    + [InjR(p) for p in self.orthogonal_patterns(a.right, k - k1, depth - 1, fresh)])
        if rng.random() < 0.5:
            firsts = self.orthogonal_patterns(a.left, k, depth - 1, fresh)
            return [Pair(p, self.random_pattern(a.right, depth - 1, fresh)) for p in firsts]
        seconds = self.orthogonal_patterns(a.right, k, depth - 1, fresh)
        return [Pair(self.random_pattern(a.left, depth - 1, fresh), p) for p in seconds]

    def arrange(self, ctx: list[tuple[str, ValueType]]) -> tuple[Value, ValueType]:
        """A random value using each variable of ``ctx`` exactly once."""
        rng = self.rng
        if not ctx:
            atom = rng.choice(self.atoms)
            decl = self.enums[atom.name]
            i = rng.randrange(decl.arity)
            return Const(atom.name, i, decl.constants[i]), atom
        items = list(ctx)
        rng.shuffle(items)
        nodes = [(Var(x), a) for x, a in items]
        while len(nodes) > 1:
            i = rng.randrange(len(nodes) - 1)
            (v, a), (w, b) = nodes[i], nodes[i + 1]
            nodes[i:i + 2] = [(Pair(v, w), Prod(a, b))]
        v, a = nodes[0]
        r = rng.random()
        if r < 0.15:
            other = rng.choice(self.atoms)
            return InjL(v), Sum(a, other)
        if r < 0.3:
            other = rng.choice(self.atoms)
            return InjR(v), Sum(other, a)
        return v, a

    def tag(self, items: list[tuple[Value, ValueType]]) -> tuple[list[Value], ValueType]:
        """Make values pairwise orthogonal by distinct injection paths."""
        if len(items) == 1:
            return [items[0][0]], items[0][1]
        k = self.rng.randint(1, len(items) - 1)
        left, a = self.tag(items[:k])
        right, b = self.tag(items[k:])
        return [InjL(v) for v in left] + [InjR(v) for v in right], Sum(a, b)

    def random_iso(self, a: ValueType) -> tuple[Iso, ValueType]:
        """A well-typed iso with input type ``a``; returns it with its output type."""
        for _ in range(200):
            k = self.rng.randint(1, self.max_clauses)
            fresh = _Fresh()
            lefts = [rename_canonically(p) for p in
                     self.orthogonal_patterns(a, k, self.max_depth, fresh)]
            if any(value_depth(p) > self.max_depth for p in lefts):
                continue
            ctxs = [canonical(infer_pattern_context(p, a, self.enums)) for p in lefts]
            arranged = [self.arrange(ctx) for ctx in ctxs]
            order = list(range(len(arranged)))
            self.rng.shuffle(order)
            tagged, b = self.tag([arranged[i] for i in order])
            rights: list[Value] = [None] * len(lefts)
            for pos, i in enumerate(order):
                rights[i] = tagged[pos]
            if any(value_depth(q) > self.max_depth for q in rights):
                continue
            iso = Iso(tuple(zip(lefts, rights)), IsoType(a, b))
            check_iso(iso, a, b, self.enums)
            return iso, b
        x = Var("x0")
        return Iso(((x, x),), IsoType(a, a)), a

    def random_argument(self, iso: Iso, a: ValueType) -> Value:
        values = enumerate_closed_values(a, self.enums)
        if self.rng.random() < 0.8:
            hits = [v for v in values if matching_clauses(iso, v)]
            if hits:
                return self.rng.choice(hits)
        return self.rng.choice(values)

    def program(self) -> Program:
        rng = self.rng
        depth = rng.randint(1, self.max_term_depth)
        a = self.random_type(min(self.max_depth, 2))
        defs = []
        t_type = a
        for k in range(depth):
            iso, b = self.random_iso(t_type)
            defs.append(IsoDef(f"f{k}", IsoType(t_type, b), Iso(iso.clauses)))
            t_type = b
        first = Iso(defs[0].iso.clauses, defs[0].type)
        term: Term = Val(self.random_argument(first, a))
        for d in defs:
            term = App(IsoRef(d.name), term)
        return Program(tuple(self.enum_decls), tuple(defs), term)


def generate_programs(seed: int, max_clauses: int = 4, max_pattern_depth: int = 3,
                      max_term_depth: int = 3, minimal: bool = False) -> Iterator[Program]:
    """Deterministic stream of well-typed programs.

    Every program declares its enums, defines ``f0 .. fn`` and has a ``main``
    term applying them in sequence to a closed value.  The stream is empty
    when any bound is not positive.
    """
    if min(max_clauses, max_pattern_depth, max_term_depth) <= 0:
        return
    gen = ProgramGenerator(random.Random(seed), max_clauses, max_pattern_depth,
                           max_term_depth, minimal)
    while True:
        p = gen.program()
        bad = [v for v in check_program(p) if not v.ok]
        if bad:
            raise AssertionError(f"generator produced an ill-typed program: {bad[0].error}")
        yield p


# ---------------------------------------------------------------------------
# exhaustive enumeration


def all_patterns(a: ValueType, enums: Mapping[str, EnumDecl] | None = None) -> list[Value]:
    """Every linear pattern of type ``a``, variables named canonically."""
    enums = BUILTIN_ENUMS if enums is None else enums

    def go(a):
        out = [Var("_")]
        if isinstance(a, EnumRef):
            out += enumerate_closed_values(a, enums)
        elif isinstance(a, Sum):
            out += [InjL(p) for p in go(a.left)] + [InjR(p) for p in go(a.right)]
        else:
            out += [Pair(p, q) for p, q in product(go(a.left), go(a.right))]
        return out

    result = []
    for p in go(a):
        counter = iter(range(1 << 30))
        result.append(_number_vars(p, counter))
    return result


def _number_vars(v: Value, counter) -> Value:
    if isinstance(v, Var):
        return Var(f"x{next(counter)}")
    if isinstance(v, InjL):
        return InjL(_number_vars(v.value, counter))
    if isinstance(v, InjR):
        return InjR(_number_vars(v.value, counter))
    if isinstance(v, Pair):
        left = _number_vars(v.left, counter)
        return Pair(left, _number_vars(v.right, counter))
    return v


def value_size(v: Value) -> int:
    if isinstance(v, (Var, Const)):
        return 1
    if isinstance(v, (InjL, InjR)):
        return 1 + value_size(v.value)
    return 1 + value_size(v.left) + value_size(v.right)


def term_size(t: Term) -> int:
    if isinstance(t, Val):
        return value_size(t.value)
    iso = t.iso
    clauses = sum(value_size(p) + value_size(q) for p, q in iso.clauses)
    return 1 + clauses + term_size(t.arg)


def minimal_types(max_size: int, max_values: int) -> list[ValueType]:
    """Types of the minimal language up to ``max_size`` nodes and ``max_values`` values."""
    by_size: dict[int, list[ValueType]] = {1: [UNIT]}
    for n in range(3, max_size + 1, 2):
        out = []
        for k in range(1, n - 1, 2):
            for l, r in product(by_size.get(k, []), by_size.get(n - 1 - k, [])):
                out += [Sum(l, r), Prod(l, r)]
        by_size[n] = out
    types = [a for n in sorted(by_size) for a in by_size[n]]
    return [a for a in types if len(enumerate_closed_values(a)) <= max_values]


def values_with_context(b: ValueType, ctx: Mapping[str, ValueType], max_size: int,
                        enums: Mapping[str, EnumDecl] | None = None) -> list[Value]:
    """Values of type ``b`` using each variable of ``ctx`` exactly once."""
    enums = BUILTIN_ENUMS if enums is None else enums

    def go(b, avail: frozenset, budget: int):
        # yields (value, used variables)
        if budget <= 0:
            return
        for x in avail:
            if ctx[x] == b:
                yield Var(x), frozenset([x])
        if isinstance(b, EnumRef):
            for c in enumerate_closed_values(b, enums):
                yield c, frozenset()
        elif isinstance(b, Sum):
            for v, used in go(b.left, avail, budget - 1):
                yield InjL(v), used
            for v, used in go(b.right, avail, budget - 1):
                yield InjR(v), used
        else:
            for v, used in go(b.left, avail, budget - 2):
                rest = avail - used
                for w, used2 in go(b.right, rest, budget - 1 - value_size(v)):
                    yield Pair(v, w), used | used2

    full = frozenset(ctx)
    return [v for v, used in go(b, full, max_size) if used == full]


def enumerate_isos(a: ValueType, b: ValueType, max_size: int,
                   enums: Mapping[str, EnumDecl] | None = None) -> list[Iso]:
    """Every well-typed iso ``a <-> b`` whose clauses total at most ``max_size`` nodes."""
    enums = BUILTIN_ENUMS if enums is None else enums
    clauses = []
    for p in all_patterns(a, enums):
        sp = value_size(p)
        if sp + 1 > max_size:
            continue
        ctx = infer_pattern_context(p, a, enums)
        for q in values_with_context(b, ctx, max_size - sp, enums):
            clauses.append((p, q, sp + value_size(q)))
    isos = []

    def extend(chosen, budget):
        if chosen:
            isos.append(Iso(tuple((p, q) for p, q, _ in chosen), IsoType(a, b)))
        for c in clauses:
            if c[2] > budget or c in chosen:
                continue
            if all(check_orthogonal(c[0], d[0]) and check_orthogonal(c[1], d[1]) for d in chosen):
                extend(chosen + [c], budget - c[2])

    extend([], max_size)
    return isos


def enumerate_terms(types: list[ValueType], max_size: int,
                    enums: Mapping[str, EnumDecl] | None = None) -> dict[ValueType, list[Term]]:
    """Every closed well-typed term of each type in ``types`` up to ``max_size`` nodes.

    Iso arguments range over ``types`` as well; isos carry their types.
    """
    enums = BUILTIN_ENUMS if enums is None else enums
    exact: dict[tuple[ValueType, int], list[Term]] = {}
    for a in types:
        for v in enumerate_closed_values(a, enums):
            exact.setdefault((a, value_size(v)), []).append(Val(v))
    iso_cache: dict[tuple, list[Iso]] = {}

    def isos(a, b, budget):
        key = (a, b, budget)
        if key not in iso_cache:
            iso_cache[key] = enumerate_isos(a, b, budget, enums)
        return iso_cache[key]

    for n in range(1, max_size + 1):
        for b in types:
            bucket = exact.setdefault((b, n), [])
            for a in types:
                for arg_size in range(1, n - 2):
                    args = exact.get((a, arg_size), [])
                    if not args:
                        continue
                    for iso in isos(a, b, n - 1 - arg_size):
                        if term_size(App(iso, args[0])) != n:
                            continue
                        bucket.extend(App(iso, t) for t in args)
    return {b: [t for n in range(1, max_size + 1) for t in exact.get((b, n), [])]
            for b in types}
