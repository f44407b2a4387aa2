"""Matching, substitution, call-by-value reduction and syntactic inversion."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .syntax import (
    BUILTIN_ENUMS, App, Const, EnumDecl, EnumRef, InjL, InjR, Iso, IsoRef, Pair,
    Sum, Term, Val, Value, ValueType, Var,
)

Valuation = dict  # variable name -> closed Value


class EvaluationError(Exception):
    """Raised on states that typing rules out (non-linear patterns, unbound variables)."""


def match_value(pattern: Value, w: Value) -> Valuation | None:
    """The valuation ``s`` with ``s(pattern) == w``, or None when there is none."""
    if isinstance(pattern, Var):
        return {pattern.name: w}
    if isinstance(pattern, Const):
        return {} if pattern == w else None
    if isinstance(pattern, InjL):
        return match_value(pattern.value, w.value) if isinstance(w, InjL) else None
    if isinstance(pattern, InjR):
        return match_value(pattern.value, w.value) if isinstance(w, InjR) else None
    if not isinstance(w, Pair):
        return None
    s1 = match_value(pattern.left, w.left)
    if s1 is None:
        return None
    s2 = match_value(pattern.right, w.right)
    if s2 is None:
        return None
    if s1.keys() & s2.keys():
        raise EvaluationError(f"non-linear pattern binds {sorted(s1.keys() & s2.keys())} twice")
    s1.update(s2)
    return s1


def substitute(sigma: Mapping[str, Value], v: Value) -> Value:
    if isinstance(v, Var):
        try:
            return sigma[v.name]
        except KeyError:
            raise EvaluationError(f"variable {v.name} is not in the valuation") from None
    if isinstance(v, Const):
        return v
    if isinstance(v, InjL):
        return InjL(substitute(sigma, v.value))
    if isinstance(v, InjR):
        return InjR(substitute(sigma, v.value))
    return Pair(substitute(sigma, v.left), substitute(sigma, v.right))


# ---------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class Reduced:
    term: Term


@dataclass(frozen=True)
class Final:
    value: Value


@dataclass(frozen=True)
class Stuck:
    at: Term


EvalOutcome = Reduced | Final | Stuck


def matching_clauses(iso: Iso, v: Value) -> list[tuple[int, Valuation]]:
    """All clauses whose left pattern matches ``v``, with their valuations."""
    out = []
    for i, (p, _) in enumerate(iso.clauses):
        sigma = match_value(p, v)
        if sigma is not None:
            out.append((i, sigma))
    return out


def fire(iso: Iso, v: Value) -> tuple[int, Valuation, Value] | None:
    """Clause index, valuation and result of applying ``iso`` to the value ``v``."""
    for i, (p, q) in enumerate(iso.clauses):
        sigma = match_value(p, v)
        if sigma is not None:
            return i, sigma, substitute(sigma, q)
    return None


def step_term(t: Term) -> EvalOutcome:
    if isinstance(t, Val):
        return Final(t.value)
    if isinstance(t.iso, IsoRef):
        raise EvaluationError(f"unexpanded reference to iso {t.iso.name}")
    if isinstance(t.arg, App):
        inner = step_term(t.arg)
        if isinstance(inner, Reduced):
            return Reduced(App(t.iso, inner.term))
        return inner
    hit = fire(t.iso, t.arg.value)
    if hit is None:
        return Stuck(t)
    return Reduced(Val(hit[2]))


def reduction_sequence(t: Term) -> tuple[list[Term], object]:
    """Every term visited from ``t`` and the final outcome (Final or Stuck)."""
    seen = [t]
    while True:
        out = step_term(seen[-1])
        if not isinstance(out, Reduced):
            return seen, out
        seen.append(out.term)


def eval_term(t: Term):
    """The value ``t`` reduces to, or a ``Stuck`` outcome."""
    _, out = reduction_sequence(t)
    return out.value if isinstance(out, Final) else out


def invert_iso(iso: Iso) -> Iso:
    return Iso(
        tuple((q, p) for p, q in iso.clauses),
        iso.type.flipped() if iso.type is not None else None,
    )


# ---------------------------------------------------------------------------
# finite value spaces


def enumerate_closed_values(a: ValueType,
                            enums: Mapping[str, EnumDecl] | None = None) -> list[Value]:
    enums = BUILTIN_ENUMS if enums is None else enums
    if isinstance(a, EnumRef):
        decl = enums[a.name]
        return [Const(a.name, i, c) for i, c in enumerate(decl.constants)]
    if isinstance(a, Sum):
        return ([InjL(v) for v in enumerate_closed_values(a.left, enums)]
                + [InjR(v) for v in enumerate_closed_values(a.right, enums)])
    return [Pair(v, w) for v, w in product(enumerate_closed_values(a.left, enums),
                                          enumerate_closed_values(a.right, enums))]
