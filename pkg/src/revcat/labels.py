"""Structural element labels for finite-set objects.

Labels are nested tuples so that objects built from type denotations have
elements in bijection with closed values:

    UNIT                 the single element of the tensor unit
    ("enum", name, i)    the i-th constant of an enum
    ("inl", x) ("inr", x)
    ("pair", x, y)

Any other hashable (typically a short string such as ``"a"``) is an opaque
atom.  The textual form is used by the JSON interfaces.
"""

from __future__ import annotations

import re

from .syntax import Const, InjL, InjR, Pair, Value

UNIT = ("unit",)


def enum_label(name: str, index: int):
    return ("enum", name, index)


def left(x):
    return ("inl", x)


def right(x):
    return ("inr", x)


def pair(x, y):
    return ("pair", x, y)


def value_to_label(v: Value):
    """The element of a type's denotation corresponding to a closed value."""
    if isinstance(v, Const):
        return UNIT if v.enum == "unit" else enum_label(v.enum, v.index)
    if isinstance(v, InjL):
        return left(value_to_label(v.value))
    if isinstance(v, InjR):
        return right(value_to_label(v.value))
    if isinstance(v, Pair):
        return pair(value_to_label(v.left), value_to_label(v.right))
    raise ValueError(f"not a closed value: {v!r}")


def label_key(x) -> str:
    return render(x)


def sort_labels(xs):
    return sorted(xs, key=label_key)


def render(x) -> str:
    if x == UNIT:
        return "*"
    if isinstance(x, tuple) and x:
        tag = x[0]
        if tag == "enum":
            return f"{x[1]}#{x[2]}"
        if tag == "inl":
            return f"inl {render(x[1])}"
        if tag == "inr":
            return f"inr {render(x[1])}"
        if tag == "pair":
            return f"({render(x[1])}, {render(x[2])})"
    return str(x)


_TOK = re.compile(r"\s*(\*|\(|\)|,|[A-Za-z0-9_']+#\d+|[A-Za-z0-9_']+)")


def parse_label(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if m is None:
            raise ValueError(f"bad label {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    it = iter(tokens + [None])
    tok = [next(it)]

    def take():
        t = tok[0]
        tok[0] = next(it)
        return t

    def go():
        t = take()
        if t == "*":
            return UNIT
        if t in ("inl", "inr"):
            inner = go()
            return left(inner) if t == "inl" else right(inner)
        if t == "(":
            a = go()
            if take() != ",":
                raise ValueError(f"bad label {text!r}")
            b = go()
            if take() != ")":
                raise ValueError(f"bad label {text!r}")
            return pair(a, b)
        if t is None or t in (")", ","):
            raise ValueError(f"bad label {text!r}")
        if "#" in t:
            name, i = t.split("#")
            return enum_label(name, int(i))
        return t

    out = go()
    if tok[0] is not None:
        raise ValueError(f"trailing input in label {text!r}")
    return out
