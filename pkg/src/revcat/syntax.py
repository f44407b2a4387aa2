"""Abstract syntax, parser and printer for the reversible pattern-matching language.

Concrete grammar::

    program := enumdecl* isodef* ("main" "=" term)?
    enumdecl := "enum" ident "=" "{" ident ("," ident)* "}"
    isodef   := "iso" ident ":" type "<->" type "{" clause+ "}"
    clause   := "|" value "<->" value
    type     := type1 ("+" type1)*        (left associative)
    type1    := atom ("*" atom)*          (left associative, binds tighter)
    atom     := ident | "(" type ")"
    value    := "inl" value | "inr" value | "(" value "," value ")" | ident
    term     := value | ident term | "{" clause+ "}" term | "(" term ")"

Identifiers resolve to enum constants first, then variables.  ``#`` starts a
line comment.  A builtin ``unit`` enum with the single constant ``tt`` is
always in scope.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class EnumDecl:
    name: str
    constants: tuple[str, ...]

    def __post_init__(self):
        if not self.constants:
            raise ValueError(f"enum {self.name} has no constants")
        if len(set(self.constants)) != len(self.constants):
            raise ValueError(f"enum {self.name} has duplicate constants")

    @property
    def arity(self) -> int:
        return len(self.constants)


UNIT_ENUM = EnumDecl("unit", ("tt",))
BUILTIN_ENUMS: dict[str, EnumDecl] = {"unit": UNIT_ENUM}


@dataclass(frozen=True)
class EnumRef:
    name: str


@dataclass(frozen=True)
class Sum:
    left: "ValueType"
    right: "ValueType"


@dataclass(frozen=True)
class Prod:
    left: "ValueType"
    right: "ValueType"


ValueType = Union[EnumRef, Sum, Prod]
UNIT = EnumRef("unit")


@dataclass(frozen=True)
class IsoType:
    lhs: ValueType
    rhs: ValueType

    def flipped(self) -> "IsoType":
        return IsoType(self.rhs, self.lhs)


# ---------------------------------------------------------------------------
# values, isos, terms


@dataclass(frozen=True)
class Const:
    enum: str
    index: int
    # display name only; two constants are equal iff enum and index agree
    name: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class InjL:
    value: "Value"


@dataclass(frozen=True)
class InjR:
    value: "Value"


@dataclass(frozen=True)
class Pair:
    left: "Value"
    right: "Value"


Value = Union[Const, Var, InjL, InjR, Pair]
TT = Const("unit", 0, "tt")


@dataclass(frozen=True)
class Iso:
    clauses: tuple[tuple[Value, Value], ...]
    type: IsoType | None = None

    def __post_init__(self):
        if not self.clauses:
            raise ValueError("an iso needs at least one clause")


@dataclass(frozen=True)
class IsoRef:
    name: str


@dataclass(frozen=True)
class Val:
    value: Value


@dataclass(frozen=True)
class App:
    iso: Union[Iso, IsoRef]
    arg: "Term"


Term = Union[Val, App]


@dataclass(frozen=True)
class IsoDef:
    name: str
    type: IsoType
    iso: Iso


@dataclass(frozen=True)
class Program:
    enums: tuple[EnumDecl, ...] = ()
    defs: tuple[IsoDef, ...] = ()
    main: Term | None = None

    def enum_table(self) -> dict[str, EnumDecl]:
        table = dict(BUILTIN_ENUMS)
        table.update((e.name, e) for e in self.enums)
        return table

    def iso_table(self) -> dict[str, Iso]:
        """Named isos with their declared types attached, references expanded."""
        table: dict[str, Iso] = {}
        for d in self.defs:
            table[d.name] = Iso(d.iso.clauses, d.type)
        return table

    def get(self, name: str) -> IsoDef:
        for d in self.defs:
            if d.name == name:
                return d
        raise KeyError(name)


def is_closed(v: Value) -> bool:
    return not free_vars(v)


def free_vars(v: Value) -> list[str]:
    """Variables of ``v`` left to right; repeated occurrences are kept."""
    out: list[str] = []
    stack = [v]
    while stack:
        w = stack.pop()
        if isinstance(w, Var):
            out.append(w.name)
        elif isinstance(w, (InjL, InjR)):
            stack.append(w.value)
        elif isinstance(w, Pair):
            stack.append(w.right)
            stack.append(w.left)
    return out


def term_values(t: Term) -> Iterator[Value]:
    while isinstance(t, App):
        t = t.arg
    yield t.value


def count_apps(t: Term) -> int:
    n = 0
    while isinstance(t, App):
        n += 1
        t = t.arg
    return n


def expand_refs(t: Term, isos: Mapping[str, Iso]) -> Term:
    """Replace named iso references by their (typed) literal definitions."""
    if isinstance(t, Val):
        return t
    iso = t.iso
    if isinstance(iso, IsoRef):
        if iso.name not in isos:
            raise KeyError(f"unknown iso {iso.name}")
        iso = isos[iso.name]
    return App(iso, expand_refs(t.arg, isos))


# ---------------------------------------------------------------------------
# printer


def print_type(a: ValueType) -> str:
    if isinstance(a, EnumRef):
        return a.name
    if isinstance(a, Sum):
        right = print_type(a.right)
        if isinstance(a.right, Sum):
            right = f"({right})"
        return f"{print_type(a.left)} + {right}"
    left = print_type(a.left)
    right = print_type(a.right)
    if isinstance(a.left, Sum):
        left = f"({left})"
    if not isinstance(a.right, EnumRef):
        right = f"({right})"
    return f"{left} * {right}"


def _const_name(c: Const, enums: Mapping[str, EnumDecl] | None) -> str:
    if c.name is not None:
        return c.name
    table = enums if enums is not None else BUILTIN_ENUMS
    if c.enum in table:
        return table[c.enum].constants[c.index]
    raise ValueError(f"no name known for constant {c.enum}#{c.index}")


def print_value(v: Value, enums: Mapping[str, EnumDecl] | None = None) -> str:
    if isinstance(v, Const):
        return _const_name(v, enums)
    if isinstance(v, Var):
        return v.name
    if isinstance(v, InjL):
        return f"inl {print_value(v.value, enums)}"
    if isinstance(v, InjR):
        return f"inr {print_value(v.value, enums)}"
    return f"({print_value(v.left, enums)}, {print_value(v.right, enums)})"


def print_clauses(iso: Iso, enums: Mapping[str, EnumDecl] | None = None) -> str:
    parts = [
        f"| {print_value(p, enums)} <-> {print_value(q, enums)}"
        for p, q in iso.clauses
    ]
    return "{ " + " ".join(parts) + " }"


def print_term(t: Term, enums: Mapping[str, EnumDecl] | None = None) -> str:
    if isinstance(t, Val):
        return print_value(t.value, enums)
    head = t.iso.name if isinstance(t.iso, IsoRef) else print_clauses(t.iso, enums)
    return f"{head} {print_term(t.arg, enums)}"


def print_isodef(d: IsoDef, enums: Mapping[str, EnumDecl] | None = None) -> str:
    body = "\n".join(
        f"  | {print_value(p, enums)} <-> {print_value(q, enums)}"
        for p, q in d.iso.clauses
    )
    return (
        f"iso {d.name} : {print_type(d.type.lhs)} <-> {print_type(d.type.rhs)} {{\n"
        f"{body}\n}}"
    )


def print_program(p: Program) -> str:
    enums = p.enum_table()
    lines = [f"enum {e.name} = {{ {', '.join(e.constants)} }}" for e in p.enums]
    lines += [print_isodef(d, enums) for d in p.defs]
    if p.main is not None:
        lines.append(f"main = {print_term(p.main, enums)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parser


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


KEYWORDS = {"enum", "iso", "main", "inl", "inr"}
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow><->)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>[{}|(),+*=:])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "sym" or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        elif kind in ("arrow", "sym"):
            tokens.append(Token("sym", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.enums: dict[str, EnumDecl] = dict(BUILTIN_ENUMS)
        self.declared: list[EnumDecl] = []
        self.constants: dict[str, Const] = {"tt": TT}
        self.isos: set[str] = set()

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, expected=()) -> ParseError:
        t = self.tok
        where = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"{message} at {where}", t.line, t.column, expected)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error("unexpected token", {repr(text)})
        t = self.tok
        self.pos += 1
        return t

    def ident(self) -> str:
        if self.tok.kind != "ident":
            raise self.error("expected identifier", {"identifier"})
        t = self.tok
        self.pos += 1
        return t.text

    # program structure

    def program(self) -> Program:
        defs = []
        main = None
        while self.at("enum"):
            self.enumdecl()
        while self.at("iso"):
            defs.append(self.isodef())
        if self.at("main"):
            self.pos += 1
            self.expect("=")
            main = self.term()
        if self.tok.kind != "eof":
            raise self.error("unexpected token", {"'enum'", "'iso'", "'main'", "end of input"})
        return Program(tuple(self.declared), tuple(defs), main)

    def enumdecl(self):
        self.expect("enum")
        name = self.ident()
        self.expect("=")
        self.expect("{")
        names = [self.ident()]
        while self.at(","):
            self.pos += 1
            names.append(self.ident())
        self.expect("}")
        try:
            decl = EnumDecl(name, tuple(names))
        except ValueError as exc:
            raise self.error(str(exc)) from None
        if name == "unit":
            if decl != UNIT_ENUM:
                raise self.error("the builtin enum unit must be { tt }")
        elif name in self.enums:
            raise self.error(f"enum {name} declared twice")
        else:
            for i, c in enumerate(names):
                if c in self.constants:
                    raise self.error(f"constant {c} already declared")
                self.constants[c] = Const(name, i, c)
        self.enums[name] = decl
        self.declared.append(decl)

    def isodef(self) -> IsoDef:
        self.expect("iso")
        name = self.ident()
        if name in self.isos or name in self.constants:
            raise self.error(f"name {name} already defined")
        self.expect(":")
        lhs = self.type_()
        self.expect("<->")
        rhs = self.type_()
        iso = self.clauses()
        self.isos.add(name)
        return IsoDef(name, IsoType(lhs, rhs), iso)

    def clauses(self) -> Iso:
        self.expect("{")
        clauses = [self.clause()]
        while self.at("|"):
            clauses.append(self.clause())
        self.expect("}")
        return Iso(tuple(clauses))

    def clause(self):
        self.expect("|")
        left = self.value()
        self.expect("<->")
        return left, self.value()

    # types

    def type_(self) -> ValueType:
        a = self.type1()
        while self.at("+"):
            self.pos += 1
            a = Sum(a, self.type1())
        return a

    def type1(self) -> ValueType:
        a = self.atom()
        while self.at("*"):
            self.pos += 1
            a = Prod(a, self.atom())
        return a

    def atom(self) -> ValueType:
        if self.at("("):
            self.pos += 1
            a = self.type_()
            self.expect(")")
            return a
        if self.tok.kind != "ident":
            raise self.error("expected a type", {"identifier", "'('"})
        name = self.ident()
        if name not in self.enums:
            self.pos -= 1
            raise self.error(f"unknown enum {name}")
        return EnumRef(name)

    # values and terms

    def value(self) -> Value:
        if self.at("inl"):
            self.pos += 1
            return InjL(self.value())
        if self.at("inr"):
            self.pos += 1
            return InjR(self.value())
        if self.at("("):
            self.pos += 1
            left = self.value()
            self.expect(",")
            right = self.value()
            self.expect(")")
            return Pair(left, right)
        if self.tok.kind == "ident":
            return self.name_value(self.ident())
        raise self.error("expected a value", {"'inl'", "'inr'", "'('", "identifier"})

    def name_value(self, name: str) -> Value:
        if name in self.constants:
            return self.constants[name]
        if name in self.isos:
            self.pos -= 1
            raise self.error(f"iso {name} used as a value")
        return Var(name)

    def term(self) -> Term:
        if self.at("{"):
            iso = self.clauses()
            return App(iso, self.term())
        if self.tok.kind == "ident" and self.tok.text in self.isos:
            name = self.ident()
            return App(IsoRef(name), self.term())
        if self.at("("):
            self.pos += 1
            inner = self.term()
            if self.at(","):
                if not isinstance(inner, Val):
                    raise self.error("pair components must be values")
                self.pos += 1
                right = self.value()
                self.expect(")")
                return Val(Pair(inner.value, right))
            self.expect(")")
            return inner
        if self.at("inl") or self.at("inr") or self.tok.kind == "ident":
            return Val(self.value())
        raise self.error("expected a term", {"'{'", "'('", "'inl'", "'inr'", "identifier"})


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_term(text: str, enums: Mapping[str, EnumDecl] | None = None,
               isos: set[str] | frozenset[str] = frozenset()) -> Term:
    p = _Parser(text)
    for e in (enums or {}).values():
        if e.name != "unit":
            p.enums[e.name] = e
            for i, c in enumerate(e.constants):
                p.constants[c] = Const(e.name, i, c)
    p.isos = set(isos)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error("trailing input", {"end of input"})
    return t


def parse_type(text: str, enums: Mapping[str, EnumDecl] | None = None) -> ValueType:
    p = _Parser(text)
    p.enums.update(enums or {})
    a = p.type_()
    if p.tok.kind != "eof":
        raise p.error("trailing input", {"end of input"})
    return a


def parse_value(text: str, enums: Mapping[str, EnumDecl] | None = None) -> Value:
    p = _Parser(text)
    for e in (enums or {}).values():
        if e.name != "unit":
            p.enums[e.name] = e
            for i, c in enumerate(e.constants):
                p.constants[c] = Const(e.name, i, c)
    v = p.value()
    if p.tok.kind != "eof":
        raise p.error("trailing input", {"end of input"})
    return v
