"""Syntax tree for session files, plus the canonical pretty-printer.

Every node carries a source ``span`` that is ignored by equality, so a
re-parsed pretty-printed session compares equal to the original.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self):
        return f"line {self.line}, col {self.col}"


NOSPAN = Span(0, 0, 0, 0)


def _span():
    return field(default=NOSPAN, compare=False, repr=False)


# --- polynomial expressions ----------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    span: Span = _span()


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class Neg:
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: Span = _span()


@dataclass(frozen=True)
class Name:
    """A reference to a declared name."""

    ident: str
    span: Span = _span()


# --- declarations ----------------------------------------------------------------

@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple
    weights: tuple | None
    relations: tuple
    span: Span = _span()


@dataclass(frozen=True)
class FreeDecl:
    name: str
    ring: Name
    rank: int
    shifts: tuple | None
    span: Span = _span()


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    free: Name
    columns: tuple  # tuple of tuples of expressions
    span: Span = _span()


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: Name
    gens: tuple
    span: Span = _span()


@dataclass(frozen=True)
class MapDecl:
    name: str
    source: Name
    target: Name
    images: tuple
    span: Span = _span()


@dataclass(frozen=True)
class PrimeItem:
    gens: tuple
    length: int | None
    span: Span = _span()


@dataclass(frozen=True)
class PrimesDecl:
    name: str
    ring: Name
    items: tuple
    span: Span = _span()


@dataclass(frozen=True)
class ExtensionDecl:
    name: str
    map: Name
    degree: int | None
    maximal: tuple | None  # tuple of tuples of expressions
    span: Span = _span()


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple  # of Name
    span: Span = _span()


@dataclass(frozen=True)
class SessionAst:
    statements: tuple
    span: Span = _span()

    @property
    def commands(self):
        return [s for s in self.statements if isinstance(s, Command)]


COMMANDS = (
    "mult",
    "brpoly",
    "hs",
    "fitting",
    "check-projection",
    "check-additivity",
    "check-dvr",
)


# --- pretty-printing -------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(e) -> str:
    return _fmt(e, 0)


def _fmt(e, ctx: int) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        base = _fmt(e.base, 4)
        if isinstance(e.base, Pow):
            base = f"({base})"  # powers do not chain in the grammar
        return f"{base}^{e.exp}"
    if isinstance(e, Neg):
        inner = _fmt(e.operand, 3)
        text = f"-{inner}"
        return f"({text})" if ctx > 2 else text
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = _fmt(e.left, p)
        right = _fmt(e.right, p + 1)
        sep = f" {e.op} " if p == 1 else e.op
        text = f"{left}{sep}{right}"
        return f"({text})" if p < ctx else text
    raise TypeError(f"not an expression: {e!r}")


def _exprs(xs) -> str:
    return ", ".join(format_expr(x) for x in xs)


def _ints(xs) -> str:
    return ", ".join(str(x) for x in xs)


def format_statement(s) -> str:
    if isinstance(s, RingDecl):
        out = f"ring {s.name} = Q[{', '.join(s.variables)}]"
        if s.weights is not None:
            out += f" weights ({_ints(s.weights)})"
        if s.relations:
            out += f" / ({_exprs(s.relations)})"
        return out + ";"
    if isinstance(s, FreeDecl):
        extra = f", shifts ({_ints(s.shifts)})" if s.shifts is not None else ""
        return f"free {s.name} = free({s.ring.ident}, {s.rank}{extra});"
    if isinstance(s, ModuleDecl):
        cols = ", ".join(f"[{_exprs(c)}]" for c in s.columns)
        return f"module {s.name} = sub({s.free.ident}, [{cols}]);"
    if isinstance(s, IdealDecl):
        gens = "".join(f", {format_expr(g)}" for g in s.gens)
        return f"ideal {s.name} = ideal({s.ring.ident}{gens});"
    if isinstance(s, MapDecl):
        return f"map {s.name} = hom({s.source.ident} -> {s.target.ident}, [{_exprs(s.images)}]);"
    if isinstance(s, PrimesDecl):
        items = []
        for it in s.items:
            t = f"({_exprs(it.gens)})"
            if it.length is not None:
                t += f" : {it.length}"
            items.append(t)
        return f"primes {s.name} = declare({s.ring.ident}, [{', '.join(items)}]);"
    if isinstance(s, ExtensionDecl):
        out = f"extension {s.name} = ext({s.map.ident}"
        if s.degree is not None:
            out += f", {s.degree}"
        if s.maximal is not None:
            out += ", [" + ", ".join(f"({_exprs(m)})" for m in s.maximal) + "]"
        return out + ");"
    if isinstance(s, Command):
        return f"{s.name}({', '.join(a.ident for a in s.args)});"
    raise TypeError(f"not a statement: {s!r}")


def pretty(session: SessionAst) -> str:
    return "".join(format_statement(s) + "\n" for s in session.statements)
