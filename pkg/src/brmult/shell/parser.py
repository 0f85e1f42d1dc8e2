"""Lexer and recursive-descent parser for session files.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    ring NAME = Q[ids] [weights (ints)] [/ (polys)];
    free NAME = free(RING, rank [, shifts (ints)]);
    module NAME = sub(FREE, [[polys], ...]);        # inner lists are generators
    ideal NAME = ideal(RING, polys);
    map NAME = hom(R1 -> R2, [polys]);
    primes NAME = declare(RING, [(polys) [: length], ...]);
    extension NAME = ext(MAP [, degree] [, [(polys), ...]]);
    COMMAND(args);

Polynomials use ``^`` for powers; ``*`` may be omitted between factors and
``/`` divides by an integer constant.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import BrimError
from .ast import (
    COMMANDS,
    BinOp,
    Command,
    ExtensionDecl,
    FreeDecl,
    IdealDecl,
    MapDecl,
    ModuleDecl,
    Name,
    Neg,
    Num,
    Pow,
    PrimeItem,
    PrimesDecl,
    RingDecl,
    SessionAst,
    Span,
    Var,
)


class ParseError(BrimError):
    def __init__(self, message: str, span: Span):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, CMD, OP, EOF
    text: str
    span: Span


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<cmd>(?:check-projection|check-additivity|check-dvr)(?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>[0-9]+)
  | (?P<op>->|[-+*/^()\[\],;:=])
    """,
    re.VERBOSE,
)


def tokenize(text: str):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", Span(line, col, line, col + 1))
        kind = m.lastgroup
        lexeme = m.group()
        span = Span(line, col, line, col + len(lexeme))
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                tokens.append(Token({"cmd": "CMD", "ident": "IDENT", "int": "INT", "op": "OP"}[kind], lexeme, span))
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("EOF", "", Span(line, col, line, col)))
    return tokens


_DECL_KEYWORDS = {"ring", "free", "module", "ideal", "map", "primes", "extension"}


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers ---------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("OP", "IDENT")

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str, what=None) -> Token:
        if not self.at(text):
            self.fail(f"expected {what or repr(text)}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message: str):
        found = self.tok.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", self.tok.span)

    def span_from(self, start: Token) -> Span:
        last = self.tokens[self.i - 1]
        return Span(start.span.line, start.span.col, last.span.end_line, last.span.end_col)

    # statements --------------------------------------------------------------
    def session(self) -> SessionAst:
        stmts = []
        first = self.tok
        while self.tok.kind != "EOF":
            stmts.append(self.statement())
        return SessionAst(tuple(stmts), self.span_from(first) if stmts else first.span)

    def statement(self):
        t = self.tok
        if t.kind == "IDENT" and t.text in _DECL_KEYWORDS and self.peek().kind == "IDENT":
            node = getattr(self, f"decl_{t.text}")()
        elif (t.kind == "CMD" or (t.kind == "IDENT" and t.text in COMMANDS)) and self.peek().text == "(":
            node = self.command()
        else:
            self.fail("expected a declaration or command")
        self.expect(";", "';'")
        return node

    def _header(self, keyword: str):
        start = self.expect(keyword)
        name = self.expect_kind("IDENT", "a name").text
        self.expect("=", "'='")
        return start, name

    def name(self) -> Name:
        t = self.expect_kind("IDENT", "a name")
        return Name(t.text, t.span)

    def integer(self, what="an integer") -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        v = int(self.expect_kind("INT", what).text)
        return -v if neg else v

    def int_tuple(self):
        self.expect("(")
        vals = [self.integer()]
        while self.at(","):
            self.advance()
            vals.append(self.integer())
        self.expect(")", "')'")
        return tuple(vals)

    def decl_ring(self):
        start, name = self._header("ring")
        fld = self.expect_kind("IDENT", "a coefficient field")
        if fld.text not in ("Q", "QQ"):
            raise ParseError(f"unknown field {fld.text!r}; write Q and choose a prime field with --field",
                             fld.span)
        self.expect("[", "'['")
        names = [self.expect_kind("IDENT", "a variable name").text]
        while self.at(","):
            self.advance()
            names.append(self.expect_kind("IDENT", "a variable name").text)
        self.expect("]", "']'")
        weights = None
        if self.at("weights"):
            self.advance()
            weights = self.int_tuple()
        rels = ()
        if self.at("/"):
            self.advance()
            self.expect("(", "'('")
            rels = tuple(self.expr_list(")"))
            self.expect(")", "')'")
        return RingDecl(name, tuple(names), weights, rels, self.span_from(start))

    def decl_free(self):
        start, name = self._header("free")
        self.expect("free")
        self.expect("(")
        ring = self.name()
        self.expect(",")
        rank = self.integer("a rank")
        shifts = None
        if self.at(","):
            self.advance()
            self.expect("shifts")
            shifts = self.int_tuple()
        self.expect(")", "')'")
        return FreeDecl(name, ring, rank, shifts, self.span_from(start))

    def decl_module(self):
        start, name = self._header("module")
        self.expect("sub")
        self.expect("(")
        free = self.name()
        self.expect(",")
        self.expect("[", "'[' opening the generator list")
        cols = []
        if not self.at("]"):
            cols.append(self.bracket_list())
            while self.at(","):
                self.advance()
                cols.append(self.bracket_list())
        self.expect("]", "']'")
        self.expect(")", "')'")
        return ModuleDecl(name, free, tuple(cols), self.span_from(start))

    def bracket_list(self):
        self.expect("[", "'[' opening a generator")
        items = self.expr_list("]")
        self.expect("]", "']'")
        return tuple(items)

    def decl_ideal(self):
        start, name = self._header("ideal")
        self.expect("ideal")
        self.expect("(")
        ring = self.name()
        gens = []
        while self.at(","):
            self.advance()
            gens.append(self.expr())
        self.expect(")", "')'")
        return IdealDecl(name, ring, tuple(gens), self.span_from(start))

    def decl_map(self):
        start, name = self._header("map")
        self.expect("hom")
        self.expect("(")
        src = self.name()
        self.expect("->", "'->'")
        dst = self.name()
        self.expect(",")
        images = self.bracket_list()
        self.expect(")", "')'")
        return MapDecl(name, src, dst, images, self.span_from(start))

    def decl_primes(self):
        start, name = self._header("primes")
        self.expect("declare")
        self.expect("(")
        ring = self.name()
        self.expect(",")
        self.expect("[")
        items = [self.prime_item()]
        while self.at(","):
            self.advance()
            items.append(self.prime_item())
        self.expect("]", "']'")
        self.expect(")", "')'")
        return PrimesDecl(name, ring, tuple(items), self.span_from(start))

    def prime_item(self):
        start = self.expect("(", "'(' opening a prime")
        gens = self.expr_list(")")
        self.expect(")", "')'")
        length = None
        if self.at(":"):
            self.advance()
            length = self.integer("a length")
        return PrimeItem(tuple(gens), length, self.span_from(start))

    def decl_extension(self):
        start, name = self._header("extension")
        self.expect("ext")
        self.expect("(")
        m = self.name()
        degree = None
        maximal = None
        if self.at(",") and self.peek().kind == "INT":
            self.advance()
            degree = self.integer("a degree")
        if self.at(","):
            self.advance()
            self.expect("[", "'[' opening the maximal ideals")
            maximal = []
            while True:
                self.expect("(", "'(' opening a maximal ideal")
                maximal.append(tuple(self.expr_list(")")))
                self.expect(")", "')'")
                if not self.at(","):
                    break
                self.advance()
            self.expect("]", "']'")
            maximal = tuple(maximal)
        self.expect(")", "')'")
        return ExtensionDecl(name, m, degree, maximal, self.span_from(start))

    def command(self):
        start = self.advance()
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.name())
            while self.at(","):
                self.advance()
                args.append(self.name())
        self.expect(")", "')'")
        return Command(start.text, tuple(args), self.span_from(start))

    # expressions --------------------------------------------------------------
    def expr_list(self, closer: str):
        items = []
        if self.at(closer):
            return items
        items.append(self.expr())
        while self.at(","):
            self.advance()
            items.append(self.expr())
        return items

    def expr(self):
        start = self.tok
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            left = BinOp(op, left, right, self.span_from(start))
        return left

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("INT", "IDENT") or (t.kind == "OP" and t.text == "(")

    def term(self):
        start = self.tok
        left = self.unary()
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance().text
            elif self._starts_factor():
                op = "*"
            else:
                return left
            right = self.unary()
            left = BinOp(op, left, right, self.span_from(start))

    def unary(self):
        if self.at("-"):
            start = self.advance()
            operand = self.unary()
            return Neg(operand, self.span_from(start))
        return self.power()

    def power(self):
        start = self.tok
        base = self.atom()
        if self.at("^"):
            self.advance()
            exp = int(self.expect_kind("INT", "a non-negative exponent").text)
            return Pow(base, exp, self.span_from(start))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), t.span)
        if t.kind == "IDENT":
            self.advance()
            return Var(t.text, t.span)
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")", "')'")
            return e
        self.fail("expected a polynomial")


_KINDS = {
    RingDecl: "ring",
    FreeDecl: "free",
    ModuleDecl: "module",
    IdealDecl: "ideal",
    MapDecl: "map",
    PrimesDecl: "primes",
    ExtensionDecl: "extension",
}


def _references(stmt):
    if isinstance(stmt, FreeDecl):
        return [stmt.ring]
    if isinstance(stmt, ModuleDecl):
        return [stmt.free]
    if isinstance(stmt, (IdealDecl, PrimesDecl)):
        return [stmt.ring]
    if isinstance(stmt, MapDecl):
        return [stmt.source, stmt.target]
    if isinstance(stmt, ExtensionDecl):
        return [stmt.map]
    if isinstance(stmt, Command):
        return list(stmt.args)
    return []


def resolve(session: SessionAst) -> dict:
    """Check that every referenced name is declared earlier; return name -> kind."""
    kinds: dict = {}
    for stmt in session.statements:
        for ref in _references(stmt):
            if ref.ident not in kinds:
                raise ParseError(f"unresolved name {ref.ident!r}", ref.span)
        if not isinstance(stmt, Command):
            kinds[stmt.name] = _KINDS[type(stmt)]
    return kinds


def parse_session(text: str, check_names: bool = True) -> SessionAst:
    session = Parser(text).session()
    if check_names:
        resolve(session)
    return session
