"""Text front-ends: infix readers and writers for formulas.

Boolean grammar: keywords ``and`` / ``or`` / ``not`` / ``true`` / ``false``
with precedence not > and > or, parentheses for grouping, identifiers
matching ``[A-Za-z_][A-Za-z0-9_]*``. The extended grammar adds comparison
atoms ``term (> | < | <= | >= | =) term`` over integer terms built from
``+ - * //`` and unary minus.

Variables are numbered densely in first-occurrence order, so reparsing a
rendered formula reproduces it node for node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import And, Const, Formula, Not, Or, Var
from .smt import (
    Add,
    Atom,
    FloorDiv,
    IntConst,
    IntTerm,
    IntVar,
    Mul,
    SmtFormula,
    Sub,
)

_KEYWORDS = {"and", "or", "not", "true", "false"}
_CMP_OPS = {">", "<", "<=", ">=", "="}
_ARITH_OPS = {"+", "-", "*", "//"}

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|//|<=|>=|[()<>=+\-*]")


class ParseError(ValueError):
    """Syntax error; ``position`` is a character offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # "ident" | "int" | "op" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unknown token {text[i]!r}", i)
        lexeme = m.group()
        if lexeme[0].isalpha() or lexeme[0] == "_":
            kind = "ident"
        elif lexeme[0].isdigit():
            kind = "int"
        else:
            kind = "op"
        tokens.append(_Tok(kind, lexeme, i))
        i = m.end()
    tokens.append(_Tok("end", "", len(text)))
    return tokens


class _ParserBase:
    def __init__(self, tokens: list[_Tok]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> None:
        tok = self.advance()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    def finish(self, node):
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return node


class _BoolParser(_ParserBase):
    def __init__(self, tokens: list[_Tok]):
        super().__init__(tokens)
        self._vars: dict[str, Var] = {}

    def intern(self, name: str) -> Var:
        var = self._vars.get(name)
        if var is None:
            var = Var(len(self._vars), name)
            self._vars[name] = var
        return var

    def parse_or(self) -> Formula:
        parts = [self.parse_and()]
        while self.at_keyword("or"):
            self.advance()
            parts.append(self.parse_and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_and(self) -> Formula:
        parts = [self.parse_unary()]
        while self.at_keyword("and"):
            self.advance()
            parts.append(self.parse_unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_unary(self) -> Formula:
        if self.at_keyword("not"):
            self.advance()
            return Not(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.advance()
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_or()
            self.expect_op(")")
            return inner
        if tok.kind == "ident":
            if tok.text == "true":
                return Const(True)
            if tok.text == "false":
                return Const(False)
            if tok.text in _KEYWORDS:
                raise ParseError(f"unexpected keyword {tok.text!r}", tok.pos)
            return self.intern(tok.text)
        raise ParseError(
            f"expected a formula, found {tok.text or 'end of input'!r}", tok.pos
        )


def parse(text: str) -> Formula:
    """Parse Boolean infix text into a formula tree."""
    parser = _BoolParser(_tokenize(text))
    return parser.finish(parser.parse_or())


def render(f: Formula) -> str:
    """Canonical infix text; reparsing reproduces parser-labeled formulas."""
    return _render_or(f)


def _render_or(f: Formula) -> str:
    if isinstance(f, Or):
        return " or ".join(_render_and(c) for c in f.children)
    return _render_and(f)


def _render_and(f: Formula) -> str:
    if isinstance(f, And):
        return " and ".join(_render_unary(c) for c in f.children)
    if isinstance(f, Or):
        return "(" + _render_or(f) + ")"
    return _render_unary(f)


def _render_unary(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return "not " + _render_unary(f.child)
    return "(" + _render_or(f) + ")"


class _SmtParser(_ParserBase):
    """Recursive descent with backtracking for the parenthesis ambiguity:
    ``(`` may open either a nested formula or an arithmetic term."""

    def parse_or(self):
        parts = [self.parse_and()]
        while self.at_keyword("or"):
            self.advance()
            parts.append(self.parse_and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_and(self):
        parts = [self.parse_unary()]
        while self.at_keyword("and"):
            self.advance()
            parts.append(self.parse_unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_unary(self):
        if self.at_keyword("not"):
            self.advance()
            return Not(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            saved = self.i
            self.advance()
            try:
                inner = self.parse_or()
                self.expect_op(")")
            except ParseError:
                self.i = saved
            else:
                after = self.peek()
                if not (after.kind == "op" and after.text in (_CMP_OPS | _ARITH_OPS)):
                    return inner
                self.i = saved  # "(term) <op> ..." — reparse as a term
        if tok.kind == "ident" and tok.text in ("true", "false"):
            self.advance()
            return Const(tok.text == "true")
        return self.parse_comparison()

    def parse_comparison(self) -> Atom:
        lhs = self.parse_sum()
        tok = self.peek()
        if not (tok.kind == "op" and tok.text in _CMP_OPS):
            raise ParseError(
                f"expected a comparison operator, found {tok.text or 'end of input'!r}",
                tok.pos,
            )
        self.advance()
        rhs = self.parse_sum()
        return Atom(tok.text, lhs, rhs)

    def parse_sum(self) -> IntTerm:
        term = self.parse_product()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in ("+", "-"):
                self.advance()
                rhs = self.parse_product()
                term = Add(term, rhs) if tok.text == "+" else Sub(term, rhs)
            else:
                return term

    def parse_product(self) -> IntTerm:
        term = self.parse_term_unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in ("*", "//"):
                self.advance()
                rhs = self.parse_term_unary()
                term = Mul(term, rhs) if tok.text == "*" else FloorDiv(term, rhs)
            else:
                return term

    def parse_term_unary(self) -> IntTerm:
        tok = self.advance()
        if tok.kind == "op" and tok.text == "-":
            inner = self.parse_term_unary()
            if isinstance(inner, IntConst):
                return IntConst(-inner.value)
            return Sub(IntConst(0), inner)
        if tok.kind == "int":
            return IntConst(int(tok.text))
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            return IntVar(tok.text)
        if tok.kind == "op" and tok.text == "(":
            term = self.parse_sum()
            self.expect_op(")")
            return term
        raise ParseError(
            f"expected an integer term, found {tok.text or 'end of input'!r}", tok.pos
        )


def parse_smt(text: str) -> SmtFormula:
    """Parse the extended grammar into a formula over integer atoms."""
    parser = _SmtParser(_tokenize(text))
    return SmtFormula.from_tree(parser.finish(parser.parse_or()))


def render_term(t: IntTerm) -> str:
    return _render_sum(t)


def _render_sum(t: IntTerm) -> str:
    if isinstance(t, Add):
        return f"{_render_sum(t.left)} + {_render_product(t.right)}"
    if isinstance(t, Sub):
        return f"{_render_sum(t.left)} - {_render_product(t.right)}"
    return _render_product(t)


def _render_product(t: IntTerm) -> str:
    if isinstance(t, Mul):
        return f"{_render_product(t.left)} * {_render_term_unary(t.right)}"
    if isinstance(t, FloorDiv):
        return f"{_render_product(t.left)} // {_render_term_unary(t.right)}"
    return _render_term_unary(t)


def _render_term_unary(t: IntTerm) -> str:
    if isinstance(t, IntConst):
        return str(t.value)
    if isinstance(t, IntVar):
        return t.name
    return "(" + _render_sum(t) + ")"


def render_atom(atom: Atom) -> str:
    return f"{render_term(atom.lhs)} {atom.op} {render_term(atom.rhs)}"


def render_smt(sf: SmtFormula) -> str:
    """Canonical text for an integer-atom formula."""

    def rec_or(node) -> str:
        if isinstance(node, Or):
            return " or ".join(rec_and(c) for c in node.children)
        return rec_and(node)

    def rec_and(node) -> str:
        if isinstance(node, And):
            return " and ".join(rec_unary(c) for c in node.children)
        if isinstance(node, Or):
            return "(" + rec_or(node) + ")"
        return rec_unary(node)

    def rec_unary(node) -> str:
        if isinstance(node, Const):
            return "true" if node.value else "false"
        if isinstance(node, Not):
            return "not " + rec_unary(node.child)
        if isinstance(node, (And, Or)):
            return "(" + rec_or(node) + ")"
        return render_atom(sf.atoms[node.index])

    return rec_or(sf.tree)
