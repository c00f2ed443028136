"""Recursive-descent parser for the ``.grp`` presentation language.

Grammar::

    file      := ["group" NAME "="] "<" names ["|" relations] ">"
    relations := [relation ("," relation)*]
    relation  := word ["=" word]
    word      := factor (["*"] factor)*
    factor    := atom ["^" exponent]
    atom      := NAME | "1" | "(" word ")" | "[" word "," word "]"
    exponent  := ["-"] (INT | NAME | "(" expr ")")

Exponent names are looked up in the ``params`` mapping; parenthesised
exponents are integer expressions with ``+ - *`` and the functions
``inv(a, n)`` (inverse of a mod n) and ``gcd(a, b)``.
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

from nilbal.errors import (
    EmptyGeneratorListError,
    PresentationSyntaxError,
    UnknownGeneratorError,
)
from nilbal.presentation.words import Presentation, Word, commutator

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<sym>[<>|,=*^()\[\]+\-])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "int", "sym", "eof"
    value: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(
                f"Unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("name", "int", "sym"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(
        self,
        text: str,
        params: Mapping[str, int] | None = None,
        names: tuple[str, ...] | None = None,
    ):
        self.tokens = tokenize(text)
        self.pos = 0
        self.params = dict(params or {})
        self.names: tuple[str, ...] = names or ()

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, message: str, tok: Token | None = None) -> PresentationSyntaxError:
        t = tok or self.tok
        found = t.value if t.kind != "eof" else "end of input"
        return PresentationSyntaxError(f"{message}, found {found!r}", t.line, t.column)

    def _at(self, value: str) -> bool:
        return self.tok.kind == "sym" and self.tok.value == value

    def _expect(self, value: str) -> Token:
        if not self._at(value):
            raise self._error(f"Expected {value!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def _expect_name(self) -> Token:
        if self.tok.kind != "name":
            raise self._error("Expected a name")
        tok = self.tok
        self.pos += 1
        return tok

    # -- presentations ------------------------------------------------------

    def presentation(self) -> Presentation:
        name = None
        if self.tok.kind == "name" and self.tok.value == "group":
            self.pos += 1
            name = self._expect_name().value
            self._expect("=")
        self._expect("<")
        names: list[str] = []
        if self.tok.kind == "name":
            names.append(self._expect_name().value)
            while self._at(","):
                self.pos += 1
                names.append(self._expect_name().value)
        if not names:
            raise EmptyGeneratorListError(
                f"Presentation declares no generators (line {self.tok.line}, "
                f"column {self.tok.column})"
            )
        if len(set(names)) != len(names):
            raise self._error("Duplicate generator name")
        self.names = tuple(names)
        relators: list[Word] = []
        if self._at("|"):
            self.pos += 1
            if not self._at(">"):
                relators.append(self.relation())
                while self._at(","):
                    self.pos += 1
                    relators.append(self.relation())
        self._expect(">")
        if self.tok.kind != "eof":
            raise self._error("Expected end of input")
        return Presentation(self.names, tuple(relators), name=name)

    def relation(self) -> Word:
        lhs = self.word()
        if self._at("="):
            self.pos += 1
            rhs = self.word()
            return lhs * rhs.inverse()
        return lhs

    def _starts_factor(self) -> bool:
        t = self.tok
        return (
            t.kind == "name"
            or (t.kind == "int" and t.value == "1")
            or (t.kind == "sym" and t.value in ("(", "["))
        )

    def word(self) -> Word:
        result = self.factor()
        while True:
            if self._at("*"):
                self.pos += 1
                result = result * self.factor()
            elif self._starts_factor():
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Word:
        base = self.atom()
        if self._at("^"):
            self.pos += 1
            base = base ** self.exponent()
        return base

    def atom(self) -> Word:
        t = self.tok
        if t.kind == "name":
            self.pos += 1
            if t.value not in self.names:
                raise UnknownGeneratorError(t.value, t.line, t.column)
            return Word.gen(self.names.index(t.value))
        if t.kind == "int" and t.value == "1":
            self.pos += 1
            return Word.identity()
        if self._at("("):
            self.pos += 1
            inner = self.word()
            self._expect(")")
            return inner
        if self._at("["):
            self.pos += 1
            u = self.word()
            self._expect(",")
            v = self.word()
            self._expect("]")
            return commutator(u, v)
        raise self._error("Expected a generator, '1', '(' or '['")

    # -- exponents ----------------------------------------------------------

    def exponent(self) -> int:
        if self._at("-"):
            self.pos += 1
            return -self.exponent()
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return int(t.value)
        if t.kind == "name":
            self.pos += 1
            return self._param(t)
        if self._at("("):
            self.pos += 1
            value = self.expr()
            self._expect(")")
            return value
        raise self._error("Expected an exponent")

    def _param(self, t: Token) -> int:
        if t.value not in self.params:
            raise PresentationSyntaxError(f"Unknown parameter {t.value!r}", t.line, t.column)
        return int(self.params[t.value])

    def expr(self) -> int:
        value = self.term()
        while self._at("+") or self._at("-"):
            op = self.tok.value
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> int:
        value = self.unary()
        while self._at("*"):
            self.pos += 1
            value *= self.unary()
        return value

    def unary(self) -> int:
        if self._at("-"):
            self.pos += 1
            return -self.unary()
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return int(t.value)
        is_call = t.kind == "name" and t.value in ("inv", "gcd")
        if is_call and self.tokens[self.pos + 1].value == "(":
            self.pos += 2
            a = self.expr()
            self._expect(",")
            b = self.expr()
            self._expect(")")
            if t.value == "gcd":
                return math.gcd(a, b)
            try:
                return pow(a, -1, b)
            except ValueError:
                raise PresentationSyntaxError(
                    f"{a} is not invertible mod {b}", t.line, t.column
                ) from None
        if t.kind == "name":
            self.pos += 1
            return self._param(t)
        if self._at("("):
            self.pos += 1
            value = self.expr()
            self._expect(")")
            return value
        raise self._error("Expected an integer expression")


def parse(text: str, params: Mapping[str, int] | None = None) -> Presentation:
    """Parse a presentation written in the ``.grp`` language."""
    pres = _Parser(text, params).presentation()
    logger.debug(
        "Parsed presentation %s: %d generators, %d relators",
        pres.name or "<anonymous>",
        pres.rank,
        len(pres.relators),
    )
    return pres


def parse_word(
    text: str, names: tuple[str, ...], params: Mapping[str, int] | None = None
) -> Word:
    """Parse a single word (``u`` or ``u = v``) over the given generator names."""
    parser = _Parser(text, params, names)
    word = parser.relation()
    if parser.tok.kind != "eof":
        raise parser._error("Expected end of word")
    return word


def parse_expr(text: str, params: Mapping[str, int] | None = None) -> int:
    """Evaluate an integer parameter expression such as ``inv(l, k)``."""
    parser = _Parser(text, params)
    value = parser.expr()
    if parser.tok.kind != "eof":
        raise parser._error("Expected end of expression")
    return value


def load_presentation(path: str | Path, params: Mapping[str, int] | None = None) -> Presentation:
    """Read and parse a ``.grp`` file (UTF-8)."""
    text = Path(path).read_text(encoding="utf-8")
    pres = parse(text, params)
    if pres.name is None:
        return Presentation(pres.generator_names, pres.relators, name=Path(path).stem)
    return pres


def render(p: Presentation) -> str:
    """Render a presentation back into the ``.grp`` language; ``parse`` inverts it."""
    gens = ", ".join(p.generator_names)
    rels = ", ".join(p.render_word(r) for r in p.relators)
    body = f"< {gens} | {rels} >" if rels else f"< {gens} | >"
    return f"group {p.name} = {body}" if p.name else body
