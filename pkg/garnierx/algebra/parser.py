from __future__ import annotations

import re
from dataclasses import dataclass

from garnierx.algebra.ratfunc import RatFunc
from garnierx.errors import ParseError, UnknownSymbolError, ZeroDenominatorError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "name" | "op" | "end"
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def names_in(text: str) -> tuple[str, ...]:
    """Symbol names of an expression in order of first use."""
    return tuple(dict.fromkeys(t.text for t in tokenize(text) if t.kind == "name"))


class _Parser:
    def __init__(self, text: str, symbols: tuple[str, ...]) -> None:
        self.tokens = tokenize(text)
        self.i = 0
        self.symbols = symbols

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def _take(self, text: str | None = None) -> Token:
        tok = self.current
        if text is not None and tok.text != text:
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.position)
        self.i += 1
        return tok

    def parse(self) -> RatFunc:
        value = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.position)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.factor()
        while self.current.kind == "op" and self.current.text in "*/":
            tok = self._take()
            rhs = self.factor()
            if tok.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDenominatorError(
                        f"division by the zero function at position {tok.position}"
                    )
                value = value / rhs
        return value

    def factor(self) -> RatFunc:
        value = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self._take()
            sign = 1
            if self.current.kind == "op" and self.current.text in "+-":
                sign = -1 if self._take().text == "-" else 1
            tok = self.current
            if tok.kind != "int":
                raise ParseError("expected an integer exponent", tok.position)
            self._take()
            k = sign * int(tok.text)
            if k < 0 and value.is_zero():
                raise ZeroDenominatorError(
                    f"negative power of zero at position {tok.position}"
                )
            value = value**k
        return value

    def atom(self) -> RatFunc:
        tok = self.current
        if tok.kind == "int":
            self._take()
            return RatFunc.const(int(tok.text), self.symbols)
        if tok.kind == "name":
            self._take()
            if tok.text not in self.symbols:
                raise UnknownSymbolError(
                    f"unknown symbol {tok.text!r} at position {tok.position}"
                )
            return RatFunc.var(tok.text, self.symbols)
        if tok.kind == "op" and tok.text == "(":
            self._take()
            value = self.expr()
            self._take(")")
            return value
        if tok.kind == "op" and tok.text == "-":
            self._take()
            return -self.factor()
        found = tok.text or "end of input"
        raise ParseError(f"unexpected {found!r}", tok.position)


def parse(text: str, symbols: tuple[str, ...] | list[str]) -> RatFunc:
    """Parse ``text`` into a canonical RatFunc over ``symbols``."""
    return _Parser(text, tuple(symbols)).parse()
