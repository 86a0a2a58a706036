"""Polynomial text syntax.

Grammar: rational literals (``-3/2``), variables from the active ordering,
``^`` with non-negative integer exponents, explicit ``*`` products, ``+``,
``-`` and parentheses.  Whitespace is insignificant.  Ideals are parsed as
comma-separated generator lists.
"""

from __future__ import annotations

from fractions import Fraction

from .orderings import OrderingSpec
from .poly import Polynomial

DEFAULT_ORDERING = OrderingSpec()


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Lexer:
    PUNCT = "+-*^/(),"

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.index = 0

    def _scan(self) -> None:
        text, i = self.text, 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("number", text[i:j], i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("name", text[i:j], i))
                i = j
                continue
            if ch in self.PUNCT:
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", "", len(text)))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def accept(self, kind: str) -> tuple[str, str, int] | None:
        if self.tokens[self.index][0] == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok


class _Parser:
    def __init__(self, text: str, ordering: OrderingSpec):
        self.lexer = _Lexer(text)
        self.ordering = ordering

    def parse_polynomial(self) -> Polynomial:
        p = self.expr()
        tok = self.lexer.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def parse_ideal(self) -> tuple[Polynomial, ...]:
        gens = [self.expr()]
        while self.lexer.accept(","):
            gens.append(self.expr())
        tok = self.lexer.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return tuple(gens)

    def expr(self) -> Polynomial:
        sign = 1
        while True:
            if self.lexer.accept("+"):
                continue
            if self.lexer.accept("-"):
                sign = -sign
                continue
            break
        total = self.term().scale(sign)
        while True:
            if self.lexer.accept("+"):
                total = total + self.term()
            elif self.lexer.accept("-"):
                total = total - self.term()
            else:
                return total

    def term(self) -> Polynomial:
        p = self.factor()
        while self.lexer.accept("*"):
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.primary()
        if self.lexer.accept("^"):
            tok = self.lexer.peek()
            if tok[0] == "-":
                raise ParseError("negative exponent", tok[2])
            num = self.lexer.expect("number", "an integer exponent")
            return p ** int(num[1])
        return p

    def primary(self) -> Polynomial:
        tok = self.lexer.next()
        kind, text, pos = tok
        if kind == "-":
            return -self.primary()
        if kind == "+":
            return self.primary()
        if kind == "number":
            value = Fraction(int(text))
            if self.lexer.accept("/"):
                den = self.lexer.expect("number", "a denominator")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value /= int(den[1])
            return Polynomial.constant(self.ordering, value)
        if kind == "name":
            if text not in self.ordering.var_names:
                raise ParseError(f"unknown variable {text!r}", pos)
            i = self.ordering.var_names.index(text)
            m = tuple(1 if j == i else 0 for j in range(self.ordering.num_vars))
            return Polynomial.monomial(self.ordering, m)
        if kind == "(":
            p = self.expr()
            self.lexer.expect(")", "a closing parenthesis")
            return p
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse_polynomial(text: str, ordering: OrderingSpec = DEFAULT_ORDERING) -> Polynomial:
    return _Parser(text, ordering).parse_polynomial()


def parse_ideal(text: str, ordering: OrderingSpec = DEFAULT_ORDERING) -> tuple[Polynomial, ...]:
    return _Parser(text, ordering).parse_ideal()
