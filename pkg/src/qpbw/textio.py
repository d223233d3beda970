"""Canonical text for elements and the expression grammar used by the CLI.

Grammar::

    expr     := ('+'|'-')? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' signed-int)?
    atom     := 'b[' i ',' j ']' | 'g[' j ',' i ']' | 'q' | rational | '(' expr ')'

Printing is canonical (terms in monomial-order descending order, coefficients
in Laurent form) and parse(print(e)) == e for elements over k(q).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .freealg import (
    Element,
    Generator,
    TensorElement,
    Word,
    beta,
    gamma,
    word_str,
)
from .rewrite import triangular_gen_key
from .scalars import Cyclo, Laurent, Rat, format_cyclo, format_laurent

__all__ = [
    "ExpressionSyntaxError",
    "format_element",
    "format_tensor",
    "parse_expression",
    "word_str",
]


class ExpressionSyntaxError(SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _word_key(word: Word) -> tuple:
    return (len(word), tuple(triangular_gen_key(g) for g in word))


def _format_monomial_coeff(c: Laurent) -> str:
    (e, frac), = c.terms.items()
    sign = "-" if frac < 0 else ""
    mag = abs(frac)
    num = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
    if e == 0:
        return f"{sign}{num}"
    qpow = "q" if e == 1 else f"q^{e}"
    if num == "1":
        return f"{sign}{qpow}"
    return f"{sign}{num}*{qpow}"


def _coeff_text(c) -> str:
    """Grammar-compatible text of a coefficient, with any leading sign kept."""
    if isinstance(c, Rat):
        if c.is_laurent():
            lau = c.num
            if lau.is_monomial():
                return _format_monomial_coeff(lau)
            return f"({format_laurent(lau)})"
        num = c.num
        den_text = f"({format_laurent(c.den)})^-1"
        if num.is_monomial():
            return f"{_format_monomial_coeff(num)}*{den_text}"
        return f"({format_laurent(num)})*{den_text}"
    if isinstance(c, Laurent):
        if c.is_monomial():
            return _format_monomial_coeff(c)
        return f"({format_laurent(c)})"
    if isinstance(c, Cyclo):
        return f"({format_cyclo(c)})"
    return str(c)


def _term_text(word: Word, c) -> str:
    body = _coeff_text(c)
    if not word:
        return body
    if body == "1":
        return word_str(word)
    if body == "-1":
        return f"-{word_str(word)}"
    return f"{body}*{word_str(word)}"


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += f" - {p[1:]}"
        else:
            out += f" + {p}"
    return out


def format_element(e: Element) -> str:
    words = sorted(e.terms, key=_word_key, reverse=True)
    return _join_terms([_term_text(w, e.terms[w]) for w in words])


def format_tensor(t: TensorElement) -> str:
    keys = sorted(t.terms, key=lambda k: tuple(_word_key(w) for w in k), reverse=True)
    parts = []
    for key in keys:
        body = _coeff_text(t.terms[key])
        legs = " # ".join(f"({word_str(w)})" for w in key)
        parts.append(legs if body == "1" else f"{body}*{legs}")
    return _join_terms(parts)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<gen>[bg]\s*\[\s*\d+\s*,\s*\d+\s*\])
  | (?P<rat>\d+(?:\s*/\s*\d+)?)
  | (?P<q>q)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group().replace(" ", ""), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


_GEN_RE = re.compile(r"([bg])\[(\d+),(\d+)\]")


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ExpressionSyntaxError(f"expected {op!r}", tok.pos)
        return self.take()

    def parse(self) -> Element:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return e

    def expr(self) -> Element:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
        total = self.term()
        if sign < 0:
            total = -total
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                nxt = self.term()
                total = total + (-nxt if tok.text == "-" else nxt)
            else:
                return total

    def term(self) -> Element:
        total = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                total = total * self.factor()
            else:
                return total

    def factor(self) -> Element:
        base_pos = self.peek().pos
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            exp = self.signed_int()
            if exp >= 0:
                return base**exp
            return _invert(base, base_pos) ** (-exp)
        return base

    def signed_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
            tok = self.peek()
        if tok.kind != "rat" or "/" in tok.text:
            raise ExpressionSyntaxError("expected integer exponent", tok.pos)
        self.take()
        return sign * int(tok.text)

    def atom(self) -> Element:
        tok = self.peek()
        if tok.kind == "gen":
            self.take()
            m = _GEN_RE.fullmatch(tok.text)
            kind, row, col = m.group(1), int(m.group(2)), int(m.group(3))
            ctor = beta if kind == "b" else gamma
            gen = ctor(row, col, self.n)
            return Element.from_generator(gen)
        if tok.kind == "q":
            self.take()
            return Element.unit(Rat.of(Laurent.monomial(1)))
        if tok.kind == "rat":
            self.take()
            if "/" in tok.text:
                a, b = tok.text.split("/")
                from fractions import Fraction

                coeff = Rat.of(Fraction(int(a), int(b)))
            else:
                coeff = Rat.of(int(tok.text))
            return Element.unit(coeff)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExpressionSyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def _invert(e: Element, pos: int) -> Element:
    """Invert a single-term element whose word consists of diagonal letters."""
    if len(e.terms) != 1:
        raise ExpressionSyntaxError("cannot invert a sum", pos)
    (word, coeff), = e.terms.items()
    if any(not g.diagonal for g in word):
        raise ExpressionSyntaxError("cannot invert a non-diagonal word", pos)
    inv_word = tuple(
        Generator("g" if g.kind == "b" else "b", g.row, g.col) for g in reversed(word)
    )
    if not isinstance(coeff, Rat):
        coeff = Rat.of(coeff)
    return Element.from_word(inv_word, coeff.inv())


def parse_expression(text: str, context) -> Element:
    """Parse the CLI algebra grammar against a presentation context.

    ``context`` is anything with an ``n`` attribute (or a plain int); indices
    are validated against the triangle shape of each generator kind.
    """
    n = context if isinstance(context, int) else context.n
    return _Parser(text, n).parse()
