"""
Expression Parser
Recursive-descent parser for algebra expressions such as "v - e e* + (1/2) e f*"
"""
import re
from typing import List, NamedTuple

from config.settings import POLYNOMIAL_VARIABLE
from models.algebra import AlgebraElement, LeavittPathAlgebra
from models.errors import ExpressionSyntaxError, UnknownGenerator

TOKEN_PATTERN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[-+*^()−])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(src: str) -> List[Token]:
    """Split src into tokens; a '*' glued to a name is the involution"""
    tokens: List[Token] = []
    pos = 0
    while pos < len(src):
        match = TOKEN_PATTERN.match(src, pos)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character '{src[pos]}'", pos)
        kind = match.lastgroup
        text = match.group()
        if kind == 'op':
            if text == '−':
                text = '-'
            if text == '*':
                glued = tokens and tokens[-1].kind == 'name' and tokens[-1].position + len(tokens[-1].text) == pos
                kind = 'star' if glued else 'times'
            else:
                kind = text
        if kind != 'ws':
            tokens.append(Token(kind, text, pos))
        pos = match.end()
    tokens.append(Token('end', '', len(src)))
    return tokens


class ExpressionParser:
    """expr := [sign] term (sign term)*; term := factor ([*] factor)*;
    factor := [-] primary ('^' ('*' | int))*; primary := p/q | name [*] | ( expr )"""

    FACTOR_START = ('number', 'name', '(')

    def __init__(self, src: str, algebra: LeavittPathAlgebra):
        self.src = src
        self.algebra = algebra
        self.tokens = tokenize(src)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            shown = token.text or 'end of input'
            raise ExpressionSyntaxError(f"expected '{kind}' but found '{shown}'", token.position)
        return self.advance()

    def parse(self) -> AlgebraElement:
        if self.peek().kind == 'end':
            raise ExpressionSyntaxError("empty expression", 0)
        value = self.parse_expr()
        token = self.peek()
        if token.kind != 'end':
            raise ExpressionSyntaxError(f"unexpected '{token.text}'", token.position)
        return value.normalize()

    def parse_expr(self) -> AlgebraElement:
        negative = False
        if self.peek().kind in ('+', '-'):
            negative = self.advance().kind == '-'
        value = self.parse_term()
        if negative:
            value = -value
        while self.peek().kind in ('+', '-'):
            op = self.advance().kind
            rhs = self.parse_term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def parse_term(self) -> AlgebraElement:
        value = self.parse_factor()
        while True:
            kind = self.peek().kind
            if kind == 'times':
                self.advance()
                value = value * self.parse_factor()
            elif kind in self.FACTOR_START:
                value = value * self.parse_factor()
            else:
                return value

    def parse_factor(self) -> AlgebraElement:
        if self.peek().kind == '-':
            self.advance()
            return -self.parse_factor()
        value = self.parse_primary()
        while self.peek().kind == '^':
            self.advance()
            token = self.peek()
            if token.kind in ('times', 'star'):
                self.advance()
                value = value.star()
            elif token.kind == 'number' and '/' not in token.text:
                self.advance()
                value = value ** int(token.text)
            else:
                raise ExpressionSyntaxError("expected '*' or a nonnegative integer after '^'", token.position)
        return value

    def parse_primary(self) -> AlgebraElement:
        token = self.peek()
        if token.kind == 'number':
            self.advance()
            numerator, _, denominator = token.text.partition('/')
            if denominator and int(denominator) == 0:
                raise ExpressionSyntaxError("zero denominator", token.position)
            ring = self.algebra.ring
            return self.algebra.scalar(ring.from_fraction(int(numerator), int(denominator or 1)))
        if token.kind == 'name':
            self.advance()
            value = self.resolve(token)
            if self.peek().kind == 'star':
                self.advance()
                value = value.star()
            return value
        if token.kind == '(':
            self.advance()
            value = self.parse_expr()
            self.expect(')')
            return value
        shown = token.text or 'end of input'
        raise ExpressionSyntaxError(f"unexpected '{shown}'", token.position)

    def resolve(self, token: Token) -> AlgebraElement:
        algebra = self.algebra
        if algebra.ring.polynomial and token.text == POLYNOMIAL_VARIABLE:
            return algebra.indeterminate()
        graph = algebra.graph
        if graph.has_vertex(token.text):
            return algebra.vertex(token.text)
        if graph.has_edge(token.text):
            return algebra.edge(token.text)
        raise UnknownGenerator(token.text, token.position)


def parse_expression(src: str, algebra: LeavittPathAlgebra) -> AlgebraElement:
    return ExpressionParser(src, algebra).parse()
