"""Hand-written recursive-descent parser for scalar arithmetic expressions.

Grammar (standard precedence, ``^`` right-associative and binding tighter
than unary minus):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | FUNC '(' expr ')' | VAR | '(' expr ')'

Variables are ``x1 .. xN``; the admitted functions are ``sin``, ``cos``,
``exp``, ``sqrt``, ``abs``.  Parsed expressions evaluate vectorized on
``(m, N)`` float arrays, one value per row.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ExpressionSyntaxError, UnknownIdentifierError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, text, position) triples; raises on stray characters."""
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ExpressionSyntaxError(f"unexpected character {text[bad_pos]!r}", bad_pos)
        for kind in ("number", "ident", "op"):
            lexeme = match.group(kind)
            if lexeme is not None:
                tokens.append((kind, lexeme, match.start(kind)))
                break
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class Expression:
    """A parsed expression over variables x1..xN, evaluable on point batches."""

    def __init__(self, text: str, dimension: int, root):
        self.text = text
        self.dimension = dimension
        self._root = root

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        single = points.ndim == 1
        if single:
            points = points[None, :]
        if points.shape[1] != self.dimension:
            from .errors import DimensionMismatchError

            raise DimensionMismatchError(
                f"expression over {self.dimension} variables evaluated at points of dimension {points.shape[1]}"
            )
        values = self._root(points)
        values = np.broadcast_to(np.asarray(values, dtype=float), (points.shape[0],))
        return float(values[0]) if single else np.array(values, dtype=float)

    def __repr__(self):
        return f"Expression({self.text!r}, dimension={self.dimension})"


class _Parser:
    def __init__(self, text: str, dimension: int):
        self.text = text
        self.dimension = dimension
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op: str):
        kind, lexeme, pos = self.peek()
        if kind != "op" or lexeme != op:
            raise ExpressionSyntaxError(f"expected '{op}'", pos)
        return self.advance()

    def parse(self):
        root = self.expr()
        kind, lexeme, pos = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected trailing input {lexeme!r}", pos)
        return root

    def expr(self):
        node = self.term()
        while True:
            kind, lexeme, _ = self.peek()
            if kind == "op" and lexeme in "+-":
                self.advance()
                rhs = self.term()
                node = _binary(lexeme, node, rhs)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, lexeme, _ = self.peek()
            if kind == "op" and lexeme in "*/":
                self.advance()
                rhs = self.unary()
                node = _binary(lexeme, node, rhs)
            else:
                return node

    def unary(self):
        kind, lexeme, _ = self.peek()
        if kind == "op" and lexeme in "+-":
            self.advance()
            operand = self.unary()
            if lexeme == "-":
                return lambda X, f=operand: -f(X)
            return operand
        return self.power()

    def power(self):
        base = self.atom()
        kind, lexeme, _ = self.peek()
        if kind == "op" and lexeme == "^":
            self.advance()
            exponent = self.unary()
            return lambda X, b=base, e=exponent: np.power(b(X), e(X))
        return base

    def atom(self):
        kind, lexeme, pos = self.advance()
        if kind == "number":
            value = float(lexeme)
            return lambda X, v=value: np.full(X.shape[0], v)
        if kind == "ident":
            next_kind, next_lexeme, _ = self.peek()
            if next_kind == "op" and next_lexeme == "(":
                func = FUNCTIONS.get(lexeme)
                if func is None:
                    raise UnknownIdentifierError(lexeme, pos)
                self.advance()
                inner = self.expr()
                self.expect_op(")")
                return lambda X, f=func, g=inner: f(g(X))
            return self.variable(lexeme, pos)
        if kind == "op" and lexeme == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ExpressionSyntaxError("unexpected end of expression", pos)
        raise ExpressionSyntaxError(f"unexpected token {lexeme!r}", pos)

    def variable(self, name: str, pos: int):
        match = re.fullmatch(r"x([1-9]\d*)", name)
        if match is None:
            raise UnknownIdentifierError(name, pos)
        index = int(match.group(1)) - 1
        if index >= self.dimension:
            raise UnknownIdentifierError(name, pos)
        return lambda X, i=index: X[:, i]


def _binary(op: str, lhs, rhs):
    if op == "+":
        return lambda X: lhs(X) + rhs(X)
    if op == "-":
        return lambda X: lhs(X) - rhs(X)
    if op == "*":
        return lambda X: lhs(X) * rhs(X)
    return lambda X: lhs(X) / rhs(X)


def parse_expression(text: str, dimension: int) -> Expression:
    """Parse one scalar expression over x1..x{dimension}."""
    root = _Parser(text, dimension).parse()
    return Expression(text, dimension, root)
