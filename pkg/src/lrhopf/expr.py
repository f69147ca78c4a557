"""Parser for the ASCII expression grammar.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x"INT | "X"INT | "(" expr ")"

``x1..xk`` are base-ring variables, ``X1..Xr`` are Lie generators (only
meaningful for enveloping elements).  Division is allowed by nonzero
constants only, which covers rational literals such as ``1/2``.
The parser builds a small tree which :func:`evaluate` folds into any ring
that provides ``const``, ``variable`` and ``generator``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Protocol

from .poly import Poly

GRAMMAR = (
    "expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ; "
    "unary := '-' unary | power ; power := atom ('^' INT)? ; "
    "atom := INT | x<i> | X<i> | '(' expr ')'"
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_NAME = re.compile(r"[A-Za-z_]\w*")


@dataclass(frozen=True)
class Node:
    kind: str  # num | var | gen | add | sub | mul | div | neg | pow
    pos: int
    value: Any = None
    args: tuple = ()


def _tokenize(text: str):
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            tokens.append(("int", int(text[pos:end]), pos))
            pos = end
        elif ch.isalpha() or ch == "_":
            m = _NAME.match(text, pos)
            name = m.group(0)
            if name[0] in "xX" and name[1:].isdigit():
                tokens.append(("var" if name[0] == "x" else "gen", int(name[1:]), pos))
            else:
                raise ParseError(f"unknown name {name!r}", pos, text)
            pos = m.end()
        elif ch in "+-*/^()":
            tokens.append((ch, ch, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos, text)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[2], self.text)
        return tok

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = Node("add" if op[0] == "+" else "sub", op[2], args=(node, rhs))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = Node("mul" if op[0] == "*" else "div", op[2], args=(node, rhs))
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return Node("neg", tok[2], args=(self.unary(),))
        if tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "^":
            op = self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal", tok[2], self.text)
            self.take()
            return Node("pow", op[2], value=tok[1], args=(base,))
        return base

    def atom(self) -> Node:
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            return Node("num", tok[2], value=Fraction(tok[1]))
        if kind in ("var", "gen"):
            if tok[1] < 1:
                raise ParseError("index must start at 1", tok[2], self.text)
            return Node(kind, tok[2], value=tok[1] - 1)
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", tok[2], self.text)
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)


def parse(text: str) -> Node:
    return _Parser(text).parse()


class Ring(Protocol):
    def const(self, c: Fraction) -> Any: ...
    def variable(self, i: int) -> Any: ...
    def generator(self, i: int) -> Any: ...


def evaluate(node: Node, ring: Ring, text: str = ""):
    """Fold a parse tree into ``ring``; index errors become :class:`ParseError`."""

    def go(n: Node):
        k = n.kind
        if k == "num":
            return ring.const(n.value)
        if k in ("var", "gen"):
            try:
                return ring.variable(n.value) if k == "var" else ring.generator(n.value)
            except (IndexError, KeyError, ValueError) as exc:
                raise ParseError(str(exc), n.pos, text) from None
        if k == "neg":
            return -go(n.args[0])
        if k == "add":
            return go(n.args[0]) + go(n.args[1])
        if k == "sub":
            return go(n.args[0]) - go(n.args[1])
        if k == "mul":
            return go(n.args[0]) * go(n.args[1])
        if k == "div":
            den = _constant_value(n.args[1])
            if den is None:
                raise ParseError("division only by a nonzero numeric constant", n.pos, text)
            return go(n.args[0]) * (1 / den)
        if k == "pow":
            base = go(n.args[0])
            result = ring.const(Fraction(1))
            for _ in range(n.value):
                result = result * base
            return result
        raise AssertionError(k)

    return go(node)


def _constant_value(node: Node) -> Fraction | None:
    k = node.kind
    if k == "num":
        return node.value if node.value else None
    if k == "neg":
        v = _constant_value(node.args[0])
        return -v if v is not None else None
    if k == "pow":
        v = _constant_value(node.args[0])
        return v**node.value if v is not None else None
    if k in ("mul", "div"):
        a, b = _constant_value(node.args[0]), _constant_value(node.args[1])
        if a is None or b is None:
            return None
        if k == "div" and not b:
            return None
        return a * b if k == "mul" else a / b
    return None


class PolyRing:
    """Evaluation target for plain polynomial expressions."""

    def __init__(self, nvars: int):
        self._poly = Poly
        self.nvars = nvars

    def const(self, c):
        return self._poly.const(self.nvars, c)

    def variable(self, i):
        if not 0 <= i < self.nvars:
            raise IndexError(f"unknown variable x{i + 1} (ring has {self.nvars} variables)")
        return self._poly.var(self.nvars, i)

    def generator(self, i):
        raise ValueError(f"generator X{i + 1} is not allowed in a polynomial")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse ``text`` into a canonical polynomial in ``nvars`` variables."""
    return evaluate(parse(text), PolyRing(nvars), text)
