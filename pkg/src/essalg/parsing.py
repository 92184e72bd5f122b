"""Expression grammar shared by commutative and noncommutative rings.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary | "/" INT)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Implicit multiplication (``2x``, ``x y``, ``x(y)``) is rejected.  Division is
only allowed by a nonzero integer literal, which is enough to write rational
coefficients such as ``3/2*x``.

The target ring only needs ``var(name)``, ``const(int)`` and a ``field``;
elements need ``+ - *``, ``**`` and scalar multiplication.
"""

from __future__ import annotations

import re

from essalg.errors import InputError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern always matches non-space
            raise InputError(f"cannot tokenize {text!r} at {pos}")
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise InputError(f"unexpected character {ch!r} at position {m.start(3)} in {text!r}")
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ring):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def error(self, msg: str):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise InputError(f"{msg} at position {pos} in {self.text!r}")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            self.error(f"expected {value or kind}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise InputError("empty expression")
        value = self.expr()
        if self.peek() is not None:
            self.error("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.i += 1
            if tok[1] == "*":
                value = value * self.unary()
            else:
                n = int(self.take("int")[1])
                F = self.ring.field
                if F.is_zero(F(n)):
                    self.error("division by zero")
                value = value * F.inv(F(n))
        return value

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            base = base ** int(self.take("int")[1])
        tok = self.peek()
        if tok and (tok[0] in ("int", "name") or tok[1] == "("):
            self.error("implicit multiplication is not allowed")
        return base

    def atom(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of expression")
        if tok[0] == "int":
            self.i += 1
            return self.ring.const(int(tok[1]))
        if tok[0] == "name":
            self.i += 1
            return self.ring.var(tok[1])
        if tok[1] == "(":
            self.i += 1
            value = self.expr()
            self.take("op", ")")
            return value
        self.error(f"unexpected {tok[1]!r}")


def parse_expression(text: str, ring):
    if not isinstance(text, str):
        raise InputError(f"expression must be a string, got {text!r}")
    return _Parser(text, ring).parse()


def split_list(text: str) -> list[str]:
    """Split a comma separated list of expressions (as given on the command line)."""
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise InputError(f"empty entry in list {text!r}")
    return parts
