"""Recursive-descent parser for the small arithmetic grammar shared by field
elements, rational functions, and integer multivariate polynomials.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' uint)?
    base   := name | uint | '(' expr ')'

The caller supplies the semantics through a context object with methods
``const(int)``, ``var(name)``, ``add``, ``sub``, ``neg``, ``mul``, ``div`` and
``pow(value, int)``.  A context may reject an operation (division, unknown
variable) by raising :class:`ExprError`.
"""

from __future__ import annotations


class ExprError(ValueError):
    """Raised on malformed input or an operation the context does not allow."""


def tokenize(text):
    """Split ``text`` into (kind, value) tokens; kinds are int, name, op."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            tokens.append(("op", ch))
            i += 1
        else:
            raise ExprError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _Parser:
    def __init__(self, tokens, ctx):
        self.tokens = tokens
        self.ctx = ctx
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ExprError(f"expected {op!r}, got {val!r}")

    def expr(self):
        negate = False
        if self.peek() == ("op", "-"):
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = self.ctx.neg(value)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = self.ctx.add(value, rhs) if op == "+" else self.ctx.sub(value, rhs)
        return value

    def term(self):
        value = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.factor()
            value = self.ctx.mul(value, rhs) if op == "*" else self.ctx.div(value, rhs)
        return value

    def factor(self):
        value = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, exponent = self.take()
            if kind != "int":
                raise ExprError("exponent must be a nonnegative integer")
            value = self.ctx.pow(value, exponent)
        return value

    def base(self):
        kind, val = self.take()
        if kind == "int":
            return self.ctx.const(val)
        if kind == "name":
            return self.ctx.var(val)
        if (kind, val) == ("op", "("):
            value = self.expr()
            self.expect_op(")")
            return value
        raise ExprError(f"unexpected token {val!r}")


def parse(text, ctx):
    """Parse ``text`` and evaluate it within ``ctx``."""
    tokens = tokenize(text)
    if not tokens:
        raise ExprError("empty expression")
    parser = _Parser(tokens, ctx)
    value = parser.expr()
    if parser.pos != len(tokens):
        raise ExprError(f"trailing input at token {parser.pos}")
    return value
