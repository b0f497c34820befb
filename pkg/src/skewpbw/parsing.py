"""Tokenizer and recursive-descent parser for the expression grammar.

One grammar serves scalars, relations, coideal generators and ``--expr``
arguments::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*' | '.' | '/' | <juxtaposition>) power)*
    power  := '-' power | atom ('^' ['-'] INT)*
    atom   := INT | NAME | '(' expr ')' | '[' expr ',' expr ']'

The parser is value-agnostic: a *semantics* object turns names and numbers
into values and supplies the bracket.  Values must support ``+ - *``,
unary ``-``, ``/`` and ``**``.
"""

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            if sym not in "+-*/.^()[],":
                raise ParseError(f"unexpected character {sym!r}")
            tokens.append((sym, sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, semantics):
        self.toks = tokenize(text)
        self.i = 0
        self.sem = semantics
        self.text = text

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        value = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input {self.toks[self.i][1]!r} in {self.text!r}")
        return value

    def expr(self):
        sign = None
        if self.peek() in ("+", "-"):
            sign = self.take()[0]
        value = self.term()
        if sign == "-":
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while True:
            kind = self.peek()
            if kind in ("*", "."):
                self.take()
                value = value * self.power()
            elif kind == "/":
                self.take()
                value = self.sem.divide(value, self.power())
            elif kind in ("name", "(", "["):
                value = value * self.power()
            else:
                return value

    def power(self):
        if self.peek() == "-":
            self.take()
            return -self.power()
        value = self.atom()
        while self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            n = self.take("int")[1]
            value = self.sem.power(value, -n if neg else n)
        return value

    def atom(self):
        kind = self.peek()
        if kind == "int":
            return self.sem.number(self.take()[1])
        if kind == "name":
            return self.sem.name(self.take()[1])
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if kind == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            return self.sem.bracket(left, right)
        if kind is None:
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        raise ParseError(f"unexpected token {self.toks[self.i][1]!r} in {self.text!r}")


def parse_with(text, semantics):
    return _Parser(text, semantics).parse()
