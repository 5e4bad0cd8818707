"""Recursive-descent parser for the polynomial expression language.

Grammar (explicit `*` required, no implicit multiplication):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | base ('^' INT)?
    base    := NUMBER | IDENT | '(' expr ')'
    NUMBER  := INT | INT '/' INT | finite decimal literal

Every numeric literal is converted to an exact rational (1.5 -> 3/2);
`/` is only part of a rational literal, never a general operator.
Exponents must be non-negative integer literals.  The canonical printer
in `poly` emits exactly this language, so parse/print round-trips.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial, VariableContext


class ParseError(ValueError):
    """Syntax or resolution error, carrying 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__("%s (line %d, column %d)" % (message, line, column))
        self.line = line
        self.column = column


_SYMBOLS = {"+", "-", "*", "^", "(", ")"}


def _tokenize(text: str):
    """Yield (kind, value, line, col) with kind in {num, ident, sym, end}."""
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_line, start_col = line, col
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            lit = text[i:j]
            # integer/integer rational literal (only without a decimal point)
            if not seen_dot and j < n and text[j] == "/":
                k = j + 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    lit = text[i:k]
                    j = k
            if lit.endswith("."):
                raise ParseError("malformed number %r" % lit, start_line, start_col)
            tokens.append(("num", lit, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, start_line, start_col)
    tokens.append(("end", "", line, col))
    return tokens


def _literal_to_fraction(lit: str, line: int, col: int) -> Fraction:
    try:
        if "/" in lit:
            num, den = lit.split("/")
            den_val = int(den)
            if den_val == 0:
                raise ParseError("division by zero in rational literal", line, col)
            return Fraction(int(num), den_val)
        return Fraction(lit)  # handles both integers and finite decimals exactly
    except ParseError:
        raise
    except (ValueError, ZeroDivisionError):
        raise ParseError("malformed number %r" % lit, line, col)


class _Parser:
    def __init__(self, tokens, ctx: VariableContext):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def parse(self) -> Polynomial:
        value = self.expr()
        kind, val, line, col = self.peek()
        if kind != "end":
            self.error("unexpected %r after expression" % val)
        return value

    def expr(self) -> Polynomial:
        kind, val, _, _ = self.peek()
        value = self.term()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "sym" and val in ("+", "-"):
                self.advance()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> Polynomial:
        value = self.factor()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "sym" and val == "*":
                self.advance()
                value = value * self.factor()
            else:
                return value

    def factor(self) -> Polynomial:
        kind, val, _, _ = self.peek()
        if kind == "sym" and val == "-":
            self.advance()
            return -self.factor()
        value = self.base()
        kind, val, _, _ = self.peek()
        if kind == "sym" and val == "^":
            self.advance()
            kind, lit, line, col = self.advance()
            if kind == "sym" and lit == "-":
                raise ParseError("negative exponent", line, col)
            if kind != "num" or "/" in lit or "." in lit:
                raise ParseError("exponent must be a non-negative integer literal", line, col)
            return value ** int(lit)
        return value

    def base(self) -> Polynomial:
        kind, val, line, col = self.advance()
        if kind == "num":
            return Polynomial.constant(self.ctx, _literal_to_fraction(val, line, col))
        if kind == "ident":
            try:
                index = self.ctx.index(val)
            except KeyError:
                raise ParseError("unknown identifier %r" % val, line, col)
            return Polynomial.variable(self.ctx, index)
        if kind == "sym" and val == "(":
            inner = self.expr()
            kind, val, line, col = self.advance()
            if not (kind == "sym" and val == ")"):
                raise ParseError("expected ')'", line, col)
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", line, col)
        raise ParseError("unexpected token %r" % val, line, col)


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    """Parse an expression string into a canonical Polynomial."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string, got %r" % type(text).__name__, 1, 1)
    return _Parser(_tokenize(text), ctx).parse()
