"""Recursive-descent parser for the polynomial expression grammar.

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' int)?
    atom     := rational | var | '(' expr ')'
    var      := 'x' index | 'x' index '(' index ')' | 'u' '[' index ',' index ']'
    rational := int ('/' posint)?

Whitespace is insignificant.  'x3(2)' denotes the ordinary jet variable
x_3^(2); 'u[3,2]' denotes the log jet variable u_{3,2}.  Negative exponents
are allowed on base variables only.
"""

from fractions import Fraction

from .errors import ExponentError, ExpressionSyntaxError, ModeMismatchError
from .poly import LOG, ORDINARY, JetPoly

_OPS = set("+-*/^()[],")


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), i))
            i = j
            continue
        if ch in ("x", "u"):
            if ch == "x":
                j = i + 1
                while j < n and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ExpressionSyntaxError(
                        "variable 'x' without index", i, "digits")
                tokens.append(_Token("xvar", int(text[i + 1:j]), i))
                i = j
            else:
                tokens.append(_Token("u", "u", i))
                i += 1
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            raise ExpressionSyntaxError(
                f"unexpected token {tok.value!r}", tok.pos, kind)
        return self.advance()

    def fail(self, message, expected=None):
        raise ExpressionSyntaxError(message, self.peek().pos, expected)

    # grammar ---------------------------------------------------------------

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(f"trailing input {tok.value!r}", "operator or end")
        return poly

    def expr(self):
        sign = 1
        if self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -1
        poly = self.term() * sign
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def term(self):
        poly = self.factor()
        while self.peek().kind == "*":
            self.advance()
            poly = poly * self.factor()
        return poly

    def factor(self):
        atom, jet_like = self.atom()
        if self.peek().kind != "^":
            return atom
        self.advance()
        expo = self.signed_int()
        if jet_like and expo < 0:
            raise ExponentError(
                f"negative exponent {expo} on jet variable")
        if expo >= 0:
            return atom ** expo
        # negative power: single-term base monomials and nonzero rationals only
        terms = atom.term_map()
        if len(terms) != 1:
            self.fail("negative exponent on a non-monomial")
        mono, coeff = next(iter(terms.items()))
        if mono.jets:
            raise ExponentError(f"negative exponent {expo} on jet variable")
        inv = JetPoly.monomial(atom.ring, [-a for a in mono.base],
                               coeff=Fraction(1) / coeff)
        return inv ** (-expo)

    def signed_int(self):
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        tok = self.expect("int")
        return sign * tok.value

    def atom(self):
        """Returns (polynomial, jet_like) where jet_like marks jet variables."""
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            value = Fraction(tok.value)
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("int")
                if den.value == 0:
                    raise ExpressionSyntaxError("zero denominator", den.pos)
                value = value / den.value
            return JetPoly.constant(self.ring, value), False
        if tok.kind == "(":
            self.advance()
            poly = self.expr()
            self.expect(")")
            return poly, False
        if tok.kind == "xvar":
            self.advance()
            i = tok.value
            if not (1 <= i <= self.ring.n):
                raise ExpressionSyntaxError(
                    f"variable x{i} outside ring (n={self.ring.n})", tok.pos)
            if self.peek().kind == "(":
                self.advance()
                jtok = self.expect("int")
                self.expect(")")
                j = jtok.value
                if self.ring.mode != ORDINARY:
                    raise ModeMismatchError(
                        f"ordinary jet variable x{i}({j}) in log-mode ring")
                if not (1 <= j <= self.ring.m):
                    raise ExpressionSyntaxError(
                        f"jet order {j} outside ring (m={self.ring.m})",
                        jtok.pos)
                return JetPoly.jet_var(self.ring, i, j), True
            return JetPoly.base_var(self.ring, i), False
        if tok.kind == "u":
            self.advance()
            self.expect("[")
            itok = self.expect("int")
            self.expect(",")
            jtok = self.expect("int")
            self.expect("]")
            if self.ring.mode != LOG:
                raise ModeMismatchError(
                    f"log jet variable u[{itok.value},{jtok.value}] "
                    "in ordinary-mode ring")
            i, j = itok.value, jtok.value
            if not (1 <= i <= self.ring.n):
                raise ExpressionSyntaxError(
                    f"variable index {i} outside ring (n={self.ring.n})",
                    itok.pos)
            if not (1 <= j <= self.ring.m):
                raise ExpressionSyntaxError(
                    f"jet order {j} outside ring (m={self.ring.m})", jtok.pos)
            return JetPoly.jet_var(self.ring, i, j), True
        self.fail(f"unexpected token {tok.value!r}", "atom")


def parse_poly(text, ring):
    """Parse an expression into a JetPoly over the given ring."""
    return _Parser(text, ring).parse()
