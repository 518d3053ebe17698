"""Text syntax for Laurent polynomials.

Terms are joined by ``+``/``-``; a term is ``[coeff][*]x1^e1*x2^e2...``
with signed integer exponents and integer or ``a/b`` coefficients, e.g.
``3*x1^2*x2^-1 - 1/2 + x2^2``.  ``#`` starts a comment in system files.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import PolynomialSyntaxError, ZeroPolynomialLine
from .fields import QQ
from .laurent import LaurentPoly, mono_key

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^−])|(?P<bad>\S))"
)


def _tokenize(text: str, line: int):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastgroup if m.lastgroup != "idx" else "var") + 1
        if m.group("bad") is not None:
            raise PolynomialSyntaxError(f"unexpected character {m.group('bad')!r}", line, col)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), col))
        elif m.group("var") is not None:
            idx = int(m.group("idx"))
            if idx < 1:
                raise PolynomialSyntaxError("variables are numbered from x1", line, col)
            tokens.append(("var", idx, col))
        else:
            op = m.group("op")
            tokens.append(("op", "-" if op == "−" else op, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, line: int):
        self.tokens = _tokenize(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolynomialSyntaxError(msg, self.line, tok[2])

    def parse(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok == ("end", None, tok[2]):
            raise self.error("empty polynomial")
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        terms.append(self.term(sign))
        while True:
            tok = self.peek()
            if tok[0] == "end":
                return terms
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                terms.append(self.term(-1 if tok[1] == "-" else 1))
            else:
                raise self.error(f"expected '+' or '-', got {tok[1]!r}")

    def term(self, sign):
        tok = self.peek()
        coeff = Fraction(1)
        factors = {}
        if tok[0] == "num":
            self.take()
            coeff = Fraction(tok[1])
            if self.peek()[0] == "op" and self.peek()[1] == "*":
                self.take()
                if self.peek()[0] != "var":
                    raise self.error("expected a variable after '*'")
            elif self.peek()[0] != "var":
                return sign * coeff, factors
        if self.peek()[0] != "var":
            raise self.error("expected a coefficient or a variable")
        while True:
            idx, exp = self.factor()
            factors[idx] = factors.get(idx, 0) + exp
            if self.peek()[0] == "op" and self.peek()[1] == "*":
                self.take()
                if self.peek()[0] != "var":
                    raise self.error("expected a variable after '*'")
                continue
            return sign * coeff, factors

    def factor(self):
        _, idx, _ = self.take()
        exp = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            esign = 1
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                esign = -1 if tok[1] == "-" else 1
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise self.error("expected an integer exponent", tok)
            exp = esign * int(tok[1])
        return idx, exp


def parse_terms(text: str, line: int = 1):
    """Parse to a list of (Fraction coefficient, {var index: exponent})."""
    return _Parser(text, line).parse()


def max_index(text: str) -> int:
    return max((int(v) for v in re.findall(r"x(\d+)", text)), default=0)


def parse_poly(text: str, nvars: int | None = None, field=QQ, line: int = 1) -> LaurentPoly:
    terms = parse_terms(text, line)
    if nvars is None:
        nvars = max([max(f, default=0) for _, f in terms] + [1])
    out = []
    for c, factors in terms:
        e = [0] * nvars
        for idx, a in factors.items():
            if idx > nvars:
                raise PolynomialSyntaxError(f"x{idx} exceeds {nvars} variables", line, 1)
            e[idx - 1] += a
        out.append((tuple(e), field(c)))
    return LaurentPoly.from_terms(out, nvars, field)


def parse_system(text: str, field=QQ, nvars: int | None = None) -> list[LaurentPoly]:
    """One polynomial per non-blank line; ``#`` starts a comment."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if nvars is None:
        nvars = max([max_index(body) for _, body in lines] + [1])
    polys = []
    for lineno, body in lines:
        p = parse_poly(body, nvars, field, line=lineno)
        if p.is_zero():
            raise ZeroPolynomialLine("polynomial is identically zero", lineno, 1)
        polys.append(p)
    return polys


def format_monomial(m) -> str:
    parts = []
    for k, a in enumerate(m, start=1):
        if a == 1:
            parts.append(f"x{k}")
        elif a:
            parts.append(f"x{k}^{a}")
    return "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m in sorted(p.terms, key=mono_key, reverse=True):
        c = p.terms[m]
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        mono = format_monomial(m)
        if not mono:
            body = p.field.format(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{p.field.format(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
