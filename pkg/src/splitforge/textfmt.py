"""Canonical text form for ring elements and polynomials, and the expression parser.

Output uses graded-lex order with x > y, explicit ``*`` and ``^``; a
coefficient with more than one term is parenthesized.  Everything printed here
parses back to the same value, and printing that value again gives the same
bytes.
"""

from __future__ import annotations

import re
from typing import Iterable

from .errors import NotDivisible, ParseError
from .polyalg import BiPoly, UniPoly
from .rings import Poly

VARS = ("x", "y", "z")
Key = tuple[int, int, int]


# ---------------------------------------------------------------------------
# formatting


def format_element(ring, c) -> str:
    return ring.format(ring(c))


def _simple(ring, c) -> bool:
    c = ring(c)
    if isinstance(c, Poly):
        return sum(1 for k in c.coeffs if k) <= 1
    return True


def _mono(exps: Iterable[int], names=VARS) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(ring, terms: list[tuple[tuple[int, ...], object]], names=VARS) -> str:
    pieces: list[tuple[bool, str]] = []
    for exps, c in terms:
        text = format_element(ring, c)
        mono = _mono(exps, names)
        if _simple(ring, c):
            neg = text.startswith("-")
            mag = text[1:] if neg else text
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
        else:
            neg = False
            body = f"({text})" + (f"*{mono}" if mono else "")
        pieces.append((neg, body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def format_bipoly(ring, h: BiPoly) -> str:
    return format_terms(ring, [(m, c) for m, c in h.sorted_terms()], ("x", "y"))


def format_unipoly(ring, p: UniPoly) -> str:
    terms = [((i,), c) for i, c in reversed(list(enumerate(p.coeffs))) if c]
    return format_terms(ring, terms, (p.var,))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


class _Parser:
    """Recursive descent over ``+ - * / ^ ( )``, integer literals and variables.

    Values are sparse dicts ``{(deg_x, deg_y, deg_z): coefficient}``.
    """

    def __init__(self, ring, text: str, allowed: tuple[str, ...], line: int, col0: int):
        self.ring = ring
        self.text = text
        self.allowed = allowed
        self.line = line
        self.col0 = col0
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        toks = []
        text = text.rstrip()
        i = 0
        while i < len(text):
            m = _TOKEN.match(text, i)
            start = m.start(m.lastindex)
            if m.group(1):
                toks.append(("int", m.group(1), start))
            elif m.group(2):
                toks.append(("name", m.group(2), start))
            else:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise self._error(f"unexpected character {ch!r}", start, "an operator or operand")
                toks.append((ch, ch, start))
            i = m.end()
        toks.append(("end", "", len(text)))
        return toks

    def _error(self, msg, offset, expected=""):
        return ParseError(msg, self.line, self.col0 + offset + 1, expected)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None, expected=""):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            shown = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self._error(f"unexpected {shown}", tok[2], expected or kind)
        self.pos += 1
        return tok

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            raise self._error("empty expression", 0, "an expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self._error(f"unexpected {tok[1]!r}", tok[2], "an operator or end of expression")
        return value

    # grammar -------------------------------------------------------------

    def expr(self) -> dict:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = _add(value, rhs if op == "+" else _neg(rhs))
        return value

    def term(self) -> dict:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, at = self.take()
            rhs = self.unary()
            if op == "*":
                value = _mul(value, rhs)
            else:
                value = self._divide(value, rhs, at)
        return value

    def unary(self) -> dict:
        if self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            value = self.unary()
            return _neg(value) if op == "-" else value
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            _, digits, _ = self.take("int", "a non-negative integer exponent")
            n = int(digits)
            result = {(0, 0, 0): self.ring.one}
            for _ in range(n):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> dict:
        kind, val, at = self.peek()
        if kind == "int":
            self.take()
            return _clean({(0, 0, 0): self.ring(int(val))})
        if kind == "name":
            self.take()
            return self._variable(val, at)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")", "')'")
            return inner
        shown = "end of input" if kind == "end" else repr(val)
        raise self._error(f"unexpected {shown}", at, "a number, variable or '('")

    def _variable(self, name, at) -> dict:
        if name in VARS:
            if name not in self.allowed:
                raise self._error(f"variable {name!r} not allowed here", at, " or ".join(self.allowed) or "a constant")
            key = tuple(int(v == name) for v in VARS)
            return {key: self.ring.one}
        gen = getattr(self.ring, "gen", None)
        if gen is not None and name == self.ring.var:
            return {(0, 0, 0): gen()}
        raise self._error(f"unknown identifier {name!r}", at, "a declared variable")

    def _divide(self, num: dict, den: dict, at) -> dict:
        if any(k != (0, 0, 0) for k in den):
            raise self._error("division by a non-constant", at, "a constant divisor")
        d = den.get((0, 0, 0))
        if not d:
            raise self._error("division by zero", at)
        out = {}
        try:
            for k, c in num.items():
                out[k] = self.ring.exact_div(c, d)
        except NotDivisible as exc:
            raise self._error(f"inexact division: {exc}", at) from None
        return _clean(out)


def _clean(d: dict) -> dict:
    return {k: c for k, c in d.items() if c}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out[k] + c if k in out else c
    return _clean(out)


def _neg(a: dict) -> dict:
    return {k: -c for k, c in a.items()}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
            out[k] = out[k] + c1 * c2 if k in out else c1 * c2
    return _clean(out)


def parse_terms(ring, text: str, allowed=("x", "y"), line: int = 0, col0: int = 0) -> dict:
    return _Parser(ring, text, tuple(allowed), line, col0).parse()


def parse_bipoly(ring, text: str, line: int = 0, col0: int = 0) -> BiPoly:
    terms = parse_terms(ring, text, ("x", "y"), line, col0)
    return BiPoly({(i, j): ring(c) for (i, j, _), c in terms.items()})


def parse_unipoly(ring, text: str, var: str = "z") -> UniPoly:
    terms = parse_terms(ring, text, (var,))
    idx = VARS.index(var)
    deg = max((k[idx] for k in terms), default=-1)
    coeffs = [ring.zero] * (deg + 1)
    for k, c in terms.items():
        coeffs[k[idx]] = ring(c)
    return UniPoly(coeffs, var)


def parse_element(ring, text: str):
    terms = parse_terms(ring, text, ())
    return ring(terms.get((0, 0, 0), ring.zero))
