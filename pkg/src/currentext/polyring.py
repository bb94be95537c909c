"""Sparse multivariate polynomials over the rationals, with a small parser.

Terms are kept as a canonically sorted tuple of (exponent tuple, coefficient)
pairs under graded-lex order, so polynomials are hashable and comparable.
The expression grammar covers +, -, *, integer powers via ^ (or **),
parentheses, integer and p/q literals, and the presentation's generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ArityMismatchError, PolynomialSyntaxError

Monomial = tuple[int, ...]


def _gradedlex_key(exps: Monomial):
    return (sum(exps), exps)


@dataclass(frozen=True)
class Poly:
    nvars: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @staticmethod
    def make(nvars: int, data: dict[Monomial, Fraction]) -> "Poly":
        cleaned = {e: Fraction(c) for e, c in data.items() if c}
        ordered = tuple(
            sorted(cleaned.items(), key=lambda t: _gradedlex_key(t[0]), reverse=True)
        )
        return Poly(nvars, ordered)

    @staticmethod
    def constant(nvars: int, value) -> "Poly":
        return Poly.make(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Poly":
        exps = tuple(int(j == i) for j in range(nvars))
        return Poly.make(nvars, {exps: Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def _binop(self, other: "Poly", sign: int) -> "Poly":
        if self.nvars != other.nvars:
            raise ArityMismatchError("polynomials over different variable sets")
        data = self.as_dict()
        for e, c in other.terms:
            data[e] = data.get(e, Fraction(0)) + sign * c
        return Poly.make(self.nvars, data)

    def __add__(self, other: "Poly") -> "Poly":
        return self._binop(other, 1)

    def __sub__(self, other: "Poly") -> "Poly":
        return self._binop(other, -1)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def scale(self, value) -> "Poly":
        v = Fraction(value)
        if not v:
            return Poly.make(self.nvars, {})
        return Poly(self.nvars, tuple((e, v * c) for e, c in self.terms))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.nvars != other.nvars:
            raise ArityMismatchError("polynomials over different variable sets")
        data: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                data[e] = data.get(e, Fraction(0)) + c1 * c2
        return Poly.make(self.nvars, data)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise PolynomialSyntaxError("negative powers are not polynomial")
        out = Poly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, point) -> Fraction:
        if len(point) != self.nvars:
            raise ArityMismatchError("point arity mismatch")
        total = Fraction(0)
        for exps, coeff in self.terms:
            val = coeff
            for p, e in zip(point, exps):
                if e:
                    val *= Fraction(p) ** e
            total += val
        return total

    def diff(self, i: int) -> "Poly":
        data: dict[Monomial, Fraction] = {}
        for exps, coeff in self.terms:
            if exps[i] == 0:
                continue
            new = list(exps)
            new[i] -= 1
            e = tuple(new)
            data[e] = data.get(e, Fraction(0)) + coeff * exps[i]
        return Poly.make(self.nvars, data)

    def shift(self, point) -> "Poly":
        """Compose with translation: p(z) = self(z + point)."""
        if len(point) != self.nvars:
            raise ArityMismatchError("point arity mismatch")
        data: dict[Monomial, Fraction] = {}

        def expand(exps: Monomial, coeff: Fraction):
            # product of (z_i + p_i)^{e_i} expanded by binomials
            acc = [((0,) * self.nvars, coeff)]
            for i, e in enumerate(exps):
                if not e:
                    continue
                p = Fraction(point[i])
                nxt = []
                for mono, c in acc:
                    for k in range(e + 1):
                        new = list(mono)
                        new[i] += k
                        nxt.append((tuple(new), c * comb(e, k) * p ** (e - k)))
                acc = nxt
            for mono, c in acc:
                data[mono] = data.get(mono, Fraction(0)) + c

        for exps, coeff in self.terms:
            expand(exps, coeff)
        return Poly.make(self.nvars, data)

    def truncate(self, k: int) -> "Poly":
        """Drop all terms of total degree >= k."""
        return Poly(self.nvars, tuple((e, c) for e, c in self.terms if sum(e) < k))

    def pretty(self, names: tuple[str, ...]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.terms:
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{coeff}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"bad character at {text[pos:pos+8]!r}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


def parse_poly(text: str, names: tuple[str, ...]) -> Poly:
    """Parse a polynomial expression over the given generator names."""
    tokens = _tokenize(text)
    nvars = len(names)
    index = {n: i for i, n in enumerate(names)}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(tok=None):
        nonlocal pos
        if pos >= len(tokens) or (tok is not None and tokens[pos] != tok):
            raise PolynomialSyntaxError(f"expected {tok!r} in {text!r}")
        pos += 1
        return tokens[pos - 1]

    def parse_expr() -> Poly:
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> Poly:
        node = parse_factor()
        while peek() == "*":
            take()
            node = node * parse_factor()
        return node

    def parse_factor() -> Poly:
        if peek() == "-":
            take()
            return -parse_factor()
        base = parse_atom()
        while peek() in ("^", "**"):
            take()
            exp = take()
            if not exp.isdigit():
                raise PolynomialSyntaxError("exponent must be a nonnegative integer")
            base = base ** int(exp)
        return base

    def parse_atom() -> Poly:
        tok = peek()
        if tok == "(":
            take()
            node = parse_expr()
            take(")")
            return node
        if tok is None:
            raise PolynomialSyntaxError(f"unexpected end of {text!r}")
        take()
        if tok.isdigit():
            value = Fraction(int(tok))
            if peek() == "/":  # rational literal p/q
                take()
                den = take()
                if not den.isdigit() or int(den) == 0:
                    raise PolynomialSyntaxError("bad rational literal")
                value /= int(den)
            return Poly.constant(nvars, value)
        if tok in index:
            return Poly.variable(nvars, index[tok])
        raise PolynomialSyntaxError(f"unknown generator {tok!r}")

    out = parse_expr()
    if pos != len(tokens):
        raise PolynomialSyntaxError(f"trailing tokens in {text!r}")
    return out


def parse_rational(value) -> Fraction:
    """Accept ints, strings like "3" or "-5/7", and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PolynomialSyntaxError(f"bad rational {value!r}") from exc
    raise PolynomialSyntaxError(f"bad rational {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)
