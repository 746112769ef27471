"""Univariate polynomials in ``n`` with exact rational coefficients.

These are the building blocks of ultimately periodic polynomial sequences.
Only what the sequence algebra needs is provided: ring operations, exact
evaluation, affine substitution, a bound past which the sign is fixed, and a
small text syntax (``2*n+5``, ``n*(n-1)/2``, ``1/2*n^2-1/2*n``).
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, Fraction]


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``n**i``."""

    __slots__ = ("coeffs", "_ints", "_den", "_scaled")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        # scaled integer coefficients allow evaluation without Fraction arithmetic
        den = math.lcm(*(c.denominator for c in cs)) if cs else 1
        scaled = tuple(c.numerator * (den // c.denominator) for c in cs)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_scaled", scaled)
        object.__setattr__(self, "_ints", scaled if den == 1 else None)

    @classmethod
    def _from_ints(cls, ints: list[int]) -> Poly:
        while ints and ints[-1] == 0:
            ints.pop()
        self = object.__new__(cls)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in ints))
        ints = tuple(ints)
        object.__setattr__(self, "_ints", ints)
        object.__setattr__(self, "_den", 1)
        object.__setattr__(self, "_scaled", ints)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls((c,))

    @classmethod
    def var(cls) -> Poly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, n: Number) -> Fraction:
        if isinstance(n, int):
            acc = 0
            for c in reversed(self._scaled):
                acc = acc * n + c
            return Fraction(acc, self._den)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def int_at(self, n: int) -> int:
        """Value at natural ``n`` when it is known to be an integer."""
        acc = 0
        for c in reversed(self._scaled):
            acc = acc * n + c
        return acc if self._den == 1 else acc // self._den

    def __add__(self, other: Poly | Number) -> Poly:
        other = _coerce(other)
        if self._ints is not None and other._ints is not None:
            a, b = self._ints, other._ints
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] += c
            return Poly._from_ints(out)
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return Poly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(size)
        )

    __radd__ = __add__

    def __neg__(self) -> Poly:
        if self._ints is not None:
            return Poly._from_ints([-c for c in self._ints])
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly | Number) -> Poly:
        other = _coerce(other)
        if self._ints is not None and other._ints is not None:
            a, b = self._ints, other._ints
            out = list(a) + [0] * (len(b) - len(a))
            for i, c in enumerate(b):
                out[i] -= c
            return Poly._from_ints(out)
        return self + (-other)

    def __rsub__(self, other: Number) -> Poly:
        return _coerce(other) - self

    def __mul__(self, other: Poly | Number) -> Poly:
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, factor: Number) -> Poly:
        factor = Fraction(factor)
        return Poly(c * factor for c in self.coeffs)

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            raise ValueError("negative exponent")
        out = Poly.const(1)
        for _ in range(exponent):
            out = out * self
        return out

    def substitute_affine(self, start: Number, step: Number) -> Poly:
        """Return ``k -> self(start + step*k)``."""
        inner = Poly((start, step))
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def is_integer_valued_on(self, start: int, step: int) -> bool:
        """True iff integer at every ``start + step*k``, k >= 0.

        A degree-d polynomial is integer-valued on an arithmetic progression
        exactly when it takes integer values at d+1 consecutive members.
        """
        if self._ints is not None:
            return True
        return _integer_valued(self, start % step, step)

    def sign_bound(self) -> int:
        """An integer N with sign(self(n)) == sign(lead) for all real n >= N."""
        if self.degree <= 0:
            return 0
        return _sign_bound(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            if not body:
                term = str(mag)
            elif mag == 1:
                term = body
            else:
                term = f"{mag}*{body}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+" if c > 0 else "-") + term)
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> Poly:
        return _PolyParser(text).parse()


def _coerce(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def _iroot_ceil(value: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= value."""
    if value <= 0:
        return 0
    r = max(1, int(round(value ** (1.0 / k))))
    while r ** k < value:
        r += 1
    while r > 1 and (r - 1) ** k >= value:
        r -= 1
    return r


_TOKEN = re.compile(r"\s*(?:(\d+)|(n)|(\*\*|[-+*/^()]))")


class PolyParseError(ValueError):
    pass


class _PolyParser:
    # expr   := term (("+"|"-") term)*
    # term   := unary (("*"|"/") unary | power)*    juxtaposition: 2n, 3(n+1)
    # unary  := ("-"|"+") unary | power
    # power  := atom (("^"|"**") INT)?
    # atom   := INT | "n" | "(" expr ")"

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m:
                raise PolyParseError(f"unexpected character at {pos} in {text!r}")
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("n", "n", m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _take(self, value=None):
        tok = self._peek()
        if tok is None or (value is not None and tok[1] != value):
            where = tok[2] if tok else len(self.text)
            raise PolyParseError(f"expected {value or 'token'} at {where} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolyParseError("empty polynomial")
        p = self._expr()
        if self._peek() is not None:
            raise PolyParseError(f"trailing input at {self._peek()[2]} in {self.text!r}")
        return p

    def _expr(self) -> Poly:
        p = self._term()
        while (tok := self._peek()) and tok[1] in "+-" and tok[0] == "op":
            self.i += 1
            rhs = self._term()
            p = p + rhs if tok[1] == "+" else p - rhs
        return p

    def _term(self) -> Poly:
        p = self._unary()
        while tok := self._peek():
            if tok[0] == "n" or tok[1] == "(":
                p = p * self._power()
                continue
            if tok[0] != "op" or tok[1] not in ("*", "/"):
                break
            self.i += 1
            rhs = self._unary()
            if tok[1] == "*":
                p = p * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolyParseError(f"division by non-constant or zero at {tok[2]}")
                p = p.scale(1 / rhs.constant_value())
        return p

    def _unary(self) -> Poly:
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            inner = self._unary()
            return -inner if tok[1] == "-" else inner
        return self._power()

    def _power(self) -> Poly:
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in ("^", "**"):
            self.i += 1
            exp = self._take()
            if exp[0] != "int":
                raise PolyParseError(f"exponent must be a natural literal at {exp[2]}")
            return base ** int(exp[1])
        return base

    def _atom(self) -> Poly:
        tok = self._take()
        if tok[0] == "int":
            return Poly.const(int(tok[1]))
        if tok[0] == "n":
            return Poly.var()
        if tok[1] == "(":
            p = self._expr()
            self._take(")")
            return p
        raise PolyParseError(f"unexpected {tok[1]!r} at {tok[2]} in {self.text!r}")


@functools.lru_cache(maxsize=4096)
def _sign_bound(coeffs: tuple) -> int:
    d = len(coeffs) - 1
    lead = abs(coeffs[-1])
    ratios = [abs(c) / lead for c in coeffs[:-1]]
    cauchy = math.ceil(1 + max(ratios)) if any(ratios) else 1
    # Fujiwara-style bound, using integer root ceilings so it stays an upper bound.
    fujiwara = 0
    for i in range(1, d + 1):
        r = math.ceil(ratios[d - i])
        fujiwara = max(fujiwara, _iroot_ceil(r, i))
    return max(0, min(cauchy, 2 * fujiwara + 1))


@functools.lru_cache(maxsize=4096)
def _integer_valued(p: Poly, residue: int, step: int) -> bool:
    return all(p(residue + step * k).denominator == 1 for k in range(max(p.degree, 0) + 1))
