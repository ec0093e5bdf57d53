"""Base rings k[X] and k[X]/(f) with k = QQ or GF(p), and their elements."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParseError, ValidationError
from .poly import Field, Poly, PolyRing


class _PolyParser:
    """Recursive descent over the grammar documented in docs/spec-format.md.

        poly   := ["+"|"-"] term { ("+"|"-") term }
        term   := factor { ["*"] factor }
        factor := atom [ "^" INT ]
        atom   := INT [ "/" INT ] | "X" | "(" poly ")"
    """

    _token = re.compile(r"\s*(?:(\d+)|([Xx])|(.))")

    def __init__(self, text: str, polys: PolyRing):
        self.text = text
        self.polys = polys
        self.tokens: list[tuple[str, str, int]] = []
        for m in self._token.finditer(text):
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("x", "X", m.start(2)))
            elif m.group(3) is not None and not m.group(3).isspace():
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.pos = 0

    def error(self, msg: str):
        col = self.tokens[self.pos][2] + 1 if self.pos < len(self.tokens) else len(self.text) + 1
        raise ParseError(f"bad polynomial {self.text!r}: {msg}", 1, col)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            self.error(f"expected {value or kind}")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty expression")
        out = self.poly()
        if self.pos != len(self.tokens):
            self.error("trailing input")
        return out

    def poly(self) -> Poly:
        P = self.polys
        sign = 1
        if self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = P.neg(acc)
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = P.add(acc, t) if op == "+" else P.sub(acc, t)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                acc = self.polys.mul(acc, self.factor())
            elif kind in ("int", "x") or (kind == "op" and value == "("):
                acc = self.polys.mul(acc, self.factor())
            else:
                return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            n = int(self.take("int")[1])
            out = self.polys.const(1)
            for _ in range(n):
                out = self.polys.mul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        kind, value, _ = self.peek()
        if kind == "int":
            self.take()
            num = int(value)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    self.error("zero denominator")
                if self.polys.p and den % self.polys.p == 0:
                    self.error("denominator not invertible")
                return self.polys.const(Fraction(num, den))
            return self.polys.const(num)
        if kind == "x":
            self.take()
            return self.polys.x_power(1)
        if kind == "op" and value == "(":
            self.take()
            inner = self.poly()
            self.take("op", ")")
            return inner
        self.error("expected a number, X or '('")


@dataclass(frozen=True)
class RingDescriptor:
    """k[X]/(modulus); a zero modulus means the polynomial ring k[X] itself."""

    characteristic: int = 0
    modulus: Poly = ()
    polys: PolyRing = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fld = Field(self.characteristic)
        polys = PolyRing(fld)
        mod = polys.monic(polys.norm(self.modulus))
        if mod and len(mod) == 1:
            raise ValidationError("modulus must not be a nonzero constant", "ring-modulus")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "polys", polys)

    @classmethod
    def create(cls, characteristic: int = 0, modulus: str | Poly = ()) -> "RingDescriptor":
        if isinstance(modulus, str):
            modulus = PolyRing(Field(characteristic)).norm(parse_poly(modulus, PolyRing(Field(characteristic))))
        return cls(characteristic, tuple(modulus))

    # properties ---------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.polys.field

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.modulus

    @property
    def is_field(self) -> bool:
        # only linear moduli count; k[X]/(f) for irreducible f of higher degree
        # is not treated as a field by the Smith normal form routine
        return bool(self.modulus) and len(self.modulus) == 2

    # element level ------------------------------------------------------
    def reduce(self, a: Poly) -> Poly:
        if self.modulus and len(a) >= len(self.modulus):
            return self.polys.mod(a, self.modulus)
        return a

    def add(self, a: Poly, b: Poly) -> Poly:
        return self.polys.add(a, b)

    def sub(self, a: Poly, b: Poly) -> Poly:
        return self.polys.sub(a, b)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(self.polys.mul(a, b))

    def is_unit(self, a: Poly) -> bool:
        if not a:
            return False
        if not self.modulus:
            return len(a) == 1
        return len(self.polys.gcd(a, self.modulus)) == 1

    def inverse(self, a: Poly) -> Poly:
        if not self.is_unit(a):
            raise ArithmeticError(f"{self.format(a)} is not a unit")
        if len(a) == 1:
            return self.polys.const(self.field.inv(a[0]))
        g, s, _ = self.polys.xgcd(a, self.modulus)
        return self.reduce(s)

    def parse(self, text: str | int) -> Poly:
        if isinstance(text, int):
            return self.reduce(self.polys.const(text))
        return self.reduce(parse_poly(str(text), self.polys))

    def format(self, a: Poly) -> str:
        return self.polys.format(a)

    def element(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            return value
        if isinstance(value, tuple):
            return RingElement(self, self.reduce(self.polys.norm(value)))
        return RingElement(self, self.parse(value))

    def __str__(self):
        k = f"GF({self.characteristic})" if self.characteristic else "QQ"
        if self.modulus:
            return f"{k}[X]/({self.format(self.modulus)})"
        return f"{k}[X]"

    def to_json(self) -> dict:
        return {"characteristic": self.characteristic, "modulus": self.format(self.modulus)}


def parse_poly(text: str, polys: PolyRing) -> Poly:
    return _PolyParser(text, polys).parse()


def polynomial_ring(characteristic: int = 0) -> RingDescriptor:
    return RingDescriptor(characteristic, ())


def quotient_ring(characteristic: int, modulus: str) -> RingDescriptor:
    return RingDescriptor.create(characteristic, modulus)


@dataclass(frozen=True)
class RingElement:
    """An element of a :class:`RingDescriptor`, stored in reduced form."""

    ring: RingDescriptor
    coeffs: Poly

    def _coerce(self, other) -> Poly:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValidationError("elements of different rings", "same-ring")
            return other.coeffs
        return self.ring.parse(other) if isinstance(other, (str, int)) else self.ring.reduce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.coeffs, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.coeffs, self._coerce(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._coerce(other), self.coeffs))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.coeffs, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.polys.neg(self.coeffs))

    def __pow__(self, n: int):
        out = self.ring.element(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.coeffs)

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inverse(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        return self.ring.format(self.coeffs)

    def __repr__(self):
        return f"RingElement({self})"
