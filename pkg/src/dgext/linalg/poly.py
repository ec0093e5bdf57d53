"""Dense univariate polynomials over QQ or GF(p).

Polynomials are plain tuples of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Keeping them as tuples makes
them hashable and lets equality be structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import ValidationError

Poly = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """Coefficient field: GF(p) for a prime ``p``, or QQ when ``p == 0``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise ValidationError(f"characteristic {p} is not prime", "characteristic")
        self.p = p

    def coerce(self, c) -> int | Fraction:
        if self.p:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            return int(c) % self.p
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return Fraction(1) / c

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


class PolyRing:
    """Arithmetic in k[X] for a fixed coefficient field k."""

    __slots__ = ("field", "p")

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p

    # construction -------------------------------------------------------
    def norm(self, coeffs: Sequence) -> Poly:
        p = self.p
        if p:
            out = [c % p for c in coeffs]
        else:
            out = [Fraction(c) for c in coeffs]
            out = [c.numerator if c.denominator == 1 else c for c in out]
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def const(self, c) -> Poly:
        c = self.field.coerce(c)
        return (c,) if c else ()

    def x_power(self, n: int) -> Poly:
        return (0,) * n + (1,)

    # arithmetic ---------------------------------------------------------
    def add(self, a: Poly, b: Poly) -> Poly:
        if not a:
            return b
        if not b:
            return a
        p = self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        if p:
            for i, c in enumerate(b):
                out[i] = (out[i] + c) % p
        else:
            for i, c in enumerate(b):
                out[i] = out[i] + c
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def neg(self, a: Poly) -> Poly:
        p = self.p
        if p:
            return tuple((p - c) % p for c in a)
        return tuple(-c for c in a)

    def sub(self, a: Poly, b: Poly) -> Poly:
        if not b:
            return a
        p = self.p
        n = max(len(a), len(b))
        out = list(a) + [0] * (n - len(a))
        if p:
            for i, c in enumerate(b):
                out[i] = (out[i] - c) % p
        else:
            for i, c in enumerate(b):
                out[i] = out[i] - c
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def scale(self, a: Poly, c) -> Poly:
        if not a or not c:
            return ()
        p = self.p
        if p:
            out = [(x * c) % p for x in a]
        else:
            out = [x * c for x in a]
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def mul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return ()
        if len(a) == 1:
            return self.scale(b, a[0])
        if len(b) == 1:
            return self.scale(a, b[0])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        p = self.p
        if p:
            out = [c % p for c in out]
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def divmod(self, a: Poly, b: Poly) -> tuple[Poly, Poly]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return (), a
        p = self.p
        inv_lead = self.field.inv(b[-1])
        rem = list(a)
        db = len(b) - 1
        quot = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = (c * inv_lead) % p if p else c * inv_lead
            quot[k - db] = q
            for j, bj in enumerate(b):
                if p:
                    rem[k - db + j] = (rem[k - db + j] - q * bj) % p
                else:
                    rem[k - db + j] = rem[k - db + j] - q * bj
        return self.norm(quot), self.norm(rem[:db])

    def mod(self, a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            return a
        return self.divmod(a, b)[1]

    def divides(self, d: Poly, a: Poly) -> bool:
        if not d:
            return not a
        return not self.mod(a, d)

    def exact_div(self, a: Poly, d: Poly) -> Poly:
        q, r = self.divmod(a, d)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    # normal forms -------------------------------------------------------
    @staticmethod
    def degree(a: Poly) -> int:
        return len(a) - 1

    def monic(self, a: Poly) -> Poly:
        if not a or a[-1] == 1:
            return a
        return self.scale(a, self.field.inv(a[-1]))

    def unit_normalizer(self, a: Poly):
        """Scalar ``u`` with ``u * a`` monic (``1`` for the zero polynomial)."""
        if not a:
            return 1
        return self.field.inv(a[-1])

    def xgcd(self, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
        """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic (or zero)."""
        r0, r1 = a, b
        s0, s1 = self.const(1), ()
        t0, t1 = (), self.const(1)
        while r1:
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if r0:
            u = self.field.inv(r0[-1])
            r0, s0, t0 = self.scale(r0, u), self.scale(s0, u), self.scale(t0, u)
        return r0, s0, t0

    def gcd(self, a: Poly, b: Poly) -> Poly:
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def evaluate(self, a: Poly, x):
        acc = 0
        for c in reversed(a):
            acc = acc * x + c
        return acc % self.p if self.p else acc

    # formatting ---------------------------------------------------------
    def format(self, a: Poly, var: str = "X") -> str:
        if not a:
            return "0"
        parts = []
        for i, c in enumerate(a):
            if not c:
                continue
            if self.p:
                coef = str(c)
            else:
                coef = str(c) if not isinstance(c, Fraction) or c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            neg = coef.startswith("-")
            mag = coef[1:] if neg else coef
            if i == 0:
                term = mag
            else:
                mono = var if i == 1 else f"{var}^{i}"
                term = mono if mag == "1" else f"{mag}*{mono}"
            parts.append(("-" if neg else "+", term))
        out = ""
        for k, (sign, term) in enumerate(parts):
            if k == 0:
                out = term if sign == "+" else "-" + term
            else:
                out += sign + term
        return out
