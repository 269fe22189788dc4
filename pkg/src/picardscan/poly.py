"""Dense exact polynomials: integer and rational coefficient lists.

Coefficients are stored constant term first, trailing zeros trimmed.
The zero polynomial has degree -1. These are deliberately plain classes;
the heavy lifting (point counts) happens elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .arith import divisors


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, IntPoly):
            self.coeffs = coeffs.coeffs
            return
        coeffs = _trim(coeffs)
        if any(not isinstance(c, int) for c in coeffs):
            raise TypeError("IntPoly coefficients must be ints")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x_power(cls, n: int, c: int = 1) -> "IntPoly":
        """c * T^n."""
        return cls((0,) * n + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "IntPoly"):
        """Exact Euclidean division; requires the divisor monic (or lc = -1)."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        lc = other.leading()
        if lc not in (1, -1):
            raise ValueError("integer division needs a monic divisor")
        rem = list(self.coeffs)
        d = other.degree
        if self.degree < d:
            return IntPoly(), self
        quot = [0] * (self.degree - d + 1)
        oc = other.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * lc
            if c:
                quot[i - d] = c
                for j in range(d + 1):
                    rem[i - d + j] -= c * oc[j]
        return IntPoly(quot), IntPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def reversed(self, degree: int | None = None) -> "IntPoly":
        """Coefficients reversed as a degree-`degree` polynomial (default: own degree)."""
        n = self.degree if degree is None else degree
        if n < self.degree:
            raise ValueError("reversal degree below actual degree")
        padded = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return IntPoly(padded[::-1])

    def to_rational(self) -> "RatPoly":
        return RatPoly(tuple(Fraction(c) for c in self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ""
                term = f"{sign}{mag}T" if i == 1 else f"{sign}{mag}T^{i}"
                parts.append(term)
        out = " + ".join(parts).replace("+ -", "- ")
        return out


class RatPoly:
    """Polynomial with exact rational (Fraction) coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, RatPoly):
            self.coeffs = coeffs.coeffs
            return
        self.coeffs = _trim(tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __neg__(self):
        return RatPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, RatPoly(other).coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other):
        return self + (-RatPoly(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly(tuple(other * c for c in self.coeffs))
        a, b = self.coeffs, RatPoly(other).coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = RatPoly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        if self.degree < d:
            return RatPoly(), self
        inv_lc = 1 / other.leading()
        quot = [Fraction(0)] * (self.degree - d + 1)
        oc = other.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * inv_lc
            if c:
                quot[i - d] = c
                for j in range(d + 1):
                    rem[i - d + j] -= c * oc[j]
        return RatPoly(quot), RatPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by recursive division of T^n - 1."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    if n == 1:
        return IntPoly((-1, 1))
    num = IntPoly.x_power(n, 1) - 1
    for d in divisors(n):
        if d < n:
            num, rem = divmod(num, cyclotomic_poly(d))
            if rem:
                raise ArithmeticError(f"cyclotomic recursion left a remainder at n={n}")
    return num


def rational_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over the rationals (Euclid)."""
    while b:
        a, b = b, a % b
    if a:
        a = a * (1 / a.leading())
    return a
