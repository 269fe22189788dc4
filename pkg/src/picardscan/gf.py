"""Finite fields: F_p for odd p and its extensions F_{p^k}.

Extension field elements are length-k tuples of ints in [0, p), constant
coefficient first, relative to a monic irreducible modulus. The modulus
defaults to the lexicographically first irreducible polynomial for (p, k)
so that serialized elements and cache keys are reproducible everywhere.

Characteristic 2 is rejected at construction; nothing downstream is set
up to reason about it.
"""

from __future__ import annotations

import itertools

from .arith import factorize, is_prime
from .poly import IntPoly

# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p on plain coefficient lists


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a, b, mod, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_rem(out, mod, p)


def _fp_rem(a, mod, p):
    a = list(a)
    d = len(mod) - 1
    inv_lc = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * mod[j]) % p
    del a[d:]
    return _fp_trim(a)

def _fp_powmod(a, e, mod, p):
    out = [1]
    base = _fp_rem(a, mod, p)
    while e:
        if e & 1:
            out = _fp_mulmod(out, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        e >>= 1
    return out


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_rem(a, b, p)
    return a


def is_irreducible_mod_p(coeffs, p: int) -> bool:
    """Rabin test for a polynomial over F_p given by int coefficients."""
    mod = _fp_trim([c % p for c in coeffs])
    k = len(mod) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    for r, _ in factorize(k):
        h = _fp_powmod(x, p ** (k // r), mod, p)
        # gcd(x^{p^{k/r}} - x, mod) must be 1
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(mod, _fp_trim(diff), p)
        if len(g) != 1:
            return False
    return _fp_powmod(x, p**k, mod, p) == [0, 1]


def find_irreducible(p: int, k: int, index: int = 0) -> IntPoly:
    """The (index+1)-th monic irreducible of degree k over F_p.

    Candidates are ordered by their lower-coefficient tuple read as a
    little-endian base-p integer, so the result is deterministic for any
    fixed (p, k, index).
    """
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    seen = 0
    for v in range(p**k):
        lower = []
        t = v
        for _ in range(k):
            lower.append(t % p)
            t //= p
        cand = lower + [1]
        if is_irreducible_mod_p(cand, p):
            if seen == index:
                return IntPoly(cand)
            seen += 1
    raise ValueError(f"no irreducible of degree {k} at index {index} over F_{p}")


# ---------------------------------------------------------------------------


class PrimeField:
    """The field F_p for an odd prime p. Elements are plain ints mod p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p % 2 == 0 or p < 3:
            raise ValueError(f"characteristic 2 (and below) is excluded, got {p}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class ExtensionField:
    """F_{p^k} = F_p[T] / (modulus), elements as length-k int tuples."""

    def __init__(self, base: PrimeField, k: int, modulus: IntPoly | None = None):
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        self.base = base
        self.k = k
        p = base.p
        if modulus is None:
            modulus = find_irreducible(p, k)
        mod = [c % p for c in modulus.coeffs]
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible_mod_p(mod, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = IntPoly(mod)
        self._mod_list = mod
        self.order = p**k
        # reduction rows: T^(k+t) mod modulus, t = 0 .. k-2
        rows = []
        cur = [(-c) % p for c in mod[:k]]  # T^k
        for _ in range(k - 1):
            rows.append(list(cur))
            cur = [0] + cur
            carry = cur.pop()
            if carry:
                for j in range(k):
                    cur[j] = (cur[j] + carry * rows[0][j]) % p
        self.reduction_rows = tuple(tuple(r) for r in rows)

    @property
    def p(self) -> int:
        return self.base.p

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def gen(self):
        """The residue of T, a root of the modulus."""
        if self.k == 1:
            raise ValueError("degree-1 extension has no proper generator")
        return (0, 1) + (0,) * (self.k - 2)

    def embed(self, c: int):
        """The image of an integer in the field."""
        return (c % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        conv = [0] * (2 * k - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    conv[i + j] += ca * cb
        out = [c % p for c in conv[:k]]
        for t in range(k - 1):
            hi = conv[k + t] % p
            if hi:
                row = self.reduction_rows[t]
                for j in range(k):
                    out[j] = (out[j] + hi * row[j]) % p
        return tuple(out)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero")
        # multiplicative group has order q - 1
        return self.pow(a, self.order - 2)

    def frobenius(self, a):
        """x -> x^p, the base-field Frobenius."""
        return self.pow(a, self.p)

    def poly_eval(self, coeffs, x):
        """Evaluate a polynomial with integer coefficients at a field element."""
        out = self.zero()
        for c in reversed(coeffs):
            out = self.add(self.mul(out, x), self.embed(c))
        return out

    def elements(self):
        """Iterate over all p^k elements (constant digit fastest)."""
        for digits in itertools.product(range(self.p), repeat=self.k):
            yield digits

    def element_from_index(self, idx: int):
        digits = []
        for _ in range(self.k):
            digits.append(idx % self.p)
            idx //= self.p
        return tuple(digits)

    def index_of(self, a) -> int:
        out = 0
        for c in reversed(a):
            out = out * self.p + c
        return out

    def __repr__(self):
        return f"ExtensionField(p={self.p}, k={self.k}, modulus={self.modulus})"
