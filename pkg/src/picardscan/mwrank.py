"""Mordell-Weil rank bookkeeping over function fields.

Shioda-Tate, the simplified product-construction rank formula over
supplied geometric inputs, and the unbounded-rank family where the bound
is a sum of phi(e)/ord_e(q) over divisors of d = p^n + 1. Everything here
is exact arithmetic over user inputs; no geometry is computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, euler_phi, is_prime, multiplicative_order


@dataclass(frozen=True)
class FiberData:
    """Reducible-fiber bookkeeping: (closed point label, component count)."""

    fibers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for label, f_v in self.fibers:
            if f_v < 1:
                raise ValueError(f"fiber {label!r} needs >= 1 components, got {f_v}")

    @classmethod
    def from_components(cls, counts) -> "FiberData":
        return cls(fibers=tuple((f"v{i}", int(c)) for i, c in enumerate(counts, start=1)))

    @property
    def correction(self) -> int:
        return sum(f_v - 1 for _, f_v in self.fibers)


def shioda_tate_mw(rk_ns: int, fibers: FiberData) -> int:
    """rk MW = rk NS - 2 - sum_v (f_v - 1); negative results are rejected."""
    rank = rk_ns - 2 - fibers.correction
    if rank < 0:
        raise ValueError(
            f"inconsistent input: NS rank {rk_ns} below 2 + {fibers.correction}"
        )
    return rank


def ulmer_simplified_rank(hom_rank_mu: int, c1: int, c2: int) -> int:
    """Rank from the simplified formula: equivariant Hom rank - c1 + c2.

    The correction terms depend only on the geometry of the construction
    and are supplied by the caller, as is the mu_d-equivariant Hom rank.
    """
    return hom_rank_mu - c1 + c2


def _validate_pnq(p: int, n: int, q: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    # q must be a power of the characteristic p
    t = q
    r = 0
    while t > 1 and t % p == 0:
        t //= p
        r += 1
    if t != 1 or r < 1:
        raise ValueError(f"q = {q} is not a positive power of p = {p}")
    d = p**n + 1
    for e in divisors(d):
        if e > 2 and math.gcd(q, e) != 1:
            raise ValueError(f"invalid q: gcd(q, {e}) != 1 for divisor {e} of d")
    return d


@dataclass(frozen=True)
class UlmerBound:
    p: int
    n: int
    q: int
    d: int
    total: Fraction
    floor_bound: Fraction
    terms: tuple[tuple[int, int, int], ...]  # (e, phi(e), ord_e(q))


def ulmer_lower_bound(p: int, n: int, q: int) -> UlmerBound:
    """sum_{e | d, e > 2} phi(e)/ord_e(q) for d = p^n + 1, as an exact rational.

    Also carries the closed-form floor (p^n - 1)/(2n); the sum is checked
    against it, which the divisor-sum identity sum_{e|d} phi(e) = d makes
    an internal consistency guard rather than an assumption.
    """
    d = _validate_pnq(p, n, q)
    terms = []
    total = Fraction(0)
    phi_sum = 0
    for e in divisors(d):
        phi_sum += euler_phi(e)
        if e <= 2:
            continue
        phi_e = euler_phi(e)
        o = multiplicative_order(q, e)
        terms.append((e, phi_e, o))
        total += Fraction(phi_e, o)
    if phi_sum != d:
        raise ArithmeticError(f"divisor-sum identity failed for d={d}")
    floor_bound = Fraction(p**n - 1, 2 * n)
    if total < floor_bound:
        raise ArithmeticError(
            f"rank sum {total} fell below the floor {floor_bound} for (p={p}, n={n}, q={q})"
        )
    return UlmerBound(p=p, n=n, q=q, d=d, total=total, floor_bound=floor_bound, terms=tuple(terms))


@dataclass(frozen=True)
class UlmerExactRank:
    p: int
    n: int
    q: int
    d: int
    rank: int | None  # None when the roots-of-unity hypothesis is not met
    hypothesis_met: bool
    lower_bound: Fraction
    char_zero: bool = False


def ulmer_exact_rank(p: int, n: int, q: int, *, char_zero: bool = False) -> UlmerExactRank:
    """Exact rank p^n - 1 (odd p) or p^n (p = 2) when F_q contains mu_d.

    The hypothesis is q = 1 mod d. When it fails, the result carries the
    lower bound instead of an exact value. The char_zero flag encodes the
    characteristic-zero clause: the rank is 0 for every d.
    """
    d = _validate_pnq(p, n, q)
    if char_zero:
        return UlmerExactRank(
            p=p, n=n, q=q, d=d, rank=0, hypothesis_met=True,
            lower_bound=Fraction(0), char_zero=True,
        )
    bound = ulmer_lower_bound(p, n, q)
    if q % d == 1:
        rank = p**n if p == 2 else p**n - 1
        return UlmerExactRank(
            p=p, n=n, q=q, d=d, rank=rank, hypothesis_met=True,
            lower_bound=bound.total,
        )
    return UlmerExactRank(
        p=p, n=n, q=q, d=d, rank=None, hypothesis_met=False,
        lower_bound=bound.total,
    )
