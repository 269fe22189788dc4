"""Superelliptic curve models, reduction mod p, and exhaustive point counts.

A model is y^m = f(x) with integer coefficients and f squarefree. Counting
over F_{p^k} enumerates the field: the number of y over each x is read off
a table of m-th powers, and points at infinity follow the smooth projective
model (for the places above x = infinity the count is the number of
solutions of z^d = lc(f) with d = gcd(m, deg f)).

The enumeration kernel is vectorized with int64 numpy arrays. All values
stay far below 2^63 for any field admitted by the budget check, so the
arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import is_prime
from .gf import ExtensionField, PrimeField, _fp_gcd, find_irreducible
from .poly import IntPoly, rational_gcd

DEFAULT_BUDGET = 10**7

_CHUNK = 1 << 18


class BadReduction(Exception):
    """Reduction mod p fails the good-reduction criterion."""

    def __init__(self, p: int, reason: str):
        super().__init__(f"bad reduction at p={p}: {reason}")
        self.p = p
        self.reason = reason


class BudgetExceeded(Exception):
    """Requested enumeration is larger than the configured budget."""


def superelliptic_genus(m: int, n: int) -> int:
    """Genus of a smooth model of y^m = f(x) with f squarefree of degree n."""
    d = math.gcd(m, n)
    num = (m - 1) * (n - 1) + 1 - d
    if num % 2:
        raise ValueError(f"genus formula gave an odd numerator for (m={m}, n={n})")
    return num // 2


@dataclass(frozen=True)
class CurveModel:
    """y^m = f(x) over the rationals."""

    m: int
    f: IntPoly
    label: str = ""

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"superelliptic exponent must be >= 2, got {self.m}")
        if self.f.degree < 1:
            raise ValueError("right-hand side must be non-constant")
        fr = self.f.to_rational()
        if rational_gcd(fr, self.f.derivative().to_rational()).degree != 0:
            raise ValueError("right-hand side must be squarefree")
        if not self.label:
            object.__setattr__(self, "label", f"y^{self.m} = {self.f}")

    @property
    def genus(self) -> int:
        return superelliptic_genus(self.m, self.f.degree)


@dataclass(frozen=True)
class ReducedCurve:
    """A good reduction of a model; the base field is F_p."""

    model: CurveModel
    p: int
    coeffs: tuple[int, ...]  # f mod p, degree preserved

    @property
    def q(self) -> int:
        return self.p

    @property
    def genus(self) -> int:
        return self.model.genus


@dataclass(frozen=True)
class PointCounts:
    """Counts N_1..N_r of a curve over F_q, F_{q^2}, ..."""

    q: int
    counts: tuple[int, ...]

    def __len__(self):
        return len(self.counts)


def reduce_curve(model: CurveModel, p: int) -> ReducedCurve:
    """Reduce mod p, or raise BadReduction naming the failed condition.

    The criterion (p odd, p does not divide m or lc(f), f stays squarefree
    mod p) is sufficient for good reduction of the smooth model; primes
    failing it are skipped rather than analyzed further.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        reason = "characteristic divides the exponent m" if model.m % 2 == 0 \
            else "characteristic 2 is excluded"
        raise BadReduction(p, reason)
    if model.m % p == 0:
        raise BadReduction(p, "characteristic divides the exponent m")
    if model.f.leading() % p == 0:
        raise BadReduction(p, "leading coefficient vanishes")
    coeffs = tuple(c % p for c in model.f.coeffs)
    der = [(i * c) % p for i, c in enumerate(coeffs) if i]
    g = _fp_gcd(list(coeffs), der, p)
    if len(g) != 1:
        raise BadReduction(p, "discriminant vanishes")
    return ReducedCurve(model=model, p=p, coeffs=coeffs)


# ---------------------------------------------------------------------------
# enumeration kernel


def _reduction_matrix(p: int, k: int, modulus: IntPoly) -> np.ndarray:
    """Rows t = 0..k-2: coefficients of T^(k+t) mod modulus."""
    F = ExtensionField(PrimeField(p), k, modulus)
    return np.array(F.reduction_rows, dtype=np.int64).reshape(k - 1, k)


def _vec_mul(a: np.ndarray, b: np.ndarray, p: int, red: np.ndarray) -> np.ndarray:
    """Componentwise field product of two (N, k) digit arrays.

    Inputs must be reduced mod p. A single final reduction suffices: the
    unreduced accumulator stays below k^2 * p^3, which is under 2^63 for
    every field the enumeration budget admits.
    """
    n, k = a.shape
    if k == 1:
        return a * b % p
    conv = np.zeros((n, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        conv[:, i : i + k] += a[:, i : i + 1] * b
    out = conv[:, :k]
    for t in range(k - 1):
        out += conv[:, k + t : k + t + 1] * red[t]
    return out % p


def _vec_powers(x: np.ndarray, exps, p: int, red: np.ndarray) -> dict[int, np.ndarray]:
    """x^e for each requested exponent, sharing a binary multiplication chain."""
    powers = {1: x}

    def get(e):
        if e in powers:
            return powers[e]
        half = get(e // 2)
        out = _vec_mul(half, half, p, red)
        if e & 1:
            out = _vec_mul(out, x, p, red)
        powers[e] = out
        return out

    for e in exps:
        if e > 0:
            get(e)
    return powers


def _digits(idx: np.ndarray, p: int, k: int) -> np.ndarray:
    out = np.empty((idx.shape[0], k), dtype=np.int64)
    t = idx
    for i in range(k):
        out[:, i] = t % p
        t = t // p
    return out


def _pack(digits: np.ndarray, p: int) -> np.ndarray:
    k = digits.shape[1]
    weights = p ** np.arange(k, dtype=np.int64)
    return digits @ weights


def _vec_poly_eval(x: np.ndarray, coeffs, p: int, red: np.ndarray) -> np.ndarray:
    """f(x) for every row of x, via per-monomial powers (cheap for sparse f)."""
    exps = [i for i, c in enumerate(coeffs) if i and c % p]
    powers = _vec_powers(x, exps, p, red)
    out = np.zeros_like(x)
    out[:, 0] = coeffs[0] % p
    for e in exps:
        out += (coeffs[e] % p) * powers[e]
    out %= p
    return out


def _infinity_points(curve: ReducedCurve, k: int) -> int:
    """Rational points above x = infinity on the smooth model over F_{p^k}."""
    p = curve.p
    q = p**k
    n = len(curve.coeffs) - 1
    d = math.gcd(curve.model.m, n)
    lc = curve.coeffs[-1]
    dd = math.gcd(d, q - 1)
    # lc lies in F_p, so its q-power exponents reduce mod p - 1
    e = ((q - 1) // dd) % (p - 1)
    return dd if pow(lc, e, p) == 1 else 0


def count_points(
    curve: ReducedCurve,
    k: int,
    *,
    budget: int = DEFAULT_BUDGET,
    modulus: IntPoly | None = None,
) -> int:
    """Exact number of points of the smooth model over F_{p^k}.

    Enumerates every field element, so p^k must not exceed the budget.
    The modulus for F_{p^k} may be overridden; the count is independent
    of the choice.
    """
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    p = curve.p
    q = p**k
    if q > budget:
        raise BudgetExceeded(f"enumeration too large: {p}^{k} = {q} > budget {budget}")
    m = curve.model.m
    f_coeffs = curve.coeffs

    if math.gcd(m, q - 1) == 1:
        # y -> y^m is a bijection of F_q, so each x has exactly one y
        return q + _infinity_points(curve, k)

    if k == 1:
        red = np.zeros((0, 1), dtype=np.int64)
    else:
        if modulus is None:
            modulus = find_irreducible(p, k)
        red = _reduction_matrix(p, k, modulus)

    # one pass builds the m-th power table and records f(x) for every x;
    # the same element enumeration serves both roles
    counts_by_val = np.zeros(q, dtype=np.int64)
    fx_chunks = []
    for lo in range(0, q, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, q), dtype=np.int64)
        digits = _digits(idx, p, k)
        powers = _vec_powers(digits, [m], p, red)
        counts_by_val += np.bincount(_pack(powers[m], p), minlength=q)
        fx_chunks.append(_pack(_vec_poly_eval(digits, f_coeffs, p, red), p))

    total = sum(int(counts_by_val[fx].sum()) for fx in fx_chunks)
    return total + _infinity_points(curve, k)


def point_counts(
    curve: ReducedCurve,
    upto: int,
    *,
    budget: int = DEFAULT_BUDGET,
    counter=None,
) -> PointCounts:
    """N_1..N_upto over increasing extensions of F_p.

    `counter(curve, k)` may be supplied to route individual counts through
    a cache; it defaults to count_points.
    """
    get = counter if counter is not None else (
        lambda c, kk: count_points(c, kk, budget=budget)
    )
    return PointCounts(q=curve.p, counts=tuple(get(curve, kk) for kk in range(1, upto + 1)))


def frobenius_trace(curve: ReducedCurve, *, budget: int = DEFAULT_BUDGET, counter=None) -> int:
    """F_1 = q + 1 - N_1."""
    get = counter if counter is not None else (
        lambda c, kk: count_points(c, kk, budget=budget)
    )
    return curve.p + 1 - get(curve, 1)
