"""Weil polynomials: reconstruction from point counts and validation.

The zeta numerator of a genus-g curve over F_q is f(T) = prod (1 - a_i T)
with 2g inverse roots of absolute value sqrt(q). Exactly g counts N_1..N_g
determine it: Newton's identities produce the lower half of the
coefficients and the functional equation fills in the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import PointCounts
from .poly import IntPoly

ROOT_CIRCLE_TOL = 1e-9


class InconsistentCounts(Exception):
    """Supplied counts cannot come from a genus-g curve over F_q."""


@dataclass(frozen=True)
class WeilPolynomial:
    """f(T) = sum coeffs[i] T^i of degree 2g, coeffs[0] = 1."""

    q: int
    g: int
    coeffs: tuple[int, ...]

    def as_poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def power_sums(self, upto: int) -> list[int]:
        """Sums of k-th powers of the inverse roots, k = 1..upto."""
        d = 2 * self.g
        a = self.coeffs
        ps = [0] * (upto + 1)
        for k in range(1, upto + 1):
            s = -k * a[k] if k <= d else 0
            for i in range(max(1, k - d), k):
                s -= a[k - i] * ps[i]
            ps[k] = s
        return ps[1:]

    def __str__(self):
        return f"WeilPolynomial(q={self.q}, g={self.g}, {IntPoly(self.coeffs)})"


@dataclass(frozen=True)
class WeilValidation:
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def hasse_weil_ok(n_k: int, q: int, g: int, k: int) -> bool:
    """|q^k + 1 - N_k| <= 2g sqrt(q^k), checked exactly."""
    s = q**k + 1 - n_k
    return s * s <= 4 * g * g * q**k


def weil_polynomial(counts: PointCounts, g: int) -> WeilPolynomial:
    """Build and validate the Weil polynomial from counts N_1..N_g.

    Raises InconsistentCounts whenever a Newton intermediate is not an
    integer, a count breaks the Hasse-Weil bound, or the finished
    polynomial fails validation.
    """
    q = counts.q
    if g == 0:
        if counts.counts and counts.counts[0] != q + 1:
            raise InconsistentCounts(f"genus 0 needs N_1 = q + 1, got {counts.counts[0]}")
        return WeilPolynomial(q=q, g=0, coeffs=(1,))
    if len(counts) != g:
        raise InconsistentCounts(f"need exactly {g} counts, got {len(counts)}")
    for k, n in enumerate(counts.counts, start=1):
        if not hasse_weil_ok(n, q, g, k):
            raise InconsistentCounts(f"N_{k} = {n} violates the Hasse-Weil bound")

    ps = [q**k + 1 - n for k, n in enumerate(counts.counts, start=1)]
    # Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    e = [1] + [0] * g
    for k in range(1, g + 1):
        s = 0
        sign = 1
        for i in range(1, k + 1):
            s += sign * e[k - i] * ps[i - 1]
            sign = -sign
        if s % k:
            raise InconsistentCounts(f"Newton identity gave a non-integer e_{k}")
        e[k] = s // k

    coeffs = [0] * (2 * g + 1)
    for i in range(g + 1):
        coeffs[i] = (-1) ** i * e[i]
    for i in range(g):
        coeffs[2 * g - i] = q ** (g - i) * coeffs[i]
    w = WeilPolynomial(q=q, g=g, coeffs=tuple(coeffs))

    report = validate_weil(w)
    if not report.ok:
        raise InconsistentCounts("validation failed: " + "; ".join(report.failures))
    return w


def point_count_from_weil(w: WeilPolynomial, k: int) -> int:
    """N_k = q^k + 1 - (sum of k-th powers of inverse roots), exactly."""
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if w.g == 0:
        return w.q**k + 1
    return w.q**k + 1 - w.power_sums(k)[-1]


def validate_weil(w: WeilPolynomial) -> WeilValidation:
    """Check the Weil-conjecture identities; collect failures, never raise.

    (a) functional equation coeffs[2g-i] = q^(g-i) coeffs[i], exactly;
    (b) the inverse roots are closed under a -> q/a, via the equivalent
        coefficient identity q^g T^2g f(1/(qT)) = f(T), exactly;
    (c) every root sits on the circle |T| = 1/sqrt(q), numerically, as a
        redundant guard on top of the exact checks.
    """
    failures = []
    d = 2 * w.g
    a = w.coeffs
    if len(a) != d + 1:
        return WeilValidation(failures=(f"expected {d + 1} coefficients, got {len(a)}",))
    if a[0] != 1:
        failures.append("constant term is not 1")
    for i in range(w.g + 1):
        if a[d - i] != w.q ** (w.g - i) * a[i]:
            failures.append(f"functional equation fails at i={i}")
            break
    # reciprocal pairing: coefficient of T^j in q^g T^d f(1/(qT)) is
    # a[d-j] q^(j-g); compare against f, keeping all arithmetic integral
    pairing_ok = all(
        a[j] * w.q ** (w.g - j) == a[d - j]
        if j <= w.g
        else a[j] == a[d - j] * w.q ** (j - w.g)
        for j in range(d + 1)
    )
    if not pairing_ok:
        failures.append("inverse roots are not closed under a -> q/a")
    if w.g > 0:
        roots = np.roots(list(reversed(a)))
        target = 1.0 / np.sqrt(w.q)
        worst = float(np.max(np.abs(np.abs(roots) - target)))
        if worst > ROOT_CIRCLE_TOL * max(1.0, target):
            failures.append(f"root off the critical circle by {worst:.3e}")
    return WeilValidation(failures=tuple(failures))
