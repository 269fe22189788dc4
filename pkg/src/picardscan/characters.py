"""Jump characters, Galois-action determinants, and scan statistics.

The jump character of C x C at a good odd prime p is the Kronecker symbol
(D / p), where Q(sqrt(D)) is the field of definition of the top exterior
power of the geometric Picard lattice. D comes in with the user-supplied
endomorphism data; the determinant machinery here lets the user compute
it from an explicit Galois action and cross-check the label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import is_prime, kronecker_symbol, primes_in_range
from .curves import (
    DEFAULT_BUDGET,
    BadReduction,
    BudgetExceeded,
    CurveModel,
    count_points,
    reduce_curve,
)
from .picard import PicardReport
from .poly import IntPoly


def _det_bareiss(rows: list[list[int]]) -> int:
    """Exact integer determinant, fraction-free Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def action_determinant(min_poly: IntPoly, action: IntPoly, *, multiplication: bool = False) -> int:
    """Determinant of a Galois action on the order Z[x]/(min_poly).

    `action` is the image of the generator; it must be a root of min_poly
    (verified exactly). With multiplication=True the map is v -> action*v
    instead of the ring map x -> action(x). The determinant is independent
    of the chosen Z-basis, so the power basis 1, x, ..., x^(d-1) is used
    throughout; the result must be a unit, anything else means the map is
    not an automorphism of the lattice.
    """
    if not min_poly.is_monic() or min_poly.degree < 1:
        raise ValueError("min_poly must be monic of positive degree")
    d = min_poly.degree
    a = action % min_poly
    # verify action is a conjugate of the generator: min_poly(action) = 0
    acc = IntPoly((0,))
    for c in reversed(min_poly.coeffs):
        acc = (acc * a + c) % min_poly
    if acc:
        raise ValueError("action is not a root of min_poly; not an automorphism")
    cols = []
    if multiplication:
        basis_elt = IntPoly((1,))
        x = IntPoly((0, 1))
        for _ in range(d):
            cols.append((a * basis_elt) % min_poly)
            basis_elt = (basis_elt * x) % min_poly
    else:
        power = IntPoly((1,))
        for _ in range(d):
            cols.append(power)
            power = (power * a) % min_poly
    rows = [[col[i] for col in cols] for i in range(d)]
    det = _det_bareiss(rows)
    if det not in (-1, 1):
        raise ValueError(f"determinant {det} is not a unit; not an automorphism")
    return det


@dataclass(frozen=True)
class EndoFactor:
    """One number-field factor of End J(C) with its Galois generator action."""

    min_poly: IntPoly
    action: IntPoly
    multiplication: bool = False

    @property
    def rank(self) -> int:
        return self.min_poly.degree

    def determinant(self) -> int:
        return action_determinant(self.min_poly, self.action, multiplication=self.multiplication)


@dataclass(frozen=True)
class EndomorphismData:
    """User-supplied description of End J(C) over the algebraic closure.

    disc_label is the integer D with Q(sqrt(D)) the field of definition of
    the top exterior power of the Picard lattice of C x C; D = 1 means the
    jump character is trivial. Basis conventions can flip the sign of an
    individual determinant, so the label is an input, not a derived value;
    action_sign() exists to cross-check it.
    """

    factors: tuple[EndoFactor, ...]
    disc_label: int
    label: str = ""

    def __post_init__(self):
        if self.disc_label == 0:
            raise ValueError("disc_label must be a nonzero integer")

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def trivial_character(self) -> bool:
        return self.disc_label == 1

    def action_sign(self) -> int:
        sign = 1
        for f in self.factors:
            sign *= f.determinant()
        return sign

    def label_consistent(self) -> bool:
        """Does the product of factor determinants match the label's sign?"""
        return (self.action_sign() == -1) == (not self.trivial_character)


def jump_character(endo: EndomorphismData, p: int) -> int:
    """(disc_label / p) at an odd prime; identically +1 when the label is 1."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"jump character needs an odd prime, got {p}")
    return kronecker_symbol(endo.disc_label, p)


@dataclass(frozen=True)
class DensityReport:
    total_good_primes: int
    jumped_count: int
    empirical_density: Fraction | None
    predicted_density: Fraction | None  # None: no lower bound from the character
    character_mismatches: tuple[int, ...]
    insufficient_data: bool


def density_report(reports: Sequence[PicardReport], endo: EndomorphismData) -> DensityReport:
    """Empirical jump density against the Chebotarev prediction.

    A prime with character -1 and even baseline must have jumped; any
    exception lands in character_mismatches (the forbidden direction).
    Jumps at character +1 primes are allowed and simply counted.
    """
    total = len(reports)
    jumped = sum(1 for r in reports if r.jumped)
    mismatches = tuple(
        r.p
        for r in reports
        if jump_character(endo, r.p) == -1 and r.baseline % 2 == 0 and not r.jumped
    )
    return DensityReport(
        total_good_primes=total,
        jumped_count=jumped,
        empirical_density=Fraction(jumped, total) if total else None,
        predicted_density=None if endo.trivial_character else Fraction(1, 2),
        character_mismatches=mismatches,
        insufficient_data=total == 0,
    )


# ---------------------------------------------------------------------------
# normalized Frobenius trace statistics


@dataclass(frozen=True)
class TraceMoments:
    """Sample moments of F_1/sqrt(p) over good primes up to a bound.

    For a generic curve of genus g the reference distribution is the trace
    of a random unitary symplectic 2g x 2g matrix: mean 0, second moment 1.
    The non-generic flag is heuristic; it fires on a large supersingular
    fraction or, in genus 1, on a fourth moment far from the generic value
    2 (CM pushes it near 3).
    """

    label: str
    genus: int
    bound: int
    n_primes: int
    mean: float
    second_moment: float
    fourth_moment: float
    zero_fraction: Fraction
    reference_mean: float
    reference_second_moment: float
    non_generic: bool
    histogram: tuple[tuple[float, float, int], ...]
    skipped: tuple[tuple[int, str], ...]


def sato_tate_stats(
    model: CurveModel,
    bound: int,
    *,
    buckets: int = 40,
    budget: int = DEFAULT_BUDGET,
    counter=None,
) -> TraceMoments:
    """Collect t_p = F_1/sqrt(p) over good p <= bound and report moments.

    Floating point appears only here, in the reporting layer; the counts
    feeding it are exact.
    """
    g = model.genus
    if g < 1:
        raise ValueError("trace statistics need genus >= 1")
    get = counter if counter is not None else (
        lambda c, kk: count_points(c, kk, budget=budget)
    )
    traces: list[float] = []
    zeros = 0
    skipped: list[tuple[int, str]] = []
    for p in primes_in_range(3, bound):
        try:
            curve = reduce_curve(model, p)
            n1 = get(curve, 1)
        except (BadReduction, BudgetExceeded) as exc:
            skipped.append((p, str(exc)))
            continue
        f1 = p + 1 - n1
        if f1 == 0:
            zeros += 1
        traces.append(f1 / math.sqrt(p))
    n = len(traces)
    lo, hi = -2.0 * g, 2.0 * g
    counts = [0] * buckets
    for t in traces:
        i = int((t - lo) / (hi - lo) * buckets)
        counts[min(max(i, 0), buckets - 1)] += 1
    width = (hi - lo) / buckets
    histogram = tuple(
        (lo + i * width, lo + (i + 1) * width, counts[i]) for i in range(buckets)
    )
    if n == 0:
        return TraceMoments(
            label=model.label, genus=g, bound=bound, n_primes=0,
            mean=0.0, second_moment=0.0, fourth_moment=0.0,
            zero_fraction=Fraction(0), reference_mean=0.0,
            reference_second_moment=1.0, non_generic=False,
            histogram=histogram, skipped=tuple(skipped),
        )
    mean = sum(traces) / n
    m2 = sum(t * t for t in traces) / n
    m4 = sum(t**4 for t in traces) / n
    zero_frac = Fraction(zeros, n)
    flagged = zero_frac > Fraction(1, 5)
    if g == 1:
        flagged = flagged or abs(m4 - 2.0) > 0.5
    return TraceMoments(
        label=model.label,
        genus=g,
        bound=bound,
        n_primes=n,
        mean=mean,
        second_moment=m2,
        fourth_moment=m4,
        zero_fraction=zero_frac,
        reference_mean=0.0,
        reference_second_moment=1.0,
        non_generic=flagged,
        histogram=histogram,
        skipped=tuple(skipped),
    )
