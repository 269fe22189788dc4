"""Decomposability obstructions for Jacobians isogenous to powers of a curve.

Supersingularity via the Kronecker symbol (Deuring), Hasse-Weil
maximality and the period, the Ihara and Lauter genus obstructions with a
degree-at-most-3 cap, congruence witness scans, and prime splitting in the
2-power cyclotomic fields.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import euler_phi, is_prime, is_square, kronecker_symbol, multiplicative_order, primes_in_range
from .zeta import WeilPolynomial, point_count_from_weil


def deuring_supersingular(cm_disc: int, p: int) -> bool:
    """Supersingular reduction of a CM curve: a single prime above p.

    True exactly when (cm_disc / p) != +1, meaning p is inert or ramified
    in the CM field. Scales to large p where enumeration cannot.
    """
    if cm_disc >= 0:
        raise ValueError(f"CM discriminant must be negative, got {cm_disc}")
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p}")
    return kronecker_symbol(cm_disc, p) != 1


class HWKind(enum.Enum):
    MAXIMAL = "maximal"
    MINIMAL = "minimal"
    NEITHER = "neither"


@dataclass(frozen=True)
class HWStatus:
    kind: HWKind
    m: int
    count: int
    upper: int | None  # q^m + 1 + 2g sqrt(q^m), when the bound is integral
    lower: int | None


def hw_status(w: WeilPolynomial, m: int) -> HWStatus:
    """Compare N_m with the Hasse-Weil extremes q^m + 1 +- 2g q^(m/2)."""
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    qm = w.q**m
    n = point_count_from_weil(w, m)
    if w.g == 0:
        # bound term vanishes; a rational curve is vacuously maximal
        return HWStatus(kind=HWKind.MAXIMAL, m=m, count=n, upper=qm + 1, lower=qm + 1)
    s = math.isqrt(qm)
    if s * s != qm:
        return HWStatus(kind=HWKind.NEITHER, m=m, count=n, upper=None, lower=None)
    upper = qm + 1 + 2 * w.g * s
    lower = qm + 1 - 2 * w.g * s
    if n == upper:
        kind = HWKind.MAXIMAL
    elif n == lower:
        kind = HWKind.MINIMAL
    else:
        kind = HWKind.NEITHER
    return HWStatus(kind=kind, m=m, count=n, upper=upper, lower=lower)


def period(w: WeilPolynomial, cutoff: int) -> int | None:
    """Smallest m <= cutoff where the curve is maximal or minimal, else None."""
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    for m in range(1, cutoff + 1):
        if hw_status(w, m).kind is not HWKind.NEITHER:
            return m
    return None


def ihara_max_genus(q: int) -> int:
    """Largest genus admitting a maximal curve over F_q, q a square: s(s-1)/2.

    The bound is imported from the classical literature; it sits behind
    this one operation so an alternative can be swapped in.
    """
    s = math.isqrt(q)
    if s * s != q:
        raise ValueError(f"Ihara bound needs a square field size, got {q}")
    return s * (s - 1) // 2


def lauter_minimal_impossible(g: int, q: int) -> bool:
    """Is the Hasse-Weil lower bound negative, i.e. q + 1 - 2g sqrt(q) < 0?

    Compared exactly via (q + 1)^2 < 4 g^2 q; point counts are
    nonnegative, so minimality is impossible when this holds.
    """
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    return (q + 1) ** 2 < 4 * g * g * q


@dataclass(frozen=True)
class GenusCap:
    q: int
    cap: int | None  # None when no m in {1,2,3} gives a square field size
    per_m: tuple[tuple[int, int | None], ...]  # (m, cap from q^m or None)


def genus_cap(q: int) -> GenusCap:
    """Largest genus compatible with HW-maximality within a degree <= 3 extension.

    Evaluates the Ihara cap at q^m for every m in {1, 2, 3} with q^m a
    square and takes the best; the per-m breakdown is part of the result.
    """
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    per_m = []
    best = None
    for m in (1, 2, 3):
        qm = q**m
        cap_m = ihara_max_genus(qm) if is_square(qm) else None
        per_m.append((m, cap_m))
        if cap_m is not None and (best is None or cap_m > best):
            best = cap_m
    return GenusCap(q=q, cap=best, per_m=tuple(per_m))


@dataclass(frozen=True)
class SplittingData:
    """How an odd prime splits in the 2^k-th cyclotomic field."""

    p: int
    modulus: int  # 2^k
    e: int
    f: int
    g: int

    @property
    def splits_completely(self) -> bool:
        return self.f == 1


def cyclotomic_splitting(p: int, k: int) -> SplittingData:
    """e, f, g for an odd prime in Q(zeta_{2^k}); e = 1, f = ord(p mod 2^k)."""
    if k < 2:
        raise ValueError(f"need k >= 2 (a nontrivial 2-power cyclotomic field), got {k}")
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"need an odd prime (2 ramifies), got {p}")
    modulus = 2**k
    f = multiplicative_order(p, modulus)
    g = euler_phi(modulus) // f
    return SplittingData(p=p, modulus=modulus, e=1, f=f, g=g)


@dataclass(frozen=True)
class WitnessRow:
    p: int
    hw_congruence: bool  # p = -1 mod 4g, the maximal/minimal witness class
    supersingular_class: bool  # p = 3 mod 4: CM by Z[i] forces supersingular
    ordinary_class: bool  # p = 1 mod 4: ordinary reduction


@dataclass(frozen=True)
class WitnessReport:
    genus: int
    bound: int
    rows: tuple[WitnessRow, ...]
    hw_count: int
    supersingular_count: int
    ordinary_count: int


def congruence_witnesses(g: int, bound: int) -> WitnessReport:
    """Tabulate the congruence classes behind the genus-25 obstruction.

    Reports, per odd prime up to the bound, the predicates p = -1 mod 4g,
    p = 3 mod 4, and p = 1 mod 4. The classes are deliberately kept
    separate; drawing the incompatibility conclusion is left to the user.
    """
    if g < 2:
        raise ValueError(f"witness scan needs genus >= 2, got {g}")
    rows = []
    for p in primes_in_range(3, bound):
        rows.append(
            WitnessRow(
                p=p,
                hw_congruence=p % (4 * g) == 4 * g - 1,
                supersingular_class=p % 4 == 3,
                ordinary_class=p % 4 == 1,
            )
        )
    return WitnessReport(
        genus=g,
        bound=bound,
        rows=tuple(rows),
        hw_count=sum(r.hw_congruence for r in rows),
        supersingular_count=sum(r.supersingular_class for r in rows),
        ordinary_count=sum(r.ordinary_class for r in rows),
    )


@dataclass(frozen=True)
class IsogenyGate:
    admissible: bool
    classes: tuple[str, ...]
    reason: str


def isogeny_isomorphism_gate(decomposition) -> IsogenyGate:
    """Can a Jacobian be isomorphic to this product of elliptic curves?

    The canonical principal polarization of a Jacobian is irreducible, so
    an isomorphism to a product forces all elliptic factors into a single
    isogeny class. The input lists the isogeny-class labels of the claimed
    factors, optionally as (label, exponent) pairs.
    """
    labels = []
    for item in decomposition:
        if isinstance(item, str):
            labels.append(item)
        else:
            name, mult = item
            labels.extend([name] * int(mult))
    classes = tuple(dict.fromkeys(labels))
    if len(classes) <= 1:
        return IsogenyGate(
            admissible=True,
            classes=classes,
            reason="single isogeny class; route to the genus cap checks",
        )
    return IsogenyGate(
        admissible=False,
        classes=classes,
        reason="a Jacobian has an irreducible principal polarization; a "
        "multi-class product would only carry reducible ones",
    )
