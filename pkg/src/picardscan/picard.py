"""Picard numbers of C x C under reduction, and the jump-prime scan.

The second cohomology of C x C has reverse characteristic polynomial

    P2(T) = (1 - qT)^2 prod_{i,j} (1 - a_i a_j T),

a degree 4g^2 + 2 integer polynomial built here without ever extracting a
root: the k-th power sum of the pairwise products a_i a_j is the square of
the k-th power sum of the a_i, and Newton's identities recover the
coefficients exactly.

The Picard number over F_{q^m} is the number of eigenvalues L (inverse
roots of P2) with (L/q)^m = 1. Eigenvalue ratios L/q that are roots of
unity are detected by exact trial division: an order-n ratio contributes
the factor C_n(S) = q^phi(n) Phi_n(S/q) to the monic eigenvalue polynomial
chi(S) = S^D P2(1/S), and C_n has integer coefficients, so the division
stays in Z[S].
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable

from .arith import phi_table
from .curves import (
    DEFAULT_BUDGET,
    BadReduction,
    BudgetExceeded,
    CurveModel,
    PointCounts,
    ReducedCurve,
    count_points,
    point_counts,
    reduce_curve,
)
from .poly import IntPoly, cyclotomic_poly
from .zeta import InconsistentCounts, WeilPolynomial, point_count_from_weil, weil_polynomial

if TYPE_CHECKING:  # pragma: no cover
    from .characters import EndomorphismData

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class H2Poly:
    """Reverse characteristic polynomial of Frobenius on H^2(C x C)."""

    q: int
    g: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 4 * self.g * self.g + 2

    def as_poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def eigenvalue_poly(self) -> IntPoly:
        """chi(S) = S^D P2(1/S), monic with the eigenvalues as roots."""
        return IntPoly(tuple(reversed(self.coeffs)))


@dataclass(frozen=True)
class PicardReport:
    """Per-prime record of the Picard data of C x C."""

    p: int
    q: int
    f1: int
    picard_fq: int
    picard_geom: int
    cyclo: tuple[tuple[int, int], ...]  # (n, eigenvalue count) pairs
    baseline: int
    jumped: bool

    @property
    def cyclo_multiplicities(self) -> dict[int, int]:
        return dict(self.cyclo)


@dataclass(frozen=True)
class ScanOutcome:
    reports: tuple[PicardReport, ...]
    skipped: tuple[tuple[int, str], ...]


def _newton_coeffs_from_power_sums(ps: list[int], degree: int) -> list[int]:
    """Coefficients of prod (1 - r_i T) from power sums of the r_i."""
    coeffs = [1] + [0] * degree
    for k in range(1, degree + 1):
        s = 0
        for i in range(1, k + 1):
            s += coeffs[k - i] * ps[i - 1]
        if s % k:
            raise ArithmeticError(f"non-integral Newton step at k={k}")
        coeffs[k] = -s // k
    return coeffs


def h2_char_poly(w: WeilPolynomial) -> H2Poly:
    """P2 = (1 - qT)^2 prod_{i,j} (1 - a_i a_j T), computed exactly."""
    g, q = w.g, w.q
    d2 = (2 * g) ** 2
    if d2:
        ps = w.power_sums(d2)
        pair_ps = [s * s for s in ps]
        pair = IntPoly(_newton_coeffs_from_power_sums(pair_ps, d2))
    else:
        pair = IntPoly((1,))
    full = pair * (IntPoly((1, -q)) ** 2)
    return H2Poly(q=q, g=g, coeffs=full.coeffs)


def _scaled_cyclotomic(n: int, q: int) -> IntPoly:
    """C_n(S) = q^phi(n) Phi_n(S/q), monic with roots q * (n-th primitive roots)."""
    phi = cyclotomic_poly(n)
    d = phi.degree
    return IntPoly(tuple(c * q ** (d - j) for j, c in enumerate(phi.coeffs)))


@lru_cache(maxsize=512)
def cyclo_multiplicities(h: H2Poly) -> tuple[tuple[int, int], ...]:
    """Eigenvalue counts by root-of-unity order of the ratio L/q.

    Returns sorted (n, count) pairs where count is the number of
    eigenvalues L of Frobenius on H^2 with L/q a primitive n-th root of
    unity (counting multiplicity). The candidate orders n run to
    2 D^2 + 6, which covers every n with phi(n) <= D.
    """
    d = h.degree
    chi = h.eigenvalue_poly()
    q = h.q
    bound = 2 * d * d + 6
    phis = phi_table(bound)
    # integer divisibility filters at S = 1 and S = -1; chi(+-1) != 0
    # because every eigenvalue has absolute value q >= 3
    chi_at_1, chi_at_m1 = chi(1), chi(-1)
    remaining = chi.degree
    out = {}
    for n in range(1, bound + 1):
        phi_n = phis[n]
        if phi_n > remaining:
            continue
        cn = _scaled_cyclotomic(n, q)
        v1, vm1 = cn(1), cn(-1)
        if v1 and chi_at_1 % v1:
            continue
        if vm1 and chi_at_m1 % vm1:
            continue
        mult = 0
        while True:
            quo, rem = divmod(chi, cn)
            if rem:
                break
            mult += 1
            chi = quo
        if mult:
            out[n] = mult * phi_n
            remaining = chi.degree
            chi_at_1, chi_at_m1 = chi(1), chi(-1)
            if remaining == 0:
                break
    return tuple(sorted(out.items()))


def picard_number(h: H2Poly, m: int) -> int:
    """Picard number of C x C over F_{q^m}; m = 0 means geometric."""
    if m < 0:
        raise ValueError(f"extension degree must be >= 0, got {m}")
    mults = cyclo_multiplicities(h)
    if m == 0:
        return sum(c for _, c in mults)
    return sum(c for n, c in mults if m % n == 0)


def verify_parity(h: H2Poly, degrees: Iterable[int] = range(13)) -> bool:
    """Picard numbers over every tested extension (and geometric) are even."""
    return all(picard_number(h, m) % 2 == 0 for m in degrees)


@dataclass(frozen=True)
class TraceIdentityCheck:
    ok: bool
    n1: int
    f1: int
    q: int
    trace_h2: int
    lefschetz_lhs: int
    lefschetz_rhs: int
    trace_from_poly: int

    def __bool__(self):
        return self.ok


def verify_trace_identity(
    curve: ReducedCurve, w: WeilPolynomial, *, budget: int = DEFAULT_BUDGET
) -> TraceIdentityCheck:
    """Lefschetz bookkeeping for C x C over F_q.

    N_1^2 must equal 1 - 2 F_1 + (2q + F_1^2) - 2q F_1 + q^2, and the H^2
    trace 2q + F_1^2 must equal the negated linear coefficient of P2.
    """
    q = curve.p
    n1 = count_points(curve, 1, budget=budget)
    f1 = q + 1 - n1
    trace_h2 = 2 * q + f1 * f1
    lhs = n1 * n1
    rhs = 1 - 2 * f1 + trace_h2 - 2 * q * f1 + q * q
    h2 = h2_char_poly(w)
    trace_from_poly = -h2.coeffs[1] if len(h2.coeffs) > 1 else 0
    ok = lhs == rhs and trace_h2 == trace_from_poly and w.power_sums(1)[0] == f1
    if not ok:
        log.warning(
            "trace identity failed at p=%d: lhs=%d rhs=%d trH2=%d poly=%d",
            q, lhs, rhs, trace_h2, trace_from_poly,
        )
    return TraceIdentityCheck(
        ok=ok,
        n1=n1,
        f1=f1,
        q=q,
        trace_h2=trace_h2,
        lefschetz_lhs=lhs,
        lefschetz_rhs=rhs,
        trace_from_poly=trace_from_poly,
    )


def _compute_report(model, p, baseline, budget, counter) -> tuple[PicardReport, tuple[int, ...]]:
    curve = reduce_curve(model, p)
    g = model.genus
    counts = point_counts(curve, g, budget=budget, counter=counter)
    w = weil_polynomial(counts, g)
    h = h2_char_poly(w)
    geom = picard_number(h, 0)
    report = PicardReport(
        p=p,
        q=curve.p,
        f1=(p + 1 - counts.counts[0]) if counts.counts else 0,
        picard_fq=picard_number(h, 1),
        picard_geom=geom,
        cyclo=cyclo_multiplicities(h),
        baseline=baseline,
        jumped=geom > baseline,
    )
    return report, counts.counts


def report_for_prime(
    model: CurveModel,
    p: int,
    baseline: int,
    *,
    budget: int = DEFAULT_BUDGET,
    counter=None,
) -> PicardReport:
    """Count, rebuild the zeta numerator, and read off Picard data at p."""
    return _compute_report(model, p, baseline, budget, counter)[0]


def _scan_worker(args):
    model, p, baseline, budget = args
    try:
        report, counts = _compute_report(model, p, baseline, budget, None)
        return p, report, counts, None
    except (BadReduction, BudgetExceeded, InconsistentCounts) as exc:
        return p, None, (), str(exc)


def jump_scan(
    model: CurveModel,
    endo: "EndomorphismData",
    primes: Iterable[int],
    *,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    counter=None,
) -> ScanOutcome:
    """Picard reports over a range of primes, skips recorded, ordered by p.

    The baseline rank in characteristic 0 is 2 + rank(End J(C)) from the
    supplied endomorphism data. Bad primes and over-budget primes land in
    the skip list, never fatal. With jobs > 1 the uncached primes are
    distributed across worker processes; any cache stays in this process,
    the single writer, with worker results funneled back through it.
    """
    baseline = 2 + endo.rank
    plist = sorted(set(primes))
    reports: list[PicardReport] = []
    skipped: list[tuple[int, str]] = []

    pool_ps: list[int] = []
    serial_ps = plist
    if jobs > 1 and len(plist) > 1:
        g = model.genus
        pool_ps = [p for p in plist if counter is None or not counter.has_all(p, g)]
        in_pool = set(pool_ps)
        serial_ps = [p for p in plist if p not in in_pool]

    for p in serial_ps:
        try:
            rep, _ = _compute_report(model, p, baseline, budget, counter)
            reports.append(rep)
        except (BadReduction, BudgetExceeded, InconsistentCounts) as exc:
            skipped.append((p, str(exc)))
            log.info("skipping p=%d: %s", p, exc)

    if pool_ps:
        tasks = [(model, p, baseline, budget) for p in pool_ps]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for p, rep, counts, err in pool.map(_scan_worker, tasks, chunksize=8):
                if rep is None:
                    skipped.append((p, err))
                    log.info("skipping p=%d: %s", p, err)
                else:
                    if counter is not None:
                        counter.record_counts(p, counts)
                    reports.append(rep)

    reports.sort(key=lambda r: r.p)
    skipped.sort()
    return ScanOutcome(reports=tuple(reports), skipped=tuple(skipped))


def roundtrip_ok(
    curve: ReducedCurve, w: WeilPolynomial, *, budget: int = DEFAULT_BUDGET
) -> bool:
    """Enumerated N_k equals the Weil-polynomial N_k for k <= 2g (within budget)."""
    for k in range(1, 2 * curve.genus + 1):
        if curve.p**k > budget:
            break
        if count_points(curve, k, budget=budget) != point_count_from_weil(w, k):
            return False
    return True
