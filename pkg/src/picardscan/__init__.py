"""Picard numbers of reductions of curve self-products.

Point counting over finite fields, Weil polynomial reconstruction, Picard
numbers of C x C under reduction with jump-prime detection and density
statistics, decomposability obstructions, and function-field Mordell-Weil
rank bookkeeping.
"""

from .arith import euler_phi, kronecker_symbol, legendre_symbol, multiplicative_order
from .characters import (
    DensityReport,
    EndoFactor,
    EndomorphismData,
    TraceMoments,
    action_determinant,
    density_report,
    jump_character,
    sato_tate_stats,
)
from .curves import (
    BadReduction,
    BudgetExceeded,
    CurveModel,
    PointCounts,
    ReducedCurve,
    count_points,
    frobenius_trace,
    point_counts,
    reduce_curve,
)
from .decomp import (
    GenusCap,
    HWKind,
    HWStatus,
    SplittingData,
    congruence_witnesses,
    cyclotomic_splitting,
    deuring_supersingular,
    genus_cap,
    hw_status,
    ihara_max_genus,
    isogeny_isomorphism_gate,
    lauter_minimal_impossible,
    period,
)
from .gf import ExtensionField, PrimeField, find_irreducible
from .mwrank import (
    FiberData,
    UlmerBound,
    UlmerExactRank,
    shioda_tate_mw,
    ulmer_exact_rank,
    ulmer_lower_bound,
    ulmer_simplified_rank,
)
from .picard import (
    H2Poly,
    PicardReport,
    ScanOutcome,
    cyclo_multiplicities,
    h2_char_poly,
    jump_scan,
    picard_number,
    report_for_prime,
    verify_parity,
    verify_trace_identity,
)
from .poly import IntPoly, RatPoly, cyclotomic_poly
from .zeta import (
    InconsistentCounts,
    WeilPolynomial,
    point_count_from_weil,
    validate_weil,
    weil_polynomial,
)

__version__ = "0.1.0"
