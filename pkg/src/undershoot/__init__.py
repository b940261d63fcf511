"""Exact mean-tail probabilities P(X <= E[X]) and their infima.

Covers the binomial (Chvátal minimizer), Poisson, geometric, and Pascal
families: exact rational pmf/cdf evaluation, certified enclosures for
e^x/logarithm quantities, floor-piece infimum scans, and verifiers for the
published claims at desk scale.
"""

from .distributions import (
    BinomialParams,
    GeometricParams,
    PascalParams,
    PoissonParams,
    binomial_cdf_leq,
    binomial_pmf,
    binomial_tail_geq,
    geometric_cdf_leq,
    pascal_cdf_leq,
    pascal_pmf,
    poisson_cdf_leq,
    poisson_partial_sum,
)
from .meantail import (
    Family,
    InfimumReport,
    PieceReport,
    a2_closed,
    a3_closed,
    b2,
    b3,
    chvatal_argmin,
    chvatal_q,
    geometric_a,
    geometric_f,
    global_infimum,
    mean_tail,
    pascal_a,
    pascal_a_via_binomial,
    pascal_f,
    piece_decompose,
    piece_interval,
    poisson_mean_tail,
    poisson_piece_infimum,
)
from .numerics import (
    DEFAULT_MAX_PRECISION_BITS,
    DEFAULT_PRECISION_BITS,
    CertifiedReal,
    MemoryGuardError,
    PrecisionExhaustedError,
    Rational,
    Sign,
    UndecidedComparisonError,
    binom_coeff,
    decide_sign,
    exp_enclosure,
    ln_ratio_enclosure,
    parse_rational,
)

__version__ = "0.1.0"
