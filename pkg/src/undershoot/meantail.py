"""Mean-tail functions P(X <= E[X]), floor-piece decomposition, and infimum reports.

Each family's parameter domain splits at floor breakpoints (where floor(1/p),
floor(lambda), or floor(r/p) jumps) into pieces on which the mean-tail is
monotone; the per-piece infimum is a one-sided limit at the open end of the
piece and is never attained.  Reports compare the scanned global infimum
against the claimed value (1/2, 1/e, or (r/(r+1))^r).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpz

from .distributions import (
    BinomialParams,
    PascalParams,
    PoissonParams,
    binomial_cdf_leq,
    binomial_tail_geq,
    pascal_cdf_leq,
    poisson_cdf_leq,
)
from .numerics import (
    DEFAULT_MAX_PRECISION_BITS,
    DEFAULT_PRECISION_BITS,
    CertifiedReal,
    RationalLike,
    Sign,
    UndecidedComparisonError,
    checked_pow,
    decide_sign,
    exp_enclosure,
    format_decimal,
)

__all__ = [
    "Family",
    "PieceReport",
    "InfimumReport",
    "chvatal_q",
    "chvatal_argmin",
    "poisson_mean_tail",
    "poisson_piece_infimum",
    "geometric_f",
    "geometric_a",
    "pascal_f",
    "pascal_a",
    "pascal_a_via_binomial",
    "a2_closed",
    "a3_closed",
    "b2",
    "b3",
    "piece_interval",
    "piece_decompose",
    "global_infimum",
    "mean_tail",
]


class Family(enum.Enum):
    GEOMETRIC = "geometric"
    PASCAL = "pascal"
    POISSON = "poisson"


@dataclass(frozen=True)
class PieceReport:
    """One floor piece: the parameter interval (lo, hi] and its one-sided infimum."""

    family: Family
    piece_index: int
    lo: Fraction
    hi: Fraction
    piece_infimum: Fraction | CertifiedReal
    attained: bool
    limit_witness: Fraction
    r: int | None = None


@dataclass(frozen=True)
class InfimumReport:
    family: Family
    first_piece: int
    scan_bound: int
    piece_reports: tuple[PieceReport, ...]
    global_infimum: Fraction | CertifiedReal
    attained: bool
    claim_label: str
    claimed_value: Fraction | CertifiedReal
    agrees_with_claim: bool
    witness_sequence: tuple[Fraction, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)
    r: int | None = None


# -- Chvátal's binomial minimizer -------------------------------------------


def chvatal_q(n: int, m: int) -> Fraction:
    """q_m = P(B(n, m/n) <= m), exact."""
    if n < 2:
        raise ValueError("chvatal_q requires n >= 2")
    if not 0 <= m <= n:
        raise ValueError(f"m = {m} outside [0, {n}]")
    return binomial_cdf_leq(BinomialParams(n, Fraction(m, n)), m)


def _chvatal_numerators(n: int) -> list[mpz]:
    """Numerators of q_0..q_n over the common denominator n^n."""
    nn = mpz(n) ** n
    nums = []
    for m in range(n + 1):
        if m == 0 or m == n:
            nums.append(nn)
            continue
        q = n - m
        u = mpz(q) ** n
        c = mpz(1)
        total = mpz(0)
        for k in range(m + 1):
            total += c * u
            c = c * (n - k) // (k + 1)
            u = u * m // q
        nums.append(total)
    return nums


def chvatal_argmin(n: int) -> tuple[list[int], list[Fraction]]:
    """Exact argmin set of q_m over m in {0..n}, plus all q values.

    Ties are reported as a multi-element minimizer list.
    """
    if n < 2:
        raise ValueError("chvatal_argmin requires n >= 2")
    nums = _chvatal_numerators(n)
    smallest = min(nums)
    minimizers = [m for m, v in enumerate(nums) if v == smallest]
    den = int(mpz(n) ** n)
    return minimizers, [Fraction(int(v), den) for v in nums]


# -- Poisson -----------------------------------------------------------------


def poisson_mean_tail(lam: RationalLike, precision_bits: int = DEFAULT_PRECISION_BITS) -> CertifiedReal:
    """Enclosure of P(X_lambda <= lambda) = P(X_lambda <= floor(lambda))."""
    lam = Fraction(lam)
    return poisson_cdf_leq(PoissonParams(lam), math.floor(lam), precision_bits)


def poisson_piece_infimum(k: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> CertifiedReal:
    """Enclosure of P(X_{k+1} <= k): the unattained infimum on lambda in (k, k+1].

    For k = 0 this is the infimum over (0, 1), approached as lambda -> 1.
    """
    if k < 0:
        raise ValueError("piece index must be >= 0")
    return poisson_cdf_leq(PoissonParams(Fraction(k + 1)), k, precision_bits)


# -- Geometric ---------------------------------------------------------------


def geometric_f(p: RationalLike) -> Fraction:
    """P(Y_p <= 1/p) = 1 - (1-p)^floor(1/p), exact."""
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError("geometric mean-tail requires p in (0, 1]")
    x = p.denominator // p.numerator  # floor(1/p), exact
    return 1 - checked_pow(1 - p, x)


def geometric_a(n: int) -> Fraction:
    """Infimum 1 - (n/(n+1))^n of the mean-tail on the piece (1/(n+1), 1/n]."""
    if n < 1:
        raise ValueError("geometric_a requires n >= 1")
    return 1 - checked_pow(Fraction(n, n + 1), n)


# -- Pascal ------------------------------------------------------------------


def pascal_f(r: int, p: RationalLike) -> Fraction:
    """P(B*(r,p) <= r/p), exact: the Pascal mean-tail at parameter p."""
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError("Pascal mean-tail requires p in (0, 1]")
    threshold = (r * p.denominator) // p.numerator  # floor(r/p), exact
    return pascal_cdf_leq(PascalParams(r, p), threshold)


def pascal_a(r: int, n: int) -> Fraction:
    """Per-piece infimum sum_{k=r..n} C(k-1,r-1) (r/(n+1))^r (1-r/(n+1))^(k-r).

    Direct series evaluation (independent of the binomial-tail route in
    :func:`pascal_a_via_binomial`).
    """
    if r < 1 or n < r:
        raise ValueError("pascal_a requires n >= r >= 1")
    d = n + 1
    q = d - r
    # sum_{j=0..n-r} C(j+r-1, r-1) q^j d^(n-r-j), then * r^r / d^n
    v = mpz(d) ** (n - r)
    c = mpz(1)
    total = mpz(0)
    for j in range(n - r + 1):
        total += c * v
        c = c * (j + r) // (j + 1)
        v = v * q // d
    return Fraction(int(total * mpz(r) ** r), int(mpz(d) ** n))


def pascal_a_via_binomial(r: int, n: int) -> Fraction:
    """Same quantity as :func:`pascal_a`, via P(B(n, r/(n+1)) >= r)."""
    if r < 1 or n < r:
        raise ValueError("pascal_a_via_binomial requires n >= r >= 1")
    return binomial_tail_geq(BinomialParams(n, Fraction(r, n + 1)), r)


def a2_closed(n: int) -> Fraction:
    """Closed form for the r=2 piece infima: 4/9 at n=2, else 1 - b2(n)."""
    if n < 2:
        raise ValueError("a2_closed requires n >= 2")
    if n == 2:
        return Fraction(4, 9)
    return 1 - b2(n)


def a3_closed(n: int) -> Fraction:
    """Closed form for the r=3 piece infima: 27/64 at n=3, else 1 - b3(n)."""
    if n < 3:
        raise ValueError("a3_closed requires n >= 3")
    if n == 3:
        return Fraction(27, 64)
    return 1 - b3(n)


def b2(n: int) -> Fraction:
    """b2(n) = (3n-1)/(n+1) * ((n-1)/(n+1))^(n-1), n >= 3."""
    if n < 3:
        raise ValueError("b2 requires n >= 3")
    return Fraction(3 * n - 1, n + 1) * checked_pow(Fraction(n - 1, n + 1), n - 1)


def b3(n: int) -> Fraction:
    """b3(n) = (17n^2-29n+8)/(2(n+1)^2) * ((n-2)/(n+1))^(n-2), n >= 4."""
    if n < 4:
        raise ValueError("b3 requires n >= 4")
    poly = Fraction(17 * n * n - 29 * n + 8, 2 * (n + 1) ** 2)
    return poly * checked_pow(Fraction(n - 2, n + 1), n - 2)


# -- Pieces and global infima -------------------------------------------------


def mean_tail(
    family: Family,
    param: RationalLike,
    r: int | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> Fraction | CertifiedReal:
    """P(X <= E[X]) at the given parameter, exact or certified by family."""
    if family is Family.GEOMETRIC:
        return geometric_f(param)
    if family is Family.PASCAL:
        if r is None:
            raise ValueError("Pascal mean-tail requires r")
        return pascal_f(r, param)
    return poisson_mean_tail(param, precision_bits)


def piece_interval(family: Family, index: int, r: int | None = None) -> tuple[Fraction, Fraction]:
    """The parameter interval (lo, hi] on which the floor quantity equals index."""
    if family is Family.GEOMETRIC:
        if index < 1:
            raise ValueError("geometric pieces start at 1")
        return Fraction(1, index + 1), Fraction(1, index)
    if family is Family.PASCAL:
        if r is None:
            raise ValueError("Pascal pieces require r")
        if index < r:
            raise ValueError(f"Pascal pieces start at {r}")
        return Fraction(r, index + 1), Fraction(r, index)
    if index < 0:
        raise ValueError("Poisson pieces start at 0")
    return Fraction(index), Fraction(index + 1)


def piece_decompose(
    family: Family,
    first: int,
    last: int,
    r: int | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> list[PieceReport]:
    """One PieceReport per index in [first, last], in piece order.

    Geometric/Pascal infima are approached as the parameter drops to the open
    left endpoint; the Poisson mean-tail is non-increasing on [k, k+1), so its
    piece infimum is approached at the upper endpoint.
    """
    if last < first:
        raise ValueError("empty piece range")
    reports = []
    for index in range(first, last + 1):
        lo, hi = piece_interval(family, index, r)
        if family is Family.GEOMETRIC:
            infimum: Fraction | CertifiedReal = geometric_a(index)
            witness = lo
        elif family is Family.PASCAL:
            infimum = pascal_a(r, index)
            witness = lo
        else:
            infimum = poisson_piece_infimum(index, precision_bits)
            witness = hi
        reports.append(
            PieceReport(
                family=family,
                piece_index=index,
                lo=lo,
                hi=hi,
                piece_infimum=infimum,
                attained=False,
                limit_witness=witness,
                r=r if family is Family.PASCAL else None,
            )
        )
    return reports


def _witness_sequence(lo: Fraction, hi: Fraction, toward_lo: bool, length: int) -> tuple[Fraction, ...]:
    span = hi - lo
    if toward_lo:
        return tuple(lo + span / 4**j for j in range(1, length + 1))
    return tuple(hi - span / 4**j for j in range(1, length + 1))


def _first_piece(family: Family, r: int | None) -> int:
    if family is Family.GEOMETRIC:
        return 1
    if family is Family.PASCAL:
        if r is None:
            raise ValueError("Pascal scans require r")
        return r
    return 0


def global_infimum(
    family: Family,
    scan_bound: int,
    r: int | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
    witness_length: int = 5,
    tail_probe_lambda: RationalLike = 10_000,
) -> InfimumReport:
    """Minimum of the per-piece infima over pieces first..scan_bound.

    The infimum is a one-sided limit, so ``attained`` is always False and a
    witness sequence approaching it is attached.  For Poisson the verdict is
    explicitly scan-based: the report records the increasing piece-infimum
    chain plus a large-lambda probe instead of claiming an unscanned proof.
    Raises :class:`UndecidedComparisonError` if a Poisson enclosure comparison
    cannot be resolved at ``max_precision_bits``.
    """
    first = _first_piece(family, r)
    if scan_bound < first:
        raise ValueError(f"scan_bound must be >= {first}")
    pieces = tuple(piece_decompose(family, first, scan_bound, r, precision_bits))
    notes: list[str] = []

    if family is Family.POISSON:
        claim_label = "1/e"
        claimed: Fraction | CertifiedReal = exp_enclosure(-1, 2 * precision_bits)
        # Establish minimality at piece 0 through the increasing chain.
        for k in range(first, scan_bound):
            sign = decide_sign(
                lambda bits, k=k: poisson_piece_infimum(k + 1, bits) - poisson_piece_infimum(k, bits),
                max_bits=max_precision_bits,
                start_bits=precision_bits,
            )
            if sign is not Sign.POSITIVE:
                raise UndecidedComparisonError(
                    f"piece infima at k={k},{k + 1} were not separated at {max_precision_bits} bits"
                )
        best = pieces[0]
        agrees = isinstance(best.piece_infimum, CertifiedReal) and best.piece_infimum.overlaps(claimed)
        notes.append(
            f"piece infima strictly increasing on k={first}..{scan_bound} (separated enclosures)"
        )
        probe_lam = Fraction(tail_probe_lambda)
        probe = poisson_mean_tail(probe_lam, precision_bits)
        probe_sign = decide_sign(
            lambda bits: poisson_mean_tail(probe_lam, bits) - poisson_piece_infimum(first, bits),
            max_bits=max_precision_bits,
            start_bits=precision_bits,
        )
        if probe_sign is not Sign.POSITIVE:
            raise UndecidedComparisonError("tail probe could not be separated from the piece-0 infimum")
        notes.append(
            "tail-of-scan evidence, not a proof: mean-tail("
            + str(probe_lam)
            + ") ~ "
            + format_decimal(probe.midpoint, 6)
            + " stays above the piece-0 infimum and tends to 1/2"
        )
        witness = _witness_sequence(best.lo, best.hi, toward_lo=False, length=witness_length)
    else:
        if family is Family.GEOMETRIC:
            claim_label = "1/2"
            claimed = Fraction(1, 2)
        else:
            claim_label = f"({r}/{r + 1})^{r}"
            claimed = checked_pow(Fraction(r, r + 1), r)
        best = min(pieces, key=lambda piece: piece.piece_infimum)
        agrees = best.piece_infimum == claimed and best.piece_index == first
        witness = _witness_sequence(best.lo, best.hi, toward_lo=True, length=witness_length)

    return InfimumReport(
        family=family,
        first_piece=first,
        scan_bound=scan_bound,
        piece_reports=pieces,
        global_infimum=best.piece_infimum,
        attained=False,
        claim_label=claim_label,
        claimed_value=claimed,
        agrees_with_claim=agrees,
        witness_sequence=witness,
        notes=tuple(notes),
        r=r if family is Family.PASCAL else None,
    )
