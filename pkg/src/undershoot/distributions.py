"""Exact pmf/cdf evaluators for the binomial, geometric, Pascal, and Poisson families.

Rational families are exact end to end.  The Poisson cdf splits into an exact
rational partial sum times a certified e^(-lambda) enclosure.  The integer
kernels run on gmpy2 mpz (same exact semantics, much faster at n ~ 10^4) and
return plain Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpz

from .numerics import CertifiedReal, RationalLike, _guard, binom_coeff, exp_enclosure

__all__ = [
    "BinomialParams",
    "PoissonParams",
    "GeometricParams",
    "PascalParams",
    "binomial_pmf",
    "binomial_cdf_leq",
    "binomial_tail_geq",
    "poisson_partial_sum",
    "poisson_cdf_leq",
    "geometric_cdf_leq",
    "pascal_pmf",
    "pascal_cdf_leq",
]


@dataclass(frozen=True)
class BinomialParams:
    """B(n, p): n trials, success probability p.  p = 0 is allowed (point mass at 0)."""

    n: int
    p: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        if self.n < 1:
            raise ValueError("binomial requires n >= 1")
        if not 0 <= self.p <= 1:
            raise ValueError("binomial requires p in [0, 1]")


@dataclass(frozen=True)
class PoissonParams:
    lam: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise ValueError("Poisson requires lambda > 0")


@dataclass(frozen=True)
class GeometricParams:
    """Trials until the first success; support {1, 2, ...}."""

    p: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        if not 0 < self.p <= 1:
            raise ValueError("geometric requires p in (0, 1]")


@dataclass(frozen=True)
class PascalParams:
    """Trials until the r-th success; support {r, r+1, ...}."""

    r: int
    p: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        if self.r < 1:
            raise ValueError("Pascal requires r >= 1")
        if not 0 < self.p <= 1:
            raise ValueError("Pascal requires p in (0, 1]")


def binomial_pmf(params: BinomialParams, k: int) -> Fraction:
    """P(B(n,p) = k), exact; 0 outside 0..n."""
    n, p = params.n, params.p
    if k < 0 or k > n:
        return Fraction(0)
    return binom_coeff(n, k) * p**k * (1 - p) ** (n - k)


def binomial_cdf_leq(params: BinomialParams, m: int) -> Fraction:
    """P(B(n,p) <= m), exact for any integer m."""
    n, p = params.n, params.p
    if m < 0:
        return Fraction(0)
    if m >= n:
        return Fraction(1)
    if p == 0:
        return Fraction(1)
    if p == 1:
        return Fraction(0)
    a, b = p.numerator, p.denominator
    q = b - a
    # sum_{k<=m} C(n,k) a^k q^(n-k) over the common denominator b^n
    u = mpz(q) ** n
    c = mpz(1)
    total = mpz(0)
    for k in range(m + 1):
        total += c * u
        c = c * (n - k) // (k + 1)
        u = u * a // q
    return Fraction(int(total), int(mpz(b) ** n))


def binomial_tail_geq(params: BinomialParams, r: int) -> Fraction:
    """P(B(n,p) >= r) = 1 - P(B <= r-1), exact."""
    if r <= 0:
        return Fraction(1)
    if r > params.n:
        return Fraction(0)
    return 1 - binomial_cdf_leq(params, r - 1)


def poisson_partial_sum(lam: RationalLike, m: int) -> Fraction:
    """Exact sum_{k=0..m} lambda^k / k!.

    Evaluated innermost-first as 1 + lam*(1 + lam/2*(...))/1 on a shared
    integer numerator/denominator, with a single gcd at the end; this keeps
    lambda = 10^4, m = 10^4 well under a second.
    """
    lam = Fraction(lam)
    if m < 0:
        raise ValueError("poisson_partial_sum requires m >= 0")
    a, b = mpz(lam.numerator), mpz(lam.denominator)
    num, den = mpz(1), mpz(1)
    for k in range(m, 0, -1):
        scaled = b * k * den
        num = scaled + a * num
        den = scaled
        if k % 128 == 0:
            _guard(int(num))
    return Fraction(int(num), int(den))


def poisson_cdf_leq(params: PoissonParams, m: int, precision_bits: int) -> CertifiedReal:
    """Enclosure of P(X_lambda <= m); radius bound inherited from exp_enclosure."""
    if m < 0:
        raise ValueError("poisson_cdf_leq requires m >= 0")
    partial = poisson_partial_sum(params.lam, m)
    enc = exp_enclosure(-params.lam, precision_bits) * partial
    return enc.rounded(precision_bits + 8)


def geometric_cdf_leq(params: GeometricParams, m: int) -> Fraction:
    """P(Y_p <= m) = 1 - (1-p)^m, exact; 0 for m < 1."""
    if m < 0:
        raise ValueError("geometric_cdf_leq requires m >= 0")
    return 1 - (1 - params.p) ** m


def pascal_pmf(params: PascalParams, j: int) -> Fraction:
    """P(B*(r,p) = j) = C(j-1, r-1) (1-p)^(j-r) p^r for j >= r, else 0."""
    r, p = params.r, params.p
    if j < r:
        return Fraction(0)
    return binom_coeff(j - 1, r - 1) * (1 - p) ** (j - r) * p**r


def pascal_cdf_leq(params: PascalParams, m: int) -> Fraction:
    """P(B*(r,p) <= m), exact; 0 below the support."""
    r, p = params.r, params.p
    if m < r:
        return Fraction(0)
    if p == 1:
        return Fraction(1)
    a, b = p.numerator, p.denominator
    q = b - a
    # sum_{j=r..m} C(j-1,r-1) q^(j-r) b^(m-j), then * a^r / b^m
    w = mpz(b) ** (m - r)
    c = mpz(1)
    total = mpz(0)
    for j in range(r, m + 1):
        total += c * w
        c = c * j // (j - r + 1)
        w = w * q // b
    return Fraction(int(total * mpz(a) ** r), int(mpz(b) ** m))
