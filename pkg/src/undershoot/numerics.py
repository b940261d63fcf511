"""Exact rationals, certified ball arithmetic, and adaptive sign decisions.

Every probability in this package is either an exact ``fractions.Fraction``
or a :class:`CertifiedReal`: a rational midpoint plus a rational radius that
provably contains the true real value.  Enclosures appear only where e^x or a
logarithm is involved; everything else stays exact.

The enclosure constructors (`exp_enclosure`, `ln_ratio_enclosure`) use
argument reduction plus a truncated series with a rigorous rational remainder
bound, so no floating point enters any comparison.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Union

__all__ = [
    "Rational",
    "RationalLike",
    "Sign",
    "CertifiedReal",
    "MemoryGuardError",
    "PrecisionExhaustedError",
    "UndecidedComparisonError",
    "DEFAULT_PRECISION_BITS",
    "DEFAULT_MAX_PRECISION_BITS",
    "binom_coeff",
    "exp_enclosure",
    "ln_ratio_enclosure",
    "decide_sign",
    "parse_rational",
    "checked_pow",
    "memory_guard_bits",
    "set_memory_guard_bits",
    "format_decimal",
    "format_scientific",
]

Rational = Fraction
RationalLike = Union[Fraction, int]

# Working precisions: 192 bits separates every desk-scale quantity from its
# comparand; adaptive doubling is capped at 4096 bits.
DEFAULT_PRECISION_BITS = 192
DEFAULT_MAX_PRECISION_BITS = 4096

# Abort rather than thrash: no single rational may grow past this many bits.
_DEFAULT_GUARD_BITS = 10**8
_memory_guard_bits = _DEFAULT_GUARD_BITS

# Radii are stored as 48-bit dyadic upper bounds so they never balloon.
_RADIUS_SIG_BITS = 48


class MemoryGuardError(RuntimeError):
    """A single rational exceeded the configured bit budget."""


class PrecisionExhaustedError(RuntimeError):
    """A series remainder bound could not be met within the term cap."""


class UndecidedComparisonError(RuntimeError):
    """An enclosure comparison stayed unresolved at the maximum precision."""


def memory_guard_bits() -> int:
    return _memory_guard_bits


def set_memory_guard_bits(bits: int) -> int:
    """Set the per-rational bit budget; returns the previous value."""
    global _memory_guard_bits
    if bits < 64:
        raise ValueError("memory guard below 64 bits is unusable")
    previous = _memory_guard_bits
    _memory_guard_bits = bits
    return previous


def _guard(*integers: int) -> None:
    for value in integers:
        if value.bit_length() > _memory_guard_bits:
            raise MemoryGuardError(
                f"rational component of {value.bit_length()} bits exceeds the "
                f"{_memory_guard_bits}-bit memory guard"
            )


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or a decimal literal into an exact Fraction (0.6 -> 3/5)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def binom_coeff(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binom_coeff requires nonnegative arguments")
    return comb(n, k)


def checked_pow(base: Fraction, exponent: int) -> Fraction:
    """base**exponent with the memory guard applied before computing."""
    if exponent < 0:
        return 1 / checked_pow(base, -exponent)
    estimate = exponent * (base.numerator.bit_length() + base.denominator.bit_length())
    if estimate > _memory_guard_bits:
        raise MemoryGuardError(
            f"power of ~{estimate} bits exceeds the {_memory_guard_bits}-bit memory guard"
        )
    return base**exponent


class Sign(enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"
    UNDECIDED = "undecided"


def _floor_log2(q: Fraction) -> int:
    """Exact floor(log2(q)) for q > 0."""
    num, den = q.numerator, q.denominator
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        return e if num >= (den << e) else e - 1
    return e if (num << -e) >= den else e - 1


def _round_nearest(numerator: int, denominator: int) -> int:
    """Nearest integer to numerator/denominator (ties away from floor)."""
    q, r = divmod(numerator, denominator)
    return q + 1 if 2 * r >= denominator else q


def _dyadic_nearest(value: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Round to a dyadic with ~bits significant bits; returns (value', |error|)."""
    if value == 0:
        return value, Fraction(0)
    e = bits - _floor_log2(abs(value))
    if e >= 0:
        n = _round_nearest(value.numerator << e, value.denominator)
        rounded = Fraction(n, 1 << e)
    else:
        n = _round_nearest(value.numerator, value.denominator << -e)
        rounded = Fraction(n << -e)
    return rounded, abs(rounded - value)


def _dyadic_ceil(value: Fraction, bits: int = _RADIUS_SIG_BITS) -> Fraction:
    """Smallest dyadic with ~bits significant bits that is >= value >= 0."""
    if value == 0:
        return value
    e = bits - _floor_log2(value)
    if e >= 0:
        n = -((-value.numerator << e) // value.denominator)
        return Fraction(n, 1 << e)
    n = -(-value.numerator // (value.denominator << -e))
    return Fraction(n << -e)


@dataclass(frozen=True)
class CertifiedReal:
    """A real enclosed by [midpoint - radius, midpoint + radius].

    Arithmetic propagates radii conservatively: the result enclosure always
    contains the true result.  ``precision_bits`` records the working
    precision the enclosure was produced at.
    """

    midpoint: Fraction
    radius: Fraction
    precision_bits: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "midpoint", Fraction(self.midpoint))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius < 0:
            raise ValueError("enclosure radius must be nonnegative")
        if self.precision_bits < 1:
            raise ValueError("precision_bits must be positive")

    @staticmethod
    def exact(value: RationalLike, precision_bits: int = DEFAULT_PRECISION_BITS) -> "CertifiedReal":
        return CertifiedReal(Fraction(value), Fraction(0), precision_bits)

    @property
    def lower(self) -> Fraction:
        return self.midpoint - self.radius

    @property
    def upper(self) -> Fraction:
        return self.midpoint + self.radius

    def contains(self, value: RationalLike) -> bool:
        return self.lower <= Fraction(value) <= self.upper

    def overlaps(self, other: "CertifiedReal") -> bool:
        return not (self.upper < other.lower or other.upper < self.lower)

    def is_strictly_positive(self) -> bool:
        return self.lower > 0

    def is_strictly_negative(self) -> bool:
        return self.upper < 0

    def abs_upper(self) -> Fraction:
        return max(abs(self.lower), abs(self.upper))

    def abs_enclosure(self) -> "CertifiedReal":
        """Enclosure of |x|; collapses to [0, max] when 0 is inside."""
        lo, hi = self.lower, self.upper
        if lo >= 0:
            return self
        if hi <= 0:
            return -self
        big = max(-lo, hi)
        return CertifiedReal(big / 2, big / 2, self.precision_bits)

    def rounded(self, bits: int) -> "CertifiedReal":
        """Shrink the midpoint to a ~bits-bit dyadic, absorbing the error."""
        mid, err = _dyadic_nearest(self.midpoint, bits)
        rad = _dyadic_ceil(self.radius + err)
        return CertifiedReal(mid, rad, self.precision_bits)

    def __neg__(self) -> "CertifiedReal":
        return CertifiedReal(-self.midpoint, self.radius, self.precision_bits)

    def __add__(self, other: "CertifiedReal | RationalLike") -> "CertifiedReal":
        if isinstance(other, CertifiedReal):
            return CertifiedReal(
                self.midpoint + other.midpoint,
                self.radius + other.radius,
                min(self.precision_bits, other.precision_bits),
            )
        return CertifiedReal(self.midpoint + Fraction(other), self.radius, self.precision_bits)

    __radd__ = __add__

    def __sub__(self, other: "CertifiedReal | RationalLike") -> "CertifiedReal":
        return self + (-other if isinstance(other, CertifiedReal) else -Fraction(other))

    def __rsub__(self, other: RationalLike) -> "CertifiedReal":
        return (-self) + Fraction(other)

    def __mul__(self, other: "CertifiedReal | RationalLike") -> "CertifiedReal":
        if isinstance(other, CertifiedReal):
            mid = self.midpoint * other.midpoint
            rad = (
                abs(self.midpoint) * other.radius
                + abs(other.midpoint) * self.radius
                + self.radius * other.radius
            )
            return CertifiedReal(mid, rad, min(self.precision_bits, other.precision_bits))
        factor = Fraction(other)
        return CertifiedReal(self.midpoint * factor, self.radius * abs(factor), self.precision_bits)

    __rmul__ = __mul__

    def __repr__(self) -> str:  # compact: exact fields can run to thousands of digits
        return (
            f"CertifiedReal(~{float(self.midpoint):.15g} "
            f"± ~{float(self.radius):.3g} @ {self.precision_bits}b)"
        )


def _exp_taylor(y: Fraction, work_bits: int) -> tuple[Fraction, Fraction]:
    """Partial sum and remainder bound for e^y, |y| <= 1/2.

    Remainder after N terms is at most 2*|y|^(N+1)/(N+1)! because the tail is
    dominated by a geometric series with ratio |y|/(N+2) <= 1/2.
    """
    target = Fraction(1, 1 << (work_bits + 2))
    total = Fraction(1)
    term = Fraction(1)
    cap = 8 * work_bits + 64
    for k in range(1, cap):
        nxt = term * y / k
        bound = 2 * abs(nxt)
        if bound <= target:
            return total, bound
        total += nxt
        term = nxt
        _guard(term.numerator, total.numerator)
    raise PrecisionExhaustedError(f"e^y series did not meet its bound within {cap} terms")


def exp_enclosure(x: RationalLike, precision_bits: int) -> CertifiedReal:
    """Enclosure of e^x for rational x with radius <= 2^-precision_bits * e^x.

    Argument reduction x = y * 2^s with |y| <= 1/2, Taylor series for e^y with
    a rigorous remainder, then s exact squarings with dyadic re-rounding.  The
    relative radius bound (checked, not assumed) is stronger than an absolute
    one and survives multiplication by large exact factors.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    x = Fraction(x)
    if x == 0:
        return CertifiedReal(Fraction(1), Fraction(0), precision_bits)
    s = 0
    y = x
    while abs(y) > Fraction(1, 2):
        y /= 2
        s += 1
    for extra in (16, 32, 64, 128, 256):
        work = precision_bits + 2 * s + extra
        total, bound = _exp_taylor(y, work)
        enc = CertifiedReal(total, bound, work).rounded(work)
        for _ in range(s):
            enc = (enc * enc).rounded(work)
        lo = enc.lower
        if lo > 0 and enc.radius <= lo / (1 << precision_bits):
            return CertifiedReal(enc.midpoint, enc.radius, precision_bits)
    raise PrecisionExhaustedError(f"exp enclosure for {x} missed its radius target")


def _atanh_series(t: Fraction, work_bits: int) -> tuple[Fraction, Fraction]:
    """Partial sum and remainder bound for atanh(t), |t| <= 1/3.

    Tail after the t^(2J+1) term is <= |t|^(2J+3)/(2J+3) * 1/(1-t^2), and
    1/(1-t^2) <= 9/8 on the reduced domain.
    """
    target = Fraction(1, 1 << (work_bits + 2))
    t2 = t * t
    total = t
    power = t
    cap = 8 * work_bits + 64
    for j in range(1, cap):
        power *= t2
        bound = abs(power) * Fraction(9, 8) / (2 * j + 1)
        if bound <= target:
            return total, bound
        total += power / (2 * j + 1)
        _guard(power.numerator, total.numerator)
    raise PrecisionExhaustedError(f"atanh series did not meet its bound within {cap} terms")


_ln2_cache: dict[int, CertifiedReal] = {}


def _ln2_enclosure(work_bits: int) -> CertifiedReal:
    # ln 2 = 2*atanh(1/3), since (1 + 1/3)/(1 - 1/3) = 2.
    cached = _ln2_cache.get(work_bits)
    if cached is None:
        total, bound = _atanh_series(Fraction(1, 3), work_bits)
        cached = CertifiedReal(2 * total, 2 * bound, work_bits).rounded(work_bits)
        _ln2_cache[work_bits] = cached
    return cached


def ln_ratio_enclosure(a: RationalLike, b: RationalLike, precision_bits: int) -> CertifiedReal:
    """Enclosure of ln(a/b) for rationals a, b > 0.

    The ratio is reduced by an exact power of two into [1, 2) (skipped when it
    is already within [1/2, 2], where convergence is fastest), then
    ln q = 2*atanh((q-1)/(q+1)) with a rigorous remainder; the power of two
    contributes an exact multiple of a cached ln 2 enclosure.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise ValueError("ln_ratio_enclosure requires positive arguments")
    q = a / b
    if q == 1:
        return CertifiedReal(Fraction(0), Fraction(0), precision_bits)
    for extra in (16, 32, 64, 128, 256):
        work = precision_bits + extra
        if Fraction(1, 2) <= q <= 2:
            k = 0
            reduced = q
        else:
            k = _floor_log2(q)
            reduced = q / Fraction(1 << k) if k >= 0 else q * Fraction(1 << -k)
        t = (reduced - 1) / (reduced + 1)
        total, bound = _atanh_series(t, work)
        enc = CertifiedReal(2 * total, 2 * bound, work)
        if k != 0:
            enc = enc + _ln2_enclosure(work) * k
        enc = enc.rounded(work)
        scale = max(Fraction(1), abs(enc.midpoint) - enc.radius)
        if enc.radius <= scale / (1 << precision_bits):
            return CertifiedReal(enc.midpoint, enc.radius, precision_bits)
    raise PrecisionExhaustedError(f"ln enclosure for {a}/{b} missed its radius target")


def decide_sign(
    value_fn: Callable[[int], CertifiedReal],
    max_bits: int = DEFAULT_MAX_PRECISION_BITS,
    start_bits: int = DEFAULT_PRECISION_BITS,
) -> Sign:
    """Sign of the real enclosed by value_fn, refining until 0 is excluded.

    value_fn(bits) must enclose the same real at every precision, with radii
    that do not grow.  Returns ZERO only for the exact point enclosure
    [0 ± 0]; UNDECIDED encodes precision exhaustion, never an error.
    """
    bits = min(start_bits, max_bits)
    while True:
        enc = value_fn(bits)
        if enc.radius == 0 and enc.midpoint == 0:
            return Sign.ZERO
        if enc.is_strictly_positive():
            return Sign.POSITIVE
        if enc.is_strictly_negative():
            return Sign.NEGATIVE
        if bits >= max_bits:
            return Sign.UNDECIDED
        bits = min(2 * bits, max_bits)


def format_decimal(value: RationalLike, digits: int = 12) -> str:
    """Fixed-point decimal rendering of an exact rational (display only)."""
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**digits
    units = _round_nearest(scaled.numerator, scaled.denominator)
    text = str(units).rjust(digits + 1, "0")
    if digits == 0:
        return f"{sign}{text}"
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def format_scientific(value: RationalLike, sig_digits: int = 3) -> str:
    """Scientific-notation rendering for tiny magnitudes such as radii."""
    value = Fraction(value)
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    mag = abs(value)
    # Initial guess from bit lengths (log10 2 ≈ 0.30103), corrected exactly.
    e10 = (mag.numerator.bit_length() - mag.denominator.bit_length()) * 30103 // 100000
    while mag < Fraction(10) ** e10:
        e10 -= 1
    while mag >= Fraction(10) ** (e10 + 1):
        e10 += 1
    mantissa = mag / Fraction(10) ** e10
    units = _round_nearest(
        (mantissa * 10 ** (sig_digits - 1)).numerator,
        (mantissa * 10 ** (sig_digits - 1)).denominator,
    )
    if units >= 10**sig_digits:  # rounding carried over, e.g. 9.99 -> 10.0
        units //= 10
        e10 += 1
    text = str(units)
    head, tail = text[0], text[1:]
    body = f"{head}.{tail}" if tail else head
    return f"{sign}{body}e{e10:+03d}"
