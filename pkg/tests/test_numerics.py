"""Numerics: exact rationals, enclosures, sign decisions.

Oracles here are independent of the implementation paths: binomial
coefficients come from an additive triangle, e^x from the plain alternating
series with its classical error bound, and ln 2 from the harmonic-dyadic
series sum 1/(k 2^k) — none of which the library uses internally.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from undershoot.numerics import (
    CertifiedReal,
    MemoryGuardError,
    Sign,
    binom_coeff,
    checked_pow,
    decide_sign,
    exp_enclosure,
    format_decimal,
    format_scientific,
    ln_ratio_enclosure,
    parse_rational,
    set_memory_guard_bits,
)

F = Fraction

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=10**6
)


# -- Oracles -------------------------------------------------------------------


def pascal_triangle(rows: int) -> list[list[int]]:
    triangle = [[1]]
    for _ in range(rows):
        prev = triangle[-1]
        triangle.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return triangle


def exp_series_oracle(x: Fraction, terms: int = 60) -> tuple[Fraction, Fraction]:
    """Partial sum of sum x^k/k! plus a rigorous bound on the dropped tail.

    For the tail: |sum_{k>N} x^k/k!| <= |x|^(N+1)/(N+1)! * 2 once (N+2) >= 2|x|.
    """
    assert terms + 2 >= 2 * abs(x)
    total = F(0)
    term = F(1)
    for k in range(terms + 1):
        total += term
        term = term * x / (k + 1)
    return total, 2 * abs(term)


def ln2_oracle(terms: int = 80) -> tuple[Fraction, Fraction]:
    """ln 2 = sum_{k>=1} 1/(k 2^k); dropped tail < 2^-terms (geometric bound)."""
    total = sum(F(1, k * 2**k) for k in range(1, terms + 1))
    return total, F(1, 2**terms)


def assert_encloses_oracle(enc: CertifiedReal, mid: Fraction, err: Fraction) -> None:
    assert enc.upper >= mid - err and enc.lower <= mid + err, "enclosure misses the oracle interval"


# -- binom_coeff ---------------------------------------------------------------


def test_binom_coeff_examples():
    assert binom_coeff(0, 0) == 1
    assert binom_coeff(2, 1) == 2
    assert binom_coeff(5, 2) == 10  # row 5 of the additive triangle
    assert binom_coeff(3, 7) == 0


def test_binom_coeff_matches_triangle_oracle():
    triangle = pascal_triangle(12)
    for n in range(13):
        for k in range(n + 1):
            assert binom_coeff(n, k) == triangle[n][k]


def test_binom_coeff_rejects_negative():
    with pytest.raises(ValueError):
        binom_coeff(-1, 0)
    with pytest.raises(ValueError):
        binom_coeff(3, -2)


# -- Rational exactness ----------------------------------------------------------


@given(a=rationals, b=rationals)
def test_rational_add_mul_round_trip(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("0.6") == F(3, 5)  # exact decimal, never a binary float
    assert parse_rational("-2") == F(-2)
    with pytest.raises(ValueError):
        parse_rational("zero")


# -- exp_enclosure ----------------------------------------------------------------


def test_exp_at_zero_is_exactly_one():
    enc = exp_enclosure(0, 64)
    assert enc.contains(1)
    assert enc.radius <= F(1, 2**64)


@pytest.mark.parametrize("x", [F(-1), F(-2), F(1), F(3, 7), F(-5, 3)])
def test_exp_matches_series_oracle(x):
    mid, err = exp_series_oracle(x)
    enc = exp_enclosure(x, 192)
    assert_encloses_oracle(enc, mid, err)


def test_exp_frozen_decimals():
    # 1/e = 0.367879441171442321595..., e^-2 = 0.135335283236612691893... (series oracle)
    assert format_decimal(exp_enclosure(-1, 192).midpoint, 18) == "0.367879441171442322"
    assert format_decimal(exp_enclosure(-2, 192).midpoint, 18) == "0.135335283236612692"


def test_exp_radius_is_relative():
    enc = exp_enclosure(-200, 128)
    assert enc.radius <= enc.lower / 2**128
    assert enc.lower > 0


def test_exp_rejects_low_precision():
    with pytest.raises(ValueError):
        exp_enclosure(1, 4)


@pytest.mark.parametrize("x", [F(1, 2), F(-3), F(7, 5), F(-11, 4)])
def test_exp_product_with_inverse_contains_one(x):
    prod = exp_enclosure(x, 192) * exp_enclosure(-x, 192)
    assert prod.contains(1)


@pytest.mark.parametrize("x", [F(-1), F(5, 2), F(-17, 3)])
def test_exp_monotone_refinement(x):
    radii = [exp_enclosure(x, bits).radius for bits in (64, 128, 256, 512)]
    assert all(b <= a for a, b in zip(radii, radii[1:]))


# -- ln_ratio_enclosure -----------------------------------------------------------


def test_ln_equal_arguments_is_exact_zero():
    enc = ln_ratio_enclosure(F(7, 3), F(7, 3), 96)
    assert enc.midpoint == 0 and enc.radius <= F(1, 2**96)


def test_ln_half_matches_ln2_oracle():
    mid, err = ln2_oracle()
    enc = ln_ratio_enclosure(1, 2, 192)  # ln(1/2) = -ln 2
    assert_encloses_oracle(enc, -mid, err)


def test_ln_ratio_invariance():
    a = ln_ratio_enclosure(1, 2, 192)
    b = ln_ratio_enclosure(2, 4, 192)
    assert a.overlaps(b)


@pytest.mark.parametrize(("a", "b"), [(3, 1), (F(1, 10), F(7, 2)), (1000, 7), (F(999999, 1), F(1000001, 1))])
def test_ln_additivity_against_split(a, b):
    # ln(a/b) = ln(a/c) + ln(c/b) for any positive c; split through c = 1.
    whole = ln_ratio_enclosure(a, b, 192)
    split = ln_ratio_enclosure(a, 1, 192) + ln_ratio_enclosure(1, b, 192)
    assert whole.overlaps(split)


def test_ln_rejects_nonpositive():
    with pytest.raises(ValueError):
        ln_ratio_enclosure(0, 1, 64)
    with pytest.raises(ValueError):
        ln_ratio_enclosure(1, -2, 64)


@pytest.mark.parametrize(("a", "b"), [(1, 2), (99, 100), (10**6 - 1, 10**6 + 1)])
def test_ln_monotone_refinement(a, b):
    radii = [ln_ratio_enclosure(a, b, bits).radius for bits in (64, 128, 256)]
    assert all(y <= x for x, y in zip(radii, radii[1:]))


# -- CertifiedReal arithmetic ------------------------------------------------------


def test_enclosure_validation():
    with pytest.raises(ValueError):
        CertifiedReal(F(1), F(-1), 64)
    with pytest.raises(ValueError):
        CertifiedReal(F(1), F(0), 0)


@given(
    m1=rationals, r1=st.fractions(min_value=0, max_value=5, max_denominator=1000),
    m2=rationals, r2=st.fractions(min_value=0, max_value=5, max_denominator=1000),
    x=st.fractions(min_value=-1, max_value=1, max_denominator=100),
    y=st.fractions(min_value=-1, max_value=1, max_denominator=100),
)
@settings(max_examples=200)
def test_enclosure_arithmetic_is_conservative(m1, r1, m2, r2, x, y):
    """Any reals inside the operands land inside the result enclosure."""
    a = CertifiedReal(m1, r1, 64)
    b = CertifiedReal(m2, r2, 64)
    pa = m1 + x * r1  # |x| <= 1 keeps the point inside a
    pb = m2 + y * r2
    assert (a + b).contains(pa + pb)
    assert (a - b).contains(pa - pb)
    assert (a * b).contains(pa * pb)
    assert (-a).contains(-pa)
    assert a.abs_enclosure().contains(abs(pa))


def test_rounded_keeps_enclosure():
    enc = CertifiedReal(F(10**30 + 1, 3 * 10**30), F(1, 10**40), 192)
    small = enc.rounded(64)
    assert small.contains(enc.midpoint)
    assert small.midpoint.denominator.bit_length() <= 70
    assert small.radius >= enc.radius


# -- decide_sign --------------------------------------------------------------------


def test_decide_sign_constants():
    assert decide_sign(lambda bits: CertifiedReal(F(3), F(1, 4), bits)) is Sign.POSITIVE
    assert decide_sign(lambda bits: CertifiedReal(F(0), F(0), bits)) is Sign.ZERO
    assert decide_sign(lambda bits: CertifiedReal(F(-2), F(1), bits)) is Sign.NEGATIVE


def test_decide_sign_h2_at_three_is_negative():
    # 3/8 + 1/4 + ln(1/2) = 0.625 - 0.693... < 0
    fn = lambda bits: ln_ratio_enclosure(1, 2, bits) + F(5, 8)
    assert decide_sign(fn) is Sign.NEGATIVE


def test_decide_sign_undecided_on_straddling_constant():
    fn = lambda bits: CertifiedReal(F(0), F(1), bits)
    assert decide_sign(fn, max_bits=512) is Sign.UNDECIDED


def test_decide_sign_refines_until_separated():
    # Value 2^-300 needs more than the starting 192 bits to separate from 0.
    value = F(1, 2**300)

    def fn(bits):
        return CertifiedReal(value, F(1, 2**bits), bits)

    assert decide_sign(fn, max_bits=4096) is Sign.POSITIVE
    assert decide_sign(fn, max_bits=256) is Sign.UNDECIDED


@pytest.mark.parametrize("x", [F(-1), F(1, 3), F(-7, 2)])
def test_decide_sign_agrees_with_wide_enclosure(x):
    # sign(e^x - 1) decided adaptively must match the wide reference enclosure
    fn = lambda bits: exp_enclosure(x, bits) - 1
    wide = exp_enclosure(x, 1024) - 1
    got = decide_sign(fn)
    if wide.is_strictly_positive():
        assert got is Sign.POSITIVE
    elif wide.is_strictly_negative():
        assert got is Sign.NEGATIVE


# -- Memory guard ---------------------------------------------------------------------


def test_memory_guard_trips_on_huge_power():
    previous = set_memory_guard_bits(4096)
    try:
        with pytest.raises(MemoryGuardError):
            checked_pow(F(3, 7), 10**6)
        assert checked_pow(F(3, 7), 10) == F(3, 7) ** 10
    finally:
        set_memory_guard_bits(previous)


# -- Rendering -------------------------------------------------------------------------


def test_format_decimal():
    assert format_decimal(F(3, 4)) == "0.750000000000"
    assert format_decimal(F(-1, 3), 6) == "-0.333333"
    assert format_decimal(F(20, 27), 12) == "0.740740740741"
    assert format_decimal(F(5), 0) == "5"


def test_format_scientific():
    assert format_scientific(F(0)) == "0"
    assert format_scientific(F(1, 10**40)) == "1.00e-40"
    assert format_scientific(F(999, 1000)) == "9.99e-01"
    assert format_scientific(F(9999, 1000)) == "1.00e+01"  # carry after rounding
    assert format_scientific(F(-3, 2)) == "-1.50e+00"
