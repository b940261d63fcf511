"""Distribution evaluators against brute-force enumeration oracles.

The binomial oracle enumerates all 2^n outcome strings with exact rational
weights; the Pascal oracle enumerates trial sequences and places the r-th
success explicitly.  Both are independent of the iterative kernels under test.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from undershoot.distributions import (
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
from undershoot.numerics import exp_enclosure

F = Fraction

small_probs = st.fractions(min_value=0, max_value=1, max_denominator=30)
open_probs = st.fractions(min_value=F(1, 30), max_value=1, max_denominator=30)


# -- Oracles ------------------------------------------------------------------


def binomial_pmf_oracle(n: int, p: Fraction, k: int) -> Fraction:
    total = F(0)
    for outcome in itertools.product((0, 1), repeat=n):
        if sum(outcome) == k:
            total += p ** sum(outcome) * (1 - p) ** (n - sum(outcome))
    return total


def pascal_pmf_oracle(r: int, p: Fraction, j: int) -> Fraction:
    """Weight of sequences whose r-th success lands exactly on trial j."""
    total = F(0)
    for prefix in itertools.product((0, 1), repeat=j - 1):
        if sum(prefix) == r - 1:
            total += p**r * (1 - p) ** (j - r)
    return total


# -- Parameter validation -----------------------------------------------------


def test_parameter_domains():
    with pytest.raises(ValueError):
        BinomialParams(0, F(1, 2))
    with pytest.raises(ValueError):
        BinomialParams(3, F(3, 2))
    BinomialParams(3, F(0))  # p = 0 allowed for binomial only
    with pytest.raises(ValueError):
        GeometricParams(F(0))
    with pytest.raises(ValueError):
        PascalParams(2, F(0))
    with pytest.raises(ValueError):
        PascalParams(0, F(1, 2))
    with pytest.raises(ValueError):
        PoissonParams(F(0))


# -- Binomial -----------------------------------------------------------------


def test_binomial_pmf_examples():
    assert binomial_pmf(BinomialParams(2, F(1, 2)), 1) == F(1, 2)
    assert binomial_pmf(BinomialParams(3, F(1, 3)), 0) == F(8, 27)
    assert binomial_pmf(BinomialParams(5, F(0)), 0) == 1
    assert binomial_pmf(BinomialParams(3, F(1, 2)), 5) == 0
    assert binomial_pmf(BinomialParams(3, F(1, 2)), -1) == 0


@pytest.mark.parametrize(("n", "p"), [(2, F(1, 2)), (3, F(1, 3)), (5, F(2, 7)), (4, F(1))])
def test_binomial_pmf_matches_enumeration(n, p):
    for k in range(n + 1):
        assert binomial_pmf(BinomialParams(n, p), k) == binomial_pmf_oracle(n, p, k)


def test_binomial_cdf_examples():
    assert binomial_cdf_leq(BinomialParams(2, F(1, 2)), 1) == F(3, 4)  # 3 of 4 coin pairs
    assert binomial_cdf_leq(BinomialParams(7, F(2, 5)), 7) == 1
    assert binomial_cdf_leq(BinomialParams(3, F(2, 3)), 2) == F(19, 27)  # 1 - (2/3)^3
    assert binomial_cdf_leq(BinomialParams(3, F(2, 3)), -1) == 0


@pytest.mark.parametrize(("n", "p"), [(4, F(3, 7)), (6, F(1, 2)), (5, F(9, 10))])
def test_binomial_cdf_matches_enumeration(n, p):
    params = BinomialParams(n, p)
    for m in range(-1, n + 2):
        expected = sum(binomial_pmf_oracle(n, p, k) for k in range(0, min(m, n) + 1)) if m >= 0 else F(0)
        assert binomial_cdf_leq(params, m) == expected


def test_binomial_tail_examples():
    assert binomial_tail_geq(BinomialParams(2, F(1, 2)), 0) == 1
    assert binomial_tail_geq(BinomialParams(2, F(2, 3)), 2) == F(4, 9)
    assert binomial_tail_geq(BinomialParams(3, F(1, 2)), 4) == 0


@given(n=st.integers(1, 12), p=small_probs, m=st.integers(-2, 14))
@settings(max_examples=150)
def test_binomial_complement(n, p, m):
    params = BinomialParams(n, p)
    assert binomial_cdf_leq(params, m) + binomial_tail_geq(params, m + 1) == 1


@given(n=st.integers(1, 12), p=small_probs)
@settings(max_examples=100)
def test_binomial_normalization(n, p):
    params = BinomialParams(n, p)
    assert sum(binomial_pmf(params, k) for k in range(n + 1)) == 1


@given(n=st.integers(1, 10), p=small_probs, m=st.integers(0, 9))
@settings(max_examples=100)
def test_binomial_cdf_monotone(n, p, m):
    params = BinomialParams(n, p)
    assert binomial_cdf_leq(params, m) <= binomial_cdf_leq(params, m + 1)


# -- Poisson ------------------------------------------------------------------


def test_poisson_partial_sum_examples():
    assert poisson_partial_sum(F(1), 0) == 1
    assert poisson_partial_sum(F(1), 1) == 2
    assert poisson_partial_sum(F(3, 2), 1) == F(5, 2)
    assert poisson_partial_sum(F(3), 2) == F(17, 2)
    with pytest.raises(ValueError):
        poisson_partial_sum(F(1), -1)


@given(lam=st.fractions(min_value=F(1, 10), max_value=10, max_denominator=50), m=st.integers(0, 12))
@settings(max_examples=100)
def test_poisson_partial_sum_matches_direct(lam, m):
    direct = sum(lam**k / Fraction(_factorial(k)) for k in range(m + 1))
    assert poisson_partial_sum(lam, m) == direct


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_poisson_cdf_frozen_values():
    # P(X_1 <= 0) = 1/e, P(X_1 <= 1) = 2/e, P(X_2 <= 1) = 3 e^-2
    e1 = poisson_cdf_leq(PoissonParams(F(1)), 0, 192)
    assert e1.contains(F(36787944117144232, 10**17)) is False  # truncation is below 1/e
    ref = exp_enclosure(-1, 512)
    assert e1.overlaps(ref)
    e2 = poisson_cdf_leq(PoissonParams(F(1)), 1, 192)
    assert e2.overlaps(exp_enclosure(-1, 512) * 2)
    e3 = poisson_cdf_leq(PoissonParams(F(2)), 1, 192)
    assert e3.overlaps(exp_enclosure(-2, 512) * 3)


def test_poisson_enclosures_overlap_across_precision():
    for lam, m in ((F(1), 0), (F(7, 2), 3), (F(100), 100)):
        low = poisson_cdf_leq(PoissonParams(lam), m, 128)
        high = poisson_cdf_leq(PoissonParams(lam), m, 256)
        assert low.overlaps(high)
        assert high.radius <= low.radius


def test_poisson_cdf_monotone_in_m():
    params = PoissonParams(F(5, 2))
    encs = [poisson_cdf_leq(params, m, 192) for m in range(8)]
    for a, b in zip(encs, encs[1:]):
        assert not a.lower > b.upper  # never certifies a decrease


# -- Geometric ----------------------------------------------------------------


def test_geometric_cdf_examples():
    assert geometric_cdf_leq(GeometricParams(F(1)), 1) == 1
    assert geometric_cdf_leq(GeometricParams(F(1, 2)), 2) == F(3, 4)
    assert geometric_cdf_leq(GeometricParams(F(1, 3)), 0) == 0
    with pytest.raises(ValueError):
        geometric_cdf_leq(GeometricParams(F(1, 3)), -1)


@given(p=open_probs, m=st.integers(0, 20))
@settings(max_examples=100)
def test_geometric_is_pascal_r1(p, m):
    assert geometric_cdf_leq(GeometricParams(p), m) == pascal_cdf_leq(PascalParams(1, p), m)


# -- Pascal -------------------------------------------------------------------


def test_pascal_pmf_examples():
    assert pascal_pmf(PascalParams(1, F(1, 2)), 1) == F(1, 2)
    assert pascal_pmf(PascalParams(2, F(2, 3)), 2) == F(4, 9)
    assert pascal_pmf(PascalParams(2, F(2, 3)), 3) == F(8, 27)
    assert pascal_pmf(PascalParams(2, F(2, 3)), 1) == 0


@pytest.mark.parametrize(("r", "p"), [(1, F(1, 2)), (2, F(2, 3)), (3, F(1, 4))])
def test_pascal_pmf_matches_enumeration(r, p):
    for j in range(r, r + 7):
        assert pascal_pmf(PascalParams(r, p), j) == pascal_pmf_oracle(r, p, j)


def test_pascal_cdf_examples():
    assert pascal_cdf_leq(PascalParams(2, F(2, 3)), 3) == F(20, 27)
    assert pascal_cdf_leq(PascalParams(3, F(1)), 3) == 1
    assert pascal_cdf_leq(PascalParams(2, F(1, 2)), 1) == 0


@given(
    r=st.integers(1, 5),
    p=open_probs,
    m=st.integers(0, 25),
)
@settings(max_examples=200)
def test_pascal_binomial_identity(r, p, m):
    """P(B*(r,p) <= m) = P(B(m,p) >= r) for m >= r (both sides exact)."""
    if m < r:
        assert pascal_cdf_leq(PascalParams(r, p), m) == 0
    else:
        assert pascal_cdf_leq(PascalParams(r, p), m) == binomial_tail_geq(BinomialParams(m, p), r)


@given(r=st.integers(1, 4), p=open_probs, m=st.integers(1, 20))
@settings(max_examples=100)
def test_pascal_cdf_monotone(r, p, m):
    params = PascalParams(r, p)
    assert pascal_cdf_leq(params, m) <= pascal_cdf_leq(params, m + 1)
