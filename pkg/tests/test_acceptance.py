"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single [PASS]/[FAIL] line (visible with `pytest -s`).
Zero-tolerance criteria are exact rational comparisons; enclosure criteria
must resolve at or below 4096 bits with no undecided outcome.
"""

import time
from contextlib import contextmanager
from fractions import Fraction

from undershoot.cli import main
from undershoot.meantail import poisson_mean_tail
from undershoot.distributions import PoissonParams, poisson_cdf_leq
from undershoot.verification import (
    ERRATUM_A3_NOTE,
    probe_b_sequences,
    probe_h2,
    probe_h3,
    probe_positivity_polynomials,
    verify_binomial_poisson_limit,
    verify_chvatal,
    verify_closed_forms,
    verify_geometric,
    verify_pascal_conjecture,
    verify_pascal_identity,
    verify_poisson_increasing,
)

F = Fraction


@contextmanager
def criterion(name: str):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name} ({time.monotonic() - started:.1f}s)")


def exp_neg1_oracle_interval(terms: int = 120) -> tuple[Fraction, Fraction]:
    """Bracketing interval for 1/e from the alternating series (tail < next term)."""
    total = F(0)
    term = F(1)
    for k in range(terms):
        total += term
        term = term * F(-1, k + 1)
    return total - abs(term), total + abs(term)


def test_criterion_chvatal_minimizer():
    with criterion("Chvátal minimizer: argmin q_m = nearest integer to 2n/3 for n in [2, 300], exact"):
        report = verify_chvatal(300)
        assert report.passed and report.counterexample is None


def test_criterion_poisson_prop():
    with criterion(
        "Poisson: 1/e enclosure (radius <= 1e-30), P(X_{1+k}<=k) increasing on [0,100], "
        "mean-tail(1e4) within 0.01 of 1/2"
    ):
        enclosure = poisson_cdf_leq(PoissonParams(F(1)), 0, 192)  # well under the 4096-bit cap
        assert enclosure.radius <= F(1, 10**30)
        oracle_lo, oracle_hi = exp_neg1_oracle_interval()
        assert enclosure.lower <= oracle_lo and oracle_hi <= enclosure.upper  # contains 1/e

        report = verify_poisson_increasing(100)
        assert report.passed and not report.undecided

        gap = (poisson_mean_tail(F(10_000), 192) - F(1, 2)).abs_enclosure()
        assert gap.upper <= F(1, 100)


def test_criterion_geometric_prop():
    with criterion(
        "Geometric: a_1 = 1/2 exact, a_n strictly increasing on [1, 1e4], "
        "f strictly increasing on sampled pieces 1..100"
    ):
        report = verify_geometric(10_000, piece_max=100, samples_per_piece=16)
        assert report.passed and report.counterexample is None
        assert dict(report.critical_values)["a_1"] == F(1, 2)


def test_criterion_pascal_identity():
    with criterion(
        "Pascal identity: P(B*(r,p)<=m) = P(B(m,p)>=r) on 1000 seeded samples "
        "(r<=10, m<=100, denominator<=1000), exact"
    ):
        report = verify_pascal_identity(count=1000, seed=1729)
        assert report.passed and report.counterexample is None


def test_criterion_closed_form_equivalence():
    with criterion(
        "Closed forms equal the defining series for n up to 2000 (r=2,3), exact, "
        "with anchors 4/9, 1/2, 27/64, 297/625 and the a_3(4) erratum note"
    ):
        report = verify_closed_forms(2000)
        assert report.passed
        values = dict(report.critical_values)
        assert values["a_2(2)"] == F(4, 9)
        assert values["b_2(3)"] == F(1, 2)
        assert values["a_2(3)"] == F(1, 2)
        assert values["a_3(3)"] == F(27, 64)
        assert values["a_3(4)"] == F(297, 625)
        assert F(1, 2) < F(5, 9)
        assert ERRATUM_A3_NOTE in report.notes
        assert "1 - 328/390625" in ERRATUM_A3_NOTE


def test_criterion_conjecture_sweep():
    with criterion(
        "Minimum-at-first-piece sweep: a_r(r) = (r/(r+1))^r and a_r(n) > a_r(r) "
        "for every r in [1, 20], n in (r, 1e4], exact (parallel cells)"
    ):
        for r in range(1, 21):
            report = verify_pascal_conjecture(r, 10_000, jobs=2)
            assert report.passed, f"r={r}"
            assert dict(report.critical_values)[f"a_{r}({r})"] == F(r, r + 1) ** r


def test_criterion_proof_probes():
    with criterion(
        "Proof probes: h2/h3 negative+increasing on 64-point log grids to 1e6, "
        "polynomials positive, b2/b3 strictly decreasing to 1e3, no undecided"
    ):
        for report in (
            probe_h2(),
            probe_h3(),
            probe_positivity_polynomials(),
            probe_b_sequences(1000),
        ):
            assert report.passed, report.check_name
            assert not report.undecided, report.check_name


def test_criterion_binomial_poisson_limit():
    with criterion(
        "Binomial-to-Poisson probe: tail gap strictly decreases along n in {10,100,1000} "
        "for k in {0,1,2}"
    ):
        for k in (0, 1, 2):
            report = verify_binomial_poisson_limit(k, (10, 100, 1000))
            assert report.passed and not report.undecided, f"k={k}"


def test_criterion_deterministic_csv(tmp_path):
    with criterion("Determinism: byte-identical CSV from two consecutive `verify all` runs"):
        first, second = tmp_path / "first.csv", tmp_path / "second.csv"
        assert main(["--out", str(first), "verify", "all"]) == 0
        assert main(["--out", str(second), "verify", "all"]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert first.stat().st_size > 0
