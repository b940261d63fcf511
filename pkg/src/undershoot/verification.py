"""Named verifiers producing machine-checkable reports.

Every published claim the library covers gets a verifier: the binomial
minimizer position, the Poisson/geometric/Pascal infima, the closed forms,
the proof-step inequalities (sign and monotonicity probes for the h2/h3
log-derivative factors, polynomial positivity, the b2/b3 envelope decrease,
per-piece monotonicity of the summands), and the binomial-to-Poisson limit.

Rational claims are checked exactly; logarithm/exponential claims go through
adaptive-precision enclosures.  An unresolved sign marks the report as
undecided and failed — never as a pass.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpz

from .distributions import (
    BinomialParams,
    PascalParams,
    PoissonParams,
    binomial_tail_geq,
    pascal_cdf_leq,
    poisson_cdf_leq,
)
from .meantail import (
    Family,
    a2_closed,
    a3_closed,
    b2,
    b3,
    chvatal_argmin,
    geometric_a,
    geometric_f,
    pascal_a,
    pascal_a_via_binomial,
    piece_interval,
    poisson_mean_tail,
    poisson_piece_infimum,
)
from .numerics import (
    DEFAULT_MAX_PRECISION_BITS,
    DEFAULT_PRECISION_BITS,
    CertifiedReal,
    RationalLike,
    Sign,
    binom_coeff,
    decide_sign,
    ln_ratio_enclosure,
)

__all__ = [
    "Counterexample",
    "VerificationReport",
    "ProbeGrid",
    "default_h2_grid",
    "default_h3_grid",
    "verify_chvatal",
    "verify_poisson_increasing",
    "verify_poisson_clt",
    "verify_poisson_lambda_monotone",
    "verify_geometric",
    "verify_pascal_identity",
    "random_identity_samples",
    "verify_pascal_conjecture",
    "verify_closed_forms",
    "probe_h2",
    "probe_h3",
    "probe_positivity_polynomials",
    "probe_b_sequences",
    "probe_gk_monotone",
    "verify_binomial_poisson_limit",
    "ERRATUM_A3_NOTE",
]

# a_3(4) discrepancy surfaced (never suppressed) wherever the value appears.
ERRATUM_A3_NOTE = (
    "erratum detected: published tables print a_3(4) = 1 - 328/390625, but direct "
    "series evaluation and the closed form both give a_3(4) = 297/625 = 1 - 328/625 "
    "(390625 = 625^2: a squared denominator)"
)


def brief(value: object, digits: int = 6) -> str:
    """Short, display-only rendering for counterexample payloads."""
    if isinstance(value, CertifiedReal):
        return f"[{float(value.lower):.12g}, {float(value.upper):.12g}]"
    if isinstance(value, Fraction):
        exact = f"{value.numerator}/{value.denominator}"
        if len(exact) <= 40:
            return exact
        return f"~{float(value):.12g}"
    return str(value)


@dataclass(frozen=True)
class Counterexample:
    input: str
    expected_relation: str
    actual_values: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    parameters: dict[str, object]
    range_scanned: str
    passed: bool
    counterexample: Counterexample | None = None
    critical_values: tuple[tuple[str, object], ...] = ()
    notes: tuple[str, ...] = ()
    undecided: bool = False

    def __post_init__(self) -> None:
        failed = self.counterexample is not None or self.undecided
        if self.passed == failed:
            raise ValueError("passed=False iff a counterexample is present or a sign was undecided")


class _Failure(Exception):
    """Internal: carries a counterexample (or undecided marker) out of a scan."""

    def __init__(self, counterexample: Counterexample | None, undecided: bool = False, note: str = ""):
        super().__init__(note or "verification failure")
        self.counterexample = counterexample
        self.undecided = undecided
        self.note = note


def _assemble(
    name: str,
    parameters: dict[str, object],
    range_scanned: str,
    scan,
    critical_values: tuple[tuple[str, object], ...] = (),
    notes: tuple[str, ...] = (),
) -> VerificationReport:
    """Run scan(); a clean return passes, a _Failure populates the report."""
    try:
        extra = scan()
    except _Failure as failure:
        return VerificationReport(
            check_name=name,
            parameters=parameters,
            range_scanned=range_scanned,
            passed=False,
            counterexample=failure.counterexample,
            critical_values=critical_values,
            notes=notes + ((failure.note,) if failure.note else ()),
            undecided=failure.undecided,
        )
    if extra:
        critical_values = critical_values + tuple(extra)
    return VerificationReport(
        check_name=name,
        parameters=parameters,
        range_scanned=range_scanned,
        passed=True,
        critical_values=critical_values,
        notes=notes,
    )


def _require_sign(
    label: str,
    value_fn,
    wanted: Sign,
    precision_bits: int,
    max_precision_bits: int,
) -> None:
    got = decide_sign(value_fn, max_bits=max_precision_bits, start_bits=precision_bits)
    if got is wanted:
        return
    if got is Sign.UNDECIDED:
        raise _Failure(None, undecided=True, note=f"{label}: sign undecided at {max_precision_bits} bits")
    enc = value_fn(precision_bits)
    raise _Failure(
        Counterexample(
            input=label,
            expected_relation=f"sign {wanted.value}",
            actual_values=((f"sign {got.value}", brief(enc)),),
        )
    )


# -- Probe grids ---------------------------------------------------------------


@dataclass(frozen=True)
class ProbeGrid:
    """Evaluation grid of exact rationals; log grids are dyadic-snapped."""

    start: Fraction
    end: Fraction
    spacing: str = "logarithmic"
    count: int = 64

    _SNAP_BITS = 16

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "end", Fraction(self.end))
        if self.start >= self.end:
            raise ValueError("grid start must be below end")
        if self.count < 2:
            raise ValueError("grid needs at least two points")
        if self.spacing not in ("linear", "logarithmic"):
            raise ValueError(f"unknown spacing {self.spacing!r}")

    def points(self) -> list[Fraction]:
        if self.spacing == "linear":
            step = (self.end - self.start) / (self.count - 1)
            return [self.start + i * step for i in range(self.count)]
        log_lo, log_hi = math.log(self.start), math.log(self.end)
        scale = 1 << self._SNAP_BITS
        pts = [self.start]
        for i in range(1, self.count - 1):
            x = math.exp(log_lo + i * (log_hi - log_lo) / (self.count - 1))
            pts.append(Fraction(round(x * scale), scale))
        pts.append(self.end)
        for left, right in zip(pts, pts[1:]):
            if left >= right:
                raise ValueError("log grid too dense for dyadic snapping")
        return pts


def default_h2_grid() -> ProbeGrid:
    return ProbeGrid(Fraction(3), Fraction(10**6), "logarithmic", 64)


def default_h3_grid() -> ProbeGrid:
    return ProbeGrid(Fraction(4), Fraction(10**6), "logarithmic", 64)


# -- Chvátal -------------------------------------------------------------------


def verify_chvatal(n_max: int = 60) -> VerificationReport:
    """For each n, the exact argmin of q_m is the unique integer nearest 2n/3.

    2n/3 has denominator 1 or 3, so distance 1/2 is impossible and the nearest
    integer is unique; ties in the argmin itself are still reported
    defensively as counterexamples.
    """
    if n_max < 2:
        raise ValueError("verify_chvatal requires n_max >= 2")

    def scan():
        extras = []
        for n in range(2, n_max + 1):
            nearest = (4 * n + 3) // 6
            minimizers, q_values = chvatal_argmin(n)
            if len(minimizers) != 1:
                raise _Failure(
                    Counterexample(
                        input=f"n={n}",
                        expected_relation="unique minimizer",
                        actual_values=tuple((f"m={m}", brief(q_values[m])) for m in minimizers),
                    )
                )
            if minimizers[0] != nearest:
                raise _Failure(
                    Counterexample(
                        input=f"n={n}",
                        expected_relation=f"argmin at m={nearest} (nearest to 2n/3)",
                        actual_values=(
                            (f"argmin m={minimizers[0]}", brief(q_values[minimizers[0]])),
                            (f"q at m={nearest}", brief(q_values[nearest])),
                        ),
                    )
                )
            if n == n_max:
                extras.append((f"q_{nearest}(n={n})", q_values[nearest]))
        return extras

    return _assemble(
        "chvatal-minimizer",
        {"n_max": n_max},
        f"n in [2, {n_max}], m exhaustive",
        scan,
        critical_values=(("q_1(n=2)", Fraction(3, 4)),),
    )


# -- Poisson -------------------------------------------------------------------


def verify_poisson_increasing(
    k_max: int = 100,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
) -> VerificationReport:
    """P(X_{1+k} <= k) is strictly increasing in k, by separated enclosures."""
    if k_max < 1:
        raise ValueError("verify_poisson_increasing requires k_max >= 1")

    def scan():
        for k in range(k_max):
            _require_sign(
                f"piece infimum k={k + 1} minus k={k}",
                lambda bits, k=k: poisson_piece_infimum(k + 1, bits) - poisson_piece_infimum(k, bits),
                Sign.POSITIVE,
                precision_bits,
                max_precision_bits,
            )

    return _assemble(
        "poisson-piece-infima-increasing",
        {"k_max": k_max, "precision_bits": precision_bits},
        f"k in [0, {k_max}]",
        scan,
        critical_values=(
            ("P(X_1 <= 0)", poisson_piece_infimum(0, precision_bits)),
            (f"P(X_{k_max + 1} <= {k_max})", poisson_piece_infimum(k_max, precision_bits)),
        ),
    )


def verify_poisson_clt(
    lambdas: tuple[RationalLike, ...] = (1, 10, 100, 10_000),
    tolerance: RationalLike = Fraction(1, 100),
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
) -> VerificationReport:
    """|mean-tail(lambda) - 1/2| decreases along the list and ends within tolerance."""
    lams = [Fraction(v) for v in lambdas]
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise ValueError("lambdas must be strictly increasing")
    tolerance = Fraction(tolerance)

    def gap(lam: Fraction, bits: int) -> CertifiedReal:
        return (poisson_mean_tail(lam, bits) - Fraction(1, 2)).abs_enclosure()

    def scan():
        for a, b in zip(lams, lams[1:]):
            _require_sign(
                f"|tail({a}) - 1/2| minus |tail({b}) - 1/2|",
                lambda bits, a=a, b=b: gap(a, bits) - gap(b, bits),
                Sign.POSITIVE,
                precision_bits,
                max_precision_bits,
            )
        final = gap(lams[-1], precision_bits)
        if final.upper > tolerance:
            raise _Failure(
                Counterexample(
                    input=f"lambda={lams[-1]}",
                    expected_relation=f"|mean-tail - 1/2| <= {tolerance}",
                    actual_values=(("gap", brief(final)),),
                )
            )
        return [(f"|mean-tail({lams[-1]}) - 1/2|", final)]

    return _assemble(
        "poisson-clt-probe",
        {"lambdas": tuple(str(v) for v in lams), "tolerance": str(tolerance)},
        f"lambda in {{{', '.join(str(v) for v in lams)}}}",
        scan,
        critical_values=((f"mean-tail({lams[0]})", poisson_mean_tail(lams[0], precision_bits)),),
    )


def verify_poisson_lambda_monotone(
    x: int = 1,
    lambda_pairs: tuple[tuple[RationalLike, RationalLike], ...] = (
        (Fraction(1, 2), 1),
        (1, 2),
        (2, 3),
    ),
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
) -> VerificationReport:
    """P(X_lambda <= x) strictly decreases in lambda for fixed x."""
    pairs = [(Fraction(a), Fraction(b)) for a, b in lambda_pairs]
    if any(a >= b for a, b in pairs):
        raise ValueError("each pair must be lambda1 < lambda2")

    def scan():
        for a, b in pairs:
            _require_sign(
                f"P(X_{a} <= {x}) minus P(X_{b} <= {x})",
                lambda bits, a=a, b=b: poisson_cdf_leq(PoissonParams(a), x, bits)
                - poisson_cdf_leq(PoissonParams(b), x, bits),
                Sign.POSITIVE,
                precision_bits,
                max_precision_bits,
            )

    return _assemble(
        "poisson-cdf-decreasing-in-lambda",
        {"x": x, "pairs": tuple(f"{a}<{b}" for a, b in pairs)},
        f"{len(pairs)} lambda pairs at x={x}",
        scan,
    )


# -- Geometric -----------------------------------------------------------------


def _geometric_chain_violation(n_max: int) -> int | None:
    """First n with a_n >= a_{n+1}, else None.  a_n < a_{n+1} iff
    n^n (n+2)^(n+1) > (n+1)^(2n+1) (cross-multiplied exact comparison)."""
    for n in range(1, n_max):
        lhs = mpz(n) ** n * mpz(n + 2) ** (n + 1)
        rhs = mpz(n + 1) ** (2 * n + 1)
        if lhs <= rhs:
            return n
    return None


def verify_geometric(
    n_max: int = 1000,
    piece_max: int = 100,
    samples_per_piece: int = 16,
) -> VerificationReport:
    """a_1 = 1/2 exactly; a_n strictly increasing; f strictly increasing on sampled pieces."""
    if n_max < 1:
        raise ValueError("verify_geometric requires n_max >= 1")
    piece_max = min(piece_max, n_max)

    def scan():
        if geometric_a(1) != Fraction(1, 2):
            raise _Failure(
                Counterexample("n=1", "a_1 = 1/2", (("a_1", brief(geometric_a(1))),))
            )
        bad = _geometric_chain_violation(n_max)
        if bad is not None:
            raise _Failure(
                Counterexample(
                    input=f"n={bad}",
                    expected_relation="a_n < a_{n+1}",
                    actual_values=(
                        (f"a_{bad}", brief(geometric_a(bad))),
                        (f"a_{bad + 1}", brief(geometric_a(bad + 1))),
                    ),
                )
            )
        for x in range(1, piece_max + 1):
            lo, hi = piece_interval(Family.GEOMETRIC, x)
            step = (hi - lo) / samples_per_piece
            previous = None
            for i in range(1, samples_per_piece + 1):
                p = lo + i * step
                if p.denominator // p.numerator != x:
                    raise _Failure(
                        Counterexample(
                            input=f"piece x={x}, p={p}",
                            expected_relation="floor(1/p) = x",
                            actual_values=(("floor(1/p)", str(p.denominator // p.numerator)),),
                        )
                    )
                value = geometric_f(p)
                if previous is not None and not value > previous[1]:
                    raise _Failure(
                        Counterexample(
                            input=f"piece x={x}, p={previous[0]} -> {p}",
                            expected_relation="f strictly increasing on the piece",
                            actual_values=(
                                (f"f({previous[0]})", brief(previous[1])),
                                (f"f({p})", brief(value)),
                            ),
                        )
                    )
                previous = (p, value)

    return _assemble(
        "geometric-infimum",
        {"n_max": n_max, "piece_max": piece_max, "samples_per_piece": samples_per_piece},
        f"a_n for n in [1, {n_max}]; f sampled on pieces 1..{piece_max}",
        scan,
        critical_values=(
            ("a_1", geometric_a(1)),
            ("a_2", geometric_a(2)),
            ("a_3", geometric_a(3)),
        ),
    )


# -- Pascal --------------------------------------------------------------------


def random_identity_samples(
    count: int = 1000,
    seed: int = 1729,
    r_max: int = 10,
    m_max: int = 100,
    denominator_max: int = 1000,
) -> list[tuple[int, Fraction, int]]:
    """Deterministic pseudo-random (r, p, m) samples with m >= r, p in (0, 1]."""
    rng = random.Random(seed)
    samples = []
    for _ in range(count):
        r = rng.randint(1, r_max)
        den = rng.randint(2, denominator_max)
        num = rng.randint(1, den)
        m = rng.randint(r, m_max)
        samples.append((r, Fraction(num, den), m))
    return samples


def verify_pascal_identity(
    samples: list[tuple[int, Fraction, int]] | None = None,
    count: int = 1000,
    seed: int = 1729,
) -> VerificationReport:
    """P(B*(r,p) <= m) = P(B(m,p) >= r) exactly on every sample."""
    if samples is None:
        samples = random_identity_samples(count=count, seed=seed)
        range_scanned = f"{count} seeded samples (seed={seed})"
    else:
        range_scanned = f"{len(samples)} explicit samples"
    for r, p, m in samples:
        if m < r:
            raise ValueError(f"sample (r={r}, p={p}, m={m}) violates m >= r")

    def scan():
        for r, p, m in samples:
            lhs = pascal_cdf_leq(PascalParams(r, p), m)
            rhs = binomial_tail_geq(BinomialParams(m, p), r)
            if lhs != rhs:
                raise _Failure(
                    Counterexample(
                        input=f"r={r}, p={p}, m={m}",
                        expected_relation="P(B*(r,p) <= m) = P(B(m,p) >= r)",
                        actual_values=(("pascal", brief(lhs)), ("binomial", brief(rhs))),
                    )
                )
        r0, p0, m0 = samples[0]
        return [(f"sample r={r0}, p={p0}, m={m0}", pascal_cdf_leq(PascalParams(r0, p0), m0))]

    return _assemble(
        "pascal-binomial-identity",
        {"samples": len(samples), "seed": seed if samples is None else None},
        range_scanned,
        scan,
    )


def _a_exceeds_base(r: int, n: int) -> bool:
    """Exact a_r(n) > a_r(r), via integer cross-multiplication.

    a_r(n) = (D^n - S) / D^n with D = n+1 and S the lower binomial tail
    numerator; the comparison against r^r/(r+1)^r clears denominators.
    """
    d = n + 1
    q = d - r
    u = mpz(q) ** n
    c = mpz(1)
    s = mpz(0)
    for k in range(r):
        s += c * u
        c = c * (n - k) // (k + 1)
        u = u * r // q
    p = mpz(d) ** n
    return (p - s) * mpz(r + 1) ** r > mpz(r) ** r * p


def _conjecture_chunk(args: tuple[int, int, int]) -> list[int]:
    r, lo, hi = args
    return [n for n in range(lo, hi) if not _a_exceeds_base(r, n)]


def verify_pascal_conjecture(r: int, n_max: int, jobs: int = 1) -> VerificationReport:
    """a_r(r) = (r/(r+1))^r exactly, and a_r(n) > a_r(r) exactly for r < n <= n_max."""
    if r < 1 or n_max < r:
        raise ValueError("verify_pascal_conjecture requires n_max >= r >= 1")
    base = Fraction(r, r + 1) ** r

    def scan():
        anchor = pascal_a(r, r)
        if anchor != base:
            raise _Failure(
                Counterexample(
                    input=f"n={r}",
                    expected_relation="a_r(r) = (r/(r+1))^r",
                    actual_values=(("a_r(r)", brief(anchor)), ("claimed", brief(base))),
                )
            )
        violations: list[int] = []
        if n_max > r:
            if jobs > 1:
                chunk = 512
                tasks = [(r, lo, min(lo + chunk, n_max + 1)) for lo in range(r + 1, n_max + 1, chunk)]
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    for found in pool.map(_conjecture_chunk, tasks):
                        violations.extend(found)
            else:
                violations = _conjecture_chunk((r, r + 1, n_max + 1))
        if violations:
            n = min(violations)
            raise _Failure(
                Counterexample(
                    input=f"n={n}",
                    expected_relation="a_r(n) > a_r(r)",
                    actual_values=(
                        (f"a_{r}({n})", brief(pascal_a_via_binomial(r, n))),
                        (f"a_{r}({r})", brief(base)),
                    ),
                )
            )
        extras = [(f"a_{r}({r})", base)]
        if n_max > r:
            extras.append((f"a_{r}({r + 1})", pascal_a_via_binomial(r, r + 1)))
        return extras

    notes = (ERRATUM_A3_NOTE,) if r == 3 and n_max >= 4 else ()
    return _assemble(
        f"pascal-conjecture r={r}",
        {"r": r, "n_max": n_max, "jobs": jobs},
        f"n in [{r}, {n_max}]",
        scan,
        notes=notes,
    )


def verify_closed_forms(n_max: int = 100) -> VerificationReport:
    """a2_closed / a3_closed agree exactly with the direct series on [2..n_max] / [3..n_max]."""
    if n_max < 4:
        raise ValueError("verify_closed_forms requires n_max >= 4")

    def scan():
        anchors = (
            ("a_2(2)", a2_closed(2), Fraction(4, 9)),
            ("b_2(3)", b2(3), Fraction(1, 2)),
            ("a_2(3)", a2_closed(3), Fraction(1, 2)),
            ("a_3(3)", a3_closed(3), Fraction(27, 64)),
            ("a_3(4)", a3_closed(4), Fraction(297, 625)),
        )
        for label, got, wanted in anchors:
            if got != wanted:
                raise _Failure(
                    Counterexample(label, f"= {wanted}", ((label, brief(got)),))
                )
        if not b2(3) < Fraction(5, 9):
            raise _Failure(Counterexample("b_2(3)", "< 5/9", (("b_2(3)", brief(b2(3))),)))
        for n in range(2, n_max + 1):
            series = pascal_a(2, n)
            closed = a2_closed(n)
            if series != closed:
                raise _Failure(
                    Counterexample(
                        input=f"r=2, n={n}",
                        expected_relation="closed form = series",
                        actual_values=(("closed", brief(closed)), ("series", brief(series))),
                    )
                )
        for n in range(3, n_max + 1):
            series = pascal_a(3, n)
            closed = a3_closed(n)
            if series != closed:
                raise _Failure(
                    Counterexample(
                        input=f"r=3, n={n}",
                        expected_relation="closed form = series",
                        actual_values=(("closed", brief(closed)), ("series", brief(series))),
                    )
                )
        return [(label, got) for label, got, _ in anchors]

    return _assemble(
        "closed-form-equivalence",
        {"n_max": n_max},
        f"r=2 on n in [2, {n_max}]; r=3 on n in [3, {n_max}]",
        scan,
        notes=(ERRATUM_A3_NOTE,),
    )


# -- Proof probes --------------------------------------------------------------


def _h2_enclosure(x: Fraction, bits: int) -> CertifiedReal:
    rational = Fraction(3, 3 * x - 1) + Fraction(1, x + 1)
    return ln_ratio_enclosure(x - 1, x + 1, bits) + rational


def _h3_enclosure(x: Fraction, bits: int) -> CertifiedReal:
    rational = (34 * x - 29) / (17 * x * x - 29 * x + 8) + Fraction(1, x + 1)
    return ln_ratio_enclosure(x - 2, x + 1, bits) + rational


def _probe_log_factor(
    name: str,
    enclosure_fn,
    grid: ProbeGrid,
    domain_start: Fraction,
    precision_bits: int,
    max_precision_bits: int,
    band_numerator: int,
) -> VerificationReport:
    """Shared body for the h2/h3 probes: negative, increasing, near-zero tail.

    The limit statement alone is not falsifiable at finite x, so "approaches
    zero" is checked as |h(end)| < band_numerator/end; strict negativity and
    monotonicity stay enclosure-exact.
    """
    points = grid.points()
    if points[0] < domain_start:
        raise ValueError(f"grid must start at or above {domain_start}")

    def scan():
        for x in points:
            _require_sign(
                f"{name}({x})",
                lambda bits, x=x: enclosure_fn(x, bits),
                Sign.NEGATIVE,
                precision_bits,
                max_precision_bits,
            )
        for left, right in zip(points, points[1:]):
            _require_sign(
                f"{name}({right}) minus {name}({left})",
                lambda bits, left=left, right=right: enclosure_fn(right, bits) - enclosure_fn(left, bits),
                Sign.POSITIVE,
                precision_bits,
                max_precision_bits,
            )
        band = Fraction(band_numerator) / points[-1]
        end = enclosure_fn(points[-1], precision_bits)
        if end.abs_upper() >= band:
            raise _Failure(
                Counterexample(
                    input=f"x={points[-1]}",
                    expected_relation=f"|{name}(x)| < {band_numerator}/x",
                    actual_values=((f"{name}(end)", brief(end)),),
                )
            )
        return [
            (f"{name}({points[0]})", enclosure_fn(points[0], precision_bits)),
            (f"{name}({points[-1]})", end),
        ]

    return _assemble(
        f"{name}-negative-increasing",
        {
            "grid": f"{grid.spacing} {grid.start}..{grid.end} x{grid.count}",
            "precision_bits": precision_bits,
            "band": f"{band_numerator}/x",
        },
        f"{grid.count} grid points in [{grid.start}, {grid.end}]",
        scan,
    )


def probe_h2(
    grid: ProbeGrid | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
    band_numerator: int = 10,
) -> VerificationReport:
    """h2(x) = 3/(3x-1) + 1/(x+1) + ln((x-1)/(x+1)) is negative and increasing on [3, inf)."""
    return _probe_log_factor(
        "h2", _h2_enclosure, grid or default_h2_grid(), Fraction(3),
        precision_bits, max_precision_bits, band_numerator,
    )


def probe_h3(
    grid: ProbeGrid | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
    band_numerator: int = 10,
) -> VerificationReport:
    """h3(x) = (34x-29)/(17x^2-29x+8) + 1/(x+1) + ln((x-2)/(x+1)) is negative and increasing on [4, inf)."""
    return _probe_log_factor(
        "h3", _h3_enclosure, grid or default_h3_grid(), Fraction(4),
        precision_bits, max_precision_bits, band_numerator,
    )


def probe_positivity_polynomials(
    quadratic_grid: ProbeGrid | None = None,
    quartic_grid: ProbeGrid | None = None,
    extra_quadratic_points: tuple[RationalLike, ...] = (-(10**6), -3, -1, Fraction(-1, 2), 0, Fraction(1, 3), 1),
) -> VerificationReport:
    """3x^2 - 2x + 3 > 0 (all reals; sampled) and the monotonicity quartic > 0 on [4, inf)."""

    def quadratic(x: Fraction) -> Fraction:
        return 3 * x * x - 2 * x + 3

    def quartic(x: Fraction) -> Fraction:
        return 17 * x**4 - 57 * x**3 + 105 * x**2 - 91 * x + 54

    quad_points = [Fraction(v) for v in extra_quadratic_points]
    quad_points += (quadratic_grid or default_h2_grid()).points()
    quart_points = (quartic_grid or default_h3_grid()).points()

    def scan():
        for x in quad_points:
            value = quadratic(x)
            if value <= 0:
                raise _Failure(
                    Counterexample(f"x={x}", "3x^2-2x+3 > 0", (("value", brief(value)),))
                )
        for x in quart_points:
            value = quartic(x)
            if value <= 0:
                raise _Failure(
                    Counterexample(
                        f"x={x}", "17x^4-57x^3+105x^2-91x+54 > 0", (("value", brief(value)),)
                    )
                )
        return [
            ("3x^2-2x+3 at x=0", quadratic(Fraction(0))),
            ("quartic at x=4", quartic(Fraction(4))),
        ]

    return _assemble(
        "positivity-polynomials",
        {"quadratic_points": len(quad_points), "quartic_points": len(quart_points)},
        "quadratic on sampled reals + [3, 10^6]; quartic on [4, 10^6]",
        scan,
    )


def probe_b_sequences(n_max: int = 1000) -> VerificationReport:
    """b2 strictly decreasing on [3, n_max] with b2(3) = 1/2 < 5/9; b3 strictly
    decreasing on [4, n_max] with b3(4) = 328/625.  All exact."""
    if n_max < 5:
        raise ValueError("probe_b_sequences requires n_max >= 5")

    def scan():
        if b2(3) != Fraction(1, 2) or not b2(3) < Fraction(5, 9):
            raise _Failure(Counterexample("n=3", "b_2(3) = 1/2 < 5/9", (("b_2(3)", brief(b2(3))),)))
        if b3(4) != Fraction(328, 625):
            raise _Failure(Counterexample("n=4", "b_3(4) = 328/625", (("b_3(4)", brief(b3(4))),)))
        previous = b2(3)
        for n in range(4, n_max + 1):
            current = b2(n)
            if not current < previous:
                raise _Failure(
                    Counterexample(
                        f"n={n}", "b_2 strictly decreasing",
                        ((f"b_2({n - 1})", brief(previous)), (f"b_2({n})", brief(current))),
                    )
                )
            previous = current
        previous = b3(4)
        for n in range(5, n_max + 1):
            current = b3(n)
            if not current < previous:
                raise _Failure(
                    Counterexample(
                        f"n={n}", "b_3 strictly decreasing",
                        ((f"b_3({n - 1})", brief(previous)), (f"b_3({n})", brief(current))),
                    )
                )
            previous = current
        return [("b_2(3)", b2(3)), ("b_3(4)", b3(4)), ("b_3(5)", b3(5))]

    return _assemble(
        "b-envelopes-decreasing",
        {"n_max": n_max},
        f"b_2 on [3, {n_max}]; b_3 on [4, {n_max}]",
        scan,
        notes=(ERRATUM_A3_NOTE,),
    )


def probe_gk_monotone(r: int = 2, n: int = 5, sample_count: int = 8) -> VerificationReport:
    """Each summand C(k-1,r-1) p^r (1-p)^(k-r) strictly increases on (r/(n+1), r/n].

    Also checks the derivative's sign factor r/k - p > 0 at interior samples.
    """
    if sample_count < 2:
        raise ValueError("probe_gk_monotone requires sample_count >= 2")
    if n < r or r < 1:
        raise ValueError("probe_gk_monotone requires n >= r >= 1")
    lo, hi = Fraction(r, n + 1), Fraction(r, n)

    def g(k: int, p: Fraction) -> Fraction:
        return binom_coeff(k - 1, r - 1) * p**r * (1 - p) ** (k - r)

    def scan():
        step = (hi - lo) / sample_count
        for k in range(r, n + 1):
            previous = None
            for i in range(1, sample_count + 1):
                p = lo + i * step
                if p < hi and not Fraction(r, k) - p > 0:
                    raise _Failure(
                        Counterexample(
                            f"k={k}, p={p}", "r/k - p > 0 at interior samples",
                            (("r/k - p", brief(Fraction(r, k) - p)),),
                        )
                    )
                value = g(k, p)
                if previous is not None and not value > previous[1]:
                    raise _Failure(
                        Counterexample(
                            f"k={k}, p={previous[0]} -> {p}",
                            "summand strictly increasing on the piece",
                            ((f"g_{k}({previous[0]})", brief(previous[1])), (f"g_{k}({p})", brief(value))),
                        )
                    )
                previous = (p, value)
        return [(f"g_{r}(hi={hi})", g(r, hi))]

    return _assemble(
        f"piece-summands-increasing r={r} n={n}",
        {"r": r, "n": n, "sample_count": sample_count},
        f"k in [{r}, {n}], {sample_count} samples on ({lo}, {hi}]",
        scan,
    )


def verify_binomial_poisson_limit(
    k: int,
    n_list: tuple[int, ...] = (10, 100, 1000),
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
) -> VerificationReport:
    """|P(B(n,(k+1)/n) >= k+1) - P(X_{k+1} >= k+1)| strictly decreases along n_list."""
    if any(n <= k + 1 for n in n_list):
        raise ValueError("every n must exceed k+1")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")

    def gap(n: int, bits: int) -> CertifiedReal:
        binom = binomial_tail_geq(BinomialParams(n, Fraction(k + 1, n)), k + 1)
        poisson_tail = 1 - poisson_piece_infimum(k, bits)
        return (binom - poisson_tail).abs_enclosure()

    def scan():
        for a, b in zip(n_list, n_list[1:]):
            _require_sign(
                f"gap(n={a}) minus gap(n={b})",
                lambda bits, a=a, b=b: gap(a, bits) - gap(b, bits),
                Sign.POSITIVE,
                precision_bits,
                max_precision_bits,
            )
        return [
            (f"gap(n={n_list[0]})", gap(n_list[0], precision_bits)),
            (f"gap(n={n_list[-1]})", gap(n_list[-1], precision_bits)),
        ]

    return _assemble(
        f"binomial-poisson-limit k={k}",
        {"k": k, "n_list": n_list},
        f"n in {n_list}",
        scan,
    )
