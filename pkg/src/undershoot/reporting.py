"""Rendering of exact and certified values into CSV rows and JSON objects.

Decimal columns are derived from the exact fields for display only; the
"num/den" strings round-trip through ``Fraction`` unchanged.  Output is
byte-deterministic for a fixed run configuration.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .meantail import InfimumReport, PieceReport
from .numerics import (
    DEFAULT_MAX_PRECISION_BITS,
    DEFAULT_PRECISION_BITS,
    CertifiedReal,
    format_decimal,
    format_scientific,
)
from .verification import VerificationReport

__all__ = [
    "RunConfig",
    "OutputRecord",
    "write_csv",
    "write_json",
    "verification_report_record",
    "verification_report_json",
    "infimum_report_record",
    "infimum_report_json",
    "piece_record",
]


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION_BITS
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS
    fmt: str = "csv"
    out: str | None = None
    digits: int = 12
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.precision_bits > self.max_precision_bits:
            raise ValueError("precision_bits must not exceed max_precision_bits")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.digits < 1:
            raise ValueError("digits must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


def _exact_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _cells(name: str, value: object, digits: int) -> list[tuple[str, str]]:
    """Flatten one column into CSV cells; exact first, decimals display-only."""
    if isinstance(value, Fraction):
        return [(name, _exact_str(value)), (f"{name}_decimal", format_decimal(value, digits))]
    if isinstance(value, CertifiedReal):
        rendered = f"{format_decimal(value.midpoint, digits)}±{format_scientific(value.radius)}"
        return [(name, rendered), (f"{name}_decimal", format_decimal(value.midpoint, digits))]
    if isinstance(value, bool):
        return [(name, "true" if value else "false")]
    return [(name, str(value))]


def _json_value(value: object, digits: int) -> object:
    if isinstance(value, Fraction):
        return {"exact": _exact_str(value), "decimal": format_decimal(value, digits)}
    if isinstance(value, CertifiedReal):
        return {
            "midpoint_decimal": format_decimal(value.midpoint, digits),
            "radius_decimal": format_scientific(value.radius),
            "precision_bits": value.precision_bits,
        }
    return value


@dataclass(frozen=True)
class OutputRecord:
    """Ordered (name, value) columns for one output row."""

    columns: tuple[tuple[str, object], ...]

    def flat(self, digits: int) -> list[tuple[str, str]]:
        cells: list[tuple[str, str]] = []
        for name, value in self.columns:
            cells.extend(_cells(name, value, digits))
        return cells

    def json_object(self, digits: int) -> dict[str, object]:
        return {name: _json_value(value, digits) for name, value in self.columns}


def write_csv(records: Iterable[OutputRecord], stream: IO[str], digits: int) -> None:
    """Header from the first record; rows stream as they arrive; LF endings."""
    writer = csv.writer(stream, lineterminator="\n", quoting=csv.QUOTE_ALL)
    header: list[str] | None = None
    for record in records:
        cells = record.flat(digits)
        if header is None:
            header = [name for name, _ in cells]
            writer.writerow(header)
        names = [name for name, _ in cells]
        if names != header:
            raise ValueError(f"inconsistent CSV columns: {names} vs {header}")
        writer.writerow([text for _, text in cells])


def write_json(payload: object, stream: IO[str]) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")


# -- Report adapters -------------------------------------------------------------


def _critical_values_text(report: VerificationReport, digits: int) -> str:
    parts = []
    for label, value in report.critical_values:
        if isinstance(value, Fraction):
            parts.append(f"{label}={_exact_str(value)}")
        elif isinstance(value, CertifiedReal):
            parts.append(f"{label}={format_decimal(value.midpoint, digits)}±{format_scientific(value.radius)}")
        else:
            parts.append(f"{label}={value}")
    return "; ".join(parts)


def _counterexample_text(report: VerificationReport) -> str:
    ce = report.counterexample
    if ce is None:
        return ""
    actual = "; ".join(f"{label}: {value}" for label, value in ce.actual_values)
    return f"{ce.input} expected {ce.expected_relation}; got {actual}"


def verification_report_record(report: VerificationReport, digits: int) -> OutputRecord:
    parameters = "; ".join(f"{k}={v}" for k, v in report.parameters.items())
    return OutputRecord(
        (
            ("check_name", report.check_name),
            ("passed", report.passed),
            ("undecided", report.undecided),
            ("range_scanned", report.range_scanned),
            ("parameters", parameters),
            ("counterexample", _counterexample_text(report)),
            ("critical_values", _critical_values_text(report, digits)),
            ("notes", " | ".join(report.notes)),
        )
    )


def verification_report_json(report: VerificationReport, digits: int) -> dict[str, object]:
    counterexample = None
    if report.counterexample is not None:
        counterexample = {
            "input": report.counterexample.input,
            "expected_relation": report.counterexample.expected_relation,
            "actual_values": [list(pair) for pair in report.counterexample.actual_values],
        }
    return {
        "check_name": report.check_name,
        "passed": report.passed,
        "undecided": report.undecided,
        "parameters": {k: (list(v) if isinstance(v, tuple) else v) for k, v in report.parameters.items()},
        "range_scanned": report.range_scanned,
        "counterexample": counterexample,
        "critical_values": [
            {"label": label, "value": _json_value(value, digits)}
            for label, value in report.critical_values
        ],
        "notes": list(report.notes),
    }


def piece_record(piece: PieceReport) -> OutputRecord:
    columns: list[tuple[str, object]] = [("family", piece.family.value)]
    if piece.r is not None:
        columns.append(("r", piece.r))
    columns.extend(
        (
            ("piece_index", piece.piece_index),
            ("interval_lo_exclusive", piece.lo),
            ("interval_hi_inclusive", piece.hi),
            ("piece_infimum", piece.piece_infimum),
            ("attained", piece.attained),
            ("limit_witness", piece.limit_witness),
        )
    )
    return OutputRecord(tuple(columns))


def infimum_report_record(report: InfimumReport) -> OutputRecord:
    columns: list[tuple[str, object]] = [("family", report.family.value)]
    if report.r is not None:
        columns.append(("r", report.r))
    columns.extend(
        (
            ("first_piece", report.first_piece),
            ("scan_bound", report.scan_bound),
            ("global_infimum", report.global_infimum),
            ("attained", report.attained),
            ("claim", report.claim_label),
            ("claimed_value", report.claimed_value),
            ("agrees_with_claim", report.agrees_with_claim),
            ("witness_sequence", " -> ".join(_exact_str(w) for w in report.witness_sequence)),
            ("notes", " | ".join(report.notes)),
        )
    )
    return OutputRecord(tuple(columns))


def infimum_report_json(report: InfimumReport, digits: int) -> dict[str, object]:
    return {
        "family": report.family.value,
        "r": report.r,
        "first_piece": report.first_piece,
        "scan_bound": report.scan_bound,
        "global_infimum": _json_value(report.global_infimum, digits),
        "attained": report.attained,
        "claim": report.claim_label,
        "claimed_value": _json_value(report.claimed_value, digits),
        "agrees_with_claim": report.agrees_with_claim,
        "witness_sequence": [_exact_str(w) for w in report.witness_sequence],
        "pieces": [piece_record(piece).json_object(digits) for piece in report.piece_reports],
        "notes": list(report.notes),
    }
