"""Prime-range verification campaigns.

For every prime in a range: the closed-form quantities, the special-prime
test, subset-sum verification of the two extremal constructions, structure
classification of the constructed set, and (below a cutoff) the exhaustive
oracle compared against the formula.  Aggregates the delta(p)=0 density and
special-prime count, and writes CSV/JSON reports.
"""

from __future__ import annotations

import csv
import functools
import json
import math
import multiprocessing
from dataclasses import dataclass
from pathlib import Path
from time import perf_counter
from typing import Iterable

from .core import PrimeModulus, delta, max_zero_free_card_formula, triangular_s
from .engine import DEFAULT_ORACLE_NODE_BUDGET, is_zero_free, oracle_max_zero_free
from .structure import (
    classify_structure,
    construct_extremal,
    construct_interval_set,
    is_special_prime,
)

__all__ = [
    "DEFAULT_ORACLE_CUTOFF",
    "CSV_COLUMNS",
    "SweepRecord",
    "SweepReport",
    "primes_in_range",
    "check_prime",
    "sweep",
    "write_report",
]

DEFAULT_ORACLE_CUTOFF = 47

CSV_COLUMNS = (
    "p",
    "k_formula",
    "delta",
    "s_triangular",
    "special",
    "extremal_verified",
    "oracle_card",
    "oracle_agrees",
    "classify_row",
    "elapsed_ms",
)

_SEGMENT = 1 << 16


def _simple_sieve(limit: int) -> list[int]:
    if limit < 2:
        return []
    marks = bytearray([1]) * (limit + 1)
    marks[0] = marks[1] = 0
    for q in range(2, math.isqrt(limit) + 1):
        if marks[q]:
            marks[q * q :: q] = bytes(len(range(q * q, limit + 1, q)))
    return [i for i, flag in enumerate(marks) if flag]


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Ascending list of exactly the primes in [lo, hi] (segmented sieve)."""
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    lo = max(lo, 2)
    base = _simple_sieve(math.isqrt(hi))
    out: list[int] = []
    seg = max(_SEGMENT, math.isqrt(hi) + 1)
    low = lo
    while low <= hi:
        high = min(low + seg - 1, hi)
        marks = bytearray([1]) * (high - low + 1)
        for q in base:
            start = max(q * q, (low + q - 1) // q * q)
            if start > high:
                continue
            marks[start - low :: q] = bytes(len(range(start, high + 1, q)))
        out.extend(low + i for i, flag in enumerate(marks) if flag)
        low = high + 1
    return out


@dataclass(frozen=True)
class SweepRecord:
    """Per-prime results.  Optional fields are None when not computed:
    the oracle pair when p is above the cutoff or the search did not
    finish, extremal_verified when verification was cut off, classify_row
    when the constructed set matches no structure row."""

    p: int
    k_formula: int
    delta: int
    s_triangular: int
    special: bool
    extremal_verified: bool | None
    oracle_card: int | None
    oracle_agrees: bool | None
    classify_row: int | None
    elapsed_ms: float


def check_prime(
    p: int,
    oracle_cutoff: int = DEFAULT_ORACLE_CUTOFF,
    verify_cutoff: int | None = None,
    oracle_node_budget: int = DEFAULT_ORACLE_NODE_BUDGET,
) -> SweepRecord:
    """All per-prime checks for one prime.

    verify_cutoff limits the subset-sum verification of the two
    constructions (None: always verify).  classify_row reports the
    structure row matched by the constructed extremal set.  Any failure
    inside the heavier checks is recorded, never propagated.
    """
    t0 = perf_counter()
    k = max_zero_free_card_formula(p)
    d = delta(p)
    s = triangular_s(p)
    special = is_special_prime(p)
    extremal_verified: bool | None = None
    oracle_card: int | None = None
    oracle_agrees: bool | None = None
    classify_row: int | None = None
    verify = verify_cutoff is None or p <= verify_cutoff
    try:
        modulus = PrimeModulus(p)
        built = construct_extremal(modulus)
        if verify:
            extremal_verified = (
                built.card == k
                and is_zero_free(built)
                and is_zero_free(construct_interval_set(modulus))
            )
        classification = classify_structure(built)
        if classification.matched:
            classify_row = classification.row_id
        if p <= oracle_cutoff:
            result = oracle_max_zero_free(modulus, node_budget=oracle_node_budget)
            if result.conclusive:
                oracle_card = result.max_card
                oracle_agrees = result.agrees
    except Exception:
        if verify and extremal_verified is None:
            extremal_verified = False
    return SweepRecord(
        p=p,
        k_formula=k,
        delta=d,
        s_triangular=s,
        special=special,
        extremal_verified=extremal_verified,
        oracle_card=oracle_card,
        oracle_agrees=oracle_agrees,
        classify_row=classify_row,
        elapsed_ms=(perf_counter() - t0) * 1000.0,
    )


@dataclass(frozen=True)
class SweepReport:
    """Records for every prime in range, plus the aggregate statistics for
    the delta(p)=0 density and the special-prime count."""

    range: tuple[int, int]
    records: tuple[SweepRecord, ...]
    delta_zero_fraction: float
    special_count: int
    special_count_over_sqrt: float

    @classmethod
    def build(cls, prime_range: tuple[int, int], records: tuple[SweepRecord, ...]) -> "SweepReport":
        n = len(records)
        zero = sum(1 for r in records if r.delta == 0)
        special = sum(1 for r in records if r.special)
        return cls(
            range=prime_range,
            records=records,
            delta_zero_fraction=zero / n if n else 0.0,
            special_count=special,
            special_count_over_sqrt=special / math.sqrt(prime_range[1]),
        )


def sweep(
    lo: int,
    hi: int,
    oracle_cutoff: int = DEFAULT_ORACLE_CUTOFF,
    workers: int = 1,
    *,
    verify_cutoff: int | None = None,
    oracle_node_budget: int = DEFAULT_ORACLE_NODE_BUDGET,
) -> SweepReport:
    """Run check_prime over every prime in [lo, hi].

    Per-prime work is independent; with workers > 1 a process pool handles
    it and records are merged by p, so the report content is identical for
    any worker count (elapsed timings aside).
    """
    if lo < 7:
        raise ValueError(f"sweep range must start at 7 or above, got {lo}")
    primes = primes_in_range(lo, hi)
    if workers > 1 and len(primes) > 1:
        fn = functools.partial(
            check_prime,
            oracle_cutoff=oracle_cutoff,
            verify_cutoff=verify_cutoff,
            oracle_node_budget=oracle_node_budget,
        )
        chunk = max(1, len(primes) // (workers * 8))
        with multiprocessing.Pool(workers) as pool:
            records = pool.map(fn, primes, chunksize=chunk)
    else:
        records = [
            check_prime(p, oracle_cutoff, verify_cutoff, oracle_node_budget)
            for p in primes
        ]
    records.sort(key=lambda r: r.p)
    return SweepReport.build((lo, hi), tuple(records))


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def _record_dict(r: SweepRecord) -> dict[str, object]:
    return {
        "p": r.p,
        "k_formula": r.k_formula,
        "delta": r.delta,
        "s_triangular": r.s_triangular,
        "special": r.special,
        "extremal_verified": r.extremal_verified,
        "oracle_card": r.oracle_card,
        "oracle_agrees": r.oracle_agrees,
        "classify_row": r.classify_row,
        "elapsed_ms": round(r.elapsed_ms, 3),
    }


def write_report(report: SweepReport, format: str, path: str | Path) -> None:
    """Write the report to path as "csv" or "json".

    CSV columns are exactly CSV_COLUMNS, with empty cells for absent
    optional fields, UTF-8, newline-terminated rows.  JSON mirrors the
    report field names.
    """
    path = Path(path)
    if format == "csv":
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in report.records:
                row = _record_dict(r)
                writer.writerow([_cell(row[c]) for c in CSV_COLUMNS])
    elif format == "json":
        document = {
            "range": list(report.range),
            "records": [_record_dict(r) for r in report.records],
            "delta_zero_fraction": report.delta_zero_fraction,
            "special_count": report.special_count,
            "special_count_over_sqrt": report.special_count_over_sqrt,
        }
        with path.open("w", encoding="utf-8") as f:
            json.dump(document, f)
            f.write("\n")
    else:
        raise ValueError(f"unknown report format {format!r} (expected csv or json)")
