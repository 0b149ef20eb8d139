"""Command-line surface.

Set literals are comma-separated signed integers with inclusive range sugar
("-3,1,4..15"); negative entries denote p - |x|.  Every command prints one
line of machine-parseable key=value tokens (aligned human-readable form
behind --table).  Exit codes: 0 success, 1 a mathematical check failed,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from .core import PrimeModulus, ResidueSet
from .engine import (
    find_normalizing_dilate,
    is_incomplete,
    is_zero_free,
    oracle_max_zero_free,
    subset_sums_integer,
)
from .engine import DEFAULT_ORACLE_NODE_BUDGET
from .structure import (
    classification_report,
    construct_extremal,
    decompose,
    delta,
    is_special_prime,
    max_zero_free_card_formula,
    triangular_s,
)
from .sweeps import DEFAULT_ORACLE_CUTOFF, sweep, write_report

__all__ = ["SetSpecError", "SetSpec", "parse_set_spec", "format_set_spec", "run", "main"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

_ITEM = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")


class SetSpecError(ValueError):
    """Malformed or inconsistent set literal."""


def parse_set_spec(raw: str, modulus: PrimeModulus) -> ResidueSet:
    """Parse a set literal, reducing every item mod p.

    Errors are distinct per cause: malformed token, element congruent to 0,
    duplicate residue after reduction.
    """
    if raw is None or not raw.strip():
        raise SetSpecError("empty set literal")
    p = modulus.p
    residues: list[int] = []
    seen: set[int] = set()
    for token in raw.split(","):
        token = token.strip()
        m = _ITEM.match(token)
        if m is None:
            raise SetSpecError(f"malformed token {token!r}")
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) is not None else a
        if b < a:
            raise SetSpecError(f"empty range {token!r}")
        for v in range(a, b + 1):
            r = v % p
            if r == 0:
                raise SetSpecError(f"element {v} is 0 mod {p}")
            if r in seen:
                raise SetSpecError(f"duplicate residue {r} (from {v}) after reduction mod {p}")
            seen.add(r)
            residues.append(r)
    return ResidueSet(modulus, residues)


@dataclass(frozen=True)
class SetSpec:
    """A raw set literal, resolvable once a modulus is known."""

    raw: str

    def resolve(self, modulus: PrimeModulus) -> ResidueSet:
        return parse_set_spec(self.raw, modulus)


def format_set_spec(A: ResidueSet) -> str:
    """Canonical literal: ascending signed representatives, runs of three
    or more consecutive values compressed to "a..b".  Round-trips through
    parse_set_spec."""
    values = sorted(A.signed_values())
    parts: list[str] = []
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1] == values[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{values[i]}..{values[j]}")
        else:
            parts.extend(str(values[t]) for t in range(i, j + 1))
        i = j + 1
    return ",".join(parts)


def _fmt(value: object) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(args: argparse.Namespace, pairs: list[tuple[str, object]]) -> None:
    if getattr(args, "table", False):
        width = max(len(k) for k, _ in pairs)
        for k, v in pairs:
            print(f"{k:<{width}}  {_fmt(v)}")
    else:
        print(" ".join(f"{k}={_fmt(v)}" for k, v in pairs))


def _parsed_set(args: argparse.Namespace) -> tuple[PrimeModulus, ResidueSet]:
    modulus = PrimeModulus(args.prime)
    return modulus, parse_set_spec(args.set, modulus)


def _cmd_check(args: argparse.Namespace) -> int:
    modulus, A = _parsed_set(args)
    zero_free = is_zero_free(A)
    pairs: list[tuple[str, object]] = [
        ("p", modulus.p),
        ("set", format_set_spec(A)),
        ("card", A.card),
        ("zero_free", zero_free),
        ("incomplete", is_incomplete(A)),
    ]
    if args.emit_sharp:
        sharp = subset_sums_integer(A.signed_values())
        pairs.append(("sharp", ",".join(map(str, sharp.values()))))
    _emit(args, pairs)
    if args.expect_zero_free and not zero_free:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_maxcard(args: argparse.Namespace) -> int:
    modulus = PrimeModulus(args.prime)
    p = modulus.p
    _emit(
        args,
        [
            ("p", p),
            ("k", max_zero_free_card_formula(p)),
            ("delta", delta(p)),
            ("s", triangular_s(p)),
            ("special", is_special_prime(p)),
        ],
    )
    return EXIT_OK


def _cmd_construct(args: argparse.Namespace) -> int:
    modulus = PrimeModulus(args.prime)
    A = construct_extremal(modulus)
    _emit(args, [("p", modulus.p), ("set", format_set_spec(A)), ("card", A.card)])
    return EXIT_OK


def _cmd_decompose(args: argparse.Namespace) -> int:
    modulus, A = _parsed_set(args)
    dec = decompose(A)
    _emit(
        args,
        [
            ("p", modulus.p),
            ("d", dec.d),
            ("neg_part", format_set_spec(dec.neg_part)),
            ("pos_part", format_set_spec(dec.pos_part)),
            ("s_double_prime", dec.s_double_prime),
            ("neg_weight", dec.neg_weight),
            ("card", A.card),
        ],
    )
    return EXIT_OK


def _cmd_normalize(args: argparse.Namespace) -> int:
    modulus, A = _parsed_set(args)
    result = find_normalizing_dilate(A)
    s = result.summary
    _emit(
        args,
        [
            ("p", modulus.p),
            ("d", result.d),
            ("total", s.total),
            ("positive_part", s.positive_part),
            ("negative_part", s.negative_part),
            ("cardinality", s.cardinality),
            ("ties", result.ties),
        ],
    )
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    modulus, A = _parsed_set(args)
    try:
        report = classification_report(A)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    c = report.classification
    if not c.matched:
        _emit(args, [("p", modulus.p), ("row", None), ("failures", ",".join(c.failures))])
        return EXIT_CHECK_FAILED
    _emit(
        args,
        [
            ("p", modulus.p),
            ("row", c.row_id),
            ("orientation", c.orientation),
            ("s_double_prime", report.s_double_prime),
            ("sharp_match", report.sharp_match),
            ("missing", ",".join(map(str, report.missing))),
            ("extra", ",".join(map(str, report.extra))),
        ],
    )
    return EXIT_OK if report.sharp_match else EXIT_CHECK_FAILED


def _cmd_oracle(args: argparse.Namespace) -> int:
    modulus = PrimeModulus(args.prime)
    result = oracle_max_zero_free(modulus, node_budget=args.node_budget)
    witness = "{" + ",".join(map(str, sorted(result.witness.signed_values()))) + "}"
    _emit(
        args,
        [
            ("p", result.p),
            ("max", result.max_card),
            ("witness", witness),
            ("formula", result.formula_value),
            ("agrees", result.agrees),
            ("nodes", result.nodes_explored),
            ("conclusive", result.conclusive),
        ],
    )
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep(
        args.lo,
        args.hi,
        oracle_cutoff=args.oracle_cutoff,
        workers=args.workers,
        verify_cutoff=args.verify_cutoff,
    )
    write_report(report, args.format, args.out)
    _emit(
        args,
        [
            ("lo", args.lo),
            ("hi", args.hi),
            ("primes", len(report.records)),
            ("delta_zero_fraction", f"{report.delta_zero_fraction:.4f}"),
            ("special_count", report.special_count),
            ("special_count_over_sqrt", f"{report.special_count_over_sqrt:.4f}"),
            ("out", args.out),
        ],
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerofree",
        description="Zero-free subsets of Z/pZ: certification, constructions, "
        "structure classification, and prime-range verification sweeps.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="aligned human-readable output")

    sub = parser.add_subparsers(dest="command", required=True)

    def with_prime(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("-p", "--prime", type=int, required=True, help="odd prime modulus")
        return p

    def with_set(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("-s", "--set", required=True, help='set literal, e.g. "-3,1,4..15"')
        return p

    p_check = with_set(with_prime(sub.add_parser(
        "check", parents=[common], help="certify zero-freeness and completeness of a set")))
    p_check.add_argument("--expect-zero-free", action="store_true",
                         help="exit 1 when the set is not zero-free")
    p_check.add_argument("--emit-sharp", action="store_true",
                         help="also print the full integer subset-sum set")
    p_check.set_defaults(func=_cmd_check)

    p_maxcard = with_prime(sub.add_parser(
        "maxcard", parents=[common], help="closed-form maximal cardinality and related quantities"))
    p_maxcard.set_defaults(func=_cmd_maxcard)

    p_construct = with_prime(sub.add_parser(
        "construct", parents=[common], help="emit the extremal zero-free set in set-literal form"))
    p_construct.set_defaults(func=_cmd_construct)

    p_decompose = with_set(with_prime(sub.add_parser(
        "decompose", parents=[common], help="split a set by representative sign")))
    p_decompose.set_defaults(func=_cmd_decompose)

    p_classify = with_set(with_prime(sub.add_parser(
        "classify", parents=[common],
        help="match a largest set against the structure rows and diff the predicted sharp set")))
    p_classify.set_defaults(func=_cmd_classify)

    p_normalize = with_set(with_prime(sub.add_parser(
        "normalize", parents=[common], help="exhaustive minimal-weight dilate")))
    p_normalize.set_defaults(func=_cmd_normalize)

    p_oracle = with_prime(sub.add_parser(
        "oracle", parents=[common], help="exhaustive maximal zero-free cardinality (small p)"))
    p_oracle.add_argument("--node-budget", type=int, default=DEFAULT_ORACLE_NODE_BUDGET,
                          help="search node budget before reporting inconclusive")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="per-prime verification campaign over a range")
    p_sweep.add_argument("lo", type=int, help="range start (>= 7)")
    p_sweep.add_argument("hi", type=int, help="range end, inclusive")
    p_sweep.add_argument("--oracle-cutoff", type=int, default=DEFAULT_ORACLE_CUTOFF,
                         help="run the exhaustive oracle for p up to this bound")
    p_sweep.add_argument("--verify-cutoff", type=int, default=None,
                         help="verify the constructions only for p up to this bound "
                         "(default: verify for every prime)")
    p_sweep.add_argument("--workers", type=int, default=1, help="process pool size")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", required=True, help="report file path")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def _merge_set_values(argv: Sequence[str]) -> list[str]:
    """Rewrite "-s VALUE" as "--set=VALUE" so literals starting with a
    negative entry ("-3,1,4..15") are not mistaken for options."""
    merged: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in ("-s", "--set") and i + 1 < len(argv):
            merged.append(f"--set={argv[i + 1]}")
            i += 2
        else:
            merged.append(argv[i])
            i += 1
    return merged


def run(argv: Sequence[str] | None = None) -> int:
    """Parse and execute one command line; returns the exit code."""
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_set_values(argv))
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SetSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
