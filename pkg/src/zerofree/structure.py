"""Extremal constructions, sign decomposition, gap sequences, and the
structure classification of largest zero-free sets.

The closed-form scalar quantities (max_zero_free_card_formula, delta,
triangular_s) live in core and are re-exported here next to the operations
built on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    PrimeModulus,
    ResidueSet,
    delta,
    dilate_set,
    max_zero_free_card_formula,
    negate_set,
    triangular_s,
)
from .engine import subset_sums_integer

__all__ = [
    "max_zero_free_card_formula",
    "delta",
    "triangular_s",
    "is_special_prime",
    "construct_extremal",
    "construct_interval_set",
    "Decomposition",
    "decompose",
    "GapSequence",
    "gap_sequence",
    "SharpShape",
    "StructureRow",
    "STRUCTURE_ROWS",
    "small_signed_part",
    "Classification",
    "classify_structure",
    "predicted_sharp",
    "ClassificationReport",
    "classification_report",
]


def is_special_prime(p: int) -> bool:
    """True when triangular_s(p) lands in [p+2, p+7].

    Only for these primes can the positive weight of a normalized largest
    zero-free set exceed p-1.
    """
    return 2 <= triangular_s(p) - p <= 7


def construct_extremal(modulus: PrimeModulus) -> ResidueSet:
    """A zero-free set of maximal closed-form cardinality: {-2, 1} u [3, k].

    k is the largest integer with k(k+1)/2 <= p+1.  Requires p >= 7 so the
    residues are pairwise distinct (-2 collides with 3 mod 5).
    """
    p = modulus.p
    if p < 7:
        raise ValueError(f"extremal construction needs p >= 7, got {p}")
    k = max_zero_free_card_formula(p)
    return ResidueSet(modulus, (-2, 1, *range(3, k + 1)))


def construct_interval_set(modulus: PrimeModulus) -> ResidueSet:
    """The interval [1, isqrt(2p)-1], zero-free since its weight is below p."""
    p = modulus.p
    if p < 5:
        raise ValueError(f"interval construction needs p >= 5, got {p}")
    return ResidueSet(modulus, range(1, math.isqrt(2 * p)))


@dataclass(frozen=True)
class Decomposition:
    """Sign split of d*A: the parts with negative and positive representatives.

    s_double_prime is the total weight of the positive part, neg_weight the
    total magnitude of the negative part.
    """

    d: int
    neg_part: ResidueSet
    pos_part: ResidueSet
    s_double_prime: int
    neg_weight: int


def decompose(A: ResidueSet, d: int = 1) -> Decomposition:
    """Split d*A by the sign of the canonical representative.

    The default d=1 splits A as given; callers wanting a normalized split
    pass the dilate found by find_normalizing_dilate.
    """
    p = A.modulus.p
    half = A.modulus.half
    B = dilate_set(A, d) if d % p != 1 else A
    neg = [a for a in B.elements if a > half]
    pos = [a for a in B.elements if a <= half]
    return Decomposition(
        d=d % p,
        neg_part=ResidueSet(A.modulus, neg),
        pos_part=ResidueSet(A.modulus, pos),
        s_double_prime=sum(pos),
        neg_weight=sum(p - a for a in neg),
    )


@dataclass(frozen=True)
class GapSequence:
    """Ascending positive integers g <= bound with neither g nor -g a
    canonical representative of the set."""

    gaps: tuple[int, ...]
    bound: int

    @property
    def g0(self) -> int | None:
        return self.gaps[0] if self.gaps else None


def gap_sequence(A: ResidueSet, bound: int) -> GapSequence:
    if bound > A.modulus.half:
        raise ValueError(f"bound must be at most (p-1)/2 = {A.modulus.half}")
    mags = set(A.magnitudes())
    return GapSequence(tuple(g for g in range(1, bound + 1) if g not in mags), bound)


def _first_gap(A: ResidueSet) -> int | None:
    """Least positive g with neither g nor -g represented, scanning to (p-1)/2."""
    mags = set(A.magnitudes())
    for g in range(1, A.modulus.half + 1):
        if g not in mags:
            return g
    return None


@dataclass(frozen=True)
class SharpShape:
    """Shape of the integer subset-sum set of a classified largest set,
    parameterized by the positive weight s''.

    The instance is extras u [interval_start, s''] minus the excluded
    constants and minus {s'' - k} for each excluded offset k.
    """

    extras: tuple[int, ...] = ()
    interval_start: int = 1
    excluded_constants: tuple[int, ...] = ()
    excluded_offsets: tuple[int, ...] = ()

    def instantiate(self, s_double_prime: int) -> frozenset[int]:
        s = s_double_prime
        for c in self.excluded_constants:
            if not self.interval_start <= c <= s:
                raise ValueError(f"excluded constant {c} outside [{self.interval_start}, {s}]")
        for k in self.excluded_offsets:
            if not self.interval_start <= s - k <= s:
                raise ValueError(f"excluded value s''-{k} outside [{self.interval_start}, {s}]")
        out = set(range(self.interval_start, s + 1))
        out.update(self.extras)
        out.difference_update(self.excluded_constants)
        out.difference_update(s - k for k in self.excluded_offsets)
        return frozenset(out)


@dataclass(frozen=True)
class StructureRow:
    """One row of the classification of largest zero-free sets.

    A set matches when its small signed part (representatives of magnitude
    at most 4) equals small_part, delta(p) equals delta_constraint (None:
    both values allowed), and its first gap g0 satisfies the g0 field
    (lower bound when g0_is_minimum, exact value otherwise).
    """

    row_id: int
    small_part: frozenset[int]
    delta_constraint: int | None
    g0: int
    g0_is_minimum: bool
    sharp_shape: SharpShape


def _row(
    row_id: int,
    small: tuple[int, ...],
    delta_constraint: int | None,
    g0: int,
    shape: SharpShape,
    g0_min: bool = False,
) -> StructureRow:
    return StructureRow(row_id, frozenset(small), delta_constraint, g0, g0_min, shape)


STRUCTURE_ROWS: tuple[StructureRow, ...] = (
    _row(1, (1, 2, 3, 4), None, 5, SharpShape(), g0_min=True),
    _row(2, (-1, 2, 3, 4), None, 5, SharpShape(extras=(-1,)), g0_min=True),
    _row(3, (1, -2, 3, 4), None, 5, SharpShape(extras=(-2, -1)), g0_min=True),
    _row(4, (1, 2, 3), 1, 4, SharpShape()),
    _row(5, (-1, 2, 3), 1, 4, SharpShape(extras=(-1,))),
    _row(6, (1, -2, 3), 1, 4, SharpShape(extras=(-2, -1))),
    _row(7, (-1, 2, -3), 1, 4, SharpShape(extras=(-4, -3, -2, -1))),
    _row(8, (1, 2, 4), 1, 3, SharpShape()),
    _row(9, (-1, 2, 4), 1, 3, SharpShape(extras=(-1,))),
    _row(10, (1, -2, 4), 1, 3, SharpShape(extras=(-2, -1))),
    _row(11, (1, 2, -4), 1, 3, SharpShape(extras=(-4, -3, -2, -1))),
    _row(12, (-1, -2, 4), 1, 3, SharpShape(extras=(-3, -2, -1))),
    _row(13, (1, 3, 4), 1, 2, SharpShape(excluded_constants=(2,), excluded_offsets=(2,))),
    _row(14, (-1, 3, 4), 1, 2, SharpShape(extras=(-1,), excluded_constants=(1,), excluded_offsets=(2,))),
    _row(15, (1, -3, 4), 1, 2, SharpShape(extras=(-3, -2), excluded_offsets=(2,))),
    _row(16, (2, 3, 4), 1, 1, SharpShape(interval_start=2, excluded_offsets=(1,))),
    _row(17, (-2, 3, 4), 1, 1, SharpShape(extras=(-2, -1), excluded_offsets=(1,))),
    _row(18, (2, -3, 4), 1, 1, SharpShape(extras=(-3, -1), excluded_offsets=(1,))),
    _row(19, (2, 3, -4), 1, 1, SharpShape(extras=(-4, -2, -1), excluded_offsets=(1,))),
)


def small_signed_part(A: ResidueSet) -> frozenset[int]:
    """Signed representatives of magnitude at most 4."""
    return frozenset(v for v in A.signed_values() if abs(v) <= 4)


@dataclass(frozen=True)
class Classification:
    """Match against the structure rows, or a report of why none matched.

    failures lists, per tried orientation, the first key that ruled it out:
    "identity:small_part", "negated:g0", ...  Small primes legitimately end
    up here; the rows describe the asymptotic regime.
    """

    matched: bool
    row_id: int | None
    orientation: str | None
    oriented: ResidueSet | None
    failures: tuple[str, ...]


def classify_structure(A: ResidueSet) -> Classification:
    """Match a largest zero-free set against the structure rows.

    The set is tried as given, then negated.  Rejects sets whose
    cardinality differs from the closed-form maximum: the rows only
    describe largest sets.  Callers are expected to normalize first
    (find_normalizing_dilate); the negation is tried here.
    """
    p = A.modulus.p
    k = max_zero_free_card_formula(p)
    if A.card != k:
        raise ValueError(
            f"classification applies to largest sets only: card {A.card} != {k}"
        )
    d_p = delta(p)
    failures: list[str] = []
    for orientation, cand in (("identity", A), ("negated", negate_set(A))):
        small = small_signed_part(cand)
        row = next((r for r in STRUCTURE_ROWS if r.small_part == small), None)
        if row is None:
            failures.append(f"{orientation}:small_part")
            continue
        if row.delta_constraint is not None and d_p != row.delta_constraint:
            failures.append(f"{orientation}:delta")
            continue
        g0 = _first_gap(cand)
        g0_ok = g0 is not None and (g0 >= row.g0 if row.g0_is_minimum else g0 == row.g0)
        if not g0_ok:
            failures.append(f"{orientation}:g0")
            continue
        return Classification(True, row.row_id, orientation, cand, ())
    return Classification(False, None, None, None, tuple(failures))


def predicted_sharp(row: StructureRow, s_double_prime: int) -> frozenset[int]:
    """Instantiate the row's predicted integer subset-sum set at s''."""
    return row.sharp_shape.instantiate(s_double_prime)


def _format_ints(values: tuple[int, ...]) -> str:
    return ",".join(map(str, values))


@dataclass(frozen=True)
class ClassificationReport:
    """Classification plus the predicted-vs-computed integer sharp diff."""

    classification: Classification
    s_double_prime: int | None
    predicted: frozenset[int] | None
    computed: frozenset[int] | None

    @property
    def sharp_match(self) -> bool | None:
        if self.predicted is None or self.computed is None:
            return None
        return self.predicted == self.computed

    @property
    def missing(self) -> tuple[int, ...]:
        """Predicted values the computed sharp set lacks."""
        if self.predicted is None or self.computed is None:
            return ()
        return tuple(sorted(self.predicted - self.computed))

    @property
    def extra(self) -> tuple[int, ...]:
        """Computed values the prediction does not contain."""
        if self.predicted is None or self.computed is None:
            return ()
        return tuple(sorted(self.computed - self.predicted))

    def to_text(self) -> str:
        """Stable single-line key=value form."""
        c = self.classification
        if not c.matched:
            return f"row=none failures={','.join(c.failures)}"
        match = "true" if self.sharp_match else "false"
        return (
            f"row={c.row_id} orientation={c.orientation}"
            f" s_double_prime={self.s_double_prime} sharp_match={match}"
            f" missing={_format_ints(self.missing)} extra={_format_ints(self.extra)}"
        )


def classification_report(A: ResidueSet) -> ClassificationReport:
    """Classify A and compare the row's predicted integer sharp set with
    the one computed by the integer subset-sum engine."""
    c = classify_structure(A)
    if not c.matched:
        return ClassificationReport(c, None, None, None)
    assert c.oriented is not None and c.row_id is not None
    dec = decompose(c.oriented)
    predicted = predicted_sharp(STRUCTURE_ROWS[c.row_id - 1], dec.s_double_prime)
    computed = frozenset(subset_sums_integer(c.oriented.signed_values()).values())
    return ClassificationReport(c, dec.s_double_prime, predicted, computed)
