"""Subset-sum reachability engines and the exhaustive maximality oracle.

Two independent dynamic programs compute the set of nonempty-subset sums:
one over Z/pZ (rotate-OR on a p-bit set) and one over the integers (shift-OR
on an offset bit range).  On top of them sit zero-freeness and completeness
certification, the interval-extension and pair-sum-covering operations,
exhaustive dilate normalization, and a branch-and-bound search for the true
maximal zero-free cardinality.

Bit arrays are plain Python integers: shifts and ORs on them are word-packed
C loops, which keeps the per-element cost of a DP at O(p / wordsize).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import PrimeModulus, ResidueSet, WeightSummary, dilate_set
from .core import max_zero_free_card_formula, weight_summary

__all__ = [
    "SumBitsetModP",
    "SumSetInteger",
    "NormalizationResult",
    "OracleResult",
    "DEFAULT_ORACLE_NODE_BUDGET",
    "subset_sums_mod_p",
    "is_zero_free",
    "is_incomplete",
    "subset_sums_integer",
    "mod_p_image",
    "interval_extend",
    "pair_sum_cover",
    "find_normalizing_dilate",
    "oracle_max_zero_free",
]

DEFAULT_ORACLE_NODE_BUDGET = 2_000_000


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class SumBitsetModP:
    """All nonempty-subset sums of a residue set, as a p-bit array.

    Bit r is set exactly when some nonempty subset sums to r mod p.
    """

    modulus: PrimeModulus
    bits: int

    def __contains__(self, r: int) -> bool:
        return (self.bits >> (r % self.modulus.p)) & 1 == 1

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def residues(self) -> tuple[int, ...]:
        return tuple(_iter_bits(self.bits))


def subset_sums_mod_p(A: ResidueSet) -> SumBitsetModP:
    """Exact reachable-sum set, one rotate-OR per element.

    Adding element a maps every already-reachable sum s to s+a; on the
    p-bit array that is a rotation by a, with the bits shifted past p-1
    wrapped back to the low end (two shifts + OR).
    """
    p = A.modulus.p
    mask = (1 << p) - 1
    reach = 0
    for a in A.elements:
        rotated = ((reach << a) | (reach >> (p - a))) & mask
        reach |= rotated | (1 << a)
    return SumBitsetModP(A.modulus, reach)


def is_zero_free(A: ResidueSet) -> bool:
    """True iff no nonempty subset sums to 0 mod p (empty set: vacuously)."""
    return subset_sums_mod_p(A).bits & 1 == 0


def is_incomplete(A: ResidueSet) -> bool:
    """True iff the subset sums together with 0 do not cover all of Z/pZ."""
    return (subset_sums_mod_p(A).bits | 1).bit_count() < A.modulus.p


@dataclass(frozen=True)
class SumSetInteger:
    """Nonempty-subset sums of a set of integers, over the window [lo, hi].

    lo is the sum of the negative inputs and hi the sum of the positive
    ones, so every subset sum falls in the window.  Bit i stands for the
    integer lo + i.
    """

    lo: int
    hi: int
    bits: int

    def __contains__(self, s: int) -> bool:
        if s < self.lo or s > self.hi:
            return False
        return (self.bits >> (s - self.lo)) & 1 == 1

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def values(self) -> Iterator[int]:
        lo = self.lo
        return (lo + i for i in _iter_bits(self.bits))

    def to_set(self) -> set[int]:
        return set(self.values())


def subset_sums_integer(values: Iterable[int]) -> SumSetInteger:
    """Exact nonempty-subset sums of duplicate-free signed integers."""
    vals = list(values)
    if len(set(vals)) != len(vals):
        raise ValueError("duplicate values in input; a set is required")
    lo = sum(v for v in vals if v < 0)
    hi = sum(v for v in vals if v > 0)
    bits = 0
    for v in vals:
        # Every sum involving v still lies in [lo, hi], so the shifts
        # cannot spill out of the window in either direction.
        shifted = bits << v if v >= 0 else bits >> -v
        bits = bits | shifted | (1 << (v - lo))
    return SumSetInteger(lo, hi, bits)


def mod_p_image(sums: SumSetInteger, modulus: PrimeModulus) -> SumBitsetModP:
    """Reduce every attained integer sum mod p."""
    p = modulus.p
    out = 0
    for s in sums.values():
        out |= 1 << (s % p)
    return SumBitsetModP(modulus, out)


def interval_extend(m: int, length: int, summands: Iterable[int]) -> tuple[int, int]:
    """Interval reached from {m, ..., m+length-1} by adding subset sums.

    The empty subset counts, so the original interval is kept.  Returns the
    inclusive endpoints (m - sum of negative magnitudes, m + length - 1 +
    sum of positives).  Every summand must satisfy |b| <= length; beyond
    that bound the reached set need not be an interval, so the call is
    rejected.
    """
    if length < 1:
        raise ValueError(f"interval length must be >= 1, got {length}")
    vals = set(summands)
    for b in vals:
        if abs(b) > length:
            raise ValueError(f"summand {b} exceeds the interval length {length}")
    neg = sum(-b for b in vals if b < 0)
    pos = sum(b for b in vals if b > 0)
    return (m - neg, m + length - 1 + pos)


def pair_sum_cover(values: Iterable[int], q: int) -> list[int]:
    """Targets in [q+1, floor(13q/8)] not hit by a sum of two distinct elements.

    values must be a subset of [1, q].  Returns the uncovered targets in
    ascending order; for dense enough inputs (|B| >= 7q/8, q large) the
    list is empty.
    """
    pool = set(values)
    for b in pool:
        if not 1 <= b <= q:
            raise ValueError(f"element {b} outside [1, {q}]")
    uncovered = []
    for n in range(q + 1, 13 * q // 8 + 1):
        for a in pool:
            b = n - a
            if b != a and b in pool:
                break
        else:
            uncovered.append(n)
    return uncovered


@dataclass(frozen=True)
class NormalizationResult:
    """Outcome of the exhaustive dilate search.

    summary describes d*A; ties counts the units sharing the minimal total
    weight (before the negative-part and smaller-d tie-breaks).
    """

    d: int
    summary: WeightSummary
    ties: int


def find_normalizing_dilate(A: ResidueSet) -> NormalizationResult:
    """Unit d minimizing the total weight of d*A, over all of [1, p-1].

    Ties on the total are broken by smaller negative part, then smaller d,
    so the result is reproducible byte for byte.
    """
    if not A.elements:
        raise ValueError("empty set has no normalizing dilate")
    p = A.modulus.p
    half = A.modulus.half
    elems = A.elements
    best_total = -1
    best_neg = 0
    best_d = 0
    ties = 0
    for d in range(1, p):
        total = 0
        neg = 0
        for a in elems:
            r = d * a % p
            if r > half:
                r = p - r
                neg += r
            total += r
        if best_total < 0 or total < best_total:
            best_total, best_neg, best_d, ties = total, neg, d, 1
        elif total == best_total:
            ties += 1
            if neg < best_neg:  # d ascends, so "then smaller d" is automatic
                best_neg, best_d = neg, d
    return NormalizationResult(best_d, weight_summary(dilate_set(A, best_d)), ties)


@dataclass(frozen=True)
class OracleResult:
    """Exhaustively established maximal zero-free cardinality for one prime.

    When the node budget ran out, conclusive is False: max_card/witness are
    only the best found (a valid lower bound) and agrees is None rather
    than a guess.
    """

    p: int
    max_card: int
    witness: ResidueSet
    nodes_explored: int
    formula_value: int
    agrees: bool | None
    conclusive: bool


def oracle_max_zero_free(
    modulus: PrimeModulus, node_budget: int = DEFAULT_ORACLE_NODE_BUDGET
) -> OracleResult:
    """Depth-first search for the largest zero-free subset of Z/pZ.

    Every nonempty zero-free set has a dilate containing 1 (dilate by the
    inverse of any member), so the search roots at {1} and the witness is
    exact up to dilation.  Elements are tried in increasing residue order
    with the reachable-sum bitset maintained incrementally.  A branch is
    cut when the candidate would make 0 reachable -- which also covers any
    candidate whose negation is already in the set -- or when the count of
    still-addable residues cannot beat the incumbent.

    Intended for p up to roughly 61; beyond the budget the search stops
    and the result is explicitly marked inconclusive.
    """
    p = modulus.p
    mask = (1 << p) - 1
    best_card = 1
    best_set: tuple[int, ...] = (1,)
    nodes = 0
    exhausted = False
    chosen = [1]

    def extend(reach: int, start: int) -> None:
        nonlocal best_card, best_set, nodes, exhausted
        card = len(chosen)
        if card > best_card:
            best_card = card
            best_set = tuple(chosen)
        span = p - start
        if span <= 0:
            return
        # Candidate x in [start, p-1] is addable iff reach bit p-x is clear;
        # walking the clear bits of the negation window from the top visits
        # the candidates in increasing residue order.
        c = ~reach & ((1 << (span + 1)) - 2)
        n_left = c.bit_count()
        if card + n_left <= best_card:
            return
        while c:
            y = c.bit_length() - 1
            c ^= 1 << y
            x = p - y
            nodes += 1
            if nodes > node_budget:
                exhausted = True
                return
            rotated = ((reach << x) | (reach >> y)) & mask
            chosen.append(x)
            extend(reach | rotated | (1 << x), x + 1)
            chosen.pop()
            if exhausted:
                return
            n_left -= 1
            if card + n_left <= best_card:
                return

    extend(1 << 1, 2)

    formula_value = max_zero_free_card_formula(p)
    conclusive = not exhausted
    return OracleResult(
        p=p,
        max_card=best_card,
        witness=ResidueSet(modulus, best_set),
        nodes_explored=nodes,
        formula_value=formula_value,
        agrees=(best_card == formula_value) if conclusive else None,
        conclusive=conclusive,
    )
