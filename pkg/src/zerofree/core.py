"""Residue arithmetic over Z/pZ for odd primes p.

Canonical signed representatives, immutable residue sets, dilation and
negation, weight accounting, and the exact-integer scalar quantities
(maximal zero-free cardinality formula, delta, triangular weight) that the
other modules consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "PrimeModulus",
    "SignedRep",
    "ResidueSet",
    "WeightSummary",
    "is_prime",
    "canonical_rep",
    "abs_p",
    "dilate_set",
    "negate_set",
    "weight_summary",
    "max_zero_free_card_formula",
    "delta",
    "triangular_s",
]

# Deterministic for every 64-bit integer (and far beyond desk scale).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set; exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class PrimeModulus:
    """An odd prime modulus p >= 3.

    p = 2 is rejected: the signed-representative window (-p/2, p/2] only
    behaves well for odd p.  p = 3 and p = 5 are accepted, with the caveat
    that the asymptotic structure results checked elsewhere in this package
    can fail for them (the exhaustive oracle reports such disagreements).
    """

    p: int

    def __post_init__(self) -> None:
        if self.p == 2:
            raise ValueError("modulus 2 rejected: an odd prime is required")
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"modulus must be an odd prime >= 3, got {self.p}")

    @property
    def half(self) -> int:
        """Largest magnitude of a canonical representative, (p-1)/2."""
        return (self.p - 1) // 2


@dataclass(frozen=True)
class SignedRep:
    """Canonical integer representative of a residue, in [-(p-1)/2, (p-1)/2]."""

    value: int
    modulus: PrimeModulus

    @property
    def magnitude(self) -> int:
        return abs(self.value)


def canonical_rep(a: int, modulus: PrimeModulus) -> SignedRep:
    """The unique representative of residue a (0 <= a < p) in (-p/2, p/2]."""
    p = modulus.p
    if not 0 <= a < p:
        raise ValueError(f"residue out of range [0, {p}): {a}")
    return SignedRep(a - p if a > (p - 1) // 2 else a, modulus)


def abs_p(a: int, modulus: PrimeModulus) -> int:
    """Magnitude |a|_p of the canonical representative of residue a."""
    return canonical_rep(a, modulus).magnitude


@dataclass(frozen=True)
class ResidueSet:
    """A set of distinct nonzero residues mod p, stored ascending.

    Inputs are reduced mod p on construction; 0 (never a member of a
    candidate zero-free set) and duplicates after reduction are rejected.
    Instances are immutable and safe to share between threads.
    """

    modulus: PrimeModulus
    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        p = self.modulus.p
        reduced: list[int] = []
        seen: set[int] = set()
        for x in self.elements:
            r = x % p
            if r == 0:
                raise ValueError(f"element {x} is 0 mod {p}; 0 is never a member")
            if r in seen:
                raise ValueError(f"duplicate residue {r} after reduction mod {p}")
            seen.add(r)
            reduced.append(r)
        object.__setattr__(self, "elements", tuple(sorted(reduced)))

    @property
    def card(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x % self.modulus.p in self.elements

    def signed_values(self) -> tuple[int, ...]:
        """Canonical representatives, aligned with element order."""
        p = self.modulus.p
        half = self.modulus.half
        return tuple(a - p if a > half else a for a in self.elements)

    def magnitudes(self) -> tuple[int, ...]:
        """|a|_p for each element, aligned with element order."""
        p = self.modulus.p
        half = self.modulus.half
        return tuple(p - a if a > half else a for a in self.elements)


def dilate_set(A: ResidueSet, d: int) -> ResidueSet:
    """Element-wise multiplication by the unit d (a bijection on residues)."""
    p = A.modulus.p
    d %= p
    if d == 0:
        raise ValueError("dilation by 0 collapses the set; d must be a unit")
    return ResidueSet(A.modulus, tuple(d * a % p for a in A.elements))


def negate_set(A: ResidueSet) -> ResidueSet:
    """The set {p - a : a in A}."""
    p = A.modulus.p
    return ResidueSet(A.modulus, tuple(p - a for a in A.elements))


@dataclass(frozen=True)
class WeightSummary:
    """Sum of |a|_p split by representative sign, plus the size excess.

    total == positive_part + negative_part, with negative_part the sum of
    magnitudes of the negative representatives.  excess is |sqrt(2p) - |A||;
    callers needing exact comparisons against sqrt(2p) compare squares.
    """

    total: int
    positive_part: int
    negative_part: int
    cardinality: int
    excess: float


def weight_summary(A: ResidueSet) -> WeightSummary:
    p = A.modulus.p
    half = A.modulus.half
    pos = 0
    neg = 0
    for a in A.elements:
        if a <= half:
            pos += a
        else:
            neg += p - a
    card = len(A.elements)
    return WeightSummary(pos + neg, pos, neg, card, abs(math.sqrt(2 * p) - card))


def max_zero_free_card_formula(p: int) -> int:
    """Largest integer k with k(k+1)/2 <= p+1, in exact integer arithmetic.

    Equals floor(sqrt(2p + 9/4) - 1/2); the isqrt form below avoids any
    floating point:  k(k+1)/2 <= p+1  iff  (2k+1)^2 <= 8p+9.
    """
    if p < 3:
        raise ValueError(f"p must be at least 3, got {p}")
    return (math.isqrt(8 * p + 9) - 1) // 2


def delta(p: int) -> int:
    """isqrt(2p) minus the closed-form maximal cardinality; always 0 or 1."""
    d = math.isqrt(2 * p) - max_zero_free_card_formula(p)
    assert d in (0, 1), f"delta({p}) = {d}"
    return d


def triangular_s(p: int) -> int:
    """m(m+1)/2 for m = isqrt(2p), exactly."""
    m = math.isqrt(2 * p)
    return m * (m + 1) // 2
