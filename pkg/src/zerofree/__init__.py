"""Computing with zero-free subsets of Z/pZ, p an odd prime.

A subset of Z/pZ is zero-free when no nonempty subset of it sums to 0.
This package certifies zero-freeness by bitset dynamic programming (mod p
and over the integers), builds the extremal constructions, normalizes sets
by exhaustive dilate search, classifies largest sets against the known
structure rows, and runs prime-range verification sweeps with CSV/JSON
reports.
"""

from .core import (
    PrimeModulus,
    ResidueSet,
    SignedRep,
    WeightSummary,
    abs_p,
    canonical_rep,
    delta,
    dilate_set,
    is_prime,
    max_zero_free_card_formula,
    negate_set,
    triangular_s,
    weight_summary,
)
from .engine import (
    DEFAULT_ORACLE_NODE_BUDGET,
    NormalizationResult,
    OracleResult,
    SumBitsetModP,
    SumSetInteger,
    find_normalizing_dilate,
    interval_extend,
    is_incomplete,
    is_zero_free,
    mod_p_image,
    oracle_max_zero_free,
    pair_sum_cover,
    subset_sums_integer,
    subset_sums_mod_p,
)
from .structure import (
    STRUCTURE_ROWS,
    Classification,
    ClassificationReport,
    Decomposition,
    GapSequence,
    SharpShape,
    StructureRow,
    classification_report,
    classify_structure,
    construct_extremal,
    construct_interval_set,
    decompose,
    gap_sequence,
    is_special_prime,
    predicted_sharp,
    small_signed_part,
)
from .sweeps import (
    DEFAULT_ORACLE_CUTOFF,
    SweepRecord,
    SweepReport,
    check_prime,
    primes_in_range,
    sweep,
    write_report,
)
from .cli import SetSpec, SetSpecError, format_set_spec, parse_set_spec

__version__ = "0.1.0"
