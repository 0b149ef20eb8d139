"""Constructions, decomposition, gaps, and the structure-row classifier."""

import pytest

from zerofree.core import (
    PrimeModulus,
    ResidueSet,
    delta,
    dilate_set,
    max_zero_free_card_formula,
    negate_set,
)
from zerofree.engine import (
    find_normalizing_dilate,
    is_zero_free,
    oracle_max_zero_free,
    subset_sums_integer,
)
from zerofree.structure import (
    STRUCTURE_ROWS,
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
from zerofree.sweeps import primes_in_range

P113 = PrimeModulus(113)
REFERENCE_113 = ResidueSet(P113, (-3, 1, *range(4, 16)))


def test_is_special_prime():
    assert is_special_prime(113)  # triangular 120 = 113 + 7
    assert not is_special_prime(97)
    assert not is_special_prime(127)


def test_construct_extremal():
    A = construct_extremal(P113)
    assert set(A.elements) == {111, 1} | set(range(3, 15))
    assert A.card == 14
    assert is_zero_free(A)

    B = construct_extremal(PrimeModulus(7))
    assert set(B.elements) == {5, 1, 3}
    assert is_zero_free(B)

    with pytest.raises(ValueError):
        construct_extremal(PrimeModulus(5))


def test_construct_extremal_large():
    # k(10007) = 140: 140*141/2 = 9870 <= 10008 while 141*142/2 = 10011 > 10008.
    m = PrimeModulus(10_007)
    assert max_zero_free_card_formula(10_007) == 140
    assert 140 * 141 // 2 <= 10_008 < 141 * 142 // 2
    A = construct_extremal(m)
    assert A.card == 140
    assert is_zero_free(A)


def test_construct_interval_set():
    A = construct_interval_set(P113)
    assert A.elements == tuple(range(1, 15))
    assert sum(A.magnitudes()) == 105
    assert is_zero_free(A)

    assert construct_interval_set(PrimeModulus(7)).elements == (1, 2)
    assert construct_interval_set(PrimeModulus(5)).elements == (1, 2)

    big = construct_interval_set(PrimeModulus(1009))
    assert big.elements == tuple(range(1, 44))
    assert sum(big.magnitudes()) == 946
    assert is_zero_free(big)

    with pytest.raises(ValueError):
        construct_interval_set(PrimeModulus(3))


def test_decompose_examples():
    dec = decompose(REFERENCE_113)
    assert dec.neg_part.elements == (110,)
    assert dec.pos_part.elements == (1, *range(4, 16))
    assert dec.s_double_prime == 115 == 113 + 2
    assert dec.neg_weight == 3

    flat = decompose(ResidueSet(P113, range(1, 15)))
    assert flat.neg_part.card == 0 and flat.s_double_prime == 105

    ext = decompose(construct_extremal(P113))
    assert ext.neg_part.elements == (111,) and ext.s_double_prime == 103

    # zero-free sets never hold a residue and its negation, so the positive
    # part avoids the mirrored negative part
    for d in (dec, ext):
        assert d.neg_part.card + d.pos_part.card == 14
        assert not (set(d.pos_part.elements) & set(negate_set(d.neg_part).elements))


def test_decompose_with_dilate():
    u = 10
    dilated = dilate_set(REFERENCE_113, u)
    dec = decompose(dilated, pow(u, -1, 113))
    assert dec.d == pow(u, -1, 113)
    assert dec.s_double_prime == 115 and dec.neg_weight == 3


def test_gap_sequence():
    assert gap_sequence(REFERENCE_113, 20).gaps == (2, 16, 17, 18, 19, 20)
    assert gap_sequence(ResidueSet(P113, range(1, 15)), 16).gaps == (15, 16)
    assert gap_sequence(construct_extremal(P113), 16).gaps == (15, 16)
    assert gap_sequence(REFERENCE_113, 20).g0 == 2
    assert gap_sequence(REFERENCE_113, 1).g0 is None
    with pytest.raises(ValueError):
        gap_sequence(REFERENCE_113, 57)


# Independent second transcription of the 19 classification rows:
# (small part, delta or None, g0 relation, g0 value, extras, interval start,
# excluded constants, excluded offsets).  Row 12's negative block is written
# as plain integers, like its neighbours; the source table typesets it
# differently, which the packaged data intentionally normalizes.
ROWS_EXPECTED = {
    1: ({1, 2, 3, 4}, None, ">=", 5, (), 1, (), ()),
    2: ({-1, 2, 3, 4}, None, ">=", 5, (-1,), 1, (), ()),
    3: ({1, -2, 3, 4}, None, ">=", 5, (-2, -1), 1, (), ()),
    4: ({1, 2, 3}, 1, "==", 4, (), 1, (), ()),
    5: ({-1, 2, 3}, 1, "==", 4, (-1,), 1, (), ()),
    6: ({1, -2, 3}, 1, "==", 4, (-2, -1), 1, (), ()),
    7: ({-1, 2, -3}, 1, "==", 4, (-4, -3, -2, -1), 1, (), ()),
    8: ({1, 2, 4}, 1, "==", 3, (), 1, (), ()),
    9: ({-1, 2, 4}, 1, "==", 3, (-1,), 1, (), ()),
    10: ({1, -2, 4}, 1, "==", 3, (-2, -1), 1, (), ()),
    11: ({1, 2, -4}, 1, "==", 3, (-4, -3, -2, -1), 1, (), ()),
    12: ({-1, -2, 4}, 1, "==", 3, (-3, -2, -1), 1, (), ()),
    13: ({1, 3, 4}, 1, "==", 2, (), 1, (2,), (2,)),
    14: ({-1, 3, 4}, 1, "==", 2, (-1,), 1, (1,), (2,)),
    15: ({1, -3, 4}, 1, "==", 2, (-3, -2), 1, (), (2,)),
    16: ({2, 3, 4}, 1, "==", 1, (), 2, (), (1,)),
    17: ({-2, 3, 4}, 1, "==", 1, (-2, -1), 1, (), (1,)),
    18: ({2, -3, 4}, 1, "==", 1, (-3, -1), 1, (), (1,)),
    19: ({2, 3, -4}, 1, "==", 1, (-4, -2, -1), 1, (), (1,)),
}


def test_structure_rows_transcription():
    assert len(STRUCTURE_ROWS) == 19
    for row in STRUCTURE_ROWS:
        small, d, rel, g0, extras, start, const, offs = ROWS_EXPECTED[row.row_id]
        assert row.small_part == frozenset(small), row.row_id
        assert row.delta_constraint == d, row.row_id
        assert row.g0 == g0 and row.g0_is_minimum == (rel == ">="), row.row_id
        shape = row.sharp_shape
        assert shape.extras == extras, row.row_id
        assert shape.interval_start == start, row.row_id
        assert shape.excluded_constants == const, row.row_id
        assert shape.excluded_offsets == offs, row.row_id
    assert [r.row_id for r in STRUCTURE_ROWS] == list(range(1, 20))
    # every small part is distinct, so a match is unique
    assert len({r.small_part for r in STRUCTURE_ROWS}) == 19


def test_small_signed_part():
    assert small_signed_part(REFERENCE_113) == {1, -3, 4}
    assert small_signed_part(construct_extremal(P113)) == {1, -2, 3, 4}
    assert small_signed_part(ResidueSet(P113, range(5, 19))) == frozenset()


def test_classify_reference_sets():
    c = classify_structure(REFERENCE_113)
    assert (c.matched, c.row_id, c.orientation) == (True, 15, "identity")

    c_neg = classify_structure(negate_set(REFERENCE_113))
    assert (c_neg.matched, c_neg.row_id, c_neg.orientation) == (True, 15, "negated")

    assert classify_structure(construct_extremal(P113)).row_id == 3
    assert classify_structure(ResidueSet(P113, range(1, 15))).row_id == 1


def test_classify_rejects_non_maximal():
    with pytest.raises(ValueError, match="largest"):
        classify_structure(ResidueSet(P113, range(1, 6)))


def test_classify_no_match_is_structured():
    c = classify_structure(ResidueSet(P113, range(5, 19)))
    assert not c.matched
    assert c.failures == ("identity:small_part", "negated:small_part")


def test_predicted_sharp_examples():
    rows = {r.row_id: r for r in STRUCTURE_ROWS}
    assert predicted_sharp(rows[1], 105) == frozenset(range(1, 106))
    assert predicted_sharp(rows[15], 115) == frozenset(
        ({-3, -2} | set(range(1, 116))) - {113}
    )
    assert predicted_sharp(rows[16], 20) == frozenset(set(range(2, 21)) - {19})
    with pytest.raises(ValueError):
        predicted_sharp(rows[13], 2)


def test_classification_report_reference_sets():
    rep = classification_report(REFERENCE_113)
    assert rep.sharp_match and rep.missing == () and rep.extra == ()
    assert rep.to_text() == (
        "row=15 orientation=identity s_double_prime=115 sharp_match=true missing= extra="
    )
    assert classification_report(construct_extremal(P113)).to_text() == (
        "row=3 orientation=identity s_double_prime=103 sharp_match=true missing= extra="
    )
    assert classification_report(ResidueSet(P113, range(1, 15))).to_text() == (
        "row=1 orientation=identity s_double_prime=105 sharp_match=true missing= extra="
    )
    missed = classification_report(ResidueSet(P113, range(5, 19)))
    assert missed.to_text() == "row=none failures=identity:small_part,negated:small_part"
    assert missed.sharp_match is None


def test_constructions_classify_and_match_sharp():
    for p in primes_in_range(11, 600):
        m = PrimeModulus(p)
        for A in (construct_extremal(m), construct_interval_set(m)):
            if A.card != max_zero_free_card_formula(p):
                continue  # the interval set is one short when delta(p) = 1
            rep = classification_report(A)
            if rep.classification.matched:
                assert rep.sharp_match, (p, rep.to_text())


def test_oracle_witnesses_normalize_classify_and_obey_bounds():
    for p in primes_in_range(3, 47):
        m = PrimeModulus(p)
        res = oracle_max_zero_free(m)
        assert res.conclusive
        norm = find_normalizing_dilate(res.witness)
        B = dilate_set(res.witness, norm.d)
        dec = decompose(B)
        d_p = delta(p)
        assert dec.neg_weight <= 2 * (1 + d_p), p
        assert dec.s_double_prime <= p - 1 + 3 * d_p, p
        if dec.s_double_prime > p - 1:
            assert is_special_prime(p), p
        if res.max_card == max_zero_free_card_formula(p):
            rep = classification_report(B)
            if rep.classification.matched:
                assert rep.sharp_match, (p, rep.to_text())
                computed = subset_sums_integer(B.signed_values()).to_set()
                assert computed == set(rep.computed)
