"""Family constructions: sizes, membership, closure views."""

import pytest

from brauerkit import (
    FAMILY_IDS,
    adjacent_contraction,
    as_closure,
    bell_number,
    cardinality_table,
    catalan,
    closure,
    construct,
    double_factorial_odd,
    identity,
    involution_count,
    membership,
    partial_identity,
    rotation,
)
from brauerkit.errors import BadDegree, BudgetExceeded

from oracles import (
    oracle_bell,
    oracle_catalan,
    oracle_double_factorial_odd,
    oracle_involutions,
    oracle_motzkin,
    oracle_noncrossing_perfect,
    oracle_partial_matchings,
    oracle_perfect_matchings,
    oracle_set_partitions,
)


# ---------------------------------------------------------------------------
# counting helpers vs independent recursions


def test_counting_helpers_match_oracles():
    for n in range(0, 9):
        assert catalan(n) == oracle_catalan(n)
        assert double_factorial_odd(n) == oracle_double_factorial_odd(n)
    for m in range(0, 12):
        assert involution_count(m) == oracle_involutions(m)
        assert bell_number(m) == oracle_bell(m)


# ---------------------------------------------------------------------------
# element sets vs enumeration oracles


def test_brauer_elements_match_oracle_sets():
    for n in range(1, 5):
        inst = construct("B", n)
        assert inst.elements == frozenset(oracle_perfect_matchings(n))
        assert inst.size == double_factorial_odd(n)


def test_jones_elements_are_the_noncrossing_matchings():
    for n in range(1, 7):
        inst = construct("J", n)
        assert inst.elements == frozenset(oracle_noncrossing_perfect(n))
        assert inst.size == catalan(n)


def test_partial_brauer_elements_match_oracle_sets():
    for n in range(1, 4):
        inst = construct("PB", n)
        assert inst.elements == frozenset(oracle_partial_matchings(n))
        assert inst.size == involution_count(2 * n)


def test_planar_partial_sizes_are_motzkin():
    for n in range(1, 5):
        assert construct("PJ", n).size == oracle_motzkin(2 * n)


def test_partition_elements_match_oracle_sets():
    for n in (1, 2):
        inst = construct("C", n)
        assert inst.elements == frozenset(oracle_set_partitions(n))
    assert construct("C", 3).size == oracle_bell(6)


def test_symmetric_sizes():
    assert [construct("SYM", n).size for n in (1, 2, 3, 4)] == [1, 2, 6, 24]


# ---------------------------------------------------------------------------
# frozen sizes for the annular families (no classical closed form is used)


def test_annular_family_sizes():
    assert [construct("A", n).size for n in range(1, 7)] == [1, 3, 12, 40, 180, 625]
    assert [construct("PA", n).size for n in range(1, 5)] == [2, 10, 73, 589]
    assert [construct("EA", n).size for n in (2, 4, 6)] == [2, 22, 325]


def test_annular_families_agree_with_membership_filters():
    n = 4
    pb = construct("PB", n).elements
    assert construct("A", n).elements == {a for a in pb if membership("A", a)}
    assert construct("PA", n).elements == {a for a in pb if membership("PA", a)}
    assert construct("EA", n).elements == {a for a in pb if membership("EA", a)}


def test_even_annular_rejects_odd_degree():
    with pytest.raises(BadDegree):
        construct("EA", 3)


# ---------------------------------------------------------------------------
# guard rails


def test_partition_family_hard_cap():
    with pytest.raises(BudgetExceeded):
        construct("C", 6)


def test_budget_precheck_blocks_blowups():
    with pytest.raises(BudgetExceeded):
        construct("B", 5, budget=100)
    with pytest.raises(BudgetExceeded):
        construct("PB", 4, budget=50)


def test_degree_and_family_validation():
    with pytest.raises(BadDegree):
        construct("B", 0)
    with pytest.raises(KeyError):
        construct("XX", 3)
    with pytest.raises(KeyError):
        membership("XX", identity(2))


def test_cardinality_table():
    assert cardinality_table("J", 6) == {n: catalan(n) for n in range(1, 7)}


def test_family_ids_all_construct():
    for fam in FAMILY_IDS:
        n = 2 if fam != "EA" else 2
        assert construct(fam, n).size >= 1


# ---------------------------------------------------------------------------
# membership spot checks


def test_membership_spot_checks():
    assert membership("B", rotation(3))
    assert not membership("B", partial_identity(3, 1))
    assert membership("PA", partial_identity(3, 1))
    assert membership("J", adjacent_contraction(4, 1))
    assert not membership("J", rotation(4))
    assert membership("SYM", rotation(5))
    assert not membership("SYM", adjacent_contraction(5, 1))


# ---------------------------------------------------------------------------
# closure views


def test_as_closure_generated_families_rebuild():
    inst = construct("B", 3)
    sg = as_closure(inst)
    assert frozenset(sg.elements) == inst.elements
    assert sg.identity_id is not None


def test_as_closure_verified_generators_for_pb():
    # For partial matchings a small generating set is verified and kept.
    inst = construct("PB", 3)
    sg = as_closure(inst)
    assert frozenset(sg.elements) == inst.elements
    assert len(sg.multipliers) < inst.size


def test_as_closure_fallback_for_pa():
    # The analogous three-element candidate set fails for the annular
    # partial family, so the closure view holds every element as a
    # multiplier.
    inst = construct("PA", 3)
    sg = as_closure(inst)
    assert frozenset(sg.elements) == inst.elements
    assert len(sg.multipliers) == inst.size


def test_rotated_planar_candidate_set_is_proper():
    n = 3
    cand = closure(
        [rotation(n), adjacent_contraction(n, 1), partial_identity(n, 1)],
        include_identity=True,
    )
    assert cand.size == 64
    assert frozenset(cand.elements) < construct("PA", n).elements
