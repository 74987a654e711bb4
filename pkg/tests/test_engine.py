"""Semigroup engine: closures, Green data, ideals, quotients, embeddings."""

import random

import numpy as np
import pytest

from brauerkit import (
    AbstractSemigroup,
    adjacent_contraction,
    as_closure,
    closure,
    closure_from_elements,
    construct,
    contraction,
    diagram,
    double_contraction,
    essential_depth,
    generated_subsemigroup,
    green,
    idempotent_generated,
    idempotents,
    identity,
    index_period,
    is_aperiodic,
    is_inverse,
    local_monoid,
    pad_embedding,
    principal_ideal,
    rees_quotient,
    rotation,
    singular_part,
    units,
)
from brauerkit.engine import SemigroupClosure, h_class_of, l_leq, t1_chain
from brauerkit.errors import (
    BadDegree,
    BudgetExceeded,
    NotAMonoid,
    NotAnIdeal,
    NotIdempotent,
)


def _b(n):
    return as_closure(construct("B", n))


def _j(n):
    return as_closure(construct("J", n))


# ---------------------------------------------------------------------------
# closure construction


def test_closure_reaches_whole_brauer_monoid():
    assert _b(3).size == 15
    assert _j(4).size == 14


def test_closure_identity_handling():
    e = contraction(3, 1, 2)
    no_id = closure([e])
    assert no_id.size == 1 and no_id.identity_id is None
    with_id = closure([e], include_identity=True)
    assert with_id.size == 2 and with_id.identity_id == 0


def test_closure_deduplicates_generators():
    e = contraction(3, 1, 2)
    sg = closure([e, e, e])
    assert len(sg.multipliers) == 1


def test_closure_budget():
    with pytest.raises(BudgetExceeded):
        construct("B", 4, budget=10)


def test_closure_word_reconstruction():
    sg = closure([rotation(3), contraction(3, 1, 2)], include_identity=True)
    for i in range(sg.size):
        p, let = int(sg.parent[i]), int(sg.letter[i])
        if p < 0:
            expected = identity(3) if let < 0 else sg.multipliers[let]
        else:
            expected = sg.elements[p] * sg.multipliers[let]
        assert sg.elements[i] == expected


def test_product_table_and_left_cayley_agree_with_diagrams():
    sg = _b(3)
    table = sg.product_table()
    rng = random.Random(3)
    for _ in range(200):
        i, j = rng.randrange(sg.size), rng.randrange(sg.size)
        assert table[i, j] == sg.index[sg.elements[i] * sg.elements[j]]
    lc = sg.left_cayley
    for gi, g in enumerate(sg.multipliers):
        for i in range(sg.size):
            assert lc[i, gi] == sg.index[g * sg.elements[i]]


def test_closure_from_elements_round_trip():
    sg = _b(3)
    rebuilt = closure_from_elements(sg.elements)
    assert rebuilt.element_set() == sg.element_set()
    assert rebuilt.identity_id == rebuilt.index[identity(3)]


def test_closure_from_elements_rejects_open_sets():
    with pytest.raises(ValueError):
        closure_from_elements([rotation(4)])  # missing the higher powers


def test_closure_from_elements_size_guard():
    elems = list(construct("B", 3).elements)
    with pytest.raises(BudgetExceeded):
        closure_from_elements(elems, size_limit=5)


# ---------------------------------------------------------------------------
# Green's relations


def test_green_data_on_brauer_4():
    g = green(_b(4))
    by_size = sorted(len(m) for m in g.j_members)
    assert by_size == [9, 24, 72]
    assert sorted(g.j_subgroup_order) == [1, 2, 24]
    assert sorted(g.j_regular) == [True, True, True]
    assert sorted(g.j_essential) == [False, True, True]
    assert g.num_j == 3


def test_green_counts_are_consistent():
    sg = _j(4)
    g = green(sg)
    assert sum(len(m) for m in g.j_members) == sg.size
    assert g.num_h >= g.num_j


def test_h_class_of_identity_is_unit_group():
    sg = _b(4)
    assert sorted(h_class_of(sg, sg.identity_id)) == units(sg)
    assert len(units(sg)) == 24


def test_units_requires_identity():
    sg = closure([contraction(3, 1, 2)])
    with pytest.raises(NotAMonoid):
        units(sg)


def test_singular_part_complements_units():
    sg = _b(3)
    assert sorted(set(units(sg)) | set(singular_part(sg))) == list(range(sg.size))
    assert len(singular_part(sg)) == sg.size - 6


def test_index_period():
    sg = _b(4)
    assert index_period(sg, sg.index[rotation(4)]) == (1, 4)
    assert index_period(sg, sg.index[contraction(4, 1, 2)]) == (1, 1)


def test_aperiodicity():
    assert is_aperiodic(_j(5))
    assert not is_aperiodic(_b(3))


# ---------------------------------------------------------------------------
# subsemigroups and idempotents


def test_generated_subsemigroup_matches_standalone_closure():
    sg = _j(4)
    seeds = [sg.index[adjacent_contraction(4, 1)], sg.index[adjacent_contraction(4, 2)]]
    inner = generated_subsemigroup(sg, seeds)
    standalone = closure([adjacent_contraction(4, 1), adjacent_contraction(4, 2)])
    assert {sg.elements[i] for i in inner} == standalone.element_set()


def test_idempotents_by_definition():
    sg = _b(3)
    assert idempotents(sg) == [i for i in range(sg.size) if sg.mul(i, i) == i]
    assert len(idempotents(sg)) == 10


def test_idempotent_generated_on_annular_5():
    sg = as_closure(construct("A", 5))
    span = idempotent_generated(sg)
    assert len(idempotents(sg)) == 116
    assert len(span) == 176
    assert set(singular_part(sg)) <= set(span)


# ---------------------------------------------------------------------------
# ideals, local monoids, quotients


def test_principal_ideal_is_rank_filter():
    sg = _b(4)
    e_id = sg.index[contraction(4, 1, 2)]
    ideal = principal_ideal(sg, e_id)
    assert len(ideal) == 81
    assert ideal == sorted(i for i in range(sg.size) if sg.elements[i].rank <= 2)


def test_local_monoid_at_end_cap_is_padded_smaller_monoid():
    sg = _b(4)
    e = adjacent_contraction(4, 3)
    lm = local_monoid(sg, sg.index[e])
    assert lm.elements[lm.identity_id] == e
    padded = {pad_embedding(d, 4) for d in construct("B", 2).elements}
    assert lm.element_set() == padded


def test_local_monoid_requires_idempotent():
    sg = _b(4)
    with pytest.raises(NotIdempotent):
        local_monoid(sg, sg.index[rotation(4)])


def test_rees_quotient_of_brauer_4():
    sg = _b(4)
    ideal = principal_ideal(sg, sg.index[contraction(4, 1, 2)])
    q = rees_quotient(sg, ideal)
    assert q.size == 24 + 1
    assert q.zero == 24
    for x in range(q.size):
        assert q.mul(x, q.zero) == q.zero
        assert q.mul(q.zero, x) == q.zero
    g = green(q)
    assert g.num_j == 2
    assert not is_aperiodic(q)


def test_rees_quotient_rejects_non_ideals():
    sg = _b(4)
    with pytest.raises(NotAnIdeal):
        rees_quotient(sg, units(sg))
    with pytest.raises(NotAnIdeal):
        rees_quotient(sg, [])


def test_rees_quotient_of_whole_semigroup_is_trivial():
    sg = _j(3)
    q = rees_quotient(sg, list(range(sg.size)))
    assert q.size == 1
    assert is_aperiodic(q)


# ---------------------------------------------------------------------------
# inverse test, left order, chain witness


def test_is_inverse():
    assert is_inverse(_b(2))
    assert not is_inverse(_b(4))
    assert is_inverse(as_closure(construct("SYM", 3)))


def test_left_order_basics():
    sg = _j(3)
    g1 = sg.index[adjacent_contraction(3, 1)]
    assert l_leq(sg, g1, g1)
    assert l_leq(sg, g1, sg.identity_id)
    assert not l_leq(sg, sg.identity_id, g1)


def test_t1_chain_negative_on_jones_3():
    assert t1_chain(_j(3)) is None


def test_t1_chain_positive_case():
    n = 6
    z2 = rotation(n) * rotation(n)
    g5 = adjacent_contraction(n, 5)
    sg = closure(
        [z2, g5, adjacent_contraction(n, 6) * g5, double_contraction(n)],
        include_identity=True,
    )
    chain = t1_chain(sg)
    assert chain is not None
    for a, b in zip(chain, chain[1:]):
        assert l_leq(sg, a, b)


# ---------------------------------------------------------------------------
# padding


def test_pad_embedding_blocks():
    img = pad_embedding(contraction(2, 1, 2), 4)
    assert img == diagram(4, [[1, 2], [-1, -2], [3, 4], [-3, -4]])
    with pytest.raises(BadDegree):
        pad_embedding(identity(2), 5)


def test_pad_embedding_is_multiplicative_and_injective():
    b2 = construct("B", 2).sorted_elements()
    images = [pad_embedding(d, 4) for d in b2]
    assert len(set(images)) == len(b2)
    for a in b2:
        for b in b2:
            assert pad_embedding(a, 4) * pad_embedding(b, 4) == pad_embedding(a * b, 4)


# ---------------------------------------------------------------------------
# essential depth


def test_essential_depth_values():
    assert essential_depth(_j(4)) == 0
    assert essential_depth(_b(2)) == 1
    assert essential_depth(_b(4)) == 2
    assert essential_depth(as_closure(construct("A", 4))) == 2


def test_abstract_semigroup_from_table():
    table = [[0, 1], [1, 0]]  # the two-element group
    ab = AbstractSemigroup(table)
    assert ab.size == 2
    assert ab.idempotent_ids() == (0,)
    assert index_period(ab, 1) == (1, 2)
    assert not is_aperiodic(ab)
