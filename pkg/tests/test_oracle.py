import random

import pytest
from hypothesis import given, strategies as st

from conftest import F2, F3, F5, QQ
from pontryagin.algebra import Element, GeneratorTable, HomogeneityError, random_element
from pontryagin.oracle import (DegreeSlice, ResourceCapError, check_rules, count_words, ideal_contains,
                               quotient_dimension, quotient_dimensions, verify_basis)
from pontryagin.presentations import KOSZUL, PRESETS, Presentation, free_algebra, glambda, preset
from pontryagin.series import rational_series


def test_low_degree_ranks():
    p = glambda(F2)
    assert quotient_dimension(p, 0) == 1
    assert quotient_dimension(p, 1) == 3
    assert quotient_dimension(p, 2) == 6


def test_two_oracles_agree_through_degree_eight():
    closed = rational_series([1, 3, 5, 7, 7, 5, 3, 1], [1, 0, -1, -1, -1], 8)
    # (1+q)^3 (1+q^2)^2 expanded by hand: 1,3,5,7,7,5,3,1
    assert quotient_dimensions(glambda(F2), 8) == closed.to_list()
    assert closed.to_list()[3:5] == [11, 17]


@pytest.mark.parametrize("field", [F3, F5, QQ])
def test_odd_fields_match(field):
    assert quotient_dimensions(glambda(field), 16) == quotient_dimensions(glambda(QQ), 16)


def test_rational_series_values():
    assert quotient_dimensions(glambda(QQ), 12) == [1, 1, 0, 2, 3, 1, 1, 3, 3, 1, 1, 3, 3]


def test_ideal_membership():
    p = glambda(F2)
    assert ideal_contains(p, p.element("t*t"))
    assert not ideal_contains(p, p.element("x1*t + t*x1"))
    assert ideal_contains(p, p.element("x1*t + t*x1 + x1*t + t*x1"))
    assert ideal_contains(p, p.element("y1*x2*t + x2*t*y1"))
    with pytest.raises(HomogeneityError):
        ideal_contains(p, p.element("t + x2"))


def test_resource_cap():
    with pytest.raises(ResourceCapError, match="--max-words"):
        quotient_dimension(glambda(F2), 12)
    assert quotient_dimension(glambda(F2), 4, max_words=1000) == 17


def test_word_counts():
    t = GeneratorTable(("t", "x1", "x2", "y1", "y2"), (1, 1, 2, 1, 2))
    assert [count_words(t, d) for d in range(9)] == [1, 3, 11, 39, 139, 495, 1763, 6279, 22363]


def test_verify_basis_reports():
    from pontryagin.rewrite import compile_presentation
    for field, dmax in ((F2, 7), (QQ, 12), (F3, 12)):
        p = glambda(field)
        rs = compile_presentation(p)
        rep = verify_basis(p, rs, dmax)
        assert rep.ok and len(rep) == dmax + 1
        assert check_rules(rs).ok


def test_verify_basis_catches_a_wrong_system():
    from pontryagin.rewrite import RewriteRule, RewriteSystem, compile_presentation
    p = glambda(F2)
    good = compile_presentation(p)
    # drop the rule x2*x1 -> x1*x2: too many irreducible words from degree 3 on
    rules = [r for r in good.rules if good.table.format_word(r.lhs) != "x2*x1"]
    broken = RewriteSystem(p, good.table, rules, good.embed_map)
    rep = verify_basis(p, broken, 4)
    assert not rep.ok
    assert rep.failures[0].degree == 3


def test_free_algebra_recurrence():
    w = free_algebra([("w1", 2), ("w2", 3), ("w3", 4)], F2)
    c = quotient_dimensions(w, 12)
    assert all(c[d] == c[d - 2] + c[d - 3] + c[d - 4] for d in range(4, 13))


def test_every_preset_is_connected():
    for name in PRESETS:
        for field in (F2, QQ):
            obj = preset(name, field)
            if isinstance(obj, Presentation):
                assert quotient_dimension(obj, 0) == 1


def test_sign_policy_does_not_change_dimensions():
    assert quotient_dimensions(glambda(QQ, KOSZUL), 12) == quotient_dimensions(glambda(QQ), 12)


def test_slice_vectors_need_matching_context():
    sl = DegreeSlice(glambda(F2), 2)
    with pytest.raises(ValueError):
        sl.vector(glambda(QQ).element("t*t"))
    with pytest.raises(ValueError):
        sl.vector(glambda(F2).element("t"))


# -- properties -----------------------------------------------------------------------

def random_presentation(rng: random.Random, field) -> Presentation:
    n = rng.randint(2, 3)
    table = GeneratorTable(tuple("abc"[:n]), tuple(rng.randint(1, 2) for _ in range(n)))
    rels = []
    for _ in range(rng.randint(1, 3)):
        r = random_element(rng, table, field, rng.randint(2, 3), rng.randint(1, 3))
        if r:
            rels.append(r)
    return Presentation(field, table, tuple(rels))


@given(st.integers(0, 10**6), st.sampled_from([F2, F3, QQ]))
def test_pivot_strategy_does_not_change_rank(seed, field):
    p = random_presentation(random.Random(seed), field)
    for d in range(6):
        assert DegreeSlice(p, d, pivot="max").rank == DegreeSlice(p, d, pivot="min").rank


@given(st.integers(0, 10**6), st.sampled_from([F2, F3, QQ]))
def test_adding_a_relation_never_increases_dimensions(seed, field):
    rng = random.Random(seed)
    p = random_presentation(rng, field)
    extra = random_element(rng, p.table, field, rng.randint(1, 3), 2)
    if not extra:
        return
    q = Presentation(field, p.table, p.relations + (extra,))
    for d in range(6):
        assert DegreeSlice(q, d).dimension <= DegreeSlice(p, d).dimension


@given(st.integers(0, 10**6))
def test_independent_count_matches_dimension_of_basis(seed):
    rng = random.Random(seed)
    p = glambda(F2)
    sl = DegreeSlice(p, 3)
    words = list(sl.words)
    rng.shuffle(words)
    elems = [Element.from_word(F2, p.table, w) for w in words]
    assert sl.independent_count(elems) == sl.dimension
