from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import F2, F3, FIELDS, QQ, SMALL_TABLE, elements
from pontryagin.algebra import (MIXED, ZERO, Element, FieldTag, GeneratorTable, HomogeneityError,
                                IncompatibleContextError, ParseError, add, degree, graded_commutator,
                                mul, parse_element, words_of_degree)

T2 = GeneratorTable(("t", "x1", "x2"), (1, 1, 2))
TQ = GeneratorTable(("t", "x3"), (1, 3))


def el(text, table=T2, field=F2):
    return parse_element(text, table, field)


# -- fields and tables --------------------------------------------------------------

def test_field_parse_and_names():
    assert FieldTag.parse("F2") == F2
    assert FieldTag.parse("Q").p is None
    assert FieldTag.parse("F7").name == "F7"
    with pytest.raises(ValueError):
        FieldTag(4)
    with pytest.raises(ValueError):
        FieldTag.parse("R")


def test_prime_field_representatives():
    assert F3(-1) == 2
    assert F3(Fraction(1, 2)) == 2
    assert F3.inverse(2) == 2
    with pytest.raises(ZeroDivisionError):
        F3.inverse(0)


def test_table_rejects_duplicates_and_bad_degrees():
    with pytest.raises(ValueError):
        GeneratorTable(("a", "a"), (1, 1))
    with pytest.raises(ValueError):
        GeneratorTable(("a",), (0,))


def test_word_degree_and_empty_word():
    assert T2.word_degree(T2.word("x1", "x2", "t")) == 4
    assert T2.word_degree(()) == 0
    assert T2.format_word(()) == "1"


def test_words_of_degree_counts():
    # letters of degree (1,1,2): b_d = 2 b_{d-1} + b_{d-2}
    counts = [len(words_of_degree(T2, d)) for d in range(6)]
    assert counts == [1, 2, 5, 12, 29, 70]


# -- operations ---------------------------------------------------------------------

def test_add_gives_commutator_class():
    w1 = el("x1*t") + el("t*x1")
    assert w1 == el("x1*t + t*x1")
    assert len(w1) == 2


def test_add_zero_and_exact_rationals():
    e = el("x1*t")
    assert e + Element.zero(F2, T2) == e
    third = parse_element("2/3*t + 1/3*t", TQ, QQ)
    assert third == parse_element("t", TQ, QQ)


def test_mismatched_context_is_an_error():
    with pytest.raises(IncompatibleContextError):
        add(el("t"), parse_element("t", TQ, F2))
    with pytest.raises(IncompatibleContextError):
        mul(el("t"), el("t", T2, F3))


def test_mul_is_free_concatenation():
    assert mul(el("t"), el("x1")) == el("t*x1")
    assert el("(x1+t)*(x1+t)") == el("x1*x1 + x1*t + t*x1 + t*t")
    minus = parse_element("-x3", TQ, QQ) * parse_element("t", TQ, QQ)
    assert minus == parse_element("-x3*t", TQ, QQ)


def test_graded_commutator_values():
    assert graded_commutator(el("x1"), el("t")) == el("x1*t + t*x1")
    x3, t = parse_element("x3", TQ, QQ), parse_element("t", TQ, QQ)
    assert graded_commutator(x3, t) == parse_element("x3*t + t*x3", TQ, QQ)
    a2 = el("x2")
    assert graded_commutator(a2, a2) == 0
    b = parse_element("x2", T2, F3)
    assert graded_commutator(b, b) == 0  # even degree: ab - ba
    odd = parse_element("t", TQ, QQ)
    assert graded_commutator(odd, odd) == (odd * odd).scale(2)


def test_graded_commutator_needs_homogeneous_input():
    with pytest.raises(HomogeneityError):
        graded_commutator(el("t + x2"), el("t"))


def test_degree_markers():
    assert degree(el("x1*t + t*x1")) == 2
    assert degree(Element.one(F2, T2)) == 0
    assert degree(el("t + x2")) == MIXED
    assert degree(Element.zero(F2, T2)) == ZERO


def test_canonical_printing_order():
    assert str(el("x2 + t*x1 + x1*t")) == "t*x1 + x1*t + x2"
    assert str(parse_element("t*x3 - 1/2*x3*t", TQ, QQ)) == "t*x3 - 1/2*x3*t"


@pytest.mark.parametrize("text", ["x1*", "y1", "(t", "t + + x1", "t*x1)", "1/0*t"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        el(text)


def test_powers_and_parentheses():
    assert el("(t + x1)^2") == el("t*t + t*x1 + x1*t + x1*x1")
    assert el("x1^0") == Element.one(F2, T2)


# -- properties ---------------------------------------------------------------------

field_st = st.sampled_from(FIELDS)


@given(st.data())
def test_mul_associative_and_distributive(data):
    f = data.draw(field_st)
    a, b, c = (data.draw(elements(f)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(st.data())
def test_commutator_antisymmetry(data):
    f = data.draw(field_st)
    da, db = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
    a = data.draw(elements(f, degree=da))
    b = data.draw(elements(f, degree=db))
    if a.degree() == ZERO or b.degree() == ZERO:
        return
    lhs = graded_commutator(a, b)
    rhs = graded_commutator(b, a).scale(-f.sign(da * db))
    assert lhs == rhs


@given(st.data())
def test_print_parse_round_trip(data):
    f = data.draw(field_st)
    e = data.draw(elements(f))
    assert parse_element(str(e), SMALL_TABLE, f) == e


@given(st.data())
def test_characteristic_kills_multiples(data):
    f = data.draw(st.sampled_from([F2, F3, FieldTag(5)]))
    e = data.draw(elements(f))
    assert e.scale(f.p) == 0
    total = Element.zero(f, SMALL_TABLE)
    for _ in range(f.p):
        total = total + e
    assert total == 0
