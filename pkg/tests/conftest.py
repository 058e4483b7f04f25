import re
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from pontryagin.algebra import Element, FieldTag, GeneratorTable
from pontryagin.presentations import KOSZUL, glambda
from pontryagin.rewrite import compile_presentation

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

F2 = FieldTag(2)
F3 = FieldTag(3)
F5 = FieldTag(5)
QQ = FieldTag(None)
FIELDS = [F2, F3, F5, QQ]


@pytest.fixture(scope="session")
def g2():
    return compile_presentation(glambda(F2))


@pytest.fixture(scope="session")
def gq():
    return compile_presentation(glambda(QQ))


@pytest.fixture(scope="session")
def gq_koszul():
    return compile_presentation(glambda(QQ, KOSZUL))


SMALL_TABLE = GeneratorTable(("a", "b", "c"), (1, 1, 2))


def scalars(field: FieldTag):
    if field.p is None:
        return st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.integers(0, field.p - 1)


@st.composite
def elements(draw, field: FieldTag, table: GeneratorTable = SMALL_TABLE, max_len: int = 3,
             degree: int | None = None):
    """Random elements; homogeneous of ``degree`` when it is given."""
    letters = st.integers(0, len(table) - 1)
    words = st.lists(letters, max_size=max_len).map(tuple)
    if degree is not None:
        words = words.filter(lambda w: table.word_degree(w) == degree)
    terms = draw(st.lists(st.tuples(words, scalars(field)), max_size=4))
    acc = {}
    for w, c in terms:
        acc[w] = acc.get(w, 0) + c
    return Element(field, table, acc)


# -- acceptance summary -------------------------------------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[key] = (m.group(2), report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        name, outcome, duration = _CRITERIA[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {key}: {verdict}  {name.replace('_', ' ')} ({duration:.2f} s)")


__all__ = ["F2", "F3", "F5", "FIELDS", "QQ", "SMALL_TABLE", "Fraction", "elements", "scalars"]
