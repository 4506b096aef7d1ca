import pytest

from porevise.experiments import tobacco_base
from porevise.logic import Vocabulary, parse_formula
from porevise.bridge import we_map

ABCD = Vocabulary(("a", "b", "c", "d"))

# epistemic state induced by the tobacco base
TOBACCO_CLASSES = {
    frozenset({0, 2, 8, 9, 10, 11, 12, 13}),
    frozenset({1, 3}),
    frozenset({4, 6}),
    frozenset({5, 7}),
    frozenset({14, 15}),
}
TOBACCO_EDGES = {
    (frozenset({0, 2, 8, 9, 10, 11, 12, 13}), frozenset({1, 3})),
    (frozenset({0, 2, 8, 9, 10, 11, 12, 13}), frozenset({4, 6})),
    (frozenset({0, 2, 8, 9, 10, 11, 12, 13}), frozenset({5, 7})),
    (frozenset({4, 6}), frozenset({14, 15})),
}


def f(text, vocab=ABCD):
    return parse_formula(text, vocab)


def class_structure(order):
    """(set of classes, set of covering edges as class pairs)."""
    classes = set(order.classes)
    edges = {(order.classes[i], order.classes[j]) for i, j in order.covering_pairs()}
    return classes, edges


@pytest.fixture
def abcd():
    return ABCD


@pytest.fixture
def tobacco():
    return tobacco_base()


@pytest.fixture
def tobacco_state(tobacco):
    return we_map(tobacco, "weak")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
