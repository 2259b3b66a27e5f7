import numpy as np
import pytest
from hypothesis import strategies as st

from ordrel.poset import Poset, chain, discrete, transitive_closure, validate_poset


@pytest.fixture
def c2():
    return chain(2)


@pytest.fixture
def c3():
    return chain(3)


@pytest.fixture
def d2():
    return discrete(["x", "y"])


def vee():
    return validate_poset(["b", "l", "r"], [("b", "l"), ("b", "r")])


@st.composite
def posets(draw, max_size=4):
    """Random posets: a random DAG on a shuffled order, closed transitively."""
    n = draw(st.integers(0, max_size))
    upper = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    m = np.triu(np.array(upper, dtype=bool).reshape(n, n), 1)
    perm = draw(st.permutations(range(n)))
    m = m[np.ix_(perm, perm)]
    return Poset([f"e{i}" for i in range(n)], transitive_closure(m))


@st.composite
def relations(draw, max_size=3):
    from ordrel.relations import weakening_closure
    x = draw(posets(max_size))
    y = draw(posets(max_size))
    seeds = draw(st.lists(st.tuples(st.sampled_from(x.elements or ("",)),
                                    st.sampled_from(y.elements or ("",))), max_size=4))
    if not len(x) or not len(y):
        seeds = []
    return weakening_closure(x, y, seeds)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
