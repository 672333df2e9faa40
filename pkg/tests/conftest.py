import random

import pytest
from hypothesis import strategies as st

from critideal.digraph import Digraph
from critideal.polyring import Polynomial, parse_polynomial


def P(text, n):
    return parse_polynomial(text, n)


def from_tex(text, n, var="x"):
    """Parse a polynomial typed as ``x_2 x_3-1+x_5`` or ``x_1x_2+x_4x_5-2``."""
    return parse_polynomial(text.replace("_", "").replace(var, " " + var), n, var=var)


def random_digraph(rng, n, p=0.4, max_mult=2, loops=True):
    mult = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u == v and not loops:
                continue
            if rng.random() < p:
                mult[u][v] = rng.randint(1, max_mult)
    return Digraph(n, mult)


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return Digraph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240611)


NVARS = 3

monomials = st.tuples(*[st.integers(0, 3)] * NVARS)


@st.composite
def polynomials(draw, nvars=NVARS, max_terms=5, coeff=9):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, 2)] * nvars),
            st.integers(-coeff, coeff).filter(bool),
            max_size=max_terms,
        )
    )
    return Polynomial(nvars, terms)


@st.composite
def digraphs(draw, min_n=1, max_n=5, loops=True, max_mult=2):
    n = draw(st.integers(min_n, max_n))
    cells = draw(st.lists(st.integers(0, max_mult), min_size=n * n, max_size=n * n))
    mult = [cells[i * n:(i + 1) * n] for i in range(n)]
    if not loops:
        for i in range(n):
            mult[i][i] = 0
    return Digraph(n, mult)


@st.composite
def simple_graphs(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph.from_edges(n, [e for e, c in zip(pairs, chosen) if c])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for k in sorted(verdicts):
            terminalreporter.write_line(verdicts[k])
