from pathlib import Path

import pytest
from hypothesis import strategies as st

from sugenolab.capacity import FiniteSpace, SimpleFunction, random_capacity
from sugenolab.semicopula import BUILTIN_NAMES, builtin, ordinal_sum

FIXTURES = Path(__file__).parent / "fixtures"

unit_floats = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
grid_values = st.integers(0, 20).map(lambda k: k / 20)


@st.composite
def summand_lists(draw, max_summands=3):
    """Disjoint (possibly touching) subintervals with a product/Łukasiewicz base."""
    cuts = sorted(set(draw(st.lists(st.integers(0, 20), min_size=0, max_size=2 * max_summands))))
    pairs = list(zip(cuts[::2], cuts[1::2]))
    bases = st.sampled_from(["product", "lukasiewicz"])
    return [((lo / 20, hi / 20), draw(bases)) for lo, hi in pairs if lo < hi]


@st.composite
def semicopulas(draw, names=BUILTIN_NAMES, with_ordinal=True):
    if with_ordinal and draw(st.booleans()):
        return ordinal_sum(draw(summand_lists()))
    return builtin(draw(st.sampled_from(names)))


@st.composite
def capacities(draw, min_points=1, max_points=5):
    n = draw(st.integers(min_points, max_points))
    seed = draw(st.integers(0, 2**32 - 1))
    downward = draw(st.booleans())
    return random_capacity(FiniteSpace.of_size(n), seed, downward=downward)


@st.composite
def capacity_and_function(draw, max_points=5, values=unit_floats):
    mu = draw(capacities(max_points=max_points))
    vals = draw(st.lists(values, min_size=mu.space.n, max_size=mu.space.n))
    return mu, SimpleFunction(mu.space, tuple(vals))


@pytest.fixture
def two_points():
    return FiniteSpace(("p", "q"))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
