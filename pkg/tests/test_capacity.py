from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sugenolab.capacity import (
    Capacity,
    CapacityError,
    FiniteSpace,
    SimpleFunction,
    dirac,
    distorted_counting,
    from_table,
    level_set,
    make_capacity,
    max_capacity,
    min_capacity,
    normalized_cardinality,
    random_capacity,
)
from sugenolab.units import UnitIntervalError

from .conftest import capacity_and_function, unit_floats


def all_subsets(space):
    pts = space.points
    return [frozenset(c) for r in range(len(pts) + 1) for c in combinations(pts, r)]


def assert_is_capacity(mu):
    """Independent check over explicit label sets rather than masks."""
    subsets = all_subsets(mu.space)
    value = {A: mu.of(A) for A in subsets}
    assert value[frozenset()] == 0.0
    assert value[frozenset(mu.space.points)] == 1.0
    for A in subsets:
        assert 0.0 <= value[A] <= 1.0
        for B in subsets:
            if A <= B:
                assert value[A] <= value[B], (A, B)


def test_space_validation():
    with pytest.raises(ValueError):
        FiniteSpace(())
    with pytest.raises(ValueError, match="duplicate"):
        FiniteSpace(("p", "p"))
    with pytest.raises(ValueError):
        FiniteSpace(("a,b",))
    with pytest.raises(ValueError):
        FiniteSpace.of_size(21)
    assert FiniteSpace.of_size(20).n == 20


def test_space_masks(two_points):
    assert two_points.mask(["q"]) == 2
    assert two_points.labels(3) == ("p", "q")
    assert two_points.key(0) == ""
    assert two_points.show(1) == "{p}"
    with pytest.raises(KeyError):
        two_points.index("r")


def test_level_set_examples():
    space = FiniteSpace(("p", "q", "r"))
    f = SimpleFunction.from_mapping(space, {"p": 0.2, "q": 0.5, "r": 0.9})
    assert space.labels(level_set(f, 0.5)) == ("q", "r")
    assert level_set(f, 0.95) == 0
    assert level_set(f, 0.0) == space.full


def test_function_validation(two_points):
    with pytest.raises(UnitIntervalError):
        SimpleFunction(two_points, (0.5, 1.5))
    with pytest.raises(ValueError):
        SimpleFunction(two_points, (0.5,))
    with pytest.raises(ValueError, match="missing"):
        SimpleFunction.from_mapping(two_points, {"p": 0.1})


def test_table_capacity_by_labels(two_points):
    mu = make_capacity(two_points, {"": 0, "p": 0.3, "q": 0.6, "p,q": 1})
    assert mu.of({"p"}) == 0.3
    assert mu(2) == 0.6
    assert mu.table() == {"": 0.0, "p": 0.3, "q": 0.6, "p,q": 1.0}
    assert mu.descriptor() == {"type": "table", "values": mu.table()}


def test_table_keys_can_be_masks_or_collections(two_points):
    a = from_table(two_points, {0: 0, 1: 0.3, 2: 0.6, 3: 1})
    b = from_table(two_points, {(): 0, ("p",): 0.3, ("q",): 0.6, ("p", "q"): 1})
    assert a == b


def test_missing_entry_named(two_points):
    with pytest.raises(CapacityError, match=r"\{q\}"):
        make_capacity(two_points, {"": 0, "p": 0.3, "p,q": 1})


def test_monotonicity_violation_names_the_pair():
    space = FiniteSpace(("p", "q", "r"))
    table = {"": 0, "p": 0.6, "q": 0.1, "r": 0.1, "p,q": 0.4, "p,r": 0.7, "q,r": 0.5, "p,q,r": 1}
    with pytest.raises(CapacityError, match=r"mu\(\{p\}\) = 0.6 > mu\(\{p,q\}\) = 0.4"):
        make_capacity(space, table)


def test_boundary_values(two_points):
    with pytest.raises(CapacityError, match="empty"):
        Capacity(two_points, (0.1, 0.3, 0.3, 1.0))
    with pytest.raises(CapacityError, match="whole space"):
        Capacity(two_points, (0.0, 0.3, 0.3, 0.9))
    with pytest.raises(UnitIntervalError):
        Capacity(two_points, (0.0, -0.1, 0.3, 1.0))


def test_named_families():
    space = FiniteSpace(("p", "q", "r"))
    assert dirac(space, "q").of({"q", "r"}) == 1.0
    assert dirac(space, "q").of({"p", "r"}) == 0.0
    assert normalized_cardinality(space).of({"p", "r"}) == pytest.approx(2 / 3)
    assert min_capacity(space).of({"p", "q"}) == 0.0
    assert max_capacity(space).of({"r"}) == 1.0
    mu = distorted_counting(space, [0, 0.1, 0.5, 1])
    assert mu.of({"q", "r"}) == 0.5
    assert mu.descriptor() == {"type": "distorted_counting", "distortion": [0.0, 0.1, 0.5, 1.0]}
    for m in (dirac(space, "p"), normalized_cardinality(space), min_capacity(space), max_capacity(space), mu):
        assert_is_capacity(m)


def test_make_capacity_by_name():
    space = FiniteSpace.of_size(2)
    assert make_capacity(space, "dirac", point="x1").of({"x1"}) == 1.0
    with pytest.raises(CapacityError, match="available"):
        make_capacity(space, "gaussian")
    with pytest.raises(CapacityError):
        distorted_counting(space, [0, 0.5])
    with pytest.raises(CapacityError, match=r"mu\("):
        distorted_counting(space, [0, 0.8, 0.5])


@pytest.mark.parametrize("downward", [False, True])
@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_random_capacity_valid(n, downward):
    mu = random_capacity(FiniteSpace.of_size(n), 11 * n, downward=downward)
    assert_is_capacity(mu)


def test_random_capacity_deterministic():
    space = FiniteSpace.of_size(4)
    assert random_capacity(space, 7) == random_capacity(space, 7)
    assert random_capacity(space, 7) != random_capacity(space, 8)
    rng_a, rng_b = np.random.default_rng([1, 2]), np.random.default_rng([1, 2])
    assert random_capacity(space, rng_a) == random_capacity(space, rng_b)


def test_random_schemes_differ_in_bias():
    space = FiniteSpace.of_size(4)
    up = np.mean([np.mean(random_capacity(space, s).values[1:-1]) for s in range(200)])
    down = np.mean([np.mean(random_capacity(space, s, downward=True).values[1:-1]) for s in range(200)])
    assert down < up


@settings(max_examples=60)
@given(capacity_and_function(), unit_floats, unit_floats)
def test_level_sets_antitone(pair, t1, t2):
    mu, f = pair
    t1, t2 = sorted((t1, t2))
    a, b = level_set(f, t1), level_set(f, t2)
    assert b & ~a == 0  # {f >= t2} is inside {f >= t1}
    assert mu(b) <= mu(a)


@settings(max_examples=60)
@given(capacity_and_function(), unit_floats)
def test_level_capacity_is_constant_between_values(pair, t):
    mu, f = pair
    # {f >= t} equals {f >= v} for the smallest value v of f at or above t
    above = [v for v in f.values if v >= t]
    expected = level_set(f, min(above)) if above else 0
    assert level_set(f, t) == expected


@settings(max_examples=40)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.booleans())
def test_random_capacities_are_monotone(n, seed, downward):
    assert_is_capacity(random_capacity(FiniteSpace.of_size(n), seed, downward=downward))
