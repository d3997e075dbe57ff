"""Finite spaces, capacities on their power set, and simple functions.

Subsets are bit masks over the ordered point labels of a :class:`FiniteSpace`:
bit ``i`` set means point ``i`` belongs to the subset.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .units import unit

MAX_POINTS = 20


class CapacityError(ValueError):
    """A table is incomplete, non-monotone or violates the boundary values."""


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[str, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not 1 <= len(pts) <= MAX_POINTS:
            raise ValueError(f"a space needs 1..{MAX_POINTS} points, got {len(pts)}")
        if any(not isinstance(p, str) or not p for p in pts):
            raise ValueError("point labels must be non-empty strings")
        if len(set(pts)) != len(pts):
            raise ValueError(f"duplicate point labels in {pts}")
        if any("," in p for p in pts):
            raise ValueError("point labels may not contain commas")

    @classmethod
    def of_size(cls, n: int) -> "FiniteSpace":
        return cls(tuple(f"x{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise KeyError(f"unknown point label {label!r}") from None

    def mask(self, labels) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def key(self, mask: int) -> str:
        """Comma-joined labels of a subset, ``""`` for the empty set."""
        return ",".join(self.labels(mask))

    def show(self, mask: int) -> str:
        return "{" + ",".join(self.labels(mask)) + "}"


@dataclass(frozen=True)
class SimpleFunction:
    space: FiniteSpace
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(unit(v, "function value") for v in self.values)
        if len(vals) != self.space.n:
            raise ValueError(f"function has {len(vals)} values for {self.space.n} points")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, space: FiniteSpace, values: Mapping) -> "SimpleFunction":
        missing = [p for p in space.points if p not in values]
        extra = [k for k in values if k not in space.points]
        if missing or extra:
            raise ValueError(f"function labels do not match space (missing {missing}, unknown {extra})")
        return cls(space, tuple(values[p] for p in space.points))

    @classmethod
    def indicator(cls, space: FiniteSpace, mask: int, height: float = 1.0) -> "SimpleFunction":
        return cls(space, tuple(height if mask >> i & 1 else 0.0 for i in range(space.n)))

    def as_dict(self) -> dict:
        return dict(zip(self.space.points, self.values))


def level_set(f: SimpleFunction, t) -> int:
    """Mask of ``{x : f(x) >= t}``."""
    t = unit(t, "t")
    m = 0
    for i, v in enumerate(f.values):
        if v >= t:
            m |= 1 << i
    return m


@dataclass(frozen=True)
class Capacity:
    """Monotone set function on the power set with mu(empty)=0, mu(X)=1.

    ``values[mask]`` is the capacity of the subset ``mask``.  Instances are
    validated on construction.
    """

    space: FiniteSpace
    values: tuple[float, ...]
    family: Optional[dict] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        size = 1 << self.space.n
        if len(self.values) != size:
            raise CapacityError(f"capacity table needs {size} entries, got {len(self.values)}")
        vals = tuple(unit(v, f"capacity of {self.space.show(m)}") for m, v in enumerate(self.values))
        object.__setattr__(self, "values", vals)
        if vals[0] != 0.0:
            raise CapacityError(f"capacity of the empty set must be 0, got {vals[0]}")
        violation = _monotonicity_violation(vals, self.space.n)
        if violation is not None:
            a, b = violation
            raise CapacityError(
                f"monotonicity violated: mu({self.space.show(a)}) = {vals[a]} > "
                f"mu({self.space.show(b)}) = {vals[b]}"
            )
        if vals[-1] != 1.0:
            raise CapacityError(f"capacity of the whole space must be 1, got {vals[-1]}")

    def __call__(self, mask: int) -> float:
        return self.values[mask]

    def of(self, labels) -> float:
        return self.values[self.space.mask(labels)]

    def table(self) -> dict[str, float]:
        return {self.space.key(m): v for m, v in enumerate(self.values)}

    def descriptor(self) -> dict:
        if self.family is not None:
            return dict(self.family)
        return {"type": "table", "values": self.table()}


def _monotonicity_violation(vals, n) -> Optional[tuple[int, int]]:
    """First pair ``A subset B`` (one extra point) with ``mu(A) > mu(B)``."""
    arr = np.asarray(vals)
    masks = np.arange(1 << n)
    for i in range(n):
        bit = 1 << i
        lower = masks[(masks & bit) == 0]
        bad = np.nonzero(arr[lower] > arr[lower | bit])[0]
        if len(bad):
            a = int(lower[bad[0]])
            return a, a | bit
    return None


# -- named families -------------------------------------------------------------


def dirac(space: FiniteSpace, point: str) -> Capacity:
    bit = 1 << space.index(point)
    vals = tuple(1.0 if m & bit else 0.0 for m in range(1 << space.n))
    return Capacity(space, vals, {"type": "dirac", "point": point})


def normalized_cardinality(space: FiniteSpace) -> Capacity:
    n = space.n
    vals = tuple(bin(m).count("1") / n for m in range(1 << n))
    return Capacity(space, vals, {"type": "normalized_cardinality"})


def min_capacity(space: FiniteSpace) -> Capacity:
    """Zero everywhere except on the whole space."""
    full = space.full
    vals = tuple(1.0 if m == full else 0.0 for m in range(1 << space.n))
    return Capacity(space, vals, {"type": "min_capacity"})


def max_capacity(space: FiniteSpace) -> Capacity:
    """One on every non-empty subset."""
    vals = tuple(0.0 if m == 0 else 1.0 for m in range(1 << space.n))
    return Capacity(space, vals, {"type": "max_capacity"})


def distorted_counting(space: FiniteSpace, distortion) -> Capacity:
    """``mu(A) = distortion[|A|]`` for a non-decreasing list of n+1 values."""
    d = [unit(v, "distortion value") for v in distortion]
    if len(d) != space.n + 1:
        raise CapacityError(f"distortion needs {space.n + 1} sample points, got {len(d)}")
    vals = tuple(d[bin(m).count("1")] for m in range(1 << space.n))
    return Capacity(space, vals, {"type": "distorted_counting", "distortion": d})


def from_table(space: FiniteSpace, table: Mapping) -> Capacity:
    """Build a capacity from a mapping keyed by masks, label strings or label collections.

    String keys are comma-joined labels with ``""`` for the empty set.
    """
    vals: list[Optional[float]] = [None] * (1 << space.n)
    for key, v in table.items():
        if isinstance(key, int):
            m = key
        elif isinstance(key, str):
            m = space.mask([k for k in key.split(",") if k]) if key else 0
        else:
            m = space.mask(key)
        if not 0 <= m <= space.full:
            raise CapacityError(f"subset mask {m} out of range")
        if vals[m] is not None:
            raise CapacityError(f"duplicate entry for {space.show(m)}")
        vals[m] = v
    missing = [m for m, v in enumerate(vals) if v is None]
    if missing:
        raise CapacityError(f"capacity table has no entry for {space.show(missing[0])}")
    return Capacity(space, tuple(vals))


_FAMILIES = {
    "dirac": dirac,
    "normalized_cardinality": normalized_cardinality,
    "min_capacity": min_capacity,
    "max_capacity": max_capacity,
    "distorted_counting": distorted_counting,
}


def make_capacity(space: FiniteSpace, spec, **params) -> Capacity:
    """Construct and validate a capacity.

    ``spec`` is a table (any mapping accepted by :func:`from_table`) or the
    name of a family, whose parameters go in ``params``.
    """
    if isinstance(spec, Mapping):
        return from_table(space, spec)
    try:
        build = _FAMILIES[spec]
    except (KeyError, TypeError):
        raise CapacityError(
            f"unknown capacity family {spec!r}; available: {', '.join(_FAMILIES)}"
        ) from None
    return build(space, **params)


# -- random generation ------------------------------------------------------------


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_capacity(space: FiniteSpace, seed=None, downward: bool = False) -> Capacity:
    """Random capacity from i.i.d. uniform draws on the non-empty proper subsets.

    The default closes upward, ``mu(A) = max_{B <= A} draw(B)``, and rescales
    so that ``mu(X) = 1``.  With ``downward=True`` it closes downward instead,
    ``mu(A) = min_{B >= A, B proper} draw(B)``, which balances the upward
    scheme's bias toward large values.  ``seed`` may be an int or a
    :class:`numpy.random.Generator`.
    """
    rng = _rng(seed)
    n = space.n
    size = 1 << n
    full = size - 1
    if n == 1:
        return Capacity(space, (0.0, 1.0))
    draws = rng.random(size)
    v = draws.copy()
    masks = np.arange(size)
    if not downward:
        v[0] = 0.0
        v[full] = 0.0
        for i in range(n):
            bit = 1 << i
            upper = masks[(masks & bit) != 0]
            v[upper] = np.maximum(v[upper], v[upper ^ bit])
        v = v / v[full]
    else:
        v[full] = 1.0
        for i in range(n):
            bit = 1 << i
            lower = masks[(masks & bit) == 0]
            v[lower] = np.minimum(v[lower], v[lower | bit])
        v[full] = 1.0
    v[0] = 0.0
    v[full] = 1.0
    return Capacity(space, tuple(v.tolist()))
