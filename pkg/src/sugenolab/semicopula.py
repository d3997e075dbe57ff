"""Semicopulas: built-in families, ordinal sums and grid-based axiom checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .sections import INCREASING, PLATEAU, SectionProfile, make_profile
from .units import EXACT_TOL, SCAN_TOL, unit

S0 = "S0"
S1 = "S1"
GENERAL = "general"
UNKNOWN = "unknown"
DECLARED_CLASSES = (S0, S1, GENERAL, UNKNOWN)


@dataclass(frozen=True)
class Semicopula:
    """A binary operation on [0, 1] with neutral element 1.

    ``fn`` is called on plain floats and must be total on the unit square.
    ``section_spec`` maps ``a`` to the analytic profile of ``x -> fn(a, x)``.
    ``exact`` marks closed-form operations checked at the tight tolerance.
    """

    name: str
    fn: Callable[[float, float], float] = field(compare=False)
    declared_class: str = UNKNOWN
    section_spec: Optional[Callable[[float], SectionProfile]] = field(default=None, compare=False)
    descriptor: Optional[dict] = field(default=None, compare=False, hash=False)
    exact: bool = False

    def __post_init__(self):
        if self.declared_class not in DECLARED_CLASSES:
            raise ValueError(f"declared_class must be one of {DECLARED_CLASSES}")

    def __call__(self, x: float, y: float) -> float:
        return self.fn(x, y)

    def without_section_spec(self) -> "Semicopula":
        return replace(self, section_spec=None)

    @property
    def tolerance(self) -> float:
        return EXACT_TOL if self.exact else SCAN_TOL


def evaluate(s: Semicopula, x, y) -> float:
    return s.fn(unit(x, "x"), unit(y, "y"))


# -- closed forms -------------------------------------------------------------


def minimum(x, y):
    return x if x < y else y


def product(x, y):
    return x * y


def lukasiewicz(x, y):
    # (x + 1) - 1 rounds for small x, so neutrality is handled explicitly
    if x == 1.0 or y == 1.0:
        return x if y == 1.0 else y
    v = x + y - 1.0
    return v if v > 0.0 else 0.0


def cubic(x, y):
    return x * y * (x if x > y else y)


def nilpotent_minimum(x, y):
    # The rounded sum keeps decimal pairs summing to 1 on the zero branch, and
    # "fl(x + y) > 1" is symmetric and monotone, so the operation stays
    # associative.  The y == 1 / x == 1 guard restores neutrality for x below
    # half an ulp of 1.
    if x + y > 1.0 or x == 1.0 or y == 1.0:
        return x if x < y else y
    return 0.0


def drastic(x, y):
    if x == 1.0:
        return y
    if y == 1.0:
        return x
    return 0.0


# -- analytic sections --------------------------------------------------------


def _minimum_section(a):
    segs = [(0.0, a, INCREASING, 0.0, a)]
    if a < 1.0:
        segs.append((a, 1.0, PLATEAU, a, a))
    return make_profile(a, segs)


def _product_section(a):
    return make_profile(a, [(0.0, 1.0, INCREASING, 0.0, a)])


def _lukasiewicz_section(a):
    z = 1.0 - a
    return make_profile(a, [(0.0, z, PLATEAU, 0.0, 0.0), (z, 1.0, INCREASING, 0.0, a)])


def _cubic_section(a):
    return make_profile(a, [(0.0, 1.0, INCREASING, 0.0, a)])


def _nilpotent_minimum_section(a):
    z = 1.0 - a
    if a <= 0.5:
        segs = [(0.0, z, PLATEAU, 0.0, 0.0), (z, 1.0, PLATEAU, a, a)]
        return make_profile(a, segs, [(z, 0.0, 0.0, a)])
    segs = [
        (0.0, z, PLATEAU, 0.0, 0.0),
        (z, a, INCREASING, z, a),
        (a, 1.0, PLATEAU, a, a),
    ]
    return make_profile(a, segs, [(z, 0.0, 0.0, z)])


def _drastic_section(a):
    return make_profile(a, [(0.0, 1.0, PLATEAU, 0.0, 0.0)], [(1.0, 0.0, a, a)])


_BUILTINS = {
    "minimum": (minimum, S0, _minimum_section),
    "product": (product, S0, _product_section),
    "lukasiewicz": (lukasiewicz, S0, _lukasiewicz_section),
    "cubic": (cubic, GENERAL, _cubic_section),
    "nilpotent_minimum": (nilpotent_minimum, S1, _nilpotent_minimum_section),
    "drastic": (drastic, GENERAL, _drastic_section),
}
BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> Semicopula:
    try:
        fn, declared, section = _BUILTINS[name]
    except KeyError:
        raise ValueError(
            f"unknown semicopula {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return Semicopula(name, fn, declared, section, {"type": name}, exact=True)


# -- ordinal sums ---------------------------------------------------------------

_ORDINAL_BASES = {"product": product, "lukasiewicz": lukasiewicz}


class _OrdinalSum:
    """Callable for an ordinal sum; a class so instances pickle across workers."""

    def __init__(self, summands):
        self.summands = summands

    def __call__(self, x, y):
        m = x if x < y else y
        if x == 1.0 or y == 1.0:
            return m
        for lo, hi, base in self.summands:
            if lo <= x <= hi and lo <= y <= hi:
                w = hi - lo
                v = lo + w * _ORDINAL_BASES[base]((x - lo) / w, (y - lo) / w)
                # rescaling may round past the summand box
                return min(max(v, lo), m)
        return m

    def section(self, a):
        hit = None
        for lo, hi, base in self.summands:
            if lo < a < hi:
                hit = (lo, hi, base)
                break
        if hit is None:
            return _minimum_section(a)
        lo, hi, base = hit
        segs = []
        if lo > 0.0:
            segs.append((0.0, lo, INCREASING, 0.0, lo))
        if base == "product":
            segs.append((lo, hi, INCREASING, lo, a))
        else:
            knee = lo + (hi - a)
            segs.append((lo, knee, PLATEAU, lo, lo))
            segs.append((knee, hi, INCREASING, lo, a))
        if hi < 1.0:
            segs.append((hi, 1.0, PLATEAU, a, a))
        return make_profile(a, segs)


def ordinal_sum(summands) -> Semicopula:
    """Ordinal sum of product / Łukasiewicz summands on disjoint subintervals.

    ``summands`` is a sequence of ``((lo, hi), base)`` or ``(lo, hi, base)``.
    Intervals may touch at endpoints but must not overlap.
    """
    parsed = []
    for item in summands:
        if len(item) == 2:
            (lo, hi), base = item
        else:
            lo, hi, base = item
        lo, hi = unit(lo, "lo"), unit(hi, "hi")
        if not lo < hi:
            raise ValueError(f"degenerate summand interval [{lo}, {hi}]")
        if base not in _ORDINAL_BASES:
            raise ValueError(f"summand base must be product or lukasiewicz, got {base!r}")
        parsed.append((lo, hi, base))
    parsed.sort()
    for (lo1, hi1, _), (lo2, hi2, _) in zip(parsed, parsed[1:]):
        if lo2 < hi1:
            raise ValueError(f"overlapping summands [{lo1}, {hi1}] and [{lo2}, {hi2}]")
    op = _OrdinalSum(tuple(parsed))
    descriptor = {
        "type": "ordinal_sum",
        "summands": [{"lo": lo, "hi": hi, "base": base} for lo, hi, base in parsed],
    }
    name = "ordinal_sum(" + ", ".join(f"[{lo},{hi}]:{b}" for lo, hi, b in parsed) + ")"
    return Semicopula(name, op, S0, op.section, descriptor, exact=True)


# -- axiom and associativity checks ---------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    failure: Optional[str] = None
    witness: Optional[tuple] = None


def check_axioms(s: Semicopula, grid_n: int = 100) -> AxiomReport:
    """Check neutrality, monotonicity and domination by min on a uniform grid."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    xs = [i / grid_n for i in range(grid_n + 1)]
    for x in xs:
        if s(x, 1.0) != x or s(1.0, x) != x:
            return AxiomReport(False, "neutrality", (x, s(x, 1.0), s(1.0, x)))
    table = np.array([[s(x, y) for y in xs] for x in xs])
    bad = np.argwhere(table > np.minimum.outer(xs, xs))
    if len(bad):
        i, j = bad[0]
        return AxiomReport(False, "domination", (xs[i], xs[j], table[i, j]))
    for axis, label in ((0, "monotone_first"), (1, "monotone_second")):
        bad = np.argwhere(np.diff(table, axis=axis) < 0)
        if len(bad):
            i, j = bad[0]
            return AxiomReport(False, label, (xs[i], xs[j], table[i, j]))
    return AxiomReport(True)


@dataclass(frozen=True)
class Grid:
    n: int


@dataclass(frozen=True)
class RandomTriples:
    trials: int
    seed: int = 0


@dataclass(frozen=True)
class AssociativityReport:
    associative: bool
    checked: int
    tolerance: float
    witness: Optional[tuple] = None  # (x, y, z, lhs, rhs)


def associativity_gap(s: Semicopula, x, y, z) -> tuple[float, float]:
    return s(s(x, y), z), s(x, s(y, z))


def check_associativity(s: Semicopula, strategy=Grid(50), tolerance=None) -> AssociativityReport:
    tol = s.tolerance if tolerance is None else tolerance
    if isinstance(strategy, Grid):
        pts = [i / strategy.n for i in range(strategy.n + 1)]
        triples = itertools.product(pts, repeat=3)
    elif isinstance(strategy, RandomTriples):
        rng = np.random.default_rng(strategy.seed)
        triples = map(tuple, rng.random((strategy.trials, 3)).tolist())
    else:
        raise TypeError(f"unknown strategy {strategy!r}")
    count = 0
    for x, y, z in triples:
        count += 1
        lhs, rhs = associativity_gap(s, x, y, z)
        if abs(lhs - rhs) > tol:
            return AssociativityReport(False, count, tol, (x, y, z, lhs, rhs))
    return AssociativityReport(True, count, tol)
