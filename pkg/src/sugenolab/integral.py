"""Generalized Sugeno (seminormed) integral on finite spaces.

``I_S(mu, f) = sup_{t in [0,1]} S(t, mu({f >= t}))``.

For a simple function the supremum is a maximum over the distinct values of
``f``: between consecutive distinct values ``v_{i-1} < t <= v_i`` the level
set ``{f >= t}`` does not change, ``S`` is non-decreasing in ``t``, and the
right endpoint ``v_i`` belongs to the interval, so each interval's
supremum is reached at ``v_i``.  Levels above ``max f`` give ``S(t, 0) = 0``
and ``t = 0`` gives ``S(0, 1) = 0``.  No continuity of ``S`` is needed.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .capacity import Capacity, SimpleFunction, level_set
from .semicopula import Semicopula, builtin


class SpaceMismatch(ValueError):
    """Capacity and function live on different spaces."""


@dataclass(frozen=True)
class IntegralResult:
    value: float
    argmax_level: float
    method: str = "exact"

    def to_dict(self) -> dict:
        return {"value": self.value, "argmax_level": self.argmax_level, "method": self.method}


def _same_space(mu: Capacity, f: SimpleFunction):
    if mu.space != f.space:
        raise SpaceMismatch(f"capacity on {mu.space.points} but function on {f.space.points}")


def integrate(s: Semicopula, mu: Capacity, f: SimpleFunction, locate: bool = True) -> IntegralResult:
    """Exact integral.

    ``argmax_level`` is the smallest level attaining the supremum.  With
    ``locate=False`` the search is skipped and the smallest attaining value
    of ``f`` is reported instead (still a level that attains it).
    """
    _same_space(mu, f)
    n = len(f.values)
    # intervals (lower, v] between consecutive distinct values share one level set
    intervals = []
    lower = 0.0
    for v in sorted(set(f.values)):
        if v > 0.0:
            mask = sum(1 << i for i in range(n) if f.values[i] >= v)
            intervals.append((lower, v, mu.values[mask]))
            lower = v
    best, level, where = 0.0, 0.0, None
    for k, (_, v, m) in enumerate(intervals):
        c = s.fn(v, m)
        if c > best:
            best, level, where = c, v, k
    if locate and where is not None:
        lo, hi, m = intervals[where]
        level = _smallest_attaining(s.fn, lo, hi, m, best)
    return IntegralResult(best, level)


def _smallest_attaining(fn, lo: float, hi: float, m: float, best: float) -> float:
    """Smallest float ``t`` in ``(lo, hi]`` with ``fn(t, m) >= best``.

    ``fn(hi, m) == best`` on entry.  Because ``fn`` is non-decreasing in its
    first argument the attaining floats form an upper run of the interval.
    Non-negative doubles are ordered like their bit patterns, so the search
    bisects over those and needs at most 64 steps.
    """
    a, b = _bits(lo), _bits(hi)  # fn(lo) does not attain (or lo is excluded)
    while b - a > 1:
        mid = (a + b) // 2
        if fn(_float(mid), m) >= best:
            b = mid
        else:
            a = mid
    return _float(b)


def _bits(x: float) -> int:
    return struct.unpack("<q", struct.pack("<d", x))[0]


def _float(k: int) -> float:
    return struct.unpack("<d", struct.pack("<q", k))[0]


def integrate_grid_oracle(s: Semicopula, mu: Capacity, f: SimpleFunction, n: int = 1000) -> IntegralResult:
    """Brute-force supremum over the uniform ``n``-grid joined with the values of ``f``."""
    _same_space(mu, f)
    if n < 1:
        raise ValueError("grid size must be at least 1")
    levels = sorted({i / n for i in range(n + 1)} | set(f.values))
    best, level = None, 0.0
    for t in levels:
        c = s.fn(t, mu.values[level_set(f, t)])
        if best is None or c > best:
            best, level = c, t
    return IntegralResult(best, level, f"grid({n})")


def sugeno(mu: Capacity, f: SimpleFunction) -> float:
    return integrate(builtin("minimum"), mu, f).value


def shilkret(mu: Capacity, f: SimpleFunction) -> float:
    return integrate(builtin("product"), mu, f).value
