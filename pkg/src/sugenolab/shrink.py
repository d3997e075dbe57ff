"""Greedy shrinking of homogeneity counterexamples.

Moves are tried in a fixed order (drop a point, snap a value to a coarser
decimal or dyadic grid, zero a value) and the first one that keeps the
instance violating is taken.  Every accepted move lowers the number of points
or the total decimal digit count of the instance, so the loop terminates at a
local minimum.
"""

from __future__ import annotations

import math

from .capacity import Capacity, CapacityError, FiniteSpace, SimpleFunction
from .homogeneity import Instance, check
from .units import EXACT_TOL


class NotAViolation(ValueError):
    """The instance handed to :func:`shrink` does not violate the equation."""


def digits(x: float) -> int:
    """Decimal digits after the point in the shortest repr of ``x``."""
    for d in range(18):
        if round(x, d) == x:
            return d
    return 18


def simpler_values(x: float) -> list[float]:
    """Candidates with strictly fewer decimal digits than ``x``, coarsest first."""
    d = digits(x)
    out = []
    for k in range(d):
        scale = 10**k
        for v in (round(x, k), math.floor(x * scale) / scale, math.ceil(x * scale) / scale):
            if 0.0 <= v <= 1.0 and v != x and digits(v) < d and v not in out:
                out.append(v)
    for j in range(1, 5):
        v = round(x * 2**j) / 2**j
        if v != x and digits(v) < d and v not in out:
            out.append(v)
    return out


def complexity(inst: Instance) -> tuple[int, int]:
    vals = list(inst.f.values) + list(inst.capacity.values) + [inst.a]
    return inst.space.n, sum(digits(v) for v in vals)


def _violates(inst: Instance, tol: float) -> bool:
    return check(inst, tol).gap > tol


def _drop_point(inst: Instance, i: int, absorb: bool):
    """Remove point ``i``; ``absorb`` reads subsets as if they also contained it."""
    space = inst.space
    keep = [k for k in range(space.n) if k != i]
    new_space = FiniteSpace(tuple(space.points[k] for k in keep))
    vals = []
    for m in range(1 << len(keep)):
        old = 0
        for j, k in enumerate(keep):
            if m >> j & 1:
                old |= 1 << k
        if absorb and m:
            old |= 1 << i
        vals.append(inst.capacity.values[old])
    vals[0] = 0.0
    vals[-1] = 1.0
    f = SimpleFunction(new_space, tuple(inst.f.values[k] for k in keep))
    return Instance(inst.semicopula, Capacity(new_space, tuple(vals)), f, inst.a)


def _with_capacity(inst: Instance, mask: int, v: float) -> Instance:
    vals = list(inst.capacity.values)
    vals[mask] = v
    return Instance(inst.semicopula, Capacity(inst.space, tuple(vals)), inst.f, inst.a)


def _with_f(inst: Instance, i: int, v: float) -> Instance:
    vals = list(inst.f.values)
    vals[i] = v
    return Instance(inst.semicopula, inst.capacity, SimpleFunction(inst.space, tuple(vals)), inst.a)


def _moves(inst: Instance):
    n = inst.space.n
    if n > 1:
        for i in range(n):
            yield lambda i=i: _drop_point(inst, i, absorb=False)
            yield lambda i=i: _drop_point(inst, i, absorb=True)
    for i, x in enumerate(inst.f.values):
        for v in ([0.0] if x else []) + simpler_values(x):
            yield lambda i=i, v=v: _with_f(inst, i, v)
    for m in range(1, (1 << n) - 1):
        x = inst.capacity.values[m]
        for v in ([0.0] if x else []) + simpler_values(x):
            yield lambda m=m, v=v: _with_capacity(inst, m, v)
    for v in simpler_values(inst.a):
        yield lambda v=v: Instance(inst.semicopula, inst.capacity, inst.f, v)


def shrink(witness: Instance, tolerance: float = EXACT_TOL, max_steps: int = 10_000) -> Instance:
    """Greedily minimize a violating instance; the result still violates."""
    if not _violates(witness, tolerance):
        raise NotAViolation("shrink needs an instance that violates the equation")
    current = witness
    for _ in range(max_steps):
        before = complexity(current)
        for move in _moves(current):
            try:
                candidate = move()
            except (CapacityError, ValueError):
                continue
            if complexity(candidate) < before and _violates(candidate, tolerance):
                current = candidate
                break
        else:
            return current
    return current
