"""Sections ``x -> S(a, x)`` of a semicopula: profiles, jumps and scanning.

A :class:`SectionProfile` describes a section as a partition of [0, 1] into
plateau and increasing segments, separated by jumps.  Built-in semicopulas
carry an analytic profile; anything else is scanned numerically by
:func:`scan_section`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .units import SCAN_TOL, unit

PLATEAU = "plateau"
INCREASING = "increasing"

DEFAULT_RESOLUTION = 1e-4
DEFAULT_JUMP_THRESHOLD = 1e-6
LIMIT_EXPONENTS = range(10, 41)
DEFAULT_MAX_JUMPS = 256


class SectionNotResolvable(RuntimeError):
    """Raised when a scan finds more candidate jumps than its budget allows."""

    def __init__(self, a: float, found: int, budget: int):
        self.a = a
        self.found = found
        self.budget = budget
        super().__init__(
            f"section not resolvable at this resolution (a={a!r}: "
            f"more than {budget} candidate jumps)"
        )


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    kind: str
    start: float  # limit value at lo from inside the segment
    end: float  # limit value at hi from inside the segment


@dataclass(frozen=True)
class Jump:
    at: float
    left: float
    value: float
    right: float
    radius: float  # length of the continuous right-neighbourhood

    @property
    def height(self) -> float:
        return self.right - self.left

    @property
    def left_continuous(self) -> bool:
        return abs(self.value - self.left) <= SCAN_TOL

    @property
    def right_continuous(self) -> bool:
        return abs(self.value - self.right) <= SCAN_TOL


@dataclass(frozen=True)
class SectionProfile:
    a: float
    segments: tuple[Segment, ...]
    jumps: tuple[Jump, ...] = ()
    right_continuous: bool = True
    left_continuous: bool = True
    continuous: bool = True
    source: str = field(default="analytic", compare=False)

    def jump_at(self, x: float, tol: float = 0.0) -> Jump | None:
        for j in self.jumps:
            if abs(j.at - x) <= tol:
                return j
        return None

    @property
    def isolated(self) -> bool:
        """Every jump has a non-empty continuous right-neighbourhood (or sits at 1)."""
        return all(j.radius > 0 or j.at == 1.0 for j in self.jumps)

    def check(self, tol: float = 1e-12) -> list[str]:
        """Return violated structural invariants (empty when consistent)."""
        problems = []
        last = 0.0
        for seg in self.segments:
            if seg.lo > seg.hi:
                problems.append(f"segment [{seg.lo}, {seg.hi}] is reversed")
            if seg.start > seg.end + tol:
                problems.append(f"segment at {seg.lo} decreases")
            if seg.start < last - tol:
                problems.append(f"segment at {seg.lo} starts below the previous one")
            if seg.end > self.a + tol:
                problems.append(f"segment at {seg.lo} exceeds a={self.a}")
            last = seg.end
        for j in self.jumps:
            if not (j.left - tol <= j.value <= j.right + tol):
                problems.append(f"jump at {j.at}: value outside [left, right]")
            if not j.left < j.right:
                problems.append(f"jump at {j.at}: left limit not below right limit")
        for j, k in zip(self.jumps, self.jumps[1:]):
            if not k.at - j.at > j.radius:
                problems.append(f"jumps at {j.at} and {k.at} are not separated")
        return problems

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "segments": [
                {"lo": s.lo, "hi": s.hi, "kind": s.kind, "start": s.start, "end": s.end}
                for s in self.segments
            ],
            "jumps": [
                {"at": j.at, "left": j.left, "value": j.value, "right": j.right,
                 "radius": j.radius}
                for j in self.jumps
            ],
            "right_continuous": self.right_continuous,
            "left_continuous": self.left_continuous,
            "continuous": self.continuous,
            "source": self.source,
        }


def make_profile(a, segments, jumps=(), source="analytic") -> SectionProfile:
    """Assemble a profile, deriving isolation radii and continuity flags.

    ``jumps`` may be ``(at, left, value, right)`` tuples; radii are half the
    distance to the next jump, or the distance to 1 for the last one.
    """
    raw = sorted((tuple(j)[:4] for j in jumps), key=lambda j: j[0])
    built = []
    for i, (at, left, value, right) in enumerate(raw):
        radius = (raw[i + 1][0] - at) / 2 if i + 1 < len(raw) else 1.0 - at
        built.append(Jump(at, left, value, right, radius))
    segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in segments)
    return SectionProfile(
        a=a,
        segments=segs,
        jumps=tuple(built),
        right_continuous=all(j.right_continuous for j in built),
        left_continuous=all(j.left_continuous for j in built),
        continuous=not built,
        source=source,
    )


# -- numerical scanning -----------------------------------------------------


def _simplest_point(lo: float, hi: float) -> float:
    """Pick the jump location inside an adjacent-float bracket.

    At float resolution a jump between ``lo`` and ``hi`` can be read either
    as left-continuous at ``lo`` or right-continuous at ``hi``.  An endpoint
    with a short decimal expansion (at most 12 significant digits) is taken
    as the true location; otherwise ``lo`` is used.
    """
    for x in (lo, hi):
        if x == 0.0 or float(f"{x:.12g}") == x:
            return x
    return lo


def _one_sided_limit(g, z: float, side: int) -> float:
    """Estimate ``lim g(x)`` as ``x -> z`` from the left (-1) or right (+1)."""
    vals = []
    for j in LIMIT_EXPONENTS:
        x = z + side * 2.0 ** -j
        if x == z:
            break
        vals.append(g(x))
    return vals[-1] if vals else g(z)


def _locate_jumps(g, lo, hi, glo, ghi, eta, out, budget, a):
    """Bisect toward the larger rise until the bracket is two adjacent floats.

    Only the half carrying the larger increase is followed, so a jump can be
    hidden by a continuous rise that is larger within the same cell.  Once a
    jump is pinned down, the cell is searched again on both sides of it.
    """
    stack = [(lo, hi, glo, ghi)]
    while stack:
        l, r, gl, gr = stack.pop()
        cell_l, cell_r, cell_gl, cell_gr = l, r, gl, gr
        while True:
            m = l + (r - l) / 2
            if m <= l or m >= r:
                break
            gm = g(m)
            if gm - gl >= gr - gm:
                if gm - gl < eta:
                    l = None
                    break
                r, gr = m, gm
            else:
                if gr - gm < eta:
                    l = None
                    break
                l, gl = m, gm
        if l is None or gr - gl < eta:
            continue
        out.append((l, r))
        if len(out) > budget:
            raise SectionNotResolvable(a, len(out), budget)
        if cell_l < l and gl - cell_gl >= eta:
            stack.append((cell_l, l, cell_gl, gl))
        if r < cell_r and cell_gr - gr >= eta:
            stack.append((r, cell_r, gr, cell_gr))


def _refine_boundary(g, lo, hi, level, eta, keep_left):
    """Find where ``g`` leaves ``level`` by more than ``eta`` inside [lo, hi]."""
    for _ in range(60):
        m = lo + (hi - lo) / 2
        if m <= lo or m >= hi:
            break
        near = abs(g(m) - level) < eta
        if near == keep_left:
            lo = m
        else:
            hi = m
    return lo if keep_left else hi


def _continuous_part(g, xs, ys, p, q, start, end, eta):
    """Split one jump-free stretch (p, q) into plateau / increasing segments."""
    pts = [(p, start)]
    pts += [(x, y) for x, y in zip(xs, ys) if p < x < q]
    pts.append((q, end))
    if len(pts) == 2 and p == q:
        return []
    runs = []  # [kind, i0, i1] indices into pts
    # a step is flat only at rounding level; a slow rise just under eta per
    # cell would otherwise flicker between the two kinds
    flat = min(eta, SCAN_TOL)
    for i in range(len(pts) - 1):
        kind = PLATEAU if pts[i + 1][1] - pts[i][1] <= flat else INCREASING
        if runs and runs[-1][0] == kind:
            runs[-1][2] = i + 1
        else:
            runs.append([kind, i, i + 1])
    for run in runs:
        if run[0] == PLATEAU and pts[run[2]][1] - pts[run[1]][1] >= eta:
            run[0] = INCREASING
    merged = []
    for run in runs:
        if merged and merged[-1][0] == run[0]:
            merged[-1][2] = run[2]
        else:
            merged.append(run)

    bounds = [pts[run[1]][0] for run in merged] + [q]
    for k in range(1, len(merged)):
        prev, cur = merged[k - 1], merged[k]
        if prev[0] == PLATEAU:
            level = pts[prev[2]][1]
            i = cur[1]
            bounds[k] = _refine_boundary(g, pts[i][0], pts[i + 1][0], level, flat, True)
        else:
            level = pts[cur[1]][1]
            i = prev[2]
            bounds[k] = _refine_boundary(g, pts[i - 1][0], pts[i][0], level, flat, False)
        bounds[k] = min(max(bounds[k], bounds[k - 1]), q)

    segments = []
    for k, run in enumerate(merged):
        lo, hi = bounds[k], bounds[k + 1]
        if lo == hi and len(merged) > 1:
            continue
        s_val = start if k == 0 else g(lo)
        e_val = end if k == len(merged) - 1 else g(hi)
        segments.append(Segment(lo, hi, run[0], s_val, e_val))
    return segments


def scan_section(
    s,
    a,
    resolution: float = DEFAULT_RESOLUTION,
    jump_threshold: float = DEFAULT_JUMP_THRESHOLD,
    *,
    use_spec: bool = True,
    max_jumps: int = DEFAULT_MAX_JUMPS,
) -> SectionProfile:
    """Profile of ``x -> s(a, x)`` for ``0 < a < 1``.

    An analytic ``section_spec`` on ``s`` is returned as is unless
    ``use_spec`` is false.  Otherwise the section is sampled on a uniform
    grid of step ``resolution``; every cell rising by at least
    ``jump_threshold`` is bisected down to adjacent floats, and the jumps
    that survive get their one-sided limits estimated at ``z -/+ 2**-j``.
    Plateaus are stretches whose total rise stays below ``jump_threshold``.
    """
    a = unit(a, "a")
    if not 0.0 < a < 1.0:
        raise ValueError(f"section scans need 0 < a < 1, got {a}")
    if resolution <= 0 or jump_threshold <= 0:
        raise ValueError("resolution and jump_threshold must be positive")
    spec = getattr(s, "section_spec", None)
    if use_spec and spec is not None:
        return spec(a)

    def g(x):
        return s(a, x)

    n = math.ceil(1.0 / resolution)
    xs = [i / n for i in range(n + 1)]
    ys = [g(x) for x in xs]
    eta = jump_threshold

    brackets: list[tuple[float, float]] = []
    for i in range(n):
        if ys[i + 1] - ys[i] >= eta:
            _locate_jumps(g, xs[i], xs[i + 1], ys[i], ys[i + 1], eta, brackets, max_jumps, a)

    jumps = []
    for lo, hi in sorted(brackets):
        z = _simplest_point(lo, hi)
        value = g(z)
        left = _one_sided_limit(g, z, -1) if z > 0.0 else value
        right = _one_sided_limit(g, z, +1) if z < 1.0 else value
        # a jump at 0 or 1 only has one side; compare against the value
        if z == 0.0:
            left = value
        if z == 1.0:
            right = value
        if right - left >= eta:
            jumps.append((z, left, value, right))

    breaks = [0.0] + [j[0] for j in jumps] + [1.0]
    segments = []
    for k in range(len(breaks) - 1):
        p, q = breaks[k], breaks[k + 1]
        if p == q:
            continue
        start = g(0.0) if k == 0 else jumps[k - 1][3]
        end = g(1.0) if k == len(breaks) - 2 else jumps[k][1]
        segments += _continuous_part(g, xs, ys, p, q, start, end, eta)
    return make_profile(a, segments, jumps, source="scan")
