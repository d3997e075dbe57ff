"""Infinite-space limit constructions on X = [0, 1].

Two capacities on the unit interval make the integral collapse to closed
forms: with ``mu(A) = 0`` for every ``A != X`` it equals ``inf_x f(x)``, and
with ``mu(A) = 1`` for every non-empty ``A`` it equals ``sup_x f(x)``.  The
test functions take the values ``b_n`` on disjoint intervals plus a boundary
value, so both sides of the homogeneity equation reduce to
``lim_n S(a, b_n)`` against ``S(a, b)``, a one-sided limit of the section.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .semicopula import Semicopula
from .units import SCAN_TOL, unit

FROM_ABOVE = "from_above"
FROM_BELOW = "from_below"
MIN_CAPACITY = "min_capacity_on_unit_interval"
MAX_CAPACITY = "max_capacity_on_unit_interval"
PAIRING = {FROM_ABOVE: MIN_CAPACITY, FROM_BELOW: MAX_CAPACITY}

CAUCHY_TOL = 1e-9
CONTINUITY_TOL = 1e-6

CONFIRMED = "continuity_confirmed"
WITNESS = "discontinuity_witness"


class LimitNotResolved(ArithmeticError):
    pass


@dataclass(frozen=True)
class LimitInstance:
    semicopula: Semicopula
    a: float
    b: float
    direction: str
    capacity_family: str = ""
    terms: int = 40

    def __post_init__(self):
        object.__setattr__(self, "a", unit(self.a, "a"))
        object.__setattr__(self, "b", unit(self.b, "b"))
        if self.direction not in PAIRING:
            raise ValueError(f"direction must be {FROM_ABOVE} or {FROM_BELOW}")
        family = self.capacity_family or PAIRING[self.direction]
        if family != PAIRING[self.direction]:
            raise ValueError(
                f"{self.direction} pairs with {PAIRING[self.direction]}, not {family}"
            )
        object.__setattr__(self, "capacity_family", family)
        if self.direction == FROM_ABOVE and not self.b < 1.0:
            raise ValueError("from_above needs b < 1")
        if self.direction == FROM_BELOW and not self.b > 0.0:
            raise ValueError("from_below needs b > 0")
        if self.terms < 2:
            raise ValueError("need at least two sequence terms")

    def sequence(self) -> list[float]:
        """Strictly monotone ``b_n -> b`` inside [0, 1]: ``b +/- w * 2**-n``."""
        b = self.b
        if self.direction == FROM_ABOVE:
            w = 1.0 - b
            return [b + w * 2.0**-n for n in range(1, self.terms + 1)]
        return [b - b * 2.0**-n for n in range(1, self.terms + 1)]


@dataclass(frozen=True)
class LimitResult:
    instance: LimitInstance
    L: float
    P: float
    gap: float
    verdict: str
    method: str

    def row(self) -> dict:
        li = self.instance
        return {
            "a": li.a,
            "b": li.b,
            "direction": li.direction,
            "L": self.L,
            "P": self.P,
            "gap": self.gap,
            "verdict": self.verdict,
        }

    def to_dict(self) -> dict:
        d = self.row()
        d.update(
            semicopula=_descriptor(self.instance),
            capacity_family=self.instance.capacity_family,
            terms=self.instance.terms,
            method=self.method,
        )
        return d


def _descriptor(li: LimitInstance):
    return li.semicopula.descriptor or {"name": li.semicopula.name}


def estimate_limit(li: LimitInstance) -> float:
    """Last term of ``S(a, b_n)`` once two consecutive terms agree to 1e-9."""
    s, a = li.semicopula.fn, li.a
    vals = [s(a, x) for x in li.sequence()]
    if abs(vals[-1] - vals[-2]) >= CAUCHY_TOL:
        raise LimitNotResolved(
            f"limit not resolved; increase N (|S(a,b_N) - S(a,b_(N-1))| = {abs(vals[-1] - vals[-2])})"
        )
    return vals[-1]


def analytic_limit(li: LimitInstance) -> float:
    """One-sided limit read off the semicopula's analytic section profile."""
    s = li.semicopula
    profile = s.section_spec(li.a)
    jump = profile.jump_at(li.b, tol=SCAN_TOL)
    if jump is None:
        return s.fn(li.a, li.b)
    return jump.right if li.direction == FROM_ABOVE else jump.left


def evaluate_limit_case(li: LimitInstance, method: str = "estimate") -> LimitResult:
    """Compare ``lim S(a, b_n)`` with ``S(a, b)``.

    ``method`` is ``"estimate"`` (dyadic sequence with a Cauchy stop),
    ``"analytic"`` (section profile, needs ``section_spec``) or ``"auto"``
    (analytic when available).
    """
    a = li.a
    if not 0.0 < a < 1.0:
        # S(0, .) = 0 and S(1, .) is the identity: nothing to witness
        P = li.semicopula.fn(a, li.b)
        return LimitResult(li, P, P, 0.0, CONFIRMED, "trivial")
    if method == "auto":
        method = "analytic" if li.semicopula.section_spec is not None else "estimate"
    if method == "analytic":
        if li.semicopula.section_spec is None:
            raise ValueError(f"{li.semicopula.name} has no analytic section profile")
        L = analytic_limit(li)
    elif method == "estimate":
        L = estimate_limit(li)
    else:
        raise ValueError(f"unknown method {method!r}")
    P = li.semicopula.fn(a, li.b)
    gap = abs(L - P)
    verdict = CONFIRMED if gap <= CONTINUITY_TOL else WITNESS
    return LimitResult(li, L, P, gap, verdict, method)


def sweep(
    s: Semicopula,
    grid=None,
    terms: int = 40,
    method: str = "estimate",
    edges: bool = False,
) -> list[LimitResult]:
    """Both proof pairings over ``grid x grid`` (default the 19-point grid 0.05..0.95).

    ``edges`` adds the limit points ``b = 0`` (from above) and ``b = 1``
    (from below) to the ``b`` axis.
    """
    if grid is None:
        grid = tuple(i / 20 for i in range(1, 20))
    out = []
    for direction in (FROM_ABOVE, FROM_BELOW):
        bs = list(grid)
        if edges:
            bs = [0.0] + bs if direction == FROM_ABOVE else bs + [1.0]
        for a in grid:
            for b in bs:
                out.append(evaluate_limit_case(LimitInstance(s, a, b, direction, terms=terms), method))
    return out


def sweep_csv(results) -> str:
    buf = io.StringIO()
    cols = ["a", "b", "direction", "L", "P", "gap", "verdict"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in results:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.row().items()})
    return buf.getvalue()


@dataclass(frozen=True)
class Lemma1Verdict:
    inf_side: tuple[float, float] | None  # (g(min h), min g(h))
    sup_side: tuple[float, float] | None  # (g(max h), max g(h))

    @property
    def holds(self) -> bool:
        sides = [p for p in (self.inf_side, self.sup_side) if p is not None]
        return all(x == y for x, y in sides)


def check_lemma1(s: Semicopula, a: float, h, profile=None) -> Lemma1Verdict:
    """Exchange of ``g = S(a, .)`` with min / max over a finite sample ``h``.

    The inf identity is checked when the section is right-continuous and the
    sup identity when it is left-continuous, according to ``profile``
    (default: the analytic profile of ``s``).
    """
    if profile is None:
        if s.section_spec is None:
            raise ValueError("a section profile is needed to know which identity applies")
        profile = s.section_spec(a)
    if not (profile.right_continuous or profile.left_continuous):
        raise ValueError("the section must be right- or left-continuous")
    hs = [unit(v, "h value") for v in h]
    if not hs:
        raise ValueError("h must have at least one value")
    gh = [s.fn(a, v) for v in hs]
    inf_side = (s.fn(a, min(hs)), min(gh)) if profile.right_continuous else None
    sup_side = (s.fn(a, max(hs)), max(gh)) if profile.left_continuous else None
    return Lemma1Verdict(inf_side, sup_side)
