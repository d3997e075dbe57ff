"""The homogeneity equation ``I_S(mu, S(a, f)) = S(a, I_S(mu, f))``.

:func:`check` evaluates both sides of one instance, :func:`indicator_instance`
builds the two-point probe that reduces the equation to associativity, and
:func:`fuzz_campaign` runs seeded random campaigns whose pass/fail polarity
is part of the configuration.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .capacity import Capacity, FiniteSpace, SimpleFunction, random_capacity
from .integral import integrate, integrate_grid_oracle
from .semicopula import Semicopula
from .units import EXACT_TOL, unit

EQUAL = "equal_within_tol"
VIOLATION = "violation"
HOLDS = "holds"
MAY_FAIL = "may_fail"
ORACLE_GRID = 10_000


@dataclass(frozen=True)
class Instance:
    semicopula: Semicopula
    capacity: Capacity
    f: SimpleFunction
    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", unit(self.a, "a"))
        if self.capacity.space != self.f.space:
            raise ValueError("capacity and function must share one space")

    @property
    def space(self) -> FiniteSpace:
        return self.capacity.space

    def transformed(self) -> SimpleFunction:
        """The function ``x -> S(a, f(x))``."""
        s, a = self.semicopula.fn, self.a
        return SimpleFunction(self.space, tuple(s(a, v) for v in self.f.values))

    def to_dict(self) -> dict:
        return {
            "space": list(self.space.points),
            "capacity": self.capacity.descriptor(),
            "function": self.f.as_dict(),
            "semicopula": self.semicopula.descriptor,
            "a": self.a,
        }


@dataclass(frozen=True)
class CheckReport:
    L: float
    P: float
    gap: float
    verdict: str
    tolerance: float
    instance: Instance

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATION

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "P": self.P,
            "gap": self.gap,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "instance": self.instance.to_dict(),
        }


def sides(instance: Instance, oracle_grid: Optional[int] = None) -> tuple[float, float]:
    """``(L, P)`` by the exact formula, or by the grid oracle when ``oracle_grid`` is set."""
    s, mu, f, a = instance.semicopula, instance.capacity, instance.f, instance.a
    if oracle_grid is None:
        inner = integrate(s, mu, f, locate=False).value
        outer = integrate(s, mu, instance.transformed(), locate=False).value
    else:
        inner = integrate_grid_oracle(s, mu, f, oracle_grid).value
        outer = integrate_grid_oracle(s, mu, instance.transformed(), oracle_grid).value
    return outer, s.fn(a, inner)


def check(instance: Instance, tolerance: float = EXACT_TOL) -> CheckReport:
    L, P = sides(instance)
    gap = abs(L - P)
    verdict = VIOLATION if gap > tolerance else EQUAL
    return CheckReport(L, P, gap, verdict, tolerance, instance)


def indicator_instance(s: Semicopula, a, b, c) -> Instance:
    """Two-point probe with ``f = b * 1_{p}`` and ``mu({p}) = c``.

    On this instance ``L = S(S(a, b), c)`` and ``P = S(a, S(b, c))``.
    """
    b, c = unit(b, "b"), unit(c, "c")
    space = FiniteSpace(("p", "q"))
    mu = Capacity(space, (0.0, c, 0.0, 1.0))
    return Instance(s, mu, SimpleFunction(space, (b, 0.0)), a)


# -- campaigns ------------------------------------------------------------------


def default_value_grid(step_count: int = 20) -> tuple[float, ...]:
    """Multiples of ``1/step_count`` in [0, 1]; the default is multiples of 0.05."""
    return tuple(k / step_count for k in range(step_count + 1))


@dataclass(frozen=True)
class CampaignConfig:
    trials: int = 10_000
    seed: int = 0
    max_points: int = 5
    value_grid: tuple[float, ...] = field(default_factory=default_value_grid)
    expect: str = HOLDS
    continuous: bool = False
    capacity_mode: str = "upward"  # upward | downward | mixed
    tolerance: float = EXACT_TOL

    def __post_init__(self):
        if self.expect not in (HOLDS, MAY_FAIL):
            raise ValueError(f"expect must be {HOLDS!r} or {MAY_FAIL!r}")
        if self.capacity_mode not in ("upward", "downward", "mixed"):
            raise ValueError("capacity_mode must be upward, downward or mixed")
        if not 1 <= self.max_points <= 20:
            raise ValueError("max_points must be in 1..20")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        grid = tuple(unit(v, "value_grid entry") for v in self.value_grid)
        if not grid:
            raise ValueError("value_grid must not be empty")
        object.__setattr__(self, "value_grid", grid)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["value_grid"] = list(self.value_grid)
        return d

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def random_instance(s: Semicopula, config: CampaignConfig, trial: int) -> Instance:
    """Instance number ``trial``; depends only on the master seed and ``trial``."""
    rng = np.random.default_rng([config.seed, trial])
    n = int(rng.integers(1, config.max_points + 1))
    space = FiniteSpace.of_size(n)
    mode = config.capacity_mode
    downward = mode == "downward" or (mode == "mixed" and bool(rng.integers(2)))
    mu = random_capacity(space, rng, downward=downward)
    grid = config.value_grid
    if config.continuous:
        values = tuple(rng.random(n).tolist())
        a = float(rng.random())
    else:
        idx = rng.integers(len(grid), size=n + 1)
        values = tuple(grid[i] for i in idx[:n])
        a = grid[idx[n]]
    return Instance(s, mu, SimpleFunction(space, values), a)


@dataclass
class _Tally:
    violations: int = 0
    worst_gap: float = 0.0
    first: Optional[tuple[int, CheckReport]] = None
    gaps: Optional[list] = None

    def merge(self, other: "_Tally") -> "_Tally":
        first = self.first
        if other.first is not None and (first is None or other.first[0] < first[0]):
            first = other.first
        gaps = None
        if self.gaps is not None and other.gaps is not None:
            gaps = self.gaps + other.gaps
        return _Tally(
            self.violations + other.violations,
            max(self.worst_gap, other.worst_gap),
            first,
            gaps,
        )


def _run_trials(s, config, start, stop, keep_gaps) -> _Tally:
    tally = _Tally(gaps=[] if keep_gaps else None)
    for trial in range(start, stop):
        report = check(random_instance(s, config, trial), config.tolerance)
        if report.gap > tally.worst_gap:
            tally.worst_gap = report.gap
        if keep_gaps:
            tally.gaps.append((trial, report.gap))
        if report.violated:
            tally.violations += 1
            if tally.first is None:
                tally.first = (trial, report)
    return tally


@dataclass
class CampaignReport:
    semicopula: dict
    config: CampaignConfig
    violations: int
    worst_gap: float
    first_witness: Optional[Instance]
    first_witness_trial: Optional[int]
    first_witness_gap: Optional[float]
    witness_confirmed: Optional[bool]
    gaps: Optional[list] = None

    @property
    def passed(self) -> bool:
        if self.config.expect == HOLDS:
            return self.violations == 0
        return self.violations > 0 and bool(self.witness_confirmed)

    def to_dict(self) -> dict:
        return {
            "tool_version": __version__,
            "semicopula": self.semicopula,
            "trials": self.config.trials,
            "seed": self.config.seed,
            "config_hash": self.config.digest(),
            "expect": self.config.expect,
            "violations": self.violations,
            "worst_gap": self.worst_gap,
            "first_witness": None if self.first_witness is None else self.first_witness.to_dict(),
            "first_witness_trial": self.first_witness_trial,
            "first_witness_gap": self.first_witness_gap,
            "witness_confirmed_by_oracle": self.witness_confirmed,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def fuzz_campaign(
    s: Semicopula,
    config: CampaignConfig = CampaignConfig(),
    workers: int = 1,
    keep_gaps: bool = False,
) -> CampaignReport:
    """Run ``config.trials`` random checks of the homogeneity equation.

    Trials are split into contiguous chunks across ``workers`` processes and
    merged in trial order, so the report does not depend on scheduling.  The
    first violation found is re-evaluated with the grid oracle before it
    counts as a confirmed counterexample.
    """
    trials = config.trials
    if workers <= 1 or trials < 2 * workers:
        tally = _run_trials(s, config, 0, trials, keep_gaps)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int).tolist()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _run_trials,
                [s] * workers,
                [config] * workers,
                bounds[:-1],
                bounds[1:],
                [keep_gaps] * workers,
            )
            tally = _Tally(gaps=[] if keep_gaps else None)
            for part in parts:
                tally = tally.merge(part)

    witness = trial = gap = confirmed = None
    if tally.first is not None:
        trial, report = tally.first
        witness, gap = report.instance, report.gap
        L, P = sides(witness, ORACLE_GRID)
        confirmed = abs(L - P) > config.tolerance
    return CampaignReport(
        semicopula=s.descriptor or {"name": s.name},
        config=config,
        violations=tally.violations,
        worst_gap=tally.worst_gap,
        first_witness=witness,
        first_witness_trial=trial,
        first_witness_gap=gap,
        witness_confirmed=confirmed,
        gaps=tally.gaps,
    )
