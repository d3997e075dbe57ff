"""Numerical membership tests for the semicopula classes S0 and S1.

S0: associative, every section ``x -> S(a, x)`` continuous.
S1: associative, every section left-continuous with only isolated jumps.

The verdict is numerical evidence gathered on a finite grid of ``a`` values,
never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .sections import (
    DEFAULT_JUMP_THRESHOLD,
    DEFAULT_MAX_JUMPS,
    DEFAULT_RESOLUTION,
    SectionNotResolvable,
    SectionProfile,
    scan_section,
)
from .semicopula import GENERAL, S0, S1, UNKNOWN, Grid, Semicopula, check_associativity

OTHER = "other"
_EXPECTED = {S0: S0, S1: S1, GENERAL: OTHER}


def a_grid(k: int = 19) -> tuple[float, ...]:
    """``k`` equally spaced interior points; k=19 gives 0.05, 0.10, ..., 0.95."""
    if k < 1:
        raise ValueError("the a-grid needs at least one point")
    return tuple(i / (k + 1) for i in range(1, k + 1))


@dataclass(frozen=True)
class ClassifyParams:
    a_values: tuple[float, ...] = field(default_factory=a_grid)
    resolution: float = DEFAULT_RESOLUTION
    jump_threshold: float = DEFAULT_JUMP_THRESHOLD
    max_jumps: int = DEFAULT_MAX_JUMPS
    associativity: object = Grid(40)
    use_section_spec: bool = True


@dataclass
class Classification:
    label: str
    declared_class: str
    evidence: dict
    sections: list[SectionProfile]
    associativity_witness: Optional[tuple] = None
    kind: str = "numerical evidence"

    @property
    def mismatch(self) -> bool:
        expected = _EXPECTED.get(self.declared_class)
        return expected is not None and expected != self.label

    def jump_table(self) -> list[dict]:
        return [
            {"a": p.a, "at": j.at, "left": j.left, "value": j.value, "right": j.right}
            for p in self.sections
            for j in p.jumps
        ]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "declared_class": self.declared_class,
            "mismatch": self.mismatch,
            "evidence": self.evidence,
            "sections": [
                {
                    "a": p.a,
                    "continuous": p.continuous,
                    "left_continuous": p.left_continuous,
                    "right_continuous": p.right_continuous,
                    "segments": len(p.segments),
                    "jumps": len(p.jumps),
                }
                for p in self.sections
            ],
        }


def classify(s: Semicopula, params: ClassifyParams = ClassifyParams()) -> Classification:
    """Label ``s`` as S0, S1 or other.

    Raises :class:`~sugenolab.sections.SectionNotResolvable` when a scan
    overruns its jump budget.
    """
    assoc = check_associativity(s, params.associativity)
    sections = []
    for a in params.a_values:
        try:
            sections.append(
                scan_section(
                    s,
                    a,
                    params.resolution,
                    params.jump_threshold,
                    use_spec=params.use_section_spec,
                    max_jumps=params.max_jumps,
                )
            )
        except SectionNotResolvable as exc:
            exc.partial = sections
            raise
    declared = s.declared_class or UNKNOWN

    if not assoc.associative:
        x, y, z, lhs, rhs = assoc.witness
        evidence = {
            "reason": "associativity",
            "witness": {"x": x, "y": y, "z": z, "lhs": lhs, "rhs": rhs},
        }
        return Classification(OTHER, declared, evidence, sections, assoc.witness)

    if all(p.continuous for p in sections):
        return Classification(S0, declared, {"reason": "associative, continuous sections"}, sections)

    for p in sections:
        for j in p.jumps:
            if not j.left_continuous:
                evidence = {
                    "reason": "left_continuity",
                    "a": p.a,
                    "at": j.at,
                    "left": j.left,
                    "value": j.value,
                }
                return Classification(OTHER, declared, evidence, sections)
        if not p.isolated:
            evidence = {"reason": "isolation", "a": p.a, "jumps": [j.at for j in p.jumps]}
            return Classification(OTHER, declared, evidence, sections)

    result = Classification(S1, declared, {"reason": "left-continuous isolated jumps"}, sections)
    result.evidence["jumps"] = result.jump_table()
    return result
