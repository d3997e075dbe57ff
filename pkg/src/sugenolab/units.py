"""Validation of scalars living in the unit interval."""

from __future__ import annotations

import math

# Absolute tolerances: closed-form paths vs. scanned/estimated paths.
EXACT_TOL = 1e-12
SCAN_TOL = 1e-9


class UnitIntervalError(ValueError):
    """A scalar fell outside [0, 1] or was not a finite number."""


def unit(x, name: str = "value") -> float:
    """Return ``x`` as a float after checking ``0 <= x <= 1``."""
    if isinstance(x, bool):
        raise UnitIntervalError(f"{name} must be a number, got {x!r}")
    try:
        v = float(x)
    except (TypeError, ValueError):
        raise UnitIntervalError(f"{name} must be a number, got {x!r}") from None
    if not math.isfinite(v) or v < 0.0 or v > 1.0:
        raise UnitIntervalError(f"{name} must lie in [0, 1], got {x!r}")
    return v
