"""Classify every built-in semicopula by section scanning.

    python3 scripts/classify_builtins.py --resolution 1e-4

Prints the label, the declared class and the reason for each; with
``--analytic`` the closed-form section profiles are used instead of scans.
"""

from __future__ import annotations

import argparse
import time

from sugenolab.classify import ClassifyParams, a_grid, classify
from sugenolab.semicopula import BUILTIN_NAMES, builtin, ordinal_sum


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--resolution", type=float, default=1e-4)
    p.add_argument("--jump-threshold", type=float, default=1e-6)
    p.add_argument("--a-grid", type=int, default=19)
    p.add_argument("--analytic", action="store_true")
    args = p.parse_args(argv)
    params = ClassifyParams(
        a_values=a_grid(args.a_grid),
        resolution=args.resolution,
        jump_threshold=args.jump_threshold,
        use_section_spec=args.analytic,
    )
    cases = [(n, builtin(n)) for n in BUILTIN_NAMES]
    cases.append(("ordinal_sum", ordinal_sum([((0.0, 0.5), "product"), ((0.5, 1.0), "lukasiewicz")])))
    bad = 0
    for name, s in cases:
        t0 = time.perf_counter()
        c = classify(s, params)
        bad += c.mismatch
        print(
            f"{name:<20}{c.label:<7}declared {c.declared_class:<9}"
            f"{time.perf_counter() - t0:6.2f}s  {c.evidence['reason']}"
        )
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
