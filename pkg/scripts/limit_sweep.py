"""One-sided limit sweeps for every built-in semicopula.

    python3 scripts/limit_sweep.py --out results/limits --edges

For each built-in, runs both direction/capacity pairings over the 19 x 19
grid, writes a CSV per semicopula, and prints how many grid cells witness a
discontinuity together with the largest gap.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from sugenolab.limit_lab import FROM_ABOVE, FROM_BELOW, WITNESS, sweep, sweep_csv
from sugenolab.semicopula import BUILTIN_NAMES, builtin


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path)
    p.add_argument("--edges", action="store_true", help="include b=0 from above and b=1 from below")
    p.add_argument("--method", choices=["estimate", "analytic"], default="estimate")
    p.add_argument("--terms", type=int, default=40)
    args = p.parse_args(argv)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)

    print(f"{'semicopula':<20}{'above':>7}{'below':>7}{'max gap':>11}")
    for name in BUILTIN_NAMES:
        results = sweep(builtin(name), terms=args.terms, method=args.method, edges=args.edges)
        if args.out is not None:
            (args.out / f"{name}.csv").write_text(sweep_csv(results))
        hits = {FROM_ABOVE: 0, FROM_BELOW: 0}
        for r in results:
            if r.verdict == WITNESS:
                hits[r.instance.direction] += 1
        worst = max(r.gap for r in results)
        print(f"{name:<20}{hits[FROM_ABOVE]:>7}{hits[FROM_BELOW]:>7}{worst:>11.3g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
