"""Run the fuzz campaigns under tests/fixtures and summarise them.

    python3 scripts/run_campaigns.py --out results/campaigns --workers 4

Writes one JSON report per campaign and prints a summary table.  The cubic
campaign's first witness is shrunk and written alongside its report.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from sugenolab.documents import dump_instance, dumps, load_campaign, read_json
from sugenolab.homogeneity import check, fuzz_campaign
from sugenolab.shrink import shrink

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
SUITES = ["minimum", "product", "lukasiewicz", "ordinal_sum", "nilpotent_minimum", "cubic"]


@dataclass
class Row:
    name: str
    expect: str
    violations: int
    worst_gap: float
    passed: bool
    seconds: float


def run(name: str, out: Path | None, workers: int, seed: int | None) -> Row:
    s, cfg = load_campaign(read_json(FIXTURES / f"campaign_{name}.json"), seed)
    t0 = time.perf_counter()
    report = fuzz_campaign(s, cfg, workers=workers)
    secs = time.perf_counter() - t0
    if out is not None:
        (out / f"{name}.json").write_text(dumps(report.to_dict()))
        if report.first_witness is not None:
            small = shrink(report.first_witness)
            doc = {"instance": dump_instance(small), "check": check(small).to_dict()}
            (out / f"{name}_shrunk_witness.json").write_text(dumps(doc))
    return Row(name, cfg.expect, report.violations, report.worst_gap, report.passed, secs)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, help="directory for JSON reports")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, help="override every campaign's seed")
    p.add_argument("--only", nargs="*", choices=SUITES, default=SUITES)
    args = p.parse_args(argv)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)

    print(f"{'semicopula':<20}{'expect':<10}{'violations':>11}{'worst gap':>12}{'time':>8}  result")
    ok = True
    for name in args.only:
        r = run(name, args.out, args.workers, args.seed)
        ok &= r.passed
        print(
            f"{r.name:<20}{r.expect:<10}{r.violations:>11}{r.worst_gap:>12.2e}"
            f"{r.seconds:>7.1f}s  {'pass' if r.passed else 'FAIL'}"
        )
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
