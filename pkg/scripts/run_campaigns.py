"""Run every verification campaign and write one JSON report per check.

    python3 scripts/run_campaigns.py --trials 500 --seed 1 --out reports/
"""

import argparse
import json
import pathlib
import sys

from multideal.verify import CHECKS, CampaignConfig, run_subadditivity_grid


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=pathlib.Path, default=pathlib.Path("reports"))
    p.add_argument("--grid", action="store_true", help="also run the exhaustive subadditivity grid")
    args = p.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    failed = []
    runs = [(c, CampaignConfig(c, args.trials, args.seed, args.workers).run) for c in CHECKS]
    if args.grid:
        runs.append(("subadd-grid", lambda: run_subadditivity_grid(workers=args.workers)))
    for name, go in runs:
        report = go()
        (args.out / f"{name}.json").write_text(json.dumps(report.to_json(), indent=1) + "\n")
        print(f"{name:20s} {report.status}  trials={report.trials:<7d} vacuous={report.vacuous:<5d}"
              f" inconclusive={report.inconclusive:<4d} {report.elapsed:7.2f} s")
        if report.status != "PASS":
            failed.append(name)
    if failed:
        print("failed:", ", ".join(failed), file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
