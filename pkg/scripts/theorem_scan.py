#!/usr/bin/env python3
"""Run the heavyweight depth-restricted size proofs over complete prefix sets.

Each job solves one (n, d, s) level for every prefix in R(T'_n), reporting
per-prefix status and the aggregate verdict (SAT = some prefix extends,
UNSAT = none does, which proves the bound).  Progress is checkpointed in the
catalog so the scan can be interrupted and resumed.

Examples:
    python scripts/theorem_scan.py 10 7 30            # ~15 min on 2 cores
    python scripts/theorem_scan.py 11 8 35 --jobs 2   # hours
    python scripts/theorem_scan.py 11 9 34 --timeout 86400   # days
"""

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sortnetsat.search import ResultCatalog, SearchTask, run_task
from sortnetsat.solving import default_config
from sortnetsat.words import format_sentence, generate_prefixes


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("n", type=int)
    ap.add_argument("d", type=int)
    ap.add_argument("s", type=int)
    ap.add_argument("--jobs", type=int, default=2)
    ap.add_argument("--timeout", type=float, default=7200.0, help="per instance")
    ap.add_argument("--catalog", default="theorem_scan.jsonl")
    args = ap.parse_args()

    config = default_config(timeout=args.timeout)
    catalog = ResultCatalog(args.catalog)
    prefixes = generate_prefixes(args.n, "T'").sentences
    print(f"(n={args.n}, d={args.d}, s={args.s}) over {len(prefixes)} prefixes, "
          f"solver {config.name}")

    done = 0
    start = time.monotonic()

    def job(prefix):
        nonlocal done
        res = run_task(SearchTask(args.n, args.d, args.s, prefix=prefix, config=config),
                       catalog)
        done += 1
        print(f"[{done}/{len(prefixes)}] {format_sentence(prefix)}: {res.status} "
              f"({res.wall_time:.1f}s)", flush=True)
        return res

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(job, prefixes))

    statuses = [r.status for r in results]
    witnesses = [r for r in results if r.status == "SAT"]
    print(f"\ntotal {time.monotonic() - start:.0f}s: "
          f"{statuses.count('SAT')} SAT, {statuses.count('UNSAT')} UNSAT, "
          f"{statuses.count('UNKNOWN')} UNKNOWN")
    if witnesses:
        print("witness prefixes:")
        for r in witnesses:
            print(" ", format_sentence(r.prefix))
    if statuses.count("UNKNOWN"):
        print("verdict: NOT PROVEN (unknowns remain)")
        return 3
    print("verdict:", "SAT (a network exists)" if witnesses
          else "UNSAT (bound proven over the complete prefix set)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
