#!/usr/bin/env python3
"""Reproduce the jointly optimal (depth, size) pairs for small channel counts.

For every n in the requested range this runs the pareto search and prints the
proven frontier; with default settings n up to 8 finishes in a few minutes on
the bundled solver.  Results are cached in a JSON-lines catalog so reruns are
instant.

Usage:
    python scripts/reproduce_small_optima.py [--max-n 8] [--catalog results.jsonl]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sortnetsat.search import ResultCatalog, optimize
from sortnetsat.solving import default_config


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--catalog", default="small_optima.jsonl")
    ap.add_argument("--timeout", type=float, default=1800.0)
    args = ap.parse_args()

    config = default_config(timeout=args.timeout)
    catalog = ResultCatalog(args.catalog)
    print(f"solver: {config.name}")
    for n in range(args.min_n, args.max_n + 1):
        t0 = time.monotonic()
        claim = optimize(n, "pareto", config=config, catalog=catalog)
        dt = time.monotonic() - t0
        print(f"n={n}: {claim.note} [{'proven' if claim.proven else 'NOT PROVEN'}] "
              f"({dt:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
