"""Run every verification suite over a range of seeded random branches.

Prints one JSON line per branch (seed, shape, per-check status and timing)
and a final summary line.  Exit status 2 if any check fails.
"""

import argparse
import json
import sys
import time

from qozeta.branch import random_branch
from qozeta.cli import encode_input
from qozeta.verify import VerifyOptions, verify_branch


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=25)
    parser.add_argument("--d-max", type=int, default=3)
    parser.add_argument("--g-max", type=int, default=3)
    parser.add_argument("--denominator-bound", type=int, default=6)
    parser.add_argument("--series-order", type=int, default=20)
    parser.add_argument("--l-precision", type=int, default=20)
    args = parser.parse_args()
    opts = VerifyOptions(series_order=args.series_order, l_precision=args.l_precision)
    t0 = time.perf_counter()
    failures = 0
    for seed in range(args.seed, args.seed + args.count):
        b = random_branch(seed, args.d_max, args.g_max, args.denominator_bound)
        rep = verify_branch(b, opts)
        failures += not rep.ok
        row = {
            "seed": seed,
            "input": encode_input(b),
            "ok": rep.ok,
            "checks": {c.name: [c.ok, round(c.seconds, 4)] for c in rep.checks},
        }
        print(json.dumps(row), flush=True)
    summary = {"branches": args.count, "failures": failures, "seconds": round(time.perf_counter() - t0, 2)}
    print(json.dumps(summary))
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
