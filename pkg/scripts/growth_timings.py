#!/usr/bin/env python3
"""Timing sweep of full aggregation runs.

Total firing work grows like n^4 / 3; this prints measured wall times and
steps/second so regressions in the walk kernel are easy to spot.
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from rotoragg import aggregation


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--radii", type=int, nargs="+",
                        default=[25, 50, 100, 150, 200])
    parser.add_argument("--variant", choices=["standard", "modified"],
                        default="standard")
    args = parser.parse_args()

    aggregation.aggregate(5, args.variant)  # warm the jit cache
    print(f"{'n':>5} {'chips':>9} {'fires':>12} {'seconds':>8} {'Msteps/s':>9}")
    for n in args.radii:
        chips = 2 * n * (n + 1) + 1
        started = time.perf_counter()
        state = aggregation.aggregate(chips, args.variant)
        elapsed = time.perf_counter() - started
        fires = int(state.odometer.sum())
        rate = fires / elapsed / 1e6 if elapsed else float("inf")
        ok = aggregation.is_diamond(state, n)
        print(f"{n:>5} {chips:>9} {fires:>12} {elapsed:>8.2f} {rate:>9.1f}"
              + ("" if ok else "   NOT A DIAMOND"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
